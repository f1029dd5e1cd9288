#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace fusalens {

// ---------------------------------------------------------------------------
// ASIL
// ---------------------------------------------------------------------------

/// Automotive Safety Integrity Level. Unassigned carries no rank.
enum class Asil : std::uint8_t { Unassigned, QM, A, B, C, D };

inline constexpr std::array<Asil, 6> kAllAsils = {
    Asil::Unassigned, Asil::QM, Asil::A, Asil::B, Asil::C, Asil::D};

/// QM=0 .. D=4; nullopt for Unassigned.
std::optional<int> asil_rank(Asil value);

/// Accepts QM/A/B/C/D case-insensitively (surrounding whitespace ignored);
/// "-" or empty yields Unassigned. Throws ParseError otherwise.
Asil parse_asil(std::string_view token);

/// Canonical token: "-", "QM", "A" .. "D".
std::string_view render_asil(Asil value);

enum class AsilOrdering { Less, Equal, Greater, Unordered };

AsilOrdering compare_asil(Asil a, Asil b);

// ---------------------------------------------------------------------------
// Severity / Exposure / Controllability
// ---------------------------------------------------------------------------

enum class SecComponent { Severity, Exposure, Controllability };

inline constexpr std::array<SecComponent, 3> kSecComponents = {
    SecComponent::Severity, SecComponent::Exposure,
    SecComponent::Controllability};

std::string_view component_name(SecComponent component);

/// Highest level of a component: S3, E4, C3.
int component_max_level(SecComponent component);

/// Token prefix letter: 'S', 'E' or 'C'.
char component_prefix(SecComponent component);

struct SecTriple {
  std::optional<std::uint8_t> severity;
  std::optional<std::uint8_t> exposure;
  std::optional<std::uint8_t> controllability;

  std::optional<std::uint8_t> get(SecComponent component) const;
  void set(SecComponent component, std::optional<std::uint8_t> level);

  bool complete() const {
    return severity && exposure && controllability;
  }
  bool empty() const {
    return !severity && !exposure && !controllability;
  }

  friend bool operator==(const SecTriple&, const SecTriple&) = default;
};

/// Parses one component token from its own alphabet ("S0".."S3" etc., case
/// insensitive). "-" or empty yields nullopt.
std::optional<std::uint8_t> parse_sec_component(SecComponent component,
                                                std::string_view token);

/// Renders "S3" / "-".
std::string render_sec_component(SecComponent component,
                                 std::optional<std::uint8_t> level);

SecTriple parse_sec(std::string_view severity, std::string_view exposure,
                    std::string_view controllability);

/// "S3E4C3"-style key for a complete triple.
std::string sec_key(const SecTriple& triple);

// ---------------------------------------------------------------------------
// Risk table
// ---------------------------------------------------------------------------

/// Total mapping from the 4*5*4 = 80 complete S-E-C triples to an ASIL.
class RiskTable {
 public:
  static constexpr std::size_t kEntries = 4 * 5 * 4;

  /// Additive rule: any level 0 gives QM, else s+e+c of 10/9/8/7 gives
  /// D/C/B/A and anything lower gives QM.
  static RiskTable default_table();

  /// Loads an override document: an object keyed "S{s}E{e}C{c}" holding ASIL
  /// tokens. All 80 keys are required; unknown keys and Unassigned values are
  /// rejected.
  static RiskTable from_json(const nlohmann::json& document);

  Asil lookup(const SecTriple& triple) const;

  nlohmann::json to_json() const;

 private:
  static std::size_t index_of(int s, int e, int c);

  std::array<Asil, kEntries> entries_{};
};

/// Throws InvalidArgument("incomplete S-E-C") when the triple is not complete.
Asil asil_from_sec(const SecTriple& triple, const RiskTable& table);

// ---------------------------------------------------------------------------
// Type and relation registries
// ---------------------------------------------------------------------------

struct ElementType {
  std::string label;
  std::string description;
};

struct RelationType {
  std::string label;
  std::string subject_type;
  std::string object_type;
};

/// Open registry of element and relation labels. Unknown labels are allowed
/// in data; validation flags them as unregistered.
class TypeRegistry {
 public:
  /// SB, MB, HzE, SG, FSR, TSR and the relations that chain them.
  static const TypeRegistry& defaults();

  void add_element_type(ElementType type);
  void add_relation_type(RelationType relation);
  void add_alias(std::string alias, std::string canonical);

  bool has_element_type(std::string_view label) const;
  const RelationType* find_relation(std::string_view label) const;

  /// Maps an alias to its canonical label; other labels pass through.
  std::string canonical_relation(std::string_view label) const;

  const std::vector<ElementType>& element_types() const { return types_; }
  const std::vector<RelationType>& relation_types() const {
    return relations_;
  }

 private:
  std::vector<ElementType> types_;
  std::vector<RelationType> relations_;
  std::map<std::string, std::string, std::less<>> aliases_;
};

}  // namespace fusalens
