#include "fusalens/core_model.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include <nlohmann/json.hpp>

#include "fusalens/error.hpp"
#include "text_util.hpp"

namespace fusalens {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return "PARSE_ERROR";
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::NotFound: return "NOT_FOUND";
    case ErrorCode::Validation: return "VALIDATION_FAILED";
    case ErrorCode::Io: return "IO_ERROR";
  }
  return "UNKNOWN";
}

std::optional<int> asil_rank(Asil value) {
  if (value == Asil::Unassigned) return std::nullopt;
  return static_cast<int>(value) - static_cast<int>(Asil::QM);
}

Asil parse_asil(std::string_view token) {
  const std::string t = detail::upper(detail::trim(token));
  if (t.empty() || t == "-") return Asil::Unassigned;
  if (t == "QM") return Asil::QM;
  if (t == "A") return Asil::A;
  if (t == "B") return Asil::B;
  if (t == "C") return Asil::C;
  if (t == "D") return Asil::D;
  throw ParseError("invalid ASIL token '" + std::string(token) + "'");
}

std::string_view render_asil(Asil value) {
  switch (value) {
    case Asil::Unassigned: return "-";
    case Asil::QM: return "QM";
    case Asil::A: return "A";
    case Asil::B: return "B";
    case Asil::C: return "C";
    case Asil::D: return "D";
  }
  return "-";
}

AsilOrdering compare_asil(Asil a, Asil b) {
  const auto ra = asil_rank(a);
  const auto rb = asil_rank(b);
  if (!ra || !rb) return AsilOrdering::Unordered;
  if (*ra < *rb) return AsilOrdering::Less;
  if (*ra > *rb) return AsilOrdering::Greater;
  return AsilOrdering::Equal;
}

std::string_view component_name(SecComponent component) {
  switch (component) {
    case SecComponent::Severity: return "severity";
    case SecComponent::Exposure: return "exposure";
    case SecComponent::Controllability: return "controllability";
  }
  return "";
}

int component_max_level(SecComponent component) {
  return component == SecComponent::Exposure ? 4 : 3;
}

char component_prefix(SecComponent component) {
  switch (component) {
    case SecComponent::Severity: return 'S';
    case SecComponent::Exposure: return 'E';
    case SecComponent::Controllability: return 'C';
  }
  return '?';
}

std::optional<std::uint8_t> SecTriple::get(SecComponent component) const {
  switch (component) {
    case SecComponent::Severity: return severity;
    case SecComponent::Exposure: return exposure;
    case SecComponent::Controllability: return controllability;
  }
  return std::nullopt;
}

void SecTriple::set(SecComponent component,
                    std::optional<std::uint8_t> level) {
  switch (component) {
    case SecComponent::Severity: severity = level; break;
    case SecComponent::Exposure: exposure = level; break;
    case SecComponent::Controllability: controllability = level; break;
  }
}

std::optional<std::uint8_t> parse_sec_component(SecComponent component,
                                                std::string_view token) {
  const std::string t = detail::upper(detail::trim(token));
  if (t.empty() || t == "-") return std::nullopt;
  if (t.size() == 2 && t[0] == component_prefix(component) &&
      std::isdigit(static_cast<unsigned char>(t[1]))) {
    const int level = t[1] - '0';
    if (level <= component_max_level(component))
      return static_cast<std::uint8_t>(level);
  }
  throw ParseError("invalid " + std::string(component_name(component)) +
                   " token '" + std::string(token) + "'");
}

std::string render_sec_component(SecComponent component,
                                 std::optional<std::uint8_t> level) {
  if (!level) return "-";
  return std::string(1, component_prefix(component)) + std::to_string(*level);
}

SecTriple parse_sec(std::string_view severity, std::string_view exposure,
                    std::string_view controllability) {
  SecTriple triple;
  triple.severity = parse_sec_component(SecComponent::Severity, severity);
  triple.exposure = parse_sec_component(SecComponent::Exposure, exposure);
  triple.controllability =
      parse_sec_component(SecComponent::Controllability, controllability);
  return triple;
}

std::string sec_key(const SecTriple& triple) {
  std::string key;
  for (SecComponent c : kSecComponents)
    key += render_sec_component(c, triple.get(c));
  return key;
}

// --- RiskTable --------------------------------------------------------------

std::size_t RiskTable::index_of(int s, int e, int c) {
  return static_cast<std::size_t>((s * 5 + e) * 4 + c);
}

RiskTable RiskTable::default_table() {
  RiskTable table;
  for (int s = 0; s <= 3; ++s)
    for (int e = 0; e <= 4; ++e)
      for (int c = 0; c <= 3; ++c) {
        Asil value = Asil::QM;
        if (s > 0 && e > 0 && c > 0) {
          switch (s + e + c) {
            case 10: value = Asil::D; break;
            case 9: value = Asil::C; break;
            case 8: value = Asil::B; break;
            case 7: value = Asil::A; break;
            default: value = Asil::QM; break;
          }
        }
        table.entries_[index_of(s, e, c)] = value;
      }
  return table;
}

RiskTable RiskTable::from_json(const nlohmann::json& document) {
  if (!document.is_object())
    throw ParseError("risk table must be an object keyed S{s}E{e}C{c}");
  RiskTable table;
  std::set<std::size_t> seen;
  for (const auto& [key, value] : document.items()) {
    if (key.size() != 6)
      throw ParseError("invalid risk table key '" + key + "'");
    const SecTriple triple =
        parse_sec(key.substr(0, 2), key.substr(2, 2), key.substr(4, 2));
    if (!triple.complete())
      throw ParseError("invalid risk table key '" + key + "'");
    if (!value.is_string())
      throw ParseError("risk table value for " + key + " must be a string");
    const Asil asil = parse_asil(value.get<std::string>());
    if (asil == Asil::Unassigned)
      throw ParseError("risk table value for " + key + " is unassigned");
    const auto idx =
        index_of(*triple.severity, *triple.exposure, *triple.controllability);
    table.entries_[idx] = asil;
    seen.insert(idx);
  }
  if (seen.size() != kEntries)
    throw ParseError("risk table covers " + std::to_string(seen.size()) +
                     " of 80 S-E-C triples");
  return table;
}

Asil RiskTable::lookup(const SecTriple& triple) const {
  return entries_[index_of(*triple.severity, *triple.exposure,
                           *triple.controllability)];
}

nlohmann::json RiskTable::to_json() const {
  nlohmann::json out = nlohmann::json::object();
  for (int s = 0; s <= 3; ++s)
    for (int e = 0; e <= 4; ++e)
      for (int c = 0; c <= 3; ++c) {
        SecTriple t{static_cast<std::uint8_t>(s), static_cast<std::uint8_t>(e),
                    static_cast<std::uint8_t>(c)};
        out[sec_key(t)] = std::string(render_asil(entries_[index_of(s, e, c)]));
      }
  return out;
}

Asil asil_from_sec(const SecTriple& triple, const RiskTable& table) {
  if (!triple.complete()) throw InvalidArgument("incomplete S-E-C");
  return table.lookup(triple);
}

// --- TypeRegistry -----------------------------------------------------------

const TypeRegistry& TypeRegistry::defaults() {
  static const TypeRegistry registry = [] {
    TypeRegistry r;
    r.add_element_type({"SB", "System Behavior"});
    r.add_element_type({"MB", "Malfunctioning Behavior"});
    r.add_element_type({"HzE", "Hazardous Event"});
    r.add_element_type({"SG", "Safety Goal"});
    r.add_element_type({"FSR", "Functional Safety Requirement"});
    r.add_element_type({"TSR", "Technical Safety Requirement"});
    r.add_relation_type({"relatedMB", "SB", "MB"});
    r.add_relation_type({"associatedHE", "MB", "HzE"});
    r.add_relation_type({"associatedSG", "HzE", "SG"});
    r.add_relation_type({"associatedFSR", "SG", "FSR"});
    r.add_relation_type({"associatedTSR", "FSR", "TSR"});
    r.add_relation_type({"relatedFSR", "FSR", "FSR"});
    r.add_relation_type({"relatedTSR", "TSR", "TSR"});
    r.add_alias("associatedSafetyGoal", "associatedSG");
    return r;
  }();
  return registry;
}

void TypeRegistry::add_element_type(ElementType type) {
  if (has_element_type(type.label))
    throw InvalidArgument("duplicate element type '" + type.label + "'");
  types_.push_back(std::move(type));
}

void TypeRegistry::add_relation_type(RelationType relation) {
  if (find_relation(relation.label))
    throw InvalidArgument("duplicate relation '" + relation.label + "'");
  relations_.push_back(std::move(relation));
}

void TypeRegistry::add_alias(std::string alias, std::string canonical) {
  aliases_[std::move(alias)] = std::move(canonical);
}

bool TypeRegistry::has_element_type(std::string_view label) const {
  return std::any_of(types_.begin(), types_.end(),
                     [&](const ElementType& t) { return t.label == label; });
}

const RelationType* TypeRegistry::find_relation(std::string_view label) const {
  for (const auto& r : relations_)
    if (r.label == label) return &r;
  return nullptr;
}

std::string TypeRegistry::canonical_relation(std::string_view label) const {
  if (auto it = aliases_.find(label); it != aliases_.end()) return it->second;
  return std::string(label);
}

}  // namespace fusalens
