#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fusalens/core_model.hpp"
#include "fusalens/error.hpp"
#include "fusalens/graph.hpp"

namespace fusalens {

/// Header: id,name,type,asil,severity,exposure,controllability (any order).
/// Errors carry the 1-based data row number.
std::vector<ElementRecord> parse_nodes_csv(std::string_view content);

/// Header: source,target,relation. Relation aliases are canonicalized against
/// `registry`.
std::vector<LinkRecord> parse_links_csv(
    std::string_view content,
    const TypeRegistry& registry = TypeRegistry::defaults());

std::string format_nodes_csv(std::span<const ElementRecord> nodes);
std::string format_links_csv(std::span<const LinkRecord> links);

struct ValidationIssue {
  std::string code;
  std::string message;
  /// "nodes" or "links".
  std::string file;
  /// 1-based position within the file's data rows.
  std::size_t row = 0;

  friend bool operator==(const ValidationIssue&,
                         const ValidationIssue&) = default;
};

struct ValidationReport {
  std::vector<ValidationIssue> errors;
  std::vector<ValidationIssue> warnings;

  bool ok() const { return errors.empty(); }
};

namespace issue {
inline constexpr std::string_view kEmptyId = "EMPTY_ID";
inline constexpr std::string_view kDuplicateNodeId = "DUPLICATE_NODE_ID";
inline constexpr std::string_view kDanglingSource = "DANGLING_SOURCE";
inline constexpr std::string_view kDanglingTarget = "DANGLING_TARGET";
inline constexpr std::string_view kSelfLoop = "SELF_LOOP";
inline constexpr std::string_view kDuplicateLink = "DUPLICATE_LINK";
inline constexpr std::string_view kUnregisteredType = "UNREGISTERED_TYPE";
inline constexpr std::string_view kUnregisteredRelation =
    "UNREGISTERED_RELATION";
inline constexpr std::string_view kRelationTypeMismatch =
    "RELATION_TYPE_MISMATCH";
}  // namespace issue

ValidationReport validate_project(
    std::span<const ElementRecord> nodes, std::span<const LinkRecord> links,
    const TypeRegistry& registry = TypeRegistry::defaults());

/// Thrown when a commit is attempted on records that fail validation.
class ValidationFailed : public Error {
 public:
  explicit ValidationFailed(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

}  // namespace fusalens
