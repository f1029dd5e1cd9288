#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fusalens/compare.hpp"
#include "fusalens/graph.hpp"

namespace fusalens {

/// A node of `subject_type` must touch at least one link of `relation`.
struct LinkRule {
  std::string subject_type;
  std::string relation;
  std::string object_type;
  std::string description;
};

/// Children of `child_type` reached from a `parent_type` node via
/// `relation` are expected to carry the parent's ASIL.
struct InheritanceRule {
  std::string parent_type;
  std::string relation;
  std::string child_type;
};

struct RuleSet {
  std::vector<LinkRule> link_rules;
  std::vector<InheritanceRule> inheritance;

  /// MB-associatedHE-HzE, HzE-associatedSG-SG, SG-associatedFSR-FSR,
  /// FSR-associatedTSR-TSR; inheritance along the last three.
  static RuleSet defaults();

  /// Accepts either a bare array of {subject_type, relation, object_type}
  /// link rules (inheritance keeps its defaults) or an object with
  /// "link_rules" and/or "inheritance" arrays.
  static RuleSet from_json(const nlohmann::json& document);
};

struct RuleViolations {
  LinkRule rule;
  std::vector<std::string> node_ids;
};

struct RuleViolationReport {
  std::vector<RuleViolations> rules;
  std::size_t total = 0;
};

struct InheritanceDiscrepancy {
  std::string child_id;
  std::vector<std::string> parent_ids;
  Asil expected_asil = Asil::Unassigned;
  Asil actual_asil = Asil::Unassigned;
  std::string relation;
};

/// Degree-zero nodes, sorted by id.
std::vector<std::string> find_orphans(const GraphSnapshot& snapshot);

/// Nodes with min <= degree <= max, sorted by id. Throws InvalidArgument
/// when min > max.
std::vector<std::string> filter_by_degree(const GraphSnapshot& snapshot,
                                          std::size_t min, std::size_t max);

std::vector<std::string> find_unassigned_asil(
    const GraphSnapshot& snapshot,
    const std::optional<std::set<std::string>>& type_filter = std::nullopt);

/// A link satisfies a rule regardless of which end the subject sits on.
RuleViolationReport check_missing_links(const GraphSnapshot& snapshot,
                                        const RuleSet& rules);

/// Children whose assigned ASIL differs from the highest assigned parent
/// ASIL. Unassigned children and parents are skipped. Ordered by rule, then
/// child id.
std::vector<InheritanceDiscrepancy> check_asil_inheritance(
    const GraphSnapshot& snapshot, const RuleSet& rules);

// ---------------------------------------------------------------------------
// Summary table
// ---------------------------------------------------------------------------

struct SummaryRow {
  std::string label;
  /// One count per project, in argument order.
  std::vector<std::size_t> counts;
  /// Shared entities with this label.
  std::size_t shared = 0;
};

struct SummaryTable {
  std::vector<std::string> projects;
  std::vector<SummaryRow> types;
  std::vector<SummaryRow> relations;
  std::vector<SummaryRow> asils;
};

/// Type and relation rows list every registered label (zero rows kept)
/// followed by any other labels seen, sorted. ASIL rows run -, QM, A..D.
/// The shared column tallies `shared` nodes by the first project's type and
/// ASIL and `links` by relation. Throws InvalidArgument on an empty list.
SummaryTable summarize(SnapshotList snapshots,
                       std::span<const SharedElement> shared,
                       std::span<const SharedLink> links);

/// Shared counts are computed with shared_nodes/shared_links when two or
/// more projects are given and left at zero otherwise.
SummaryTable summarize(SnapshotList snapshots);

// ---------------------------------------------------------------------------
// Report export
// ---------------------------------------------------------------------------

struct Finding {
  std::string check;
  std::string project_id;
  std::string node_id;
  std::string details;
};

/// CSV with header `check,project,node_id,details`.
std::string findings_to_csv(std::span<const Finding> findings);

}  // namespace fusalens
