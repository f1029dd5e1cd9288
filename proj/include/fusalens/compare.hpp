#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fusalens/graph.hpp"

namespace fusalens {

struct ProjectAttributes {
  std::string project_id;
  std::string type;
  Asil asil = Asil::Unassigned;
  SecTriple sec;
  std::size_t degree = 0;
};

/// A node id present in every compared project.
struct SharedElement {
  std::string id;
  /// Name as recorded in the first project.
  std::string name;
  /// One entry per project, in argument order.
  std::vector<ProjectAttributes> per_project;
  /// True iff at least two distinct assigned ASILs occur across projects.
  bool asil_conflict = false;
};

/// A (source, target, relation) triple present in every compared project.
struct SharedLink {
  std::string source;
  std::string target;
  std::string relation;
  std::vector<std::string> present_in;
};

using SnapshotList = std::span<const GraphSnapshot* const>;

/// Ids are matched exactly. Throws InvalidArgument for fewer than two
/// snapshots. Sorted by id.
std::vector<SharedElement> shared_nodes(SnapshotList snapshots);

/// Sorted by (source, target, relation).
std::vector<SharedLink> shared_links(SnapshotList snapshots);

/// Shared nodes plus the shared links between them. Node attributes come
/// from the first snapshot; the meta is a synthetic "shared" project.
GraphSnapshot shared_subgraph(SnapshotList snapshots);

struct ProjectNeighborhood {
  std::string project_id;
  std::vector<std::string> neighbor_ids;
  /// Incident link counts keyed by relation.
  std::map<std::string, std::size_t> relation_counts;
};

/// Per-project neighbors of a shared node. Throws InvalidArgument when the
/// node is missing from any project.
std::vector<ProjectNeighborhood> cross_highlight(const std::string& node_id,
                                                 SnapshotList snapshots);

}  // namespace fusalens
