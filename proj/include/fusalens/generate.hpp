#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fusalens/graph.hpp"

namespace fusalens {

/// Synthetic project data for demos, benchmarks and property tests.
struct GeneratedProject {
  ProjectMeta meta;
  std::vector<ElementRecord> nodes;
  std::vector<LinkRecord> links;

  GraphSnapshot snapshot() const { return GraphSnapshot(meta, nodes, links); }
};

struct RandomProjectOptions {
  std::size_t max_nodes = 200;
  std::size_t max_links = 600;
  /// Probability that a node's ASIL (and each S-E-C component) is left
  /// unassigned.
  double unassigned_rate = 0.3;
  /// Draw relations only between the type pairs the default registry allows.
  bool registry_consistent = false;
  /// Generate names with commas, quotes and line breaks.
  bool awkward_names = true;
};

/// Node and link counts are drawn uniformly up to the caps. Ids are unique,
/// links have no self-loops or duplicate triples.
GeneratedProject random_project(std::uint64_t seed,
                                const std::string& project_id,
                                const RandomProjectOptions& options = {});

struct FamilyOptions {
  std::size_t projects = 2;
  /// Ids are drawn from a shared pool of this size so projects overlap.
  std::size_t id_pool = 200;
  double keep_rate = 0.7;
  std::size_t max_links = 600;
};

/// Several projects over a common id pool; relations come from a small
/// alphabet so identical link triples recur across projects.
std::vector<GeneratedProject> random_family(std::uint64_t seed,
                                            const FamilyOptions& options);

struct TrioSpec {
  std::size_t nodes[3] = {318, 254, 287};
  std::size_t links[3] = {675, 512, 590};
  std::size_t shared_nodes = 15;
};

/// Three registry-consistent projects P1..P3 with exact node/link counts
/// that share exactly `shared_nodes` node ids and no link triple.
std::vector<GeneratedProject> summary_trio(std::uint64_t seed,
                                           const TrioSpec& spec = {});

}  // namespace fusalens
