#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fusalens/graph.hpp"

namespace fusalens {

enum class TraceMode { Undirected, Forward };

/// "undirected" / "forward"; throws ParseError otherwise.
TraceMode parse_trace_mode(std::string_view token);
std::string_view to_string(TraceMode mode);

struct PathQuery {
  std::string source;
  std::string destination;
  TraceMode mode = TraceMode::Undirected;
};

struct TracePath {
  std::vector<std::string> node_ids;
  /// links[i] joins node_ids[i] and node_ids[i + 1].
  std::vector<LinkRecord> links;
};

/// Shortest path by edge count. Among equally short paths the
/// lexicographically smallest node-id sequence wins; among parallel links
/// the smallest (source, target, relation) triple. Throws NotFoundError for
/// unknown endpoints.
std::optional<TracePath> find_path(const GraphSnapshot& snapshot,
                                   const PathQuery& query);

struct TraceStep {
  std::string id;
  std::string name;
  std::string type;
  Asil asil = Asil::Unassigned;
  SecTriple sec;
};

struct SecMismatch {
  std::string node_id;
  SecComponent component = SecComponent::Severity;
  std::uint8_t actual = 0;
  std::uint8_t expected = 0;
  std::string from_node;
};

struct TraceResult {
  TracePath path;
  std::vector<TraceStep> steps;
  std::vector<SecMismatch> flags;
};

/// Compares each assigned component with the same component of the nearest
/// earlier step that has it assigned. Steps with no S-E-C data at all are
/// skipped over.
std::vector<SecMismatch> check_sec_consistency(std::span<const TraceStep> steps);

/// Throws InvalidArgument if the path is not valid in the snapshot.
TraceResult trace_asils(const GraphSnapshot& snapshot, const TracePath& path);

}  // namespace fusalens
