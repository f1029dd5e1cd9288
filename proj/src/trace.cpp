#include "fusalens/trace.hpp"

#include <array>
#include <deque>
#include <limits>
#include <set>

#include "fusalens/error.hpp"
#include "text_util.hpp"

namespace fusalens {

TraceMode parse_trace_mode(std::string_view token) {
  const auto t = detail::lower(detail::trim(token));
  if (t.empty() || t == "undirected") return TraceMode::Undirected;
  if (t == "forward") return TraceMode::Forward;
  throw ParseError("invalid trace mode '" + std::string(token) + "'");
}

std::string_view to_string(TraceMode mode) {
  return mode == TraceMode::Forward ? "forward" : "undirected";
}

std::optional<TracePath> find_path(const GraphSnapshot& snapshot,
                                   const PathQuery& query) {
  const std::size_t src = snapshot.index_of(query.source);
  const std::size_t dst = snapshot.index_of(query.destination);
  const bool directed = query.mode == TraceMode::Forward;
  const auto nodes = snapshot.nodes();
  const auto links = snapshot.links();

  // Hop distance from every node to the destination.
  constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(snapshot.node_count(), kUnreached);
  std::deque<std::size_t> queue{dst};
  dist[dst] = 0;
  while (!queue.empty() && dist[src] == kUnreached) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t li : snapshot.incident_links(v)) {
      const auto& l = links[li];
      // Walking backwards: forward mode may only use links that end at v.
      if (directed && l.target != nodes[v].id) continue;
      const std::size_t u = snapshot.index_of(
          l.source == nodes[v].id ? l.target : l.source);
      if (dist[u] != kUnreached) continue;
      dist[u] = dist[v] + 1;
      queue.push_back(u);
    }
  }
  if (dist[src] == kUnreached) return std::nullopt;

  TracePath path;
  path.node_ids.push_back(nodes[src].id);
  std::size_t at = src;
  while (at != dst) {
    std::optional<std::size_t> next;
    const LinkRecord* via = nullptr;
    for (std::size_t li : snapshot.incident_links(at)) {
      const auto& l = links[li];
      if (directed && l.source != nodes[at].id) continue;
      const std::size_t w =
          snapshot.index_of(l.source == nodes[at].id ? l.target : l.source);
      if (dist[w] != dist[at] - 1) continue;
      if (!next || nodes[w].id < nodes[*next].id ||
          (w == *next && l < *via)) {
        next = w;
        via = &l;
      }
    }
    path.links.push_back(*via);
    path.node_ids.push_back(nodes[*next].id);
    at = *next;
  }
  return path;
}

std::vector<SecMismatch> check_sec_consistency(
    std::span<const TraceStep> steps) {
  std::vector<SecMismatch> flags;
  // Nearest earlier assigned value per component, with the step holding it.
  std::array<std::optional<std::pair<std::uint8_t, std::string>>, 3> baseline;
  for (const auto& step : steps) {
    for (std::size_t k = 0; k < kSecComponents.size(); ++k) {
      const SecComponent c = kSecComponents[k];
      const auto value = step.sec.get(c);
      if (!value) continue;
      if (baseline[k] && baseline[k]->first != *value)
        flags.push_back(
            {step.id, c, *value, baseline[k]->first, baseline[k]->second});
      baseline[k] = std::make_pair(*value, step.id);
    }
  }
  return flags;
}

TraceResult trace_asils(const GraphSnapshot& snapshot, const TracePath& path) {
  if (path.node_ids.empty()) throw InvalidArgument("trace path is empty");
  if (path.links.size() + 1 != path.node_ids.size())
    throw InvalidArgument("trace path needs exactly one link per hop");

  std::set<LinkRecord> known(snapshot.links().begin(), snapshot.links().end());
  std::set<std::string_view> visited;

  TraceResult result;
  result.path = path;
  for (std::size_t i = 0; i < path.node_ids.size(); ++i) {
    const auto& id = path.node_ids[i];
    const ElementRecord* n = snapshot.find(id);
    if (!n) throw InvalidArgument("trace path references unknown node '" + id + "'");
    if (!visited.insert(id).second)
      throw InvalidArgument("trace path visits '" + id + "' twice");
    if (i > 0) {
      const auto& l = path.links[i - 1];
      const auto& prev = path.node_ids[i - 1];
      const bool joins = (l.source == prev && l.target == id) ||
                         (l.source == id && l.target == prev);
      if (!joins || !known.count(l))
        throw InvalidArgument("trace path link " + l.source + " -> " +
                              l.target + " (" + l.relation +
                              ") does not join " + prev + " and " + id);
    }
    result.steps.push_back({n->id, n->name, n->type, n->asil, n->sec});
  }
  result.flags = check_sec_consistency(result.steps);
  return result;
}

}  // namespace fusalens
