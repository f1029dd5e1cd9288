#pragma once

// Brute-force reference implementations. These deliberately avoid the
// library's indices and algorithms: nested loops over raw node/link lists,
// Floyd-Warshall closures, naive set intersections.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "fusalens/core_model.hpp"
#include "fusalens/graph.hpp"

namespace oracle {

using fusalens::Asil;
using fusalens::ElementRecord;
using fusalens::GraphSnapshot;
using fusalens::LinkRecord;
using fusalens::SecTriple;

inline std::vector<SecTriple> all_complete_triples() {
  std::vector<SecTriple> out;
  for (std::uint8_t s = 0; s <= 3; ++s)
    for (std::uint8_t e = 0; e <= 4; ++e)
      for (std::uint8_t c = 0; c <= 3; ++c) out.push_back({s, e, c});
  return out;
}

inline Asil sum_rule_asil(const SecTriple& t) {
  const int s = *t.severity, e = *t.exposure, c = *t.controllability;
  if (s == 0 || e == 0 || c == 0) return Asil::QM;
  const int k = s + e + c;
  if (k == 10) return Asil::D;
  if (k == 9) return Asil::C;
  if (k == 8) return Asil::B;
  if (k == 7) return Asil::A;
  return Asil::QM;
}

inline std::vector<ElementRecord> nodes_of(const GraphSnapshot& g) {
  return {g.nodes().begin(), g.nodes().end()};
}
inline std::vector<LinkRecord> links_of(const GraphSnapshot& g) {
  return {g.links().begin(), g.links().end()};
}

inline std::size_t degree(const std::vector<LinkRecord>& links,
                          const std::string& id) {
  std::size_t d = 0;
  for (const auto& l : links)
    if (l.source == id || l.target == id) ++d;
  return d;
}

inline std::vector<std::string> degree_range(const GraphSnapshot& g,
                                             std::size_t lo, std::size_t hi) {
  const auto links = links_of(g);
  std::vector<std::string> out;
  for (const auto& n : nodes_of(g)) {
    const auto d = degree(links, n.id);
    if (d >= lo && d <= hi) out.push_back(n.id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::string> unassigned(
    const GraphSnapshot& g, const std::optional<std::set<std::string>>& types) {
  std::vector<std::string> out;
  for (const auto& n : nodes_of(g))
    if (n.asil == Asil::Unassigned && (!types || types->count(n.type)))
      out.push_back(n.id);
  std::sort(out.begin(), out.end());
  return out;
}

/// Nodes of `subject_type` with no incident link of `relation`, either
/// orientation.
inline std::vector<std::string> missing_links(const GraphSnapshot& g,
                                              const std::string& subject_type,
                                              const std::string& relation) {
  const auto links = links_of(g);
  std::vector<std::string> out;
  for (const auto& n : nodes_of(g)) {
    if (n.type != subject_type) continue;
    bool found = false;
    for (const auto& l : links)
      if (l.relation == relation && (l.source == n.id || l.target == n.id))
        found = true;
    if (!found) out.push_back(n.id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// All-pairs shortest hop counts via Floyd-Warshall; -1 when unreachable.
inline std::vector<std::vector<int>> all_pairs_distance(const GraphSnapshot& g,
                                                        bool directed) {
  const auto nodes = nodes_of(g);
  const std::size_t n = nodes.size();
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < n; ++i) pos[nodes[i].id] = i;
  constexpr int kInf = 1 << 28;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, kInf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (const auto& l : links_of(g)) {
    const auto a = pos[l.source], b = pos[l.target];
    d[a][b] = 1;
    if (!directed) d[b][a] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  for (auto& row : d)
    for (auto& v : row)
      if (v >= kInf) v = -1;
  return d;
}

inline std::vector<std::string> shared_node_ids(
    const std::vector<const GraphSnapshot*>& projects) {
  std::vector<std::string> out;
  for (const auto& n : projects.front()->nodes()) {
    bool everywhere = true;
    for (std::size_t p = 1; p < projects.size(); ++p) {
      bool found = false;
      for (const auto& m : projects[p]->nodes())
        if (m.id == n.id) found = true;
      everywhere = everywhere && found;
    }
    if (everywhere) out.push_back(n.id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<LinkRecord> shared_links(
    const std::vector<const GraphSnapshot*>& projects) {
  std::vector<LinkRecord> out;
  for (const auto& l : projects.front()->links()) {
    bool everywhere = true;
    for (std::size_t p = 1; p < projects.size(); ++p) {
      bool found = false;
      for (const auto& m : projects[p]->links())
        if (m.source == l.source && m.target == l.target &&
            m.relation == l.relation)
          found = true;
      everywhere = everywhere && found;
    }
    if (everywhere) out.push_back(l);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct Point {
  double x, y;
};

/// Containment in a counter-clockwise convex polygon (or a point/segment),
/// with boundary tolerance `tol`.
inline bool point_in_convex_ccw(const std::vector<Point>& poly, Point p,
                                double tol) {
  if (poly.size() == 1)
    return std::hypot(p.x - poly[0].x, p.y - poly[0].y) <= tol;
  if (poly.size() == 2) {
    const double ax = poly[1].x - poly[0].x, ay = poly[1].y - poly[0].y;
    const double px = p.x - poly[0].x, py = p.y - poly[0].y;
    const double len = std::hypot(ax, ay);
    const double cross = (ax * py - ay * px) / len;
    const double t = (ax * px + ay * py) / (len * len);
    return std::abs(cross) <= tol && t >= -tol && t <= 1 + tol;
  }
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& a = poly[i];
    const auto& b = poly[(i + 1) % poly.size()];
    const double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    if (cross / len < -tol) return false;
  }
  return true;
}

}  // namespace oracle
