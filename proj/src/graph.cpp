#include "fusalens/graph.hpp"

#include <algorithm>
#include <set>

#include "fusalens/error.hpp"
#include "text_util.hpp"

namespace fusalens {

GraphSnapshot::GraphSnapshot(ProjectMeta meta, std::vector<ElementRecord> nodes,
                             std::vector<LinkRecord> links,
                             std::uint64_t revision)
    : meta_(std::move(meta)), nodes_(std::move(nodes)), revision_(revision) {
  index_.reserve(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].id.empty())
      throw InvalidArgument("node at position " + std::to_string(i) +
                            " has an empty id");
    if (!index_.emplace(nodes_[i].id, i).second)
      throw InvalidArgument("duplicate node id '" + nodes_[i].id + "'");
  }

  adjacency_.resize(nodes_.size());
  std::set<LinkRecord> seen;
  links_.reserve(links.size());
  for (auto& link : links) {
    const auto s = index_.find(link.source);
    const auto t = index_.find(link.target);
    if (s == index_.end())
      throw InvalidArgument("link source '" + link.source + "' is not a node");
    if (t == index_.end())
      throw InvalidArgument("link target '" + link.target + "' is not a node");
    if (s->second == t->second)
      throw InvalidArgument("self-loop on '" + link.source + "'");
    if (!seen.insert(link).second) continue;
    const std::size_t li = links_.size();
    adjacency_[s->second].push_back(li);
    adjacency_[t->second].push_back(li);
    links_.push_back(std::move(link));
  }
}

bool GraphSnapshot::contains(std::string_view node_id) const {
  return index_.find(node_id) != index_.end();
}

const ElementRecord* GraphSnapshot::find(std::string_view node_id) const {
  const auto it = index_.find(node_id);
  return it == index_.end() ? nullptr : &nodes_[it->second];
}

const ElementRecord& GraphSnapshot::node(std::string_view node_id) const {
  return nodes_[index_of(node_id)];
}

std::size_t GraphSnapshot::index_of(std::string_view node_id) const {
  const auto it = index_.find(node_id);
  if (it == index_.end())
    throw NotFoundError("unknown node id '" + std::string(node_id) + "'");
  return it->second;
}

std::vector<std::string> GraphSnapshot::sorted_ids() const {
  std::vector<std::string> ids;
  ids.reserve(nodes_.size());
  for (const auto& n : nodes_) ids.push_back(n.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::size_t degree(const GraphSnapshot& snapshot, std::string_view node_id) {
  return snapshot.incident_links(snapshot.index_of(node_id)).size();
}

std::vector<ElementRecord> neighbors(const GraphSnapshot& snapshot,
                                     std::string_view node_id,
                                     std::optional<std::string_view> relation) {
  const std::size_t self = snapshot.index_of(node_id);
  std::set<std::string_view> ids;
  for (std::size_t li : snapshot.incident_links(self)) {
    const LinkRecord& link = snapshot.links()[li];
    if (relation && link.relation != *relation) continue;
    ids.insert(link.source == node_id ? link.target : link.source);
  }
  std::vector<ElementRecord> out;
  out.reserve(ids.size());
  for (auto id : ids) out.push_back(snapshot.node(id));
  return out;
}

std::vector<ElementRecord> search_nodes(const GraphSnapshot& snapshot,
                                        std::string_view query) {
  std::vector<ElementRecord> out;
  if (query.empty()) return out;
  const std::string needle = detail::lower(query);
  for (const auto& n : snapshot.nodes())
    if (detail::lower(n.name).find(needle) != std::string::npos)
      out.push_back(n);
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  return out;
}

}  // namespace fusalens
