#include "fusalens/compare.hpp"

#include <algorithm>
#include <set>

#include "fusalens/error.hpp"

namespace fusalens {
namespace {

void require_two(SnapshotList snapshots) {
  if (snapshots.size() < 2)
    throw InvalidArgument("comparison needs at least two projects");
}

// Project with the fewest nodes drives the intersection.
const GraphSnapshot& smallest(SnapshotList snapshots) {
  return **std::min_element(
      snapshots.begin(), snapshots.end(),
      [](auto* a, auto* b) { return a->node_count() < b->node_count(); });
}

std::vector<std::string> shared_ids(SnapshotList snapshots) {
  std::vector<std::string> ids;
  for (const auto& n : smallest(snapshots).nodes()) {
    const bool everywhere =
        std::all_of(snapshots.begin(), snapshots.end(),
                    [&](const GraphSnapshot* s) { return s->contains(n.id); });
    if (everywhere) ids.push_back(n.id);
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace

std::vector<SharedElement> shared_nodes(SnapshotList snapshots) {
  require_two(snapshots);
  std::vector<SharedElement> out;
  for (const auto& id : shared_ids(snapshots)) {
    SharedElement el;
    el.id = id;
    el.name = snapshots.front()->node(id).name;
    std::set<Asil> assigned;
    for (const GraphSnapshot* s : snapshots) {
      const auto& n = s->node(id);
      el.per_project.push_back(
          {s->project_id(), n.type, n.asil, n.sec, degree(*s, id)});
      if (n.asil != Asil::Unassigned) assigned.insert(n.asil);
    }
    el.asil_conflict = assigned.size() >= 2;
    out.push_back(std::move(el));
  }
  return out;
}

std::vector<SharedLink> shared_links(SnapshotList snapshots) {
  require_two(snapshots);
  const GraphSnapshot* base = snapshots.front();
  for (const GraphSnapshot* s : snapshots)
    if (s->link_count() < base->link_count()) base = s;

  std::vector<std::set<LinkRecord>> others;
  for (const GraphSnapshot* s : snapshots)
    if (s != base) others.emplace_back(s->links().begin(), s->links().end());

  std::vector<LinkRecord> found;
  for (const auto& link : base->links()) {
    const bool everywhere =
        std::all_of(others.begin(), others.end(),
                    [&](const auto& set) { return set.count(link) != 0; });
    if (everywhere) found.push_back(link);
  }
  std::sort(found.begin(), found.end());

  std::vector<std::string> projects;
  for (const GraphSnapshot* s : snapshots) projects.push_back(s->project_id());
  std::vector<SharedLink> out;
  out.reserve(found.size());
  for (auto& l : found)
    out.push_back({std::move(l.source), std::move(l.target),
                   std::move(l.relation), projects});
  return out;
}

GraphSnapshot shared_subgraph(SnapshotList snapshots) {
  require_two(snapshots);
  const auto ids = shared_ids(snapshots);
  const std::set<std::string> id_set(ids.begin(), ids.end());

  std::vector<ElementRecord> nodes;
  nodes.reserve(ids.size());
  for (const auto& id : ids) nodes.push_back(snapshots.front()->node(id));

  std::vector<LinkRecord> links;
  for (const auto& l : shared_links(snapshots))
    if (id_set.count(l.source) && id_set.count(l.target))
      links.push_back({l.source, l.target, l.relation});

  ProjectMeta meta;
  for (const GraphSnapshot* s : snapshots) {
    if (!meta.project_id.empty()) meta.project_id += '+';
    meta.project_id += s->project_id();
  }
  meta.name = "Shared: " + meta.project_id;
  meta.system = "shared";
  return GraphSnapshot(std::move(meta), std::move(nodes), std::move(links));
}

std::vector<ProjectNeighborhood> cross_highlight(const std::string& node_id,
                                                 SnapshotList snapshots) {
  std::vector<ProjectNeighborhood> out;
  for (const GraphSnapshot* s : snapshots)
    if (!s->contains(node_id))
      throw InvalidArgument("node '" + node_id + "' is not present in project '" +
                            s->project_id() + "'");
  for (const GraphSnapshot* s : snapshots) {
    ProjectNeighborhood hood;
    hood.project_id = s->project_id();
    for (const auto& n : neighbors(*s, node_id)) hood.neighbor_ids.push_back(n.id);
    for (std::size_t li : s->incident_links(s->index_of(node_id)))
      ++hood.relation_counts[s->links()[li].relation];
    out.push_back(std::move(hood));
  }
  return out;
}

}  // namespace fusalens
