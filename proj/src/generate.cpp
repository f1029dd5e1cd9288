#include "fusalens/generate.hpp"

#include <algorithm>
#include <cstdio>
#include <array>
#include <map>
#include <random>
#include <set>

#include "fusalens/error.hpp"

namespace fusalens {
namespace {

using Rng = std::mt19937_64;

constexpr std::array<const char*, 6> kTypes = {"SB", "MB", "HzE",
                                               "SG", "FSR", "TSR"};

constexpr std::array<const char*, 12> kWords = {
    "torque",  "brake",   "sensor", "collision", "speed",  "lane",
    "monitor", "request", "signal", "loss",      "driver", "steering"};

bool chance(Rng& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

std::size_t pick(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

std::string random_name(Rng& rng, bool awkward) {
  std::string name;
  const std::size_t words = 1 + pick(rng, 4);
  for (std::size_t w = 0; w < words; ++w) {
    if (w) name += ' ';
    name += kWords[pick(rng, kWords.size())];
  }
  if (awkward) {
    switch (pick(rng, 8)) {
      case 0: name += ", degraded"; break;
      case 1: name = "\"" + name + "\" mode"; break;
      case 2: name += "\nsecond line"; break;
      case 3: name += " \xC3\xA4nderung"; break;
      default: break;
    }
  }
  return name;
}

ElementRecord random_element(Rng& rng, std::string id, std::string type,
                             double unassigned_rate, bool awkward) {
  ElementRecord rec;
  rec.id = std::move(id);
  rec.name = random_name(rng, awkward);
  rec.type = std::move(type);
  rec.asil = chance(rng, unassigned_rate)
                 ? Asil::Unassigned
                 : kAllAsils[1 + pick(rng, kAllAsils.size() - 1)];
  for (SecComponent c : kSecComponents) {
    if (chance(rng, unassigned_rate)) continue;
    rec.sec.set(c, static_cast<std::uint8_t>(
                       pick(rng, component_max_level(c) + 1)));
  }
  return rec;
}

std::string weighted_type(Rng& rng) {
  static constexpr std::array<int, 6> weights = {10, 20, 25, 15, 15, 15};
  std::discrete_distribution<int> dist(weights.begin(), weights.end());
  return kTypes[dist(rng)];
}

// Adds registry-consistent links until `count` exist. Pairs for which
// `allowed` returns false are skipped.
template <typename Allowed>
void add_consistent_links(Rng& rng, const std::vector<ElementRecord>& nodes,
                          std::size_t count, std::vector<LinkRecord>& links,
                          Allowed allowed) {
  std::map<std::string, std::vector<const ElementRecord*>> by_type;
  for (const auto& n : nodes) by_type[n.type].push_back(&n);
  std::vector<const RelationType*> relations;
  for (const auto& r : TypeRegistry::defaults().relation_types()) {
    const auto s = by_type.find(r.subject_type);
    const auto o = by_type.find(r.object_type);
    if (s == by_type.end() || o == by_type.end()) continue;
    if (r.subject_type == r.object_type && s->second.size() < 2) continue;
    relations.push_back(&r);
  }
  std::set<LinkRecord> seen(links.begin(), links.end());
  std::size_t attempts = 0;
  const std::size_t max_attempts = 200 * (count + 1);
  while (links.size() < count) {
    if (relations.empty() || ++attempts > max_attempts)
      throw InvalidArgument("cannot place " + std::to_string(count) +
                            " distinct links on " +
                            std::to_string(nodes.size()) + " nodes");
    const RelationType& r = *relations[pick(rng, relations.size())];
    const auto& subjects = by_type[r.subject_type];
    const auto& objects = by_type[r.object_type];
    const auto* a = subjects[pick(rng, subjects.size())];
    const auto* b = objects[pick(rng, objects.size())];
    if (a == b || !allowed(*a, *b)) continue;
    LinkRecord link{a->id, b->id, r.label};
    if (seen.insert(link).second) links.push_back(std::move(link));
  }
}

}  // namespace

GeneratedProject random_project(std::uint64_t seed,
                                const std::string& project_id,
                                const RandomProjectOptions& options) {
  Rng rng(seed);
  GeneratedProject project;
  project.meta = {project_id, "Generated " + project_id, "Synthetic",
                  "Generated", "generator", "n/a"};

  const std::size_t n = pick(rng, options.max_nodes + 1);
  project.nodes.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    project.nodes.push_back(random_element(
        rng, "v" + std::to_string(i), kTypes[pick(rng, kTypes.size())],
        options.unassigned_rate, options.awkward_names));
  std::shuffle(project.nodes.begin(), project.nodes.end(), rng);

  if (n < 2) return project;
  const std::size_t target = pick(rng, options.max_links + 1);
  if (options.registry_consistent) {
    try {
      add_consistent_links(rng, project.nodes, target, project.links,
                           [](const auto&, const auto&) { return true; });
    } catch (const InvalidArgument&) {
      // Sparse type buckets: keep whatever could be placed.
    }
    return project;
  }

  const auto& relations = TypeRegistry::defaults().relation_types();
  std::set<LinkRecord> seen;
  const std::size_t capacity = n * (n - 1) * relations.size();
  const std::size_t count = std::min(target, capacity);
  while (project.links.size() < count) {
    const std::size_t a = pick(rng, n), b = pick(rng, n);
    if (a == b) continue;
    LinkRecord link{project.nodes[a].id, project.nodes[b].id,
                    relations[pick(rng, relations.size())].label};
    if (seen.insert(link).second) project.links.push_back(std::move(link));
  }
  return project;
}

std::vector<GeneratedProject> random_family(std::uint64_t seed,
                                            const FamilyOptions& options) {
  Rng rng(seed);
  // Attributes of pool ids are fixed per family except the ASIL, which
  // varies per project so conflicts appear.
  std::vector<ElementRecord> pool;
  for (std::size_t i = 0; i < options.id_pool; ++i)
    pool.push_back(random_element(rng, "n" + std::to_string(i),
                                  kTypes[pick(rng, kTypes.size())], 0.3,
                                  false));
  static constexpr std::array<const char*, 2> kRelations = {"associatedHE",
                                                            "associatedSG"};

  std::vector<GeneratedProject> family;
  for (std::size_t p = 0; p < options.projects; ++p) {
    GeneratedProject project;
    const std::string id = "P" + std::to_string(p + 1);
    project.meta = {id, "Family member " + id, "Synthetic", "Generated",
                    "generator", "n/a"};
    for (const auto& rec : pool) {
      if (!chance(rng, options.keep_rate)) continue;
      ElementRecord copy = rec;
      if (chance(rng, 0.2))
        copy.asil = kAllAsils[pick(rng, kAllAsils.size())];
      project.nodes.push_back(std::move(copy));
    }
    const std::size_t n = project.nodes.size();
    if (n >= 2) {
      // Links come from a small window of the pool so triples repeat.
      const std::size_t target = pick(rng, options.max_links + 1);
      std::set<LinkRecord> seen;
      const std::size_t window = std::min<std::size_t>(n, 40);
      const std::size_t capacity = window * (window - 1) * kRelations.size();
      while (project.links.size() < std::min(target, capacity)) {
        const std::size_t a = pick(rng, window), b = pick(rng, window);
        if (a == b) continue;
        LinkRecord link{project.nodes[a].id, project.nodes[b].id,
                        kRelations[pick(rng, kRelations.size())]};
        if (seen.insert(link).second) project.links.push_back(std::move(link));
      }
    }
    family.push_back(std::move(project));
  }
  return family;
}

std::vector<GeneratedProject> summary_trio(std::uint64_t seed,
                                           const TrioSpec& spec) {
  Rng rng(seed);
  std::vector<ElementRecord> shared;
  for (std::size_t i = 0; i < spec.shared_nodes; ++i) {
    char id[16];
    std::snprintf(id, sizeof id, "s%03zu", i);
    shared.push_back(random_element(rng, id, weighted_type(rng), 0.2, false));
  }

  std::vector<GeneratedProject> trio;
  for (int p = 0; p < 3; ++p) {
    if (spec.nodes[p] < spec.shared_nodes)
      throw InvalidArgument("project smaller than the shared node set");
    GeneratedProject project;
    const std::string id = "P" + std::to_string(p + 1);
    project.meta = {id, "Project " + id, "Synthetic Powertrain", "Generated",
                    "generator", "n/a"};
    project.nodes = shared;
    for (std::size_t i = spec.shared_nodes; i < spec.nodes[p]; ++i) {
      char nid[32];
      std::snprintf(nid, sizeof nid, "p%d-%04zu", p + 1, i);
      project.nodes.push_back(
          random_element(rng, nid, weighted_type(rng), 0.2, false));
    }
    std::shuffle(project.nodes.begin(), project.nodes.end(), rng);
    // A link with at least one project-private endpoint cannot appear in
    // the other two projects.
    add_consistent_links(rng, project.nodes, spec.links[p], project.links,
                         [](const ElementRecord& a, const ElementRecord& b) {
                           return a.id[0] != 's' || b.id[0] != 's';
                         });
    trio.push_back(std::move(project));
  }
  return trio;
}

}  // namespace fusalens
