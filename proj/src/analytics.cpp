#include "fusalens/analytics.hpp"

#include <algorithm>
#include <map>

#include <nlohmann/json.hpp>

#include "fusalens/csv.hpp"
#include "fusalens/error.hpp"

namespace fusalens {
namespace {

std::string required_string(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_string())
    throw ParseError(std::string("rule is missing string field '") + key + "'");
  return j.at(key).get<std::string>();
}

std::vector<LinkRule> parse_link_rules(const nlohmann::json& array) {
  if (!array.is_array()) throw ParseError("link rules must be an array");
  std::vector<LinkRule> rules;
  const auto& registry = TypeRegistry::defaults();
  for (const auto& item : array) {
    LinkRule rule{required_string(item, "subject_type"),
                  registry.canonical_relation(required_string(item, "relation")),
                  required_string(item, "object_type"),
                  item.value("description", std::string())};
    rules.push_back(std::move(rule));
  }
  return rules;
}

std::vector<InheritanceRule> parse_inheritance(const nlohmann::json& array) {
  if (!array.is_array()) throw ParseError("inheritance must be an array");
  std::vector<InheritanceRule> rules;
  const auto& registry = TypeRegistry::defaults();
  for (const auto& item : array)
    rules.push_back(
        {required_string(item, "parent_type"),
         registry.canonical_relation(required_string(item, "relation")),
         required_string(item, "child_type")});
  return rules;
}

}  // namespace

RuleSet RuleSet::defaults() {
  RuleSet rules;
  rules.link_rules = {
      {"MB", "associatedHE", "HzE",
       "Each MB should have a Hazardous Event identified for it"},
      {"HzE", "associatedSG", "SG",
       "Each HzE should have a Safety Goal assigned to it"},
      {"SG", "associatedFSR", "FSR",
       "Each SG should have a Functional Safety Requirement"},
      {"FSR", "associatedTSR", "TSR",
       "Each FSR should have a Technical Safety Requirement"},
  };
  rules.inheritance = {
      {"HzE", "associatedSG", "SG"},
      {"SG", "associatedFSR", "FSR"},
      {"FSR", "associatedTSR", "TSR"},
  };
  return rules;
}

RuleSet RuleSet::from_json(const nlohmann::json& document) {
  RuleSet rules = defaults();
  if (document.is_array()) {
    rules.link_rules = parse_link_rules(document);
    return rules;
  }
  if (!document.is_object())
    throw ParseError("rule set must be an array or an object");
  if (document.contains("link_rules"))
    rules.link_rules = parse_link_rules(document.at("link_rules"));
  if (document.contains("inheritance"))
    rules.inheritance = parse_inheritance(document.at("inheritance"));
  return rules;
}

std::vector<std::string> find_orphans(const GraphSnapshot& snapshot) {
  return filter_by_degree(snapshot, 0, 0);
}

std::vector<std::string> filter_by_degree(const GraphSnapshot& snapshot,
                                          std::size_t min, std::size_t max) {
  if (min > max)
    throw InvalidArgument("degree range is empty: min " + std::to_string(min) +
                          " > max " + std::to_string(max));
  std::vector<std::string> out;
  for (std::size_t i = 0; i < snapshot.node_count(); ++i) {
    const std::size_t d = snapshot.incident_links(i).size();
    if (d >= min && d <= max) out.push_back(snapshot.nodes()[i].id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> find_unassigned_asil(
    const GraphSnapshot& snapshot,
    const std::optional<std::set<std::string>>& type_filter) {
  std::vector<std::string> out;
  for (const auto& n : snapshot.nodes()) {
    if (n.asil != Asil::Unassigned) continue;
    if (type_filter && !type_filter->count(n.type)) continue;
    out.push_back(n.id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

RuleViolationReport check_missing_links(const GraphSnapshot& snapshot,
                                        const RuleSet& rules) {
  RuleViolationReport report;
  for (const auto& rule : rules.link_rules) {
    RuleViolations v{rule, {}};
    for (std::size_t i = 0; i < snapshot.node_count(); ++i) {
      const auto& n = snapshot.nodes()[i];
      if (n.type != rule.subject_type) continue;
      const auto incident = snapshot.incident_links(i);
      const bool satisfied =
          std::any_of(incident.begin(), incident.end(), [&](std::size_t li) {
            return snapshot.links()[li].relation == rule.relation;
          });
      if (!satisfied) v.node_ids.push_back(n.id);
    }
    std::sort(v.node_ids.begin(), v.node_ids.end());
    report.total += v.node_ids.size();
    report.rules.push_back(std::move(v));
  }
  return report;
}

std::vector<InheritanceDiscrepancy> check_asil_inheritance(
    const GraphSnapshot& snapshot, const RuleSet& rules) {
  std::vector<InheritanceDiscrepancy> out;
  for (const auto& rule : rules.inheritance) {
    std::vector<InheritanceDiscrepancy> found;
    for (std::size_t i = 0; i < snapshot.node_count(); ++i) {
      const auto& child = snapshot.nodes()[i];
      if (child.type != rule.child_type || child.asil == Asil::Unassigned)
        continue;
      std::set<std::string> parents;
      Asil expected = Asil::Unassigned;
      for (std::size_t li : snapshot.incident_links(i)) {
        const auto& link = snapshot.links()[li];
        if (link.relation != rule.relation) continue;
        const auto& other_id =
            link.source == child.id ? link.target : link.source;
        const auto& parent = snapshot.node(other_id);
        if (parent.type != rule.parent_type || parent.asil == Asil::Unassigned)
          continue;
        parents.insert(parent.id);
        if (expected == Asil::Unassigned ||
            compare_asil(parent.asil, expected) == AsilOrdering::Greater)
          expected = parent.asil;
      }
      if (parents.empty() || expected == child.asil) continue;
      found.push_back({child.id, {parents.begin(), parents.end()}, expected,
                       child.asil, rule.relation});
    }
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
      return a.child_id < b.child_id;
    });
    out.insert(out.end(), std::make_move_iterator(found.begin()),
               std::make_move_iterator(found.end()));
  }
  return out;
}

namespace {

// Registered labels first, in registry order, then extras alphabetically.
std::vector<std::string> row_labels(const std::vector<std::string>& registered,
                                    const std::set<std::string>& seen) {
  std::vector<std::string> labels = registered;
  for (const auto& s : seen)
    if (std::find(registered.begin(), registered.end(), s) == registered.end())
      labels.push_back(s);
  return labels;
}

std::vector<SummaryRow> build_rows(
    const std::vector<std::string>& labels, std::size_t projects,
    const std::vector<std::map<std::string, std::size_t>>& per_project,
    const std::map<std::string, std::size_t>& shared) {
  std::vector<SummaryRow> rows;
  for (const auto& label : labels) {
    SummaryRow row{label, std::vector<std::size_t>(projects, 0), 0};
    for (std::size_t p = 0; p < projects; ++p)
      if (auto it = per_project[p].find(label); it != per_project[p].end())
        row.counts[p] = it->second;
    if (auto it = shared.find(label); it != shared.end())
      row.shared = it->second;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

SummaryTable summarize(SnapshotList snapshots,
                       std::span<const SharedElement> shared,
                       std::span<const SharedLink> links) {
  if (snapshots.empty())
    throw InvalidArgument("summary needs at least one project");
  const auto& registry = TypeRegistry::defaults();
  const std::size_t np = snapshots.size();

  std::vector<std::map<std::string, std::size_t>> types(np), relations(np),
      asils(np);
  std::set<std::string> seen_types, seen_relations;
  for (std::size_t p = 0; p < np; ++p) {
    for (const auto& n : snapshots[p]->nodes()) {
      ++types[p][n.type];
      ++asils[p][std::string(render_asil(n.asil))];
      seen_types.insert(n.type);
    }
    for (const auto& l : snapshots[p]->links()) {
      ++relations[p][l.relation];
      seen_relations.insert(l.relation);
    }
  }

  std::map<std::string, std::size_t> shared_types, shared_asils,
      shared_relations;
  for (const auto& el : shared) {
    const auto& first = el.per_project.front();
    ++shared_types[first.type];
    ++shared_asils[std::string(render_asil(first.asil))];
    seen_types.insert(first.type);
  }
  for (const auto& l : links) {
    ++shared_relations[l.relation];
    seen_relations.insert(l.relation);
  }

  std::vector<std::string> registered_types, registered_relations, asil_labels;
  for (const auto& t : registry.element_types())
    registered_types.push_back(t.label);
  for (const auto& r : registry.relation_types())
    registered_relations.push_back(r.label);
  for (Asil a : kAllAsils) asil_labels.emplace_back(render_asil(a));

  SummaryTable table;
  for (const GraphSnapshot* s : snapshots) table.projects.push_back(s->project_id());
  table.types = build_rows(row_labels(registered_types, seen_types), np, types,
                           shared_types);
  table.relations =
      build_rows(row_labels(registered_relations, seen_relations), np,
                 relations, shared_relations);
  table.asils = build_rows(asil_labels, np, asils, shared_asils);
  return table;
}

SummaryTable summarize(SnapshotList snapshots) {
  if (snapshots.size() < 2) return summarize(snapshots, {}, {});
  const auto nodes = shared_nodes(snapshots);
  const auto links = shared_links(snapshots);
  return summarize(snapshots, nodes, links);
}

std::string findings_to_csv(std::span<const Finding> findings) {
  std::string out = "check,project,node_id,details\n";
  for (const auto& f : findings)
    out += csv::format_row({f.check, f.project_id, f.node_id, f.details});
  return out;
}

}  // namespace fusalens
