#include "fusalens/serialize.hpp"

#include "fusalens/error.hpp"

namespace fusalens {

namespace {

std::string string_field(const nlohmann::json& j, const char* key,
                         bool required = false) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) {
    if (required)
      throw ParseError(std::string("missing field '") + key + "'");
    return {};
  }
  if (!it->is_string())
    throw ParseError(std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

}  // namespace

void to_json(nlohmann::json& j, const SecTriple& sec) {
  j = nlohmann::json::object();
  for (SecComponent c : kSecComponents)
    j[std::string(component_name(c))] = render_sec_component(c, sec.get(c));
}

void to_json(nlohmann::json& j, const ElementRecord& node) {
  j = {{"id", node.id},
       {"name", node.name},
       {"type", node.type},
       {"asil", std::string(render_asil(node.asil))},
       {"severity", render_sec_component(SecComponent::Severity,
                                         node.sec.severity)},
       {"exposure", render_sec_component(SecComponent::Exposure,
                                         node.sec.exposure)},
       {"controllability",
        render_sec_component(SecComponent::Controllability,
                             node.sec.controllability)}};
}

void from_json(const nlohmann::json& j, ElementRecord& node) {
  if (!j.is_object()) throw ParseError("node must be an object");
  node.id = string_field(j, "id", true);
  node.name = string_field(j, "name");
  node.type = string_field(j, "type");
  node.asil = parse_asil(string_field(j, "asil"));
  node.sec = parse_sec(string_field(j, "severity"), string_field(j, "exposure"),
                       string_field(j, "controllability"));
}

void to_json(nlohmann::json& j, const LinkRecord& link) {
  j = {{"source", link.source},
       {"target", link.target},
       {"relation", link.relation}};
}

void from_json(const nlohmann::json& j, LinkRecord& link) {
  if (!j.is_object()) throw ParseError("link must be an object");
  link.source = string_field(j, "source", true);
  link.target = string_field(j, "target", true);
  link.relation = TypeRegistry::defaults().canonical_relation(
      string_field(j, "relation", true));
}

void to_json(nlohmann::json& j, const ProjectMeta& meta) {
  j = {{"project_id", meta.project_id}, {"name", meta.name},
       {"system", meta.system},         {"department", meta.department},
       {"in_charge", meta.in_charge},   {"location", meta.location}};
}

void from_json(const nlohmann::json& j, ProjectMeta& meta) {
  if (!j.is_object()) throw ParseError("meta must be an object");
  meta.project_id = string_field(j, "project_id", true);
  meta.name = string_field(j, "name");
  meta.system = string_field(j, "system");
  meta.department = string_field(j, "department");
  meta.in_charge = string_field(j, "in_charge");
  meta.location = string_field(j, "location");
}

void to_json(nlohmann::json& j, const ValidationIssue& issue) {
  j = {{"code", issue.code},
       {"message", issue.message},
       {"file", issue.file},
       {"row", issue.row}};
}

void to_json(nlohmann::json& j, const ValidationReport& report) {
  j = {{"errors", report.errors}, {"warnings", report.warnings}};
}

nlohmann::json snapshot_to_json(const GraphSnapshot& snapshot) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& n : snapshot.nodes()) nodes.push_back(n);
  nlohmann::json links = nlohmann::json::array();
  for (const auto& l : snapshot.links()) links.push_back(l);
  return {{"meta", snapshot.meta()},
          {"revision", snapshot.revision()},
          {"nodes", std::move(nodes)},
          {"links", std::move(links)}};
}

void to_json(nlohmann::json& j, const ProjectSummary& summary) {
  j = {{"meta", summary.meta},
       {"node_count", summary.node_count},
       {"link_count", summary.link_count},
       {"revision", summary.revision}};
}

void to_json(nlohmann::json& j, const CommitResult& result) {
  j = {{"project_id", result.project_id},
       {"revision", result.revision},
       {"warnings", result.warnings}};
}

void to_json(nlohmann::json& j, const LinkRule& rule) {
  j = {{"subject_type", rule.subject_type},
       {"relation", rule.relation},
       {"object_type", rule.object_type},
       {"description", rule.description}};
}

void to_json(nlohmann::json& j, const RuleViolationReport& report) {
  nlohmann::json rules = nlohmann::json::array();
  for (const auto& r : report.rules)
    rules.push_back({{"rule", r.rule}, {"node_ids", r.node_ids}});
  j = {{"rules", std::move(rules)}, {"total", report.total}};
}

void to_json(nlohmann::json& j, const InheritanceDiscrepancy& finding) {
  j = {{"child_id", finding.child_id},
       {"parent_ids", finding.parent_ids},
       {"expected_asil", std::string(render_asil(finding.expected_asil))},
       {"actual_asil", std::string(render_asil(finding.actual_asil))},
       {"relation", finding.relation}};
}

namespace {

nlohmann::json rows_json(const std::vector<SummaryRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows)
    out.push_back({{"label", r.label}, {"counts", r.counts}, {"shared", r.shared}});
  return out;
}

}  // namespace

void to_json(nlohmann::json& j, const SummaryTable& table) {
  j = {{"projects", table.projects},
       {"types", rows_json(table.types)},
       {"relations", rows_json(table.relations)},
       {"asils", rows_json(table.asils)}};
}

void to_json(nlohmann::json& j, const SharedElement& element) {
  nlohmann::json per = nlohmann::json::array();
  for (const auto& p : element.per_project)
    per.push_back({{"project_id", p.project_id},
                   {"type", p.type},
                   {"asil", std::string(render_asil(p.asil))},
                   {"sec", p.sec},
                   {"degree", p.degree}});
  j = {{"id", element.id},
       {"name", element.name},
       {"per_project", std::move(per)},
       {"asil_conflict", element.asil_conflict}};
}

void to_json(nlohmann::json& j, const SharedLink& link) {
  j = {{"source", link.source},
       {"target", link.target},
       {"relation", link.relation},
       {"present_in", link.present_in}};
}

void to_json(nlohmann::json& j, const ProjectNeighborhood& hood) {
  j = {{"project_id", hood.project_id},
       {"neighbor_ids", hood.neighbor_ids},
       {"relation_counts", hood.relation_counts}};
}

void to_json(nlohmann::json& j, const TracePath& path) {
  j = {{"node_ids", path.node_ids}, {"links", path.links}};
}

void to_json(nlohmann::json& j, const SecMismatch& flag) {
  j = {{"node_id", flag.node_id},
       {"component", std::string(component_name(flag.component))},
       {"actual", render_sec_component(flag.component, flag.actual)},
       {"expected", render_sec_component(flag.component, flag.expected)},
       {"from_node", flag.from_node}};
}

void to_json(nlohmann::json& j, const TraceResult& result) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : result.steps)
    steps.push_back({{"id", s.id},
                     {"name", s.name},
                     {"type", s.type},
                     {"asil", std::string(render_asil(s.asil))},
                     {"sec", s.sec}});
  j = {{"path", result.path}, {"steps", std::move(steps)}, {"flags", result.flags}};
}

void to_json(nlohmann::json& j, const Vec2& v) { j = {v.x, v.y}; }

void to_json(nlohmann::json& j, const LayoutConfig& config) {
  j = {{"group_by", config.group_by},
       {"size_by", std::string(to_string(config.size_by))},
       {"color_by", config.color_by},
       {"seed", config.seed},
       {"iterations", config.iterations},
       {"base_radius", config.base_radius},
       {"group_padding", config.group_padding},
       {"canvas_width", config.canvas_width},
       {"canvas_height", config.canvas_height}};
}

void to_json(nlohmann::json& j, const LayoutResult& layout) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& n : layout.nodes)
    nodes.push_back({{"id", n.id},
                     {"center", n.center},
                     {"radius", n.radius},
                     {"group", n.group}});
  nlohmann::json groups = nlohmann::json::array();
  for (std::size_t i = 0; i < layout.groups.size(); ++i) {
    const auto& g = layout.groups[i];
    groups.push_back({{"key", g.key},
                      {"label", g.label},
                      {"center", g.center},
                      {"radius", g.radius},
                      {"member_ids", g.member_ids},
                      {"hull", layout.hulls[i].vertices}});
  }
  j = {{"layout_id", layout.layout_id},
       {"config", layout.config},
       {"nodes", std::move(nodes)},
       {"groups", std::move(groups)}};
}

}  // namespace fusalens
