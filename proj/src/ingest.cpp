#include "fusalens/ingest.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>

#include "fusalens/csv.hpp"
#include "fusalens/error.hpp"
#include "text_util.hpp"

namespace fusalens {
namespace {

// Maps each expected column name to its position in the header row.
template <std::size_t N>
std::array<std::size_t, N> resolve_header(
    const csv::Row& header, const std::array<std::string_view, N>& expected,
    std::string_view file) {
  std::map<std::string, std::size_t> positions;
  for (std::size_t i = 0; i < header.size(); ++i) {
    const std::string name = detail::lower(detail::trim(header[i]));
    if (std::find(expected.begin(), expected.end(), name) == expected.end())
      throw ParseError(std::string(file) + ": unexpected header column '" +
                       header[i] + "'");
    if (!positions.emplace(name, i).second)
      throw ParseError(std::string(file) + ": repeated header column '" +
                       header[i] + "'");
  }
  std::array<std::size_t, N> out{};
  for (std::size_t k = 0; k < N; ++k) {
    const auto it = positions.find(std::string(expected[k]));
    if (it == positions.end())
      throw ParseError(std::string(file) + ": missing header column '" +
                       std::string(expected[k]) + "'");
    out[k] = it->second;
  }
  return out;
}

std::string row_prefix(std::string_view file, std::size_t row) {
  return std::string(file) + " row " + std::to_string(row) + ": ";
}

constexpr std::array<std::string_view, 7> kNodeColumns = {
    "id", "name", "type", "asil", "severity", "exposure", "controllability"};
constexpr std::array<std::string_view, 3> kLinkColumns = {"source", "target",
                                                          "relation"};

}  // namespace

std::vector<ElementRecord> parse_nodes_csv(std::string_view content) {
  const auto rows = csv::parse(content);
  if (rows.empty()) throw ParseError("nodes: missing header row");
  const auto col = resolve_header(rows.front(), kNodeColumns, "nodes");

  std::vector<ElementRecord> nodes;
  nodes.reserve(rows.size() - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != rows.front().size())
      throw ParseError(row_prefix("nodes", r) + "expected " +
                       std::to_string(rows.front().size()) + " fields, got " +
                       std::to_string(row.size()));
    try {
      ElementRecord rec;
      rec.id = std::string(detail::trim(row[col[0]]));
      rec.name = row[col[1]];
      rec.type = std::string(detail::trim(row[col[2]]));
      rec.asil = parse_asil(row[col[3]]);
      rec.sec = parse_sec(row[col[4]], row[col[5]], row[col[6]]);
      nodes.push_back(std::move(rec));
    } catch (const ParseError& e) {
      throw ParseError(row_prefix("nodes", r) + e.what());
    }
  }
  return nodes;
}

std::vector<LinkRecord> parse_links_csv(std::string_view content,
                                        const TypeRegistry& registry) {
  const auto rows = csv::parse(content);
  if (rows.empty()) return {};
  const auto col = resolve_header(rows.front(), kLinkColumns, "links");

  std::vector<LinkRecord> links;
  links.reserve(rows.size() - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != rows.front().size())
      throw ParseError(row_prefix("links", r) + "expected " +
                       std::to_string(rows.front().size()) + " fields, got " +
                       std::to_string(row.size()));
    LinkRecord link;
    link.source = std::string(detail::trim(row[col[0]]));
    link.target = std::string(detail::trim(row[col[1]]));
    link.relation = registry.canonical_relation(detail::trim(row[col[2]]));
    links.push_back(std::move(link));
  }
  return links;
}

std::string format_nodes_csv(std::span<const ElementRecord> nodes) {
  std::string out = "id,name,type,asil,severity,exposure,controllability\n";
  for (const auto& n : nodes) {
    out += csv::format_row(
        {n.id, n.name, n.type, std::string(render_asil(n.asil)),
         render_sec_component(SecComponent::Severity, n.sec.severity),
         render_sec_component(SecComponent::Exposure, n.sec.exposure),
         render_sec_component(SecComponent::Controllability,
                              n.sec.controllability)});
  }
  return out;
}

std::string format_links_csv(std::span<const LinkRecord> links) {
  std::string out = "source,target,relation\n";
  for (const auto& l : links)
    out += csv::format_row({l.source, l.target, l.relation});
  return out;
}

ValidationReport validate_project(std::span<const ElementRecord> nodes,
                                  std::span<const LinkRecord> links,
                                  const TypeRegistry& registry) {
  ValidationReport report;
  auto error = [&](std::string_view code, std::string message,
                   std::string_view file, std::size_t row) {
    report.errors.push_back(
        {std::string(code), std::move(message), std::string(file), row});
  };
  auto warn = [&](std::string_view code, std::string message,
                  std::string_view file, std::size_t row) {
    report.warnings.push_back(
        {std::string(code), std::move(message), std::string(file), row});
  };

  std::unordered_map<std::string_view, const ElementRecord*> by_id;
  std::set<std::string_view> unregistered_types;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    if (n.id.empty()) {
      error(issue::kEmptyId, "node has an empty id", "nodes", i + 1);
      continue;
    }
    if (!by_id.emplace(n.id, &n).second)
      error(issue::kDuplicateNodeId, "duplicate node id '" + n.id + "'",
            "nodes", i + 1);
    if (!registry.has_element_type(n.type) &&
        unregistered_types.insert(n.type).second)
      warn(issue::kUnregisteredType,
           "element type '" + n.type + "' is not registered", "nodes", i + 1);
  }

  std::set<std::tuple<std::string_view, std::string_view, std::string_view>>
      seen_links;
  std::set<std::string_view> unregistered_relations;
  for (std::size_t i = 0; i < links.size(); ++i) {
    const auto& l = links[i];
    const std::size_t row = i + 1;
    const auto src = by_id.find(l.source);
    const auto dst = by_id.find(l.target);
    bool broken = false;
    if (src == by_id.end()) {
      error(issue::kDanglingSource,
            "link source '" + l.source + "' is not a node", "links", row);
      broken = true;
    }
    if (dst == by_id.end()) {
      error(issue::kDanglingTarget,
            "link target '" + l.target + "' is not a node", "links", row);
      broken = true;
    }
    if (l.source == l.target) {
      error(issue::kSelfLoop, "link connects '" + l.source + "' to itself",
            "links", row);
      broken = true;
    }
    if (!seen_links.emplace(l.source, l.target, l.relation).second) {
      warn(issue::kDuplicateLink,
           "duplicate link " + l.source + " -> " + l.target + " (" +
               l.relation + ") dropped",
           "links", row);
      continue;
    }
    const RelationType* rel = registry.find_relation(l.relation);
    if (!rel) {
      if (unregistered_relations.insert(l.relation).second)
        warn(issue::kUnregisteredRelation,
             "relation '" + l.relation + "' is not registered", "links", row);
      continue;
    }
    if (broken) continue;
    const auto& st = src->second->type;
    const auto& tt = dst->second->type;
    const bool forward = st == rel->subject_type && tt == rel->object_type;
    const bool backward = st == rel->object_type && tt == rel->subject_type;
    if (!forward && !backward)
      warn(issue::kRelationTypeMismatch,
           "relation '" + l.relation + "' expects " + rel->subject_type +
               " -> " + rel->object_type + " but links " + st + " -> " + tt,
           "links", row);
  }
  return report;
}

ValidationFailed::ValidationFailed(ValidationReport report)
    : Error(ErrorCode::Validation,
            "project has " + std::to_string(report.errors.size()) +
                " validation error(s)" +
                (report.errors.empty()
                     ? std::string()
                     : ": " + report.errors.front().code + " " +
                           report.errors.front().message)),
      report_(std::move(report)) {}

}  // namespace fusalens
