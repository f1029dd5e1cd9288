#pragma once

// JSON mappings for the library's value types. The field names here are the
// wire format served by the HTTP API and written to the on-disk store.

#include <nlohmann/json.hpp>

#include "fusalens/analytics.hpp"
#include "fusalens/compare.hpp"
#include "fusalens/core_model.hpp"
#include "fusalens/graph.hpp"
#include "fusalens/ingest.hpp"
#include "fusalens/layout.hpp"
#include "fusalens/store.hpp"
#include "fusalens/trace.hpp"

namespace fusalens {

void to_json(nlohmann::json& j, const SecTriple& sec);
void to_json(nlohmann::json& j, const ElementRecord& node);
void from_json(const nlohmann::json& j, ElementRecord& node);
void to_json(nlohmann::json& j, const LinkRecord& link);
void from_json(const nlohmann::json& j, LinkRecord& link);
void to_json(nlohmann::json& j, const ProjectMeta& meta);
void from_json(const nlohmann::json& j, ProjectMeta& meta);
void to_json(nlohmann::json& j, const ValidationIssue& issue);
void to_json(nlohmann::json& j, const ValidationReport& report);

void to_json(nlohmann::json& j, const ProjectSummary& summary);
void to_json(nlohmann::json& j, const CommitResult& result);

void to_json(nlohmann::json& j, const LinkRule& rule);
void to_json(nlohmann::json& j, const RuleViolationReport& report);
void to_json(nlohmann::json& j, const InheritanceDiscrepancy& finding);
void to_json(nlohmann::json& j, const SummaryTable& table);

void to_json(nlohmann::json& j, const SharedElement& element);
void to_json(nlohmann::json& j, const SharedLink& link);
void to_json(nlohmann::json& j, const ProjectNeighborhood& hood);

void to_json(nlohmann::json& j, const TracePath& path);
void to_json(nlohmann::json& j, const SecMismatch& flag);
void to_json(nlohmann::json& j, const TraceResult& result);

void to_json(nlohmann::json& j, const Vec2& v);
void to_json(nlohmann::json& j, const LayoutConfig& config);
void to_json(nlohmann::json& j, const LayoutResult& layout);

/// {meta, revision, nodes, links}.
nlohmann::json snapshot_to_json(const GraphSnapshot& snapshot);

}  // namespace fusalens
