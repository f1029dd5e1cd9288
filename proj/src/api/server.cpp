#include <atomic>
#include <charconv>
#include <set>

#include <httplib.h>
#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "fusalens/analytics.hpp"
#include "fusalens/api.hpp"
#include "fusalens/compare.hpp"
#include "fusalens/csv.hpp"
#include "fusalens/error.hpp"
#include "fusalens/fixtures.hpp"
#include "fusalens/ingest.hpp"
#include "fusalens/layout.hpp"
#include "fusalens/serialize.hpp"
#include "fusalens/trace.hpp"
#include "text_util.hpp"

namespace fusalens {

using nlohmann::json;

void ServerConfig::validate() const {
  if (port < 0 || port > 65535)
    throw InvalidArgument("port " + std::to_string(port) + " is out of range");
  static const std::set<std::string> levels = {"error", "warn", "info", "debug"};
  if (!levels.count(log_level))
    throw InvalidArgument("unknown log level '" + log_level + "'");
  if (data_dir.empty()) throw InvalidArgument("data directory must be set");
}

std::string export_selection_csv(const GraphSnapshot& snapshot,
                                 std::span<const std::string> node_ids) {
  std::vector<std::string> missing;
  for (const auto& id : node_ids)
    if (!snapshot.contains(id)) missing.push_back(id);
  if (!missing.empty()) {
    std::string list;
    for (const auto& id : missing) list += (list.empty() ? "" : ", ") + id;
    throw NotFoundError("unknown node ids in project '" + snapshot.project_id() +
                        "': " + list);
  }
  std::string out = csv::format_row({"type", "asil", "name", "id"});
  for (const auto& id : node_ids) {
    const auto& n = snapshot.node(id);
    out += csv::format_row({n.type, std::string(render_asil(n.asil)), n.name, n.id});
  }
  return out;
}

std::size_t seed_demo_projects(ProjectStore& store) {
  std::size_t committed = 0;
  for (const auto& fx : demo_fixtures()) {
    if (store.contains(fx.meta.project_id)) continue;
    store.commit_project(fx.meta, parse_nodes_csv(fx.nodes_csv),
                         parse_links_csv(fx.links_csv));
    ++committed;
  }
  return committed;
}

namespace {

// A query or body parameter that could not be interpreted.
class BadParameter : public InvalidArgument {
 public:
  BadParameter(std::string name, const std::string& message)
      : InvalidArgument("parameter '" + name + "': " + message),
        name_(std::move(name)) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse:
    case ErrorCode::InvalidArgument: return 400;
    case ErrorCode::NotFound: return 404;
    case ErrorCode::Validation: return 422;
    case ErrorCode::Io: return 500;
  }
  return 500;
}

json error_body(const std::string& code, const std::string& message) {
  return {{"error", {{"code", code}, {"message", message}}}};
}

void send_json(httplib::Response& res, const json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_csv(httplib::Response& res, std::string body,
              const std::string& filename) {
  res.status = 200;
  res.set_header("Content-Disposition",
                 "attachment; filename=\"" + filename + "\"");
  res.set_content(std::move(body), "text/csv; charset=utf-8");
}

template <typename F>
httplib::Server::Handler guarded(F f) {
  return [f = std::move(f)](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const BadParameter& e) {
      auto body = error_body("BAD_PARAMETER", e.what());
      body["error"]["parameter"] = e.name();
      send_json(res, body, 400);
    } catch (const ValidationFailed& e) {
      auto body = error_body(to_string(e.code()), e.what());
      const json report = e.report();
      body["errors"] = report["errors"];
      body["warnings"] = report["warnings"];
      send_json(res, body, 422);
    } catch (const Error& e) {
      send_json(res, error_body(to_string(e.code()), e.what()),
                status_for(e.code()));
    } catch (const json::exception& e) {
      send_json(res, error_body("PARSE_ERROR", e.what()), 400);
    } catch (const std::exception& e) {
      spdlog::error("{} {}: {}", req.method, req.path, e.what());
      send_json(res, error_body("INTERNAL", "internal error"), 500);
    }
  };
}

std::optional<std::string> query(const httplib::Request& req,
                                 const std::string& name) {
  if (!req.has_param(name)) return std::nullopt;
  return req.get_param_value(name);
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  for (auto& part : detail::split(text, ','))
    if (!part.empty()) out.push_back(std::move(part));
  return out;
}

template <typename T>
T parse_number(const std::string& name, const std::string& text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty())
    throw BadParameter(name, "expected a non-negative integer, got '" + text + "'");
  return value;
}

template <typename F>
auto as_parameter(const std::string& name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const BadParameter&) {
    throw;
  } catch (const Error& e) {
    throw BadParameter(name, e.what());
  }
}

json parse_body(const httplib::Request& req) {
  try {
    auto body = json::parse(req.body);
    if (!body.is_object()) throw BadParameter("body", "expected a JSON object");
    return body;
  } catch (const json::parse_error& e) {
    throw BadParameter("body", std::string("malformed JSON: ") + e.what());
  }
}

std::string body_string(const json& body, const std::string& name) {
  const auto it = body.find(name);
  if (it == body.end() || !it->is_string())
    throw BadParameter(name, "expected a string");
  return it->get<std::string>();
}

struct Selection {
  std::vector<std::shared_ptr<const GraphSnapshot>> owned;
  std::vector<const GraphSnapshot*> ptrs;
};

Selection load_projects(const ProjectStore& store, const httplib::Request& req,
                        std::size_t min_count) {
  const auto raw = query(req, "projects");
  if (!raw) throw BadParameter("projects", "required");
  const auto ids = split_list(*raw);
  if (ids.size() < min_count)
    throw BadParameter("projects", "needs at least " + std::to_string(min_count) +
                                       " project id(s)");
  std::set<std::string> seen;
  Selection sel;
  for (const auto& id : ids) {
    if (!seen.insert(id).second)
      throw BadParameter("projects", "project '" + id + "' listed twice");
    sel.owned.push_back(store.get_graph(id));
    sel.ptrs.push_back(sel.owned.back().get());
  }
  return sel;
}

// Upload accepted as multipart {meta, nodes, links} or as a JSON document
// {meta, nodes, links} where nodes and links are CSV text or record arrays.
CommitResult handle_upload(ProjectStore& store, const httplib::Request& req) {
  ProjectMeta meta;
  std::vector<ElementRecord> nodes;
  std::vector<LinkRecord> links;
  if (req.is_multipart_form_data()) {
    auto part = [&](const char* name, const char* alt) -> std::optional<std::string> {
      if (req.has_file(name)) return req.get_file_value(name).content;
      if (req.has_file(alt)) return req.get_file_value(alt).content;
      return std::nullopt;
    };
    const auto meta_text = part("meta", "meta.json");
    const auto nodes_text = part("nodes", "nodes.csv");
    const auto links_text = part("links", "links.csv");
    if (!meta_text) throw BadParameter("meta", "multipart field missing");
    if (!nodes_text) throw BadParameter("nodes", "multipart field missing");
    meta = as_parameter("meta", [&] { return json::parse(*meta_text).get<ProjectMeta>(); });
    nodes = as_parameter("nodes", [&] { return parse_nodes_csv(*nodes_text); });
    if (links_text)
      links = as_parameter("links", [&] { return parse_links_csv(*links_text); });
  } else {
    const auto body = parse_body(req);
    if (!body.contains("meta")) throw BadParameter("meta", "required");
    meta = as_parameter("meta", [&] { return body.at("meta").get<ProjectMeta>(); });
    const auto nodes_it = body.find("nodes");
    if (nodes_it == body.end()) throw BadParameter("nodes", "required");
    nodes = as_parameter("nodes", [&] {
      return nodes_it->is_string() ? parse_nodes_csv(nodes_it->get<std::string>())
                                   : nodes_it->get<std::vector<ElementRecord>>();
    });
    if (const auto it = body.find("links"); it != body.end())
      links = as_parameter("links", [&] {
        return it->is_string() ? parse_links_csv(it->get<std::string>())
                               : it->get<std::vector<LinkRecord>>();
      });
  }
  return store.commit_project(meta, std::move(nodes), std::move(links));
}

LayoutConfig layout_config(const httplib::Request& req) {
  LayoutConfig cfg;
  if (const auto v = query(req, "groupBy"); v && !v->empty()) {
    as_parameter("groupBy", [&] { return group_key(ElementRecord{}, *v); });
    cfg.group_by = detail::lower(*v);
  }
  if (const auto v = query(req, "sizeBy"))
    cfg.size_by = as_parameter("sizeBy", [&] { return parse_size_by(*v); });
  if (const auto v = query(req, "colorBy"); v && !v->empty()) {
    as_parameter("colorBy", [&] { return group_key(ElementRecord{}, *v); });
    cfg.color_by = detail::lower(*v);
  }
  if (const auto v = query(req, "seed"))
    cfg.seed = parse_number<std::uint64_t>("seed", *v);
  return cfg;
}

std::map<std::string, Vec2> parse_pinned(const httplib::Request& req) {
  std::map<std::string, Vec2> pinned;
  const auto raw = query(req, "pinned");
  if (!raw || raw->empty()) return pinned;
  json doc;
  try {
    doc = json::parse(*raw);
  } catch (const json::parse_error&) {
    throw BadParameter("pinned", "expected a JSON object of [x, y] pairs");
  }
  if (!doc.is_object())
    throw BadParameter("pinned", "expected a JSON object of [x, y] pairs");
  for (const auto& [key, value] : doc.items()) {
    if (!value.is_array() || value.size() != 2 || !value[0].is_number() ||
        !value[1].is_number())
      throw BadParameter("pinned", "group '" + key + "' needs [x, y]");
    pinned[key] = {value[0].get<double>(), value[1].get<double>()};
  }
  return pinned;
}

void handle_checks(const GraphSnapshot& g, const httplib::Request& req,
                   httplib::Response& res) {
  static const std::set<std::string> known = {"orphans", "unassigned", "missing",
                                              "inheritance"};
  std::vector<std::string> checks = {"orphans", "unassigned", "missing",
                                     "inheritance"};
  if (const auto v = query(req, "checks")) {
    checks = split_list(*v);
    for (const auto& c : checks)
      if (!known.count(c)) throw BadParameter("checks", "unknown check '" + c + "'");
  }
  std::optional<std::set<std::string>> types;
  if (const auto v = query(req, "types"); v && !v->empty()) {
    const auto list = split_list(*v);
    types.emplace(list.begin(), list.end());
  }
  std::optional<std::size_t> dmin, dmax;
  if (const auto v = query(req, "degreeMin"))
    dmin = parse_number<std::size_t>("degreeMin", *v);
  if (const auto v = query(req, "degreeMax"))
    dmax = parse_number<std::size_t>("degreeMax", *v);
  if (dmin && dmax && *dmin > *dmax)
    throw BadParameter("degreeMin", "exceeds degreeMax");
  bool csv_format = false;
  if (const auto v = query(req, "format")) {
    if (*v == "csv") csv_format = true;
    else if (*v != "json") throw BadParameter("format", "expected json or csv");
  }

  const auto rules = RuleSet::defaults();
  const std::string& pid = g.project_id();
  json body = {{"project_id", pid}};
  std::vector<Finding> findings;
  for (const auto& c : checks) {
    if (c == "orphans") {
      const auto ids = find_orphans(g);
      for (const auto& id : ids) findings.push_back({"orphan", pid, id, "no links"});
      body["orphans"] = ids;
    } else if (c == "unassigned") {
      const auto ids = find_unassigned_asil(g, types);
      for (const auto& id : ids)
        findings.push_back({"unassigned", pid, id, g.node(id).type + " without ASIL"});
      body["unassigned"] = ids;
    } else if (c == "missing") {
      const auto report = check_missing_links(g, rules);
      for (const auto& r : report.rules)
        for (const auto& id : r.node_ids)
          findings.push_back({"missing:" + r.rule.relation, pid, id,
                              r.rule.subject_type + " without " + r.rule.relation +
                                  " link to " + r.rule.object_type});
      body["missing"] = report;
    } else {
      const auto found = check_asil_inheritance(g, rules);
      for (const auto& f : found) {
        std::string parents;
        for (const auto& p : f.parent_ids) parents += (parents.empty() ? "" : " ") + p;
        findings.push_back({"inheritance", pid, f.child_id,
                            "expected " + std::string(render_asil(f.expected_asil)) +
                                " from " + parents + ", found " +
                                std::string(render_asil(f.actual_asil))});
      }
      body["inheritance"] = found;
    }
  }
  if (dmin || dmax) {
    const std::size_t lo = dmin.value_or(0);
    const std::size_t hi = dmax.value_or(std::numeric_limits<std::size_t>::max());
    const auto ids = filter_by_degree(g, lo, hi);
    for (const auto& id : ids)
      findings.push_back({"degree", pid, id,
                          "degree " + std::to_string(degree(g, id))});
    body["degree"] = {{"min", lo}, {"max", dmax ? json(*dmax) : json(nullptr)},
                      {"node_ids", ids}};
  }
  if (csv_format) send_csv(res, findings_to_csv(findings), pid + "-checks.csv");
  else send_json(res, body);
}

std::string shared_nodes_csv(const std::vector<SharedElement>& shared,
                             const std::vector<const GraphSnapshot*>& snaps) {
  csv::Row header = {"id", "name", "asil_conflict"};
  for (const auto* s : snaps) header.push_back("asil:" + s->project_id());
  std::string out = csv::format_row(header);
  for (const auto& e : shared) {
    csv::Row row = {e.id, e.name, e.asil_conflict ? "true" : "false"};
    for (const auto& p : e.per_project) row.emplace_back(render_asil(p.asil));
    out += csv::format_row(row);
  }
  return out;
}

}  // namespace

struct ApiServer::Impl {
  ServerConfig config;
  std::unique_ptr<ProjectStore> store;
  httplib::Server server;
  std::atomic<bool> bound{false};

  void install_routes();
};

void ApiServer::Impl::install_routes() {
  auto& st = *store;
  auto& svr = server;

  svr.Get("/api/projects", guarded([&st](const httplib::Request&, httplib::Response& res) {
    send_json(res, {{"projects", st.list_projects()}});
  }));

  svr.Post("/api/projects", guarded([&st](const httplib::Request& req, httplib::Response& res) {
    const auto result = handle_upload(st, req);
    spdlog::info("committed project {} revision {}", result.project_id,
                 result.revision);
    send_json(res, result, 201);
  }));

  svr.Get("/api/projects/:id/graph",
          guarded([&st](const httplib::Request& req, httplib::Response& res) {
            send_json(res, snapshot_to_json(*st.get_graph(req.path_params.at("id"))));
          }));

  svr.Get("/api/projects/:id/layout",
          guarded([&st](const httplib::Request& req, httplib::Response& res) {
            const auto g = st.get_graph(req.path_params.at("id"));
            const auto cfg = layout_config(req);
            const auto pinned = parse_pinned(req);
            send_json(res, layout_project(*g, cfg, pinned));
          }));

  svr.Get("/api/projects/:id/nodes/search",
          guarded([&st](const httplib::Request& req, httplib::Response& res) {
            const auto g = st.get_graph(req.path_params.at("id"));
            const auto q = query(req, "q");
            if (!q) throw BadParameter("q", "required");
            send_json(res, {{"query", *q}, {"nodes", search_nodes(*g, *q)}});
          }));

  svr.Get("/api/projects/:id/nodes/:nodeId/neighbors",
          guarded([&st](const httplib::Request& req, httplib::Response& res) {
            const auto g = st.get_graph(req.path_params.at("id"));
            const auto& node_id = req.path_params.at("nodeId");
            const auto& node = g->node(node_id);
            std::optional<std::string> relation = query(req, "relation");
            if (relation && relation->empty()) relation.reset();
            if (relation) *relation = TypeRegistry::defaults().canonical_relation(*relation);
            json links = json::array();
            for (std::size_t li : g->incident_links(g->index_of(node_id))) {
              const auto& l = g->links()[li];
              if (!relation || l.relation == *relation) links.push_back(l);
            }
            send_json(res, {{"node", node},
                            {"neighbors",
                             relation ? neighbors(*g, node_id, *relation)
                                      : neighbors(*g, node_id)},
                            {"links", std::move(links)}});
          }));

  svr.Get("/api/projects/:id/checks",
          guarded([&st](const httplib::Request& req, httplib::Response& res) {
            handle_checks(*st.get_graph(req.path_params.at("id")), req, res);
          }));

  svr.Post("/api/projects/:id/trace",
           guarded([&st](const httplib::Request& req, httplib::Response& res) {
             const auto g = st.get_graph(req.path_params.at("id"));
             const auto body = parse_body(req);
             PathQuery q;
             q.source = body_string(body, "source");
             q.destination = body_string(body, "destination");
             if (body.contains("mode")) {
               const auto mode = body_string(body, "mode");
               q.mode = as_parameter("mode", [&] { return parse_trace_mode(mode); });
             }
             const auto path = find_path(*g, q);
             json out = {{"source", q.source},
                         {"destination", q.destination},
                         {"mode", std::string(to_string(q.mode))},
                         {"found", path.has_value()}};
             if (path) {
               const json result = trace_asils(*g, *path);
               out["path"] = result["path"];
               out["steps"] = result["steps"];
               out["flags"] = result["flags"];
             } else {
               out["path"] = nullptr;
               out["steps"] = json::array();
               out["flags"] = json::array();
             }
             send_json(res, out);
           }));

  svr.Get("/api/summary", guarded([&st](const httplib::Request& req, httplib::Response& res) {
    const auto sel = load_projects(st, req, 1);
    send_json(res, summarize(sel.ptrs));
  }));

  svr.Get("/api/compare/shared",
          guarded([&st](const httplib::Request& req, httplib::Response& res) {
            const auto sel = load_projects(st, req, 2);
            const auto nodes = shared_nodes(sel.ptrs);
            if (const auto v = query(req, "format"); v && *v != "json") {
              if (*v != "csv") throw BadParameter("format", "expected json or csv");
              send_csv(res, shared_nodes_csv(nodes, sel.ptrs), "shared-nodes.csv");
              return;
            }
            json highlights = json::object();
            for (const auto& n : nodes) highlights[n.id] = cross_highlight(n.id, sel.ptrs);
            json projects = json::array();
            for (const auto* s : sel.ptrs) projects.push_back(s->project_id());
            send_json(res, {{"projects", std::move(projects)},
                            {"nodes", nodes},
                            {"links", shared_links(sel.ptrs)},
                            {"subgraph", snapshot_to_json(shared_subgraph(sel.ptrs))},
                            {"highlights", std::move(highlights)}});
          }));

  svr.Post("/api/export/csv", guarded([&st](const httplib::Request& req, httplib::Response& res) {
    const auto body = parse_body(req);
    const auto project = body_string(body, "project");
    const auto it = body.find("nodeIds");
    if (it == body.end() || !it->is_array())
      throw BadParameter("nodeIds", "expected an array of node ids");
    std::vector<std::string> ids;
    for (const auto& v : *it) {
      if (!v.is_string()) throw BadParameter("nodeIds", "expected an array of node ids");
      ids.push_back(v.get<std::string>());
    }
    const auto g = st.get_graph(project);
    send_csv(res, export_selection_csv(*g, ids), project + "-selection.csv");
  }));

  svr.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
    if (!res.body.empty()) return httplib::Server::HandlerResponse::Unhandled;
    const std::string code = res.status == 404 ? "NOT_FOUND" : "HTTP_ERROR";
    const std::string message = res.status == 404
                                    ? "no route for " + req.method + " " + req.path
                                    : httplib::status_message(res.status);
    res.set_content(error_body(code, message).dump(), "application/json");
    return httplib::Server::HandlerResponse::Handled;
  });

  svr.set_logger([](const httplib::Request& req, const httplib::Response& res) {
    const auto level = res.status >= 500   ? spdlog::level::err
                       : res.status >= 400 ? spdlog::level::warn
                                           : spdlog::level::info;
    spdlog::log(level, "{} {} {} {}B", req.method, req.path, res.status,
                res.body.size());
  });
}

ApiServer::ApiServer(ServerConfig config) : impl_(std::make_unique<Impl>()) {
  config.validate();
  impl_->config = std::move(config);
  spdlog::set_level(spdlog::level::from_str(impl_->config.log_level));
  try {
    impl_->store = std::make_unique<ProjectStore>(impl_->config.data_dir);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::Io, "cannot open data directory " +
                                   impl_->config.data_dir.string() + ": " + e.what());
  }
  if (impl_->config.seed_demo) {
    const auto n = seed_demo_projects(*impl_->store);
    spdlog::info("seeded {} demo project(s)", n);
  }
  impl_->install_routes();
}

ApiServer::~ApiServer() { stop(); }

int ApiServer::bind() {
  auto& c = impl_->config;
  int port = c.port;
  if (port == 0) {
    port = impl_->server.bind_to_any_port(c.host);
    if (port < 0) throw Error(ErrorCode::Io, "cannot bind an ephemeral port on " + c.host);
  } else if (!impl_->server.bind_to_port(c.host, port)) {
    throw Error(ErrorCode::Io, "cannot bind " + c.host + ":" + std::to_string(port));
  }
  impl_->bound = true;
  spdlog::info("listening on {}:{}", c.host, port);
  return port;
}

void ApiServer::listen() {
  if (!impl_->bound) throw InvalidArgument("listen() before bind()");
  impl_->server.listen_after_bind();
}

void ApiServer::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

bool ApiServer::running() const { return impl_->server.is_running(); }

ProjectStore& ApiServer::store() { return *impl_->store; }

const ServerConfig& ApiServer::config() const { return impl_->config; }

}  // namespace fusalens
