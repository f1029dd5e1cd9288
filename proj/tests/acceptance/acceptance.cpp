// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fusalens/analytics.hpp"
#include "fusalens/api.hpp"
#include "fusalens/compare.hpp"
#include "fusalens/core_model.hpp"
#include "fusalens/csv.hpp"
#include "fusalens/generate.hpp"
#include "fusalens/ingest.hpp"
#include "fusalens/layout.hpp"
#include "fusalens/serialize.hpp"
#include "fusalens/store.hpp"
#include "fusalens/trace.hpp"
#include "oracles.hpp"
#include "schema_check.hpp"
#include "test_server.hpp"

using namespace fusalens;
using nlohmann::json;
using Ids = std::vector<std::string>;

namespace {

constexpr int kRandomProjects = 100;
constexpr int kRandomFamilies = 100;
constexpr int kRandomGraphs = 100;
constexpr int kLayoutProjects = 50;
constexpr int kLayoutSeeds = 3;
constexpr double kChecksTimeLimit = 10.0;
constexpr double kLayoutTimeLimit = 30.0;
constexpr double kOverlapEpsilon = 0.5;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::size_t failures = 0;

  void fail(const std::string& what) {
    pass = false;
    if (failures++ < 5) detail << " [" << what << "]";
  }
  void expect(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

std::vector<const GraphSnapshot*> pointers(const std::vector<GraphSnapshot>& snaps) {
  std::vector<const GraphSnapshot*> out;
  for (const auto& s : snaps) out.push_back(&s);
  return out;
}

// ---------------------------------------------------------------------------

void criterion_checks(Outcome& out) {
  const auto start = std::chrono::steady_clock::now();
  const auto rules = RuleSet::defaults();
  std::size_t comparisons = 0, nodes = 0, links = 0;
  for (int seed = 1; seed <= kRandomProjects; ++seed) {
    const auto p = random_project(seed, "R" + std::to_string(seed));
    const auto g = p.snapshot();
    nodes += g.node_count();
    links += g.link_count();
    const std::string tag = "seed " + std::to_string(seed);

    out.expect(find_orphans(g) == oracle::degree_range(g, 0, 0), tag + " orphans");
    ++comparisons;
    const std::size_t bounds[][2] = {{0, 0}, {1, 1}, {1, 3}, {2, 5}, {4, 600}};
    for (const auto& b : bounds) {
      out.expect(filter_by_degree(g, b[0], b[1]) == oracle::degree_range(g, b[0], b[1]),
                 tag + " degree");
      ++comparisons;
    }
    const std::optional<std::set<std::string>> filters[] = {
        std::nullopt, std::set<std::string>{"HzE"}, std::set<std::string>{"MB", "SG", "TSR"}};
    for (const auto& f : filters) {
      out.expect(find_unassigned_asil(g, f) == oracle::unassigned(g, f), tag + " unassigned");
      ++comparisons;
    }
    const auto report = check_missing_links(g, rules);
    std::size_t total = 0;
    for (std::size_t r = 0; r < rules.link_rules.size(); ++r) {
      const auto& rule = rules.link_rules[r];
      const auto expected = oracle::missing_links(g, rule.subject_type, rule.relation);
      out.expect(report.rules[r].node_ids == expected, tag + " missing");
      total += expected.size();
      ++comparisons;
    }
    out.expect(report.total == total, tag + " missing total");
  }
  const double elapsed = seconds_since(start);
  out.expect(elapsed < kChecksTimeLimit, "runtime over limit");
  out.detail << " " << kRandomProjects << " projects (" << nodes << " nodes, " << links
             << " links), " << comparisons << " comparisons, " << out.failures
             << " mismatches, " << elapsed << " s (limit " << kChecksTimeLimit << " s)";
}

// ---------------------------------------------------------------------------

bool subset_of(const Ids& a, const Ids& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

void criterion_compare(Outcome& out) {
  std::size_t subsets = 0, shared_node_total = 0, shared_link_total = 0;
  std::mt19937_64 rng(2024);
  for (int fam = 1; fam <= kRandomFamilies; ++fam) {
    FamilyOptions opts;
    opts.projects = 2 + rng() % 4;
    opts.id_pool = 60 + rng() % 140;
    opts.keep_rate = 0.6 + 0.3 * static_cast<double>(rng() % 100) / 100.0;
    opts.max_links = 100 + rng() % 500;
    const auto family = random_family(fam, opts);
    std::vector<GraphSnapshot> snaps;
    for (const auto& p : family) snaps.push_back(p.snapshot());
    const auto all = pointers(snaps);
    const std::string tag = "family " + std::to_string(fam);

    // Every subset of two or more projects, encoded as a bitmask.
    const std::size_t n = all.size();
    std::map<unsigned, std::pair<Ids, std::vector<LinkRecord>>> results;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<const GraphSnapshot*> sel;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) sel.push_back(all[i]);
      if (sel.size() < 2) continue;
      ++subsets;
      Ids node_ids;
      for (const auto& e : shared_nodes(sel)) node_ids.push_back(e.id);
      std::vector<LinkRecord> link_set;
      for (const auto& l : shared_links(sel))
        link_set.push_back({l.source, l.target, l.relation});
      out.expect(node_ids == oracle::shared_node_ids(sel), tag + " nodes");
      out.expect(link_set == oracle::shared_links(sel), tag + " links");
      if (sel.size() == n) {
        shared_node_total += node_ids.size();
        shared_link_total += link_set.size();
      }
      results[mask] = {std::move(node_ids), std::move(link_set)};
    }
    // Adding projects never grows the shared sets.
    for (const auto& [small, rs] : results)
      for (const auto& [big, rb] : results) {
        if (small == big || (small & big) != small) continue;
        out.expect(subset_of(rb.first, rs.first), tag + " node monotonicity");
        out.expect(std::includes(rs.second.begin(), rs.second.end(), rb.second.begin(),
                                 rb.second.end()),
                   tag + " link monotonicity");
      }
  }
  out.detail << " " << kRandomFamilies << " families, " << subsets
             << " project subsets checked; full-family shared totals " << shared_node_total
             << " nodes / " << shared_link_total << " links; " << out.failures
             << " mismatches";
}

// ---------------------------------------------------------------------------

void criterion_summary(Outcome& out) {
  const auto trio = summary_trio(7);
  std::vector<GraphSnapshot> snaps;
  for (const auto& p : trio) snaps.push_back(p.snapshot());
  const auto table = summarize(pointers(snaps));

  auto column = [](const std::vector<SummaryRow>& rows, std::size_t p) {
    std::size_t total = 0;
    for (const auto& r : rows) total += r.counts.at(p);
    return total;
  };
  auto shared = [](const std::vector<SummaryRow>& rows) {
    std::size_t total = 0;
    for (const auto& r : rows) total += r.shared;
    return total;
  };
  const std::size_t p1_nodes = column(table.types, 0);
  const std::size_t p1_links = column(table.relations, 0);
  const std::size_t p1_asil = column(table.asils, 0);
  const std::size_t s_nodes = shared(table.types);
  const std::size_t s_asil = shared(table.asils);
  const std::size_t s_links = shared(table.relations);
  out.expect(p1_nodes == 318, "P1 nodes");
  out.expect(p1_asil == 318, "P1 ASIL column");
  out.expect(p1_links == 675, "P1 links");
  out.expect(s_nodes == 15 && s_asil == 15, "S nodes");
  out.expect(s_links == 0, "S links");
  out.detail << " P1 column " << p1_nodes << " nodes / " << p1_links << " links, S column "
             << s_nodes << " nodes / " << s_links << " links (expected 318/675, 15/0)";
}

// ---------------------------------------------------------------------------

void criterion_paths(Outcome& out) {
  std::size_t queries = 0, reachable = 0;
  for (int seed = 1; seed <= kRandomGraphs; ++seed) {
    RandomProjectOptions opts;
    opts.max_nodes = 60;
    opts.max_links = 90;
    opts.awkward_names = false;
    const auto g = random_project(1000 + seed, "P", opts).snapshot();
    for (const bool directed : {false, true}) {
      const auto dist = oracle::all_pairs_distance(g, directed);
      const auto mode = directed ? TraceMode::Forward : TraceMode::Undirected;
      for (std::size_t i = 0; i < g.node_count(); ++i)
        for (std::size_t j = 0; j < g.node_count(); ++j) {
          const PathQuery q{g.nodes()[i].id, g.nodes()[j].id, mode};
          const auto p = find_path(g, q);
          ++queries;
          const bool expected = dist[i][j] >= 0;
          if (p.has_value() != expected) {
            out.fail("existence " + q.source + "->" + q.destination);
            continue;
          }
          if (!p) continue;
          ++reachable;
          if (static_cast<int>(p->links.size()) != dist[i][j])
            out.fail("length " + q.source + "->" + q.destination);
          const auto again = find_path(g, q);
          if (json(*p).dump() != json(*again).dump())
            out.fail("repeat " + q.source + "->" + q.destination);
        }
    }
  }
  out.detail << " " << kRandomGraphs << " graphs, " << queries << " queries (" << reachable
             << " reachable) in both modes, " << out.failures << " mismatches";
}

// ---------------------------------------------------------------------------

void criterion_trace(Outcome& out) {
  const auto g = load_fixture(demo_fixture("F1"));
  const auto path = find_path(g, {"n1", "n6", TraceMode::Undirected});
  if (!path) {
    out.fail("no path n1->n6");
    return;
  }
  const auto result = trace_asils(g, *path);
  Ids asils;
  for (const auto& s : result.steps) asils.emplace_back(render_asil(s.asil));
  out.expect(asils == Ids{"-", "-", "C", "C", "C", "C"}, "ASIL sequence");
  const bool one_flag =
      result.flags.size() == 1 && result.flags[0].node_id == "n4" &&
      result.flags[0].component == SecComponent::Controllability &&
      render_sec_component(SecComponent::Controllability, result.flags[0].actual) == "C2" &&
      render_sec_component(SecComponent::Controllability, result.flags[0].expected) == "C3";
  out.expect(one_flag, "SEC flag");
  std::string seq;
  for (const auto& a : asils) seq += (seq.empty() ? "" : ",") + a;
  out.detail << " ASILs [" << seq << "], " << result.flags.size() << " flag(s)";
  if (!result.flags.empty())
    out.detail << " first {" << result.flags[0].node_id << ", "
               << component_name(result.flags[0].component) << ", "
               << render_sec_component(result.flags[0].component, result.flags[0].actual)
               << " vs "
               << render_sec_component(result.flags[0].component, result.flags[0].expected)
               << "}";
}

// ---------------------------------------------------------------------------

void criterion_risk(Outcome& out) {
  const auto table = RiskTable::default_table();
  std::size_t triples = 0, increments = 0;
  for (const auto& t : oracle::all_complete_triples()) {
    ++triples;
    const Asil got = asil_from_sec(t, table);
    out.expect(got == oracle::sum_rule_asil(t), "triple " + sec_key(t));
    for (SecComponent c : kSecComponents) {
      auto up = t;
      const int level = *t.get(c);
      if (level >= component_max_level(c)) continue;
      up.set(c, static_cast<std::uint8_t>(level + 1));
      ++increments;
      const auto order = compare_asil(asil_from_sec(up, table), got);
      out.expect(order == AsilOrdering::Greater || order == AsilOrdering::Equal,
                 "monotonicity at " + sec_key(t));
    }
  }
  out.expect(triples == 80, "triple count");
  out.detail << " " << triples << " triples match the sum rule, " << increments
             << " single-component increments monotone, " << out.failures << " mismatches";
}

// ---------------------------------------------------------------------------

void criterion_layout(Outcome& out) {
  const auto start = std::chrono::steady_clock::now();
  std::size_t layouts = 0, group_pairs = 0, placements = 0, node_pairs = 0;
  double worst_group = 0, worst_node = 0, worst_contain = 0;
  for (int p = 1; p <= kLayoutProjects; ++p) {
    const auto g = random_project(5000 + p, "L" + std::to_string(p)).snapshot();
    for (int s = 1; s <= kLayoutSeeds; ++s) {
      LayoutConfig cfg;
      cfg.seed = static_cast<std::uint64_t>(s);
      cfg.size_by = static_cast<SizeBy>((p + s) % 3);
      cfg.group_by = (p % 4 == 0) ? "asil" : "type";
      const auto a = layout_project(g, cfg);
      const auto b = layout_project(g, cfg);
      ++layouts;
      const std::string tag = "project " + std::to_string(p) + " seed " + std::to_string(s);
      out.expect(json(a).dump() == json(b).dump(), tag + " rerun differs");
      out.expect(a.nodes.size() == g.node_count(), tag + " node count");

      std::map<std::string, const GroupCircle*> groups;
      for (const auto& grp : a.groups) groups[grp.key] = &grp;
      for (std::size_t i = 0; i < a.groups.size(); ++i)
        for (std::size_t j = i + 1; j < a.groups.size(); ++j) {
          ++group_pairs;
          const auto& x = a.groups[i];
          const auto& y = a.groups[j];
          const double overlap = x.radius + y.radius - distance(x.center, y.center);
          worst_group = std::max(worst_group, overlap);
          if (overlap > kOverlapEpsilon) out.fail(tag + " groups " + x.key + "/" + y.key);
        }
      std::map<std::string, std::vector<const NodePlacement*>> members;
      for (const auto& n : a.nodes) {
        ++placements;
        const auto it = groups.find(n.group);
        if (it == groups.end()) {
          out.fail(tag + " node without group");
          continue;
        }
        const double excess =
            distance(n.center, it->second->center) + n.radius - it->second->radius;
        worst_contain = std::max(worst_contain, excess);
        if (excess > kOverlapEpsilon) out.fail(tag + " node " + n.id + " outside group");
        members[n.group].push_back(&n);
      }
      for (const auto& [key, list] : members)
        for (std::size_t i = 0; i < list.size(); ++i)
          for (std::size_t j = i + 1; j < list.size(); ++j) {
            ++node_pairs;
            const double overlap =
                list[i]->radius + list[j]->radius - distance(list[i]->center, list[j]->center);
            worst_node = std::max(worst_node, overlap);
            if (overlap > kOverlapEpsilon) out.fail(tag + " nodes overlap in " + key);
          }
    }
  }
  const double elapsed = seconds_since(start);
  out.expect(elapsed < kLayoutTimeLimit, "runtime over limit");
  out.detail << " " << layouts << " layouts; " << group_pairs << " group pairs (max overlap "
             << worst_group << "), " << placements << " placements (max excess "
             << worst_contain << "), " << node_pairs << " intra-group pairs (max overlap "
             << worst_node << "), eps " << kOverlapEpsilon << ", reruns identical; "
             << elapsed << " s (limit " << kLayoutTimeLimit << " s)";
}

// ---------------------------------------------------------------------------

Ids split_ids(const std::string& list) {
  Ids out;
  std::stringstream in(list);
  for (std::string part; std::getline(in, part, ',');) out.push_back(part);
  return out;
}

bool has_code(const ValidationReport& r, std::string_view code) {
  return std::any_of(r.errors.begin(), r.errors.end(),
                     [&](const ValidationIssue& i) { return i.code == code; });
}

void criterion_ingest(Outcome& out) {
  testing_support::TempDir dir;
  ProjectStore store(dir.path());
  std::size_t fields = 0, defects = 0;
  for (int seed = 1; seed <= kRandomProjects; ++seed) {
    const auto p = random_project(9000 + seed, "I" + std::to_string(seed));
    const std::string tag = "seed " + std::to_string(seed);
    const auto nodes = parse_nodes_csv(format_nodes_csv(p.nodes));
    const auto links = parse_links_csv(format_links_csv(p.links));
    store.commit_project(p.meta, nodes, links);
    const auto doc = json::parse(snapshot_to_json(*store.get_graph(p.meta.project_id)).dump());

    const auto meta = doc.at("meta").get<ProjectMeta>();
    out.expect(meta == p.meta, tag + " meta");
    const auto got_nodes = doc.at("nodes").get<std::vector<ElementRecord>>();
    const auto got_links = doc.at("links").get<std::vector<LinkRecord>>();
    if (got_nodes.size() != p.nodes.size() || got_links.size() != p.links.size()) {
      out.fail(tag + " record counts");
      continue;
    }
    for (std::size_t i = 0; i < p.nodes.size(); ++i) {
      const auto& a = got_nodes[i];
      const auto& b = p.nodes[i];
      out.expect(a.id == b.id, tag + " id");
      out.expect(a.name == b.name, tag + " name of " + b.id);
      out.expect(a.type == b.type, tag + " type of " + b.id);
      out.expect(a.asil == b.asil, tag + " asil of " + b.id);
      for (SecComponent c : kSecComponents)
        out.expect(a.sec.get(c) == b.sec.get(c), tag + " sec of " + b.id);
      fields += 7;
    }
    for (std::size_t i = 0; i < p.links.size(); ++i) {
      out.expect(got_links[i] == p.links[i], tag + " link " + std::to_string(i));
      fields += 3;
    }

    // Seeded defects must be rejected with the matching code.
    std::mt19937_64 rng(seed);
    std::vector<ElementRecord> base = p.nodes;
    if (base.empty()) base.push_back({"only", "Only node", "SB", Asil::Unassigned, {}});
    const auto victim = base[rng() % base.size()];
    auto expect_rejected = [&](std::vector<ElementRecord> n, std::vector<LinkRecord> l,
                               std::string_view code) {
      ++defects;
      ProjectMeta m = p.meta;
      m.project_id = "defect";
      try {
        store.commit_project(m, std::move(n), std::move(l));
        out.fail(tag + " accepted " + std::string(code));
      } catch (const ValidationFailed& e) {
        out.expect(has_code(e.report(), code), tag + " wrong code for " + std::string(code));
      }
    };
    auto with_link = [&](LinkRecord extra) {
      auto l = p.links;
      l.push_back(std::move(extra));
      return l;
    };
    expect_rejected(base, with_link({victim.id, "no-such-node", "relatedMB"}),
                    issue::kDanglingTarget);
    expect_rejected(base, with_link({"no-such-node", victim.id, "relatedMB"}),
                    issue::kDanglingSource);
    auto dup = base;
    dup.push_back(victim);
    expect_rejected(dup, p.links, issue::kDuplicateNodeId);
    expect_rejected(base, with_link({victim.id, victim.id, "relatedMB"}),
                    issue::kSelfLoop);
  }
  out.expect(!store.contains("defect"), "defective project stored");
  out.detail << " " << kRandomProjects << " projects, " << fields
             << " fields compared after CSV->commit->get_graph->JSON, " << defects
             << " seeded defects, " << out.failures << " failures";
}

// ---------------------------------------------------------------------------

void criterion_api(Outcome& out) {
  testing_support::RunningServer running;
  const schema_check::Validator schema(schema_check::load_document(FUSALENS_SCHEMA_PATH));
  auto client = running.client();
  std::size_t requests = 0;
  std::set<std::string> routes_hit;

  auto check = [&](const httplib::Result& res, const std::string& what,
                   const std::string& route, int status) -> json {
    ++requests;
    routes_hit.insert(route);
    if (!res) {
      out.fail(what + ": no response");
      return {};
    }
    if (res->status != status) {
      out.fail(what + ": status " + std::to_string(res->status));
      return {};
    }
    json body;
    try {
      body = json::parse(res->body);
    } catch (const json::exception&) {
      out.fail(what + ": body is not JSON");
      return {};
    }
    const auto problems = schema.check_route(body, route, status);
    if (!problems.empty()) out.fail(what + ": " + problems.front());
    return body;
  };
  auto get = [&](const std::string& path, const std::string& route, int status = 200) {
    return check(client.Get(path), "GET " + path, route, status);
  };
  auto post = [&](const std::string& path, const json& body, const std::string& route,
                  int status = 200) {
    return check(client.Post(path, body.dump(), "application/json"), "POST " + path, route,
                 status);
  };
  auto csv_header = [&](const httplib::Result& res, const std::string& what,
                        const std::string& route, const std::string& header) {
    ++requests;
    routes_hit.insert(route);
    if (!res || res->status != 200) {
      out.fail(what + ": bad status");
      return;
    }
    out.expect(res->body.rfind(header + "\n", 0) == 0, what + ": header");
  };

  const auto list = get("/api/projects", "GET /api/projects");
  Ids ids;
  for (const auto& p : list.value("projects", json::array()))
    ids.push_back(p["meta"]["project_id"]);
  out.expect(ids == Ids{"F1", "F2", "F3"}, "seeded projects");

  for (const auto& fx : demo_fixtures()) {
    const std::string id = fx.meta.project_id;
    const std::string base = "/api/projects/" + id;
    const auto graph = get(base + "/graph", "GET /api/projects/{id}/graph");
    for (const char* group : {"type", "asil", "severity", "exposure", "controllability"})
      for (const char* size : {"constant", "degree", "asil"})
        get(base + "/layout?groupBy=" + group + "&sizeBy=" + size + "&seed=3",
            "GET /api/projects/{id}/layout");
    get(base + "/layout?pinned=%7B%22SG%22%3A%5B120%2C80%5D%7D",
        "GET /api/projects/{id}/layout");
    for (const char* q : {"a", "vehicle", "zzz"})
      get(base + "/nodes/search?q=" + q, "GET /api/projects/{id}/nodes/search");
    get(base + "/checks", "GET /api/projects/{id}/checks");
    get(base + "/checks?checks=unassigned&types=HzE,SG&degreeMin=1&degreeMax=3",
        "GET /api/projects/{id}/checks");
    csv_header(client.Get(base + "/checks?format=csv"), "checks csv",
               "GET /api/projects/{id}/checks", "check,project,node_id,details");

    Ids node_ids;
    for (const auto& n : graph.value("nodes", json::array())) node_ids.push_back(n["id"]);
    for (const auto& a : node_ids) {
      get(base + "/nodes/" + a + "/neighbors",
          "GET /api/projects/{id}/nodes/{nodeId}/neighbors");
      for (const auto& b : node_ids)
        for (const char* mode : {"undirected", "forward"})
          post(base + "/trace", {{"source", a}, {"destination", b}, {"mode", mode}},
               "POST /api/projects/{id}/trace");
    }
    csv_header(client.Post("/api/export/csv",
                           json{{"project", id}, {"nodeIds", node_ids}}.dump(),
                           "application/json"),
               "export csv", "POST /api/export/csv", "type,asil,name,id");
  }

  for (const char* set : {"F1", "F1,F2", "F2,F3", "F1,F2,F3", "F3,F1"})
    get(std::string("/api/summary?projects=") + set, "GET /api/summary");
  for (const char* set : {"F1,F2", "F1,F3", "F2,F3", "F1,F2,F3"}) {
    get(std::string("/api/compare/shared?projects=") + set, "GET /api/compare/shared");
    std::string header = "id,name,asil_conflict";
    for (const auto& pid : split_ids(set)) header += ",asil:" + pid;
    csv_header(client.Get(std::string("/api/compare/shared?format=csv&projects=") + set),
               "shared csv", "GET /api/compare/shared", header);
  }

  const auto& f3 = demo_fixture("F3");
  json meta = f3.meta;
  meta["project_id"] = "F3-copy";
  httplib::MultipartFormDataItems items = {
      {"meta", meta.dump(), "meta.json", "application/json"},
      {"nodes", f3.nodes_csv, "nodes.csv", "text/csv"},
      {"links", f3.links_csv, "links.csv", "text/csv"}};
  check(client.Post("/api/projects", items), "POST /api/projects multipart",
        "POST /api/projects", 201);
  post("/api/projects",
       {{"meta", {{"project_id", "broken"}, {"system", "s"}}},
        {"nodes", f3.nodes_csv},
        {"links", f3.links_csv + "b1,ghost,relatedMB\n"}},
       "POST /api/projects", 422);

  get("/api/no/such/route", "*", 404);
  get("/api/projects/none/graph", "GET /api/projects/{id}/graph", 404);
  const auto bad = get("/api/projects/F1/layout?seed=x", "GET /api/projects/{id}/layout", 400);
  out.expect(bad.is_object() && bad["error"].value("parameter", "") == "seed",
             "400 names the parameter");

  const auto missing = get("/api/projects/F1/checks?checks=missing",
                           "GET /api/projects/{id}/checks");
  Ids r[4];
  std::string shown;
  if (missing.contains("missing") && missing["missing"]["rules"].size() == 4) {
    for (int i = 0; i < 4; ++i) {
      r[i] = missing["missing"]["rules"][i]["node_ids"].get<Ids>();
      shown += " rule" + std::to_string(i + 1) + ":" + json(r[i]).dump();
    }
  }
  out.expect(r[0] == Ids{"n7"} && r[1] == Ids{"n8"} && r[2].empty() && r[3].empty(),
             "F1 missing-link rules");

  const std::size_t documented =
      schema_check::load_document(FUSALENS_SCHEMA_PATH).at("routes").size();
  out.expect(routes_hit.size() == documented, "not every documented route exercised");
  out.detail << " " << requests << " requests over " << routes_hit.size() << "/" << documented
             << " documented routes, " << out.failures << " failures; F1 missing-links"
             << shown;
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* name;
    std::function<void(Outcome&)> run;
  };
  const Criterion criteria[] = {
      {1, "oracle equivalence (checks)", criterion_checks},
      {2, "oracle equivalence (compare)", criterion_compare},
      {3, "summary figure reproduction", criterion_summary},
      {4, "path oracle", criterion_paths},
      {5, "trace scenario reproduction", criterion_trace},
      {6, "risk table", criterion_risk},
      {7, "layout geometry", criterion_layout},
      {8, "ingestion round-trip", criterion_ingest},
      {9, "API contract", criterion_api},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(out);
    } catch (const std::exception& e) {
      out.fail(std::string("exception: ") + e.what());
    }
    const double elapsed = seconds_since(start);
    std::printf("[%s] %d %s:%s (%.2f s)\n", out.pass ? "PASS" : "FAIL", c.number, c.name,
                out.detail.str().c_str(), elapsed);
    std::fflush(stdout);
    if (!out.pass) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed,
              std::size(criteria));
  return failed == 0 ? 0 : 1;
}
