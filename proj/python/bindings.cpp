#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <nlohmann/json.hpp>

#include "fusalens/analytics.hpp"
#include "fusalens/compare.hpp"
#include "fusalens/error.hpp"
#include "fusalens/fixtures.hpp"
#include "fusalens/ingest.hpp"
#include "fusalens/layout.hpp"
#include "fusalens/serialize.hpp"
#include "fusalens/store.hpp"
#include "fusalens/trace.hpp"

namespace py = pybind11;
using nlohmann::json;
using namespace fusalens;

namespace {

using Project = std::shared_ptr<GraphSnapshot>;

py::object to_py(const json& j) {
  switch (j.type()) {
    case json::value_t::null: return py::none();
    case json::value_t::boolean: return py::bool_(j.get<bool>());
    case json::value_t::number_integer: return py::int_(j.get<std::int64_t>());
    case json::value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
    case json::value_t::number_float: return py::float_(j.get<double>());
    case json::value_t::string: return py::str(j.get_ref<const std::string&>());
    case json::value_t::array: {
      py::list out;
      for (const auto& v : j) out.append(to_py(v));
      return out;
    }
    case json::value_t::object: {
      py::dict out;
      for (const auto& [k, v] : j.items()) out[py::str(k)] = to_py(v);
      return out;
    }
    default: break;
  }
  throw std::runtime_error("unsupported JSON value");
}

json from_py(const py::handle& obj) {
  if (obj.is_none()) return nullptr;
  if (py::isinstance<py::bool_>(obj)) return obj.cast<bool>();
  if (py::isinstance<py::int_>(obj)) return obj.cast<std::int64_t>();
  if (py::isinstance<py::float_>(obj)) return obj.cast<double>();
  if (py::isinstance<py::str>(obj)) return obj.cast<std::string>();
  if (py::isinstance<py::dict>(obj)) {
    json out = json::object();
    for (const auto& [k, v] : obj.cast<py::dict>()) out[py::str(k).cast<std::string>()] = from_py(v);
    return out;
  }
  if (py::isinstance<py::sequence>(obj)) {
    json out = json::array();
    for (const auto& v : obj.cast<py::sequence>()) out.push_back(from_py(v));
    return out;
  }
  throw py::type_error("cannot convert value to JSON");
}

std::vector<const GraphSnapshot*> raw(const std::vector<Project>& projects) {
  std::vector<const GraphSnapshot*> out;
  for (const auto& p : projects) out.push_back(p.get());
  return out;
}

Project from_csv(const py::dict& meta, const std::string& nodes_csv,
                 const std::string& links_csv) {
  const auto m = from_py(meta).get<ProjectMeta>();
  return std::make_shared<GraphSnapshot>(m, parse_nodes_csv(nodes_csv),
                                               parse_links_csv(links_csv));
}

}  // namespace

PYBIND11_MODULE(_fusalens, m) {
  m.doc() = "Functional-safety project graphs: checks, tracing, comparison and layout.";

  const auto& error = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<NotFoundError>(m, "NotFoundError", error.ptr());
  py::register_exception<InvalidArgument>(m, "InvalidArgument", error.ptr());
  py::register_exception<ValidationFailed>(m, "ValidationFailed", error.ptr());
  // Registered last so it runs first: attaches the report to the exception.
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ValidationFailed& e) {
      py::object type = py::module_::import("fusalens._fusalens").attr("ValidationFailed");
      py::object exc = type(e.what());
      exc.attr("report") = to_py(json(e.report()));
      PyErr_SetObject(type.ptr(), exc.ptr());
    }
  });

  py::class_<GraphSnapshot, Project>(m, "Project")
      .def_static("from_csv", &from_csv, py::arg("meta"), py::arg("nodes_csv"),
                  py::arg("links_csv") = "")
      .def_static(
          "fixture",
          [](const std::string& id) {
            return std::make_shared<GraphSnapshot>(load_fixture(demo_fixture(id)));
          },
          py::arg("project_id"))
      .def_property_readonly("id", &GraphSnapshot::project_id)
      .def_property_readonly("revision", &GraphSnapshot::revision)
      .def_property_readonly("node_count", &GraphSnapshot::node_count)
      .def_property_readonly("link_count", &GraphSnapshot::link_count)
      .def_property_readonly("meta", [](const GraphSnapshot& g) { return to_py(json(g.meta())); })
      .def("nodes", [](const GraphSnapshot& g) { return to_py(snapshot_to_json(g)["nodes"]); })
      .def("links", [](const GraphSnapshot& g) { return to_py(snapshot_to_json(g)["links"]); })
      .def("to_dict", [](const GraphSnapshot& g) { return to_py(snapshot_to_json(g)); })
      .def("__contains__", [](const GraphSnapshot& g, const std::string& id) { return g.contains(id); })
      .def("__repr__", [](const GraphSnapshot& g) {
        return "<Project " + g.project_id() + " nodes=" + std::to_string(g.node_count()) +
               " links=" + std::to_string(g.link_count()) + ">";
      });

  m.def("fixture_ids", [] {
    std::vector<std::string> ids;
    for (const auto& f : demo_fixtures()) ids.push_back(f.meta.project_id);
    return ids;
  });

  m.def(
      "validate",
      [](const std::string& nodes_csv, const std::string& links_csv) {
        return to_py(json(validate_project(parse_nodes_csv(nodes_csv), parse_links_csv(links_csv))));
      },
      py::arg("nodes_csv"), py::arg("links_csv") = "");

  m.def(
      "asil_from_sec",
      [](const std::string& s, const std::string& e, const std::string& c) {
        return std::string(render_asil(asil_from_sec(parse_sec(s, e, c), RiskTable::default_table())));
      },
      py::arg("severity"), py::arg("exposure"), py::arg("controllability"));

  // Checks
  m.def("find_orphans", [](const Project& p) { return find_orphans(*p); }, py::arg("project"));
  m.def(
      "filter_by_degree",
      [](const Project& p, std::size_t lo, std::size_t hi) { return filter_by_degree(*p, lo, hi); },
      py::arg("project"), py::arg("min"), py::arg("max"));
  m.def(
      "find_unassigned_asil",
      [](const Project& p, std::optional<std::set<std::string>> types) {
        return find_unassigned_asil(*p, types);
      },
      py::arg("project"), py::arg("types") = py::none());
  m.def(
      "check_missing_links",
      [](const Project& p) { return to_py(json(check_missing_links(*p, RuleSet::defaults()))); },
      py::arg("project"));
  m.def(
      "check_asil_inheritance",
      [](const Project& p) { return to_py(json(check_asil_inheritance(*p, RuleSet::defaults()))); },
      py::arg("project"));

  // Trace
  m.def(
      "find_path",
      [](const Project& p, const std::string& src, const std::string& dst,
         const std::string& mode) -> py::object {
        const auto path = find_path(*p, {src, dst, parse_trace_mode(mode)});
        return path ? to_py(json(*path)) : py::none();
      },
      py::arg("project"), py::arg("source"), py::arg("destination"),
      py::arg("mode") = "undirected");
  m.def(
      "trace",
      [](const Project& p, const std::string& src, const std::string& dst,
         const std::string& mode) -> py::object {
        const auto path = find_path(*p, {src, dst, parse_trace_mode(mode)});
        if (!path) return py::none();
        return to_py(json(trace_asils(*p, *path)));
      },
      py::arg("project"), py::arg("source"), py::arg("destination"),
      py::arg("mode") = "undirected");

  // Comparison
  m.def(
      "shared_nodes",
      [](const std::vector<Project>& ps) { return to_py(json(shared_nodes(raw(ps)))); },
      py::arg("projects"));
  m.def(
      "shared_links",
      [](const std::vector<Project>& ps) { return to_py(json(shared_links(raw(ps)))); },
      py::arg("projects"));
  m.def(
      "shared_subgraph",
      [](const std::vector<Project>& ps) {
        return std::make_shared<GraphSnapshot>(shared_subgraph(raw(ps)));
      },
      py::arg("projects"));
  m.def(
      "cross_highlight",
      [](const std::string& id, const std::vector<Project>& ps) {
        return to_py(json(cross_highlight(id, raw(ps))));
      },
      py::arg("node_id"), py::arg("projects"));
  m.def(
      "summarize",
      [](const std::vector<Project>& ps) { return to_py(json(summarize(raw(ps)))); },
      py::arg("projects"));

  // Layout
  m.def(
      "layout",
      [](const Project& p, const std::string& group_by, const std::string& size_by,
         std::uint64_t seed, std::optional<std::map<std::string, std::pair<double, double>>> pinned) {
        LayoutConfig cfg;
        cfg.group_by = group_by;
        cfg.size_by = parse_size_by(size_by);
        cfg.seed = seed;
        std::map<std::string, Vec2> pins;
        if (pinned)
          for (const auto& [k, v] : *pinned) pins[k] = {v.first, v.second};
        return to_py(json(layout_project(*p, cfg, pins)));
      },
      py::arg("project"), py::arg("group_by") = "type", py::arg("size_by") = "constant",
      py::arg("seed") = 0, py::arg("pinned") = py::none());

  // Store
  py::class_<ProjectStore>(m, "Store")
      .def(py::init<>())
      .def(py::init<std::filesystem::path>(), py::arg("data_dir"))
      .def(
          "commit",
          [](ProjectStore& s, const py::dict& meta, const std::string& nodes_csv,
             const std::string& links_csv) {
            const auto result = s.commit_project(from_py(meta).get<ProjectMeta>(),
                                                 parse_nodes_csv(nodes_csv),
                                                 parse_links_csv(links_csv));
            return to_py(json(result));
          },
          py::arg("meta"), py::arg("nodes_csv"), py::arg("links_csv") = "")
      .def("list", [](const ProjectStore& s) { return to_py(json(s.list_projects())); })
      .def("get", &ProjectStore::get_graph, py::arg("project_id"))
      .def("__contains__", &ProjectStore::contains);
}
