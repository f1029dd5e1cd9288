#include "fusalens/store.hpp"

#include <fstream>
#include <sstream>

#include "fusalens/error.hpp"
#include "fusalens/serialize.hpp"

namespace fs = std::filesystem;

namespace fusalens {
namespace {

void write_file_atomic(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec)
    throw Error(ErrorCode::Io,
                "cannot replace " + path.string() + ": " + ec.message());
}

nlohmann::json read_json(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Io, path.string() + ": " + e.what());
  }
}

}  // namespace

void validate_meta(const ProjectMeta& meta) {
  const auto& id = meta.project_id;
  if (id.empty()) throw InvalidArgument("project_id must not be empty");
  if (id == "." || id == ".." || id.front() == '.' ||
      id.find_first_of("/\\\0", 0, 3) != std::string::npos)
    throw InvalidArgument("project_id '" + id +
                          "' is not a valid directory name");
  if (meta.system.empty())
    throw InvalidArgument("project '" + id + "' has an empty system");
}

ProjectStore::ProjectStore() = default;

ProjectStore::ProjectStore(fs::path data_dir) : data_dir_(std::move(data_dir)) {
  std::error_code ec;
  fs::create_directories(*data_dir_, ec);
  if (ec || !fs::is_directory(*data_dir_))
    throw Error(ErrorCode::Io, "data directory " + data_dir_->string() +
                                   " is not usable: " + ec.message());
  load_all();
}

void ProjectStore::load_all() {
  for (const auto& entry : fs::directory_iterator(*data_dir_)) {
    if (!entry.is_directory()) continue;
    const fs::path meta_path = entry.path() / "meta.json";
    const fs::path graph_path = entry.path() / "graph.json";
    if (!fs::exists(meta_path) || !fs::exists(graph_path)) continue;
    try {
      const auto meta_doc = read_json(meta_path);
      const auto graph_doc = read_json(graph_path);
      auto snapshot = std::make_shared<const GraphSnapshot>(
          meta_doc.at("meta").get<ProjectMeta>(),
          graph_doc.at("nodes").get<std::vector<ElementRecord>>(),
          graph_doc.at("links").get<std::vector<LinkRecord>>(),
          meta_doc.at("revision").get<std::uint64_t>());
      projects_[snapshot->project_id()] = std::move(snapshot);
    } catch (const Error&) {
      throw;
    } catch (const std::exception& e) {
      throw Error(ErrorCode::Io,
                  "corrupt project in " + entry.path().string() + ": " +
                      e.what());
    }
  }
}

void ProjectStore::persist(const GraphSnapshot& snapshot) const {
  const fs::path dir = *data_dir_ / snapshot.project_id();
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    throw Error(ErrorCode::Io, "cannot create " + dir.string() + ": " +
                                   ec.message());
  const auto doc = snapshot_to_json(snapshot);
  nlohmann::json graph = {{"nodes", doc["nodes"]}, {"links", doc["links"]}};
  nlohmann::json meta = {{"meta", doc["meta"]}, {"revision", doc["revision"]}};
  // graph first: meta.json marks the project as complete on reload.
  write_file_atomic(dir / "graph.json", graph.dump(1));
  write_file_atomic(dir / "meta.json", meta.dump(1));
}

CommitResult ProjectStore::commit_project(const ProjectMeta& meta,
                                          std::vector<ElementRecord> nodes,
                                          std::vector<LinkRecord> links) {
  validate_meta(meta);
  ValidationReport report = validate_project(nodes, links);
  if (!report.ok()) throw ValidationFailed(std::move(report));

  std::lock_guard write_lock(write_mutex_);
  std::uint64_t revision = 1;
  {
    std::shared_lock read_lock(map_mutex_);
    if (auto it = projects_.find(meta.project_id); it != projects_.end())
      revision = it->second->revision() + 1;
  }
  auto snapshot = std::make_shared<const GraphSnapshot>(
      meta, std::move(nodes), std::move(links), revision);
  if (data_dir_) persist(*snapshot);
  {
    std::unique_lock lock(map_mutex_);
    projects_[meta.project_id] = snapshot;
  }
  return {meta.project_id, revision, std::move(report.warnings)};
}

std::vector<ProjectSummary> ProjectStore::list_projects() const {
  std::shared_lock lock(map_mutex_);
  std::vector<ProjectSummary> out;
  out.reserve(projects_.size());
  for (const auto& [id, snap] : projects_)
    out.push_back(
        {snap->meta(), snap->node_count(), snap->link_count(), snap->revision()});
  return out;
}

std::shared_ptr<const GraphSnapshot> ProjectStore::get_graph(
    const std::string& project_id) const {
  std::shared_lock lock(map_mutex_);
  const auto it = projects_.find(project_id);
  if (it == projects_.end())
    throw NotFoundError("unknown project '" + project_id + "'");
  return it->second;
}

bool ProjectStore::contains(const std::string& project_id) const {
  std::shared_lock lock(map_mutex_);
  return projects_.count(project_id) != 0;
}

}  // namespace fusalens
