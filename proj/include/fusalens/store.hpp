#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "fusalens/graph.hpp"
#include "fusalens/ingest.hpp"

namespace fusalens {

struct ProjectSummary {
  ProjectMeta meta;
  std::size_t node_count = 0;
  std::size_t link_count = 0;
  std::uint64_t revision = 0;
};

struct CommitResult {
  std::string project_id;
  std::uint64_t revision = 0;
  /// Warnings raised by validation; they never block the commit.
  std::vector<ValidationIssue> warnings;
};

/// Repository of committed projects.
///
/// Each project lives in `<data_dir>/<project_id>/` as `meta.json` and
/// `graph.json`; indices are rebuilt when the store opens. Without a data
/// directory the store is purely in-memory. Writers are serialized; readers
/// receive shared immutable snapshots and never observe a partial commit.
class ProjectStore {
 public:
  ProjectStore();
  explicit ProjectStore(std::filesystem::path data_dir);

  ProjectStore(const ProjectStore&) = delete;
  ProjectStore& operator=(const ProjectStore&) = delete;

  /// Validates and stores the project, replacing any existing project with
  /// the same id (revision + 1). Throws ValidationFailed on validation
  /// errors, InvalidArgument on bad metadata and Error(Io) on storage
  /// failures.
  CommitResult commit_project(const ProjectMeta& meta,
                              std::vector<ElementRecord> nodes,
                              std::vector<LinkRecord> links);

  /// Sorted by project id.
  std::vector<ProjectSummary> list_projects() const;

  /// Throws NotFoundError for unknown ids.
  std::shared_ptr<const GraphSnapshot> get_graph(
      const std::string& project_id) const;

  bool contains(const std::string& project_id) const;

  const std::optional<std::filesystem::path>& data_dir() const {
    return data_dir_;
  }

 private:
  void load_all();
  void persist(const GraphSnapshot& snapshot) const;

  std::optional<std::filesystem::path> data_dir_;
  mutable std::shared_mutex map_mutex_;
  std::mutex write_mutex_;
  std::map<std::string, std::shared_ptr<const GraphSnapshot>> projects_;
};

/// Rejects empty ids, ids that are not usable as a directory name, and an
/// empty system.
void validate_meta(const ProjectMeta& meta);

}  // namespace fusalens
