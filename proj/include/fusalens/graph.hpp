#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fusalens/core_model.hpp"

namespace fusalens {

struct ElementRecord {
  std::string id;
  std::string name;
  std::string type;
  Asil asil = Asil::Unassigned;
  SecTriple sec;

  friend bool operator==(const ElementRecord&, const ElementRecord&) = default;
};

struct LinkRecord {
  std::string source;
  std::string target;
  std::string relation;

  friend bool operator==(const LinkRecord&, const LinkRecord&) = default;
  friend auto operator<=>(const LinkRecord&, const LinkRecord&) = default;
};

struct ProjectMeta {
  std::string project_id;
  std::string name;
  std::string system;
  std::string department;
  std::string in_charge;
  std::string location;

  friend bool operator==(const ProjectMeta&, const ProjectMeta&) = default;
};

/// Immutable, indexed view of one project's network.
///
/// Construction enforces unique non-empty node ids, resolvable link
/// endpoints and the absence of self-loops; duplicate link triples collapse
/// onto their first occurrence. Nodes and links keep their input order.
class GraphSnapshot {
 public:
  GraphSnapshot() = default;
  GraphSnapshot(ProjectMeta meta, std::vector<ElementRecord> nodes,
                std::vector<LinkRecord> links, std::uint64_t revision = 0);

  const ProjectMeta& meta() const { return meta_; }
  const std::string& project_id() const { return meta_.project_id; }
  std::uint64_t revision() const { return revision_; }

  std::span<const ElementRecord> nodes() const { return nodes_; }
  std::span<const LinkRecord> links() const { return links_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t link_count() const { return links_.size(); }

  bool contains(std::string_view node_id) const;
  const ElementRecord* find(std::string_view node_id) const;
  /// Throws NotFoundError for unknown ids.
  const ElementRecord& node(std::string_view node_id) const;
  std::size_t index_of(std::string_view node_id) const;

  /// Indices into links() of every link touching the node, in link order.
  std::span<const std::size_t> incident_links(std::size_t node_index) const {
    return adjacency_[node_index];
  }

  /// Node ids in ascending order.
  std::vector<std::string> sorted_ids() const;

 private:
  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };

  ProjectMeta meta_;
  std::vector<ElementRecord> nodes_;
  std::vector<LinkRecord> links_;
  std::unordered_map<std::string, std::size_t, StringHash, std::equal_to<>>
      index_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::uint64_t revision_ = 0;
};

/// Number of incident links, direction ignored.
std::size_t degree(const GraphSnapshot& snapshot, std::string_view node_id);

/// Distinct nodes sharing an incident link with `node_id`, optionally only
/// through links of `relation`; sorted by id.
std::vector<ElementRecord> neighbors(
    const GraphSnapshot& snapshot, std::string_view node_id,
    std::optional<std::string_view> relation = std::nullopt);

/// Case-insensitive substring match on names, sorted by id. Empty query
/// matches nothing.
std::vector<ElementRecord> search_nodes(const GraphSnapshot& snapshot,
                                        std::string_view query);

}  // namespace fusalens
