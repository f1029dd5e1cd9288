#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fusalens/graph.hpp"

namespace fusalens {

struct Vec2 {
  double x = 0;
  double y = 0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(Vec2 a, double s) { return {a.x * s, a.y * s}; }
  friend bool operator==(Vec2, Vec2) = default;
};

double distance(Vec2 a, Vec2 b);

enum class SizeBy { Constant, Degree, AsilRank };

/// "constant" / "degree" / "asil" (also "asil-rank"), case-insensitive.
SizeBy parse_size_by(std::string_view token);
std::string_view to_string(SizeBy size_by);

struct LayoutConfig {
  /// Node attribute used to form groups: type, asil, severity, exposure or
  /// controllability.
  std::string group_by = "type";
  SizeBy size_by = SizeBy::Constant;
  /// Passed through to clients for colouring.
  std::string color_by = "asil";
  std::uint64_t seed = 0;
  std::size_t iterations = 300;
  double base_radius = 6.0;
  double group_padding = 12.0;
  double canvas_width = 1000.0;
  double canvas_height = 800.0;

  /// Throws InvalidArgument when a field is out of range.
  void validate() const;
  Vec2 canvas_center() const { return {canvas_width / 2, canvas_height / 2}; }
};

// ---------------------------------------------------------------------------
// Circle packing
// ---------------------------------------------------------------------------

struct PackItem {
  std::string id;
  double radius = 0;
};

struct PackedCircle {
  std::string id;
  Vec2 center;
  double radius = 0;
};

struct PackResult {
  /// In packing order: radius descending, id ascending.
  std::vector<PackedCircle> circles;
  double enclosing_radius = 0;
};

/// Front-chain sibling packing. The result is centred on its enclosing
/// circle. Throws InvalidArgument on an empty list or a non-positive radius.
PackResult pack_group(std::span<const PackItem> members);

/// Smallest circle containing every given circle (randomised incremental
/// construction with a fixed shuffle). Returns {center, radius}.
std::pair<Vec2, double> enclosing_circle(std::span<const PackedCircle> circles);

// ---------------------------------------------------------------------------
// Group placement
// ---------------------------------------------------------------------------

/// Places group circles: seeded ring start, `iterations` steps of pairwise
/// repulsion and a centring pull, then hard collision resolution. Pinned
/// groups never move. Deterministic for a given input and seed.
std::map<std::string, Vec2> layout_groups(
    const std::map<std::string, double>& group_radii, const LayoutConfig& config,
    const std::map<std::string, Vec2>& pinned = {});

/// Convex hull, counter-clockwise, without collinear points. A single point
/// or a collinear set yields the point or the two extreme points. Throws
/// InvalidArgument on empty input.
std::vector<Vec2> compute_hull(std::span<const Vec2> points);

// ---------------------------------------------------------------------------
// Project layout
// ---------------------------------------------------------------------------

struct NodePlacement {
  std::string id;
  Vec2 center;
  double radius = 0;
  std::string group;
};

struct GroupCircle {
  std::string key;
  /// "key (count)".
  std::string label;
  Vec2 center;
  double radius = 0;
  std::vector<std::string> member_ids;
};

struct GroupHull {
  std::string key;
  std::vector<Vec2> vertices;
};

struct LayoutResult {
  /// Project id the layout was computed for.
  std::string layout_id;
  LayoutConfig config;
  /// Sorted by id.
  std::vector<NodePlacement> nodes;
  /// Sorted by key.
  std::vector<GroupCircle> groups;
  /// Same order as groups.
  std::vector<GroupHull> hulls;

  const GroupCircle* group(std::string_view key) const;
};

/// Group value of a node for `attribute`; throws InvalidArgument for an
/// unknown attribute name.
std::string group_key(const ElementRecord& node, std::string_view attribute);

/// Node radius for the size encoding: constant 1, degree 1 + 0.1 * degree,
/// ASIL 1 + 0.15 * rank (Unassigned 1), times base_radius.
double node_radius(const LayoutConfig& config, const ElementRecord& node,
                   std::size_t degree);

LayoutResult layout_project(const GraphSnapshot& snapshot,
                            const LayoutConfig& config,
                            const std::map<std::string, Vec2>& pinned = {});

/// Moves groups in every layout so keys present in the reference sit at the
/// reference's centres. Reference groups are first spread apart, if needed,
/// so the largest same-key circle across all layouts fits without overlap;
/// other groups are re-placed around the pinned ones. Idempotent.
std::vector<LayoutResult> align_layouts(std::vector<LayoutResult> layouts,
                                        const std::string& reference_id);

}  // namespace fusalens
