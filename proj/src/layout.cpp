#include "fusalens/layout.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "fusalens/error.hpp"
#include "text_util.hpp"

namespace fusalens {

double distance(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

SizeBy parse_size_by(std::string_view token) {
  const auto t = detail::lower(detail::trim(token));
  if (t.empty() || t == "constant") return SizeBy::Constant;
  if (t == "degree") return SizeBy::Degree;
  if (t == "asil" || t == "asil-rank" || t == "asil_rank") return SizeBy::AsilRank;
  throw ParseError("invalid size encoding '" + std::string(token) + "'");
}

std::string_view to_string(SizeBy size_by) {
  switch (size_by) {
    case SizeBy::Degree: return "degree";
    case SizeBy::AsilRank: return "asil";
    case SizeBy::Constant: break;
  }
  return "constant";
}

void LayoutConfig::validate() const {
  (void)group_key(ElementRecord{}, group_by);
  if (iterations == 0) throw InvalidArgument("iterations must be positive");
  if (!(base_radius > 0) || !std::isfinite(base_radius))
    throw InvalidArgument("base_radius must be positive");
  if (!(group_padding >= 0) || !std::isfinite(group_padding))
    throw InvalidArgument("group_padding must be non-negative");
  if (!(canvas_width > 0) || !(canvas_height > 0) ||
      !std::isfinite(canvas_width) || !std::isfinite(canvas_height))
    throw InvalidArgument("canvas size must be positive");
}

// ---------------------------------------------------------------------------
// Packing
// ---------------------------------------------------------------------------

namespace {

struct Circle {
  double x = 0, y = 0, r = 0;
};

void place(const Circle& b, const Circle& a, Circle& c) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double d2 = dx * dx + dy * dy;
  if (d2 > 0) {
    double a2 = a.r + c.r;
    a2 *= a2;
    double b2 = b.r + c.r;
    b2 *= b2;
    if (a2 > b2) {
      const double x = (d2 + b2 - a2) / (2 * d2);
      const double y = std::sqrt(std::max(0.0, b2 / d2 - x * x));
      c.x = b.x - x * dx - y * dy;
      c.y = b.y - x * dy + y * dx;
    } else {
      const double x = (d2 + a2 - b2) / (2 * d2);
      const double y = std::sqrt(std::max(0.0, a2 / d2 - x * x));
      c.x = a.x + x * dx - y * dy;
      c.y = a.y + x * dy + y * dx;
    }
  } else {
    c.x = a.x + c.r;
    c.y = a.y;
  }
}

bool intersects(const Circle& a, const Circle& b) {
  const double dr = a.r + b.r - 1e-6, dx = b.x - a.x, dy = b.y - a.y;
  return dr > 0 && dr * dr > dx * dx + dy * dy;
}

bool encloses_not(const Circle& a, const Circle& b) {
  const double dr = a.r - b.r, dx = b.x - a.x, dy = b.y - a.y;
  return dr < 0 || dr * dr < dx * dx + dy * dy;
}

bool encloses_weak(const Circle& a, const Circle& b) {
  const double dr = a.r - b.r + std::max({a.r, b.r, 1.0}) * 1e-9;
  const double dx = b.x - a.x, dy = b.y - a.y;
  return dr > 0 && dr * dr > dx * dx + dy * dy;
}

bool encloses_weak_all(const Circle& a, const std::vector<Circle>& basis) {
  return std::all_of(basis.begin(), basis.end(),
                     [&](const Circle& b) { return encloses_weak(a, b); });
}

Circle enclose2(const Circle& a, const Circle& b) {
  const double x21 = b.x - a.x, y21 = b.y - a.y, r21 = b.r - a.r;
  const double l = std::sqrt(x21 * x21 + y21 * y21);
  return {(a.x + b.x + x21 / l * r21) / 2, (a.y + b.y + y21 / l * r21) / 2,
          (l + a.r + b.r) / 2};
}

Circle enclose3(const Circle& a, const Circle& b, const Circle& c) {
  const double x1 = a.x, y1 = a.y, r1 = a.r;
  const double a2 = x1 - b.x, a3 = x1 - c.x, b2 = y1 - b.y, b3 = y1 - c.y;
  const double c2 = b.r - r1, c3 = c.r - r1;
  const double d1 = x1 * x1 + y1 * y1 - r1 * r1;
  const double d2 = d1 - b.x * b.x - b.y * b.y + b.r * b.r;
  const double d3 = d1 - c.x * c.x - c.y * c.y + c.r * c.r;
  const double ab = a3 * b2 - a2 * b3;
  const double xa = (b2 * d3 - b3 * d2) / (ab * 2) - x1;
  const double xb = (b3 * c2 - b2 * c3) / ab;
  const double ya = (a3 * d2 - a2 * d3) / (ab * 2) - y1;
  const double yb = (a2 * c3 - a3 * c2) / ab;
  const double A = xb * xb + yb * yb - 1;
  const double B = 2 * (r1 + xa * xb + ya * yb);
  const double C = xa * xa + ya * ya - r1 * r1;
  const double r = -(std::abs(A) > 1e-6
                         ? (B + std::sqrt(B * B - 4 * A * C)) / (2 * A)
                         : C / B);
  return {x1 + xa + xb * r, y1 + ya + yb * r, r};
}

Circle enclose_basis(const std::vector<Circle>& basis) {
  switch (basis.size()) {
    case 1: return basis[0];
    case 2: return enclose2(basis[0], basis[1]);
    default: return enclose3(basis[0], basis[1], basis[2]);
  }
}

std::vector<Circle> extend_basis(const std::vector<Circle>& basis,
                                 const Circle& p) {
  if (encloses_weak_all(p, basis)) return {p};
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (encloses_not(p, basis[i]) &&
        encloses_weak_all(enclose2(basis[i], p), basis))
      return {basis[i], p};
  for (std::size_t i = 0; i + 1 < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (encloses_not(enclose2(basis[i], basis[j]), p) &&
          encloses_not(enclose2(basis[i], p), basis[j]) &&
          encloses_not(enclose2(basis[j], p), basis[i]) &&
          encloses_weak_all(enclose3(basis[i], basis[j], p), basis))
        return {basis[i], basis[j], p};
  // Numerically degenerate; fall back to the pair with the new circle.
  return {basis.front(), p};
}

Circle enclose(std::vector<Circle> circles) {
  std::mt19937_64 rng(0x5eed);
  std::shuffle(circles.begin(), circles.end(), rng);
  std::vector<Circle> basis;
  std::optional<Circle> e;
  for (std::size_t i = 0; i < circles.size();) {
    if (e && encloses_weak(*e, circles[i])) {
      ++i;
    } else {
      basis = extend_basis(basis, circles[i]);
      e = enclose_basis(basis);
      i = 0;
    }
  }
  // Guard against floating-point slack.
  Circle out = *e;
  for (const auto& c : circles)
    out.r = std::max(out.r, std::hypot(c.x - out.x, c.y - out.y) + c.r);
  return out;
}

double score(const Circle& a, const Circle& b) {
  const double ab = a.r + b.r;
  const double dx = (a.x * b.r + b.x * a.r) / ab;
  const double dy = (a.y * b.r + b.y * a.r) / ab;
  return dx * dx + dy * dy;
}

// Packs circles in the given order around the origin.
void pack_siblings(std::vector<Circle>& c) {
  const std::size_t n = c.size();
  c[0].x = 0;
  c[0].y = 0;
  if (n == 1) return;
  c[0].x = -c[1].r;
  c[1].x = c[0].r;
  c[1].y = 0;
  if (n == 2) return;
  place(c[1], c[0], c[2]);

  // Front chain as a doubly linked ring over indices.
  std::vector<std::size_t> next(n), prev(n);
  std::size_t a = 0, b = 1;
  next[0] = 1; prev[1] = 0;
  next[1] = 2; prev[2] = 1;
  next[2] = 0; prev[0] = 2;

  for (std::size_t i = 3; i < n; ++i) {
    place(c[a], c[b], c[i]);
    std::size_t j = next[b], k = prev[a];
    double sj = c[b].r, sk = c[a].r;
    bool retry = false;
    do {
      if (sj <= sk) {
        if (intersects(c[j], c[i])) {
          b = j;
          next[a] = b;
          prev[b] = a;
          retry = true;
          break;
        }
        sj += c[j].r;
        j = next[j];
      } else {
        if (intersects(c[k], c[i])) {
          a = k;
          next[a] = b;
          prev[b] = a;
          retry = true;
          break;
        }
        sk += c[k].r;
        k = prev[k];
      }
    } while (j != next[k]);
    if (retry) {
      --i;
      continue;
    }

    prev[i] = a;
    next[i] = b;
    next[a] = i;
    prev[b] = i;
    b = i;

    double best = score(c[a], c[next[a]]);
    for (std::size_t x = next[i]; x != b; x = next[x]) {
      const double s = score(c[x], c[next[x]]);
      if (s < best) {
        a = x;
        best = s;
      }
    }
    b = next[a];
  }
}

}  // namespace

std::pair<Vec2, double> enclosing_circle(std::span<const PackedCircle> circles) {
  if (circles.empty()) throw InvalidArgument("no circles to enclose");
  std::vector<Circle> cs;
  for (const auto& c : circles) cs.push_back({c.center.x, c.center.y, c.radius});
  const Circle e = enclose(std::move(cs));
  return {{e.x, e.y}, e.r};
}

PackResult pack_group(std::span<const PackItem> members) {
  if (members.empty()) throw InvalidArgument("cannot pack an empty group");
  std::vector<PackItem> order(members.begin(), members.end());
  for (const auto& m : order)
    if (!(m.radius > 0) || !std::isfinite(m.radius))
      throw InvalidArgument("circle '" + m.id + "' needs a positive radius");
  std::sort(order.begin(), order.end(), [](const PackItem& a, const PackItem& b) {
    return a.radius != b.radius ? a.radius > b.radius : a.id < b.id;
  });

  std::vector<Circle> cs;
  for (const auto& m : order) cs.push_back({0, 0, m.radius});
  pack_siblings(cs);
  const Circle e = enclose(cs);

  PackResult out;
  out.enclosing_radius = e.r;
  for (std::size_t i = 0; i < order.size(); ++i)
    out.circles.push_back(
        {order[i].id, {cs[i].x - e.x, cs[i].y - e.y}, order[i].radius});
  return out;
}

// ---------------------------------------------------------------------------
// Group placement
// ---------------------------------------------------------------------------

namespace {

constexpr double kRepulsion = 30.0;
constexpr double kCentering = 0.05;
constexpr double kVelocityKeep = 0.6;
constexpr double kAlphaMin = 0.001;
constexpr double kSeparationTol = 1e-7;
constexpr int kMaxResolvePasses = 2000;

struct Body {
  Vec2 p;
  Vec2 v;
  double r = 0;
  bool pinned = false;
};

// Unit vector for coincident centres, fixed per pair.
Vec2 fallback_direction(std::size_t i, std::size_t j) {
  const double angle = static_cast<double>(i * 31 + j * 17) * 2.399963229728653;
  return {std::cos(angle), std::sin(angle)};
}

bool overlaps_any(const std::vector<Body>& bodies, std::size_t i) {
  for (std::size_t j = 0; j < bodies.size(); ++j) {
    if (j == i) continue;
    if (distance(bodies[i].p, bodies[j].p) <
        bodies[i].r + bodies[j].r - kSeparationTol)
      return true;
  }
  return false;
}

// Pairwise projection until no pair overlaps. Returns false if passes ran out.
bool resolve(std::vector<Body>& bodies, int max_passes) {
  for (int pass = 0; pass < max_passes; ++pass) {
    bool moved = false;
    for (std::size_t i = 0; i < bodies.size(); ++i)
      for (std::size_t j = i + 1; j < bodies.size(); ++j) {
        Body& a = bodies[i];
        Body& b = bodies[j];
        if (a.pinned && b.pinned) continue;
        const Vec2 d = b.p - a.p;
        const double len = std::hypot(d.x, d.y);
        const double overlap = a.r + b.r - len;
        if (overlap <= kSeparationTol) continue;
        const Vec2 dir = len > 1e-12 ? d * (1 / len) : fallback_direction(i, j);
        const double push = overlap + kSeparationTol;
        if (a.pinned) {
          b.p = b.p + dir * push;
        } else if (b.pinned) {
          a.p = a.p - dir * push;
        } else {
          a.p = a.p - dir * (push / 2);
          b.p = b.p + dir * (push / 2);
        }
        moved = true;
      }
    if (!moved) return true;
  }
  return false;
}

// Moves each still-overlapping free body to the first free spot on a
// spiral around `origin`.
void relocate_stragglers(std::vector<Body>& bodies, Vec2 origin) {
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    if (bodies[i].pinned || !overlaps_any(bodies, i)) continue;
    const double step = std::max(bodies[i].r / 2, 1.0);
    for (std::size_t k = 1;; ++k) {
      const double angle = static_cast<double>(k) * 2.399963229728653;
      const double radius = step * std::sqrt(static_cast<double>(k));
      bodies[i].p = origin + Vec2{std::cos(angle), std::sin(angle)} * radius;
      if (!overlaps_any(bodies, i)) break;
    }
  }
}

}  // namespace

std::map<std::string, Vec2> layout_groups(
    const std::map<std::string, double>& group_radii, const LayoutConfig& config,
    const std::map<std::string, Vec2>& pinned) {
  config.validate();
  std::map<std::string, Vec2> out;
  if (group_radii.empty()) return out;

  const Vec2 center = config.canvas_center();
  std::vector<std::string> keys;
  std::vector<Body> bodies;
  double total_radius = 0;
  bool any_pinned = false;
  for (const auto& [key, r] : group_radii) {
    if (!(r > 0) || !std::isfinite(r))
      throw InvalidArgument("group '" + key + "' needs a positive radius");
    keys.push_back(key);
    Body b;
    b.r = r;
    if (const auto it = pinned.find(key); it != pinned.end()) {
      b.p = it->second;
      b.pinned = true;
      any_pinned = true;
    }
    bodies.push_back(b);
    total_radius += r;
  }
  const std::size_t n = bodies.size();

  if (n == 1) {
    out[keys[0]] = bodies[0].pinned ? bodies[0].p : center;
    return out;
  }

  // Ring start whose circumference fits every diameter.
  std::mt19937_64 rng(config.seed);
  const double phase =
      std::uniform_real_distribution<double>(0, 2 * std::numbers::pi)(rng);
  const double ring = total_radius / std::numbers::pi;
  for (std::size_t i = 0; i < n; ++i) {
    if (bodies[i].pinned) continue;
    const double angle =
        phase + 2 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    bodies[i].p = center + Vec2{std::cos(angle), std::sin(angle)} * ring;
  }

  const double iters = static_cast<double>(config.iterations);
  for (std::size_t it = 0; it < config.iterations; ++it) {
    const double alpha = std::pow(kAlphaMin, static_cast<double>(it) / iters);
    for (std::size_t i = 0; i < n; ++i) {
      if (bodies[i].pinned) continue;
      Vec2 force = (center - bodies[i].p) * kCentering;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const Vec2 d = bodies[i].p - bodies[j].p;
        const double len = std::max(std::hypot(d.x, d.y), 1e-6);
        const double mag = kRepulsion * bodies[i].r * bodies[j].r / (len * len);
        force = force + d * (mag / len);
      }
      bodies[i].v = (bodies[i].v + force * alpha) * kVelocityKeep;
    }
    for (auto& b : bodies)
      if (!b.pinned) b.p = b.p + b.v;
    resolve(bodies, 1);
  }

  if (!resolve(bodies, kMaxResolvePasses)) relocate_stragglers(bodies, center);

  if (!any_pinned) {
    Vec2 mean;
    for (const auto& b : bodies) mean = mean + b.p;
    mean = mean * (1.0 / static_cast<double>(n));
    const Vec2 shift = center - mean;
    for (auto& b : bodies) b.p = b.p + shift;
  }

  for (std::size_t i = 0; i < n; ++i) out[keys[i]] = bodies[i].p;
  return out;
}

// ---------------------------------------------------------------------------
// Hull
// ---------------------------------------------------------------------------

std::vector<Vec2> compute_hull(std::span<const Vec2> points) {
  if (points.empty()) throw InvalidArgument("hull needs at least one point");
  std::vector<Vec2> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;

  auto cross = [](Vec2 o, Vec2 a, Vec2 b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
  };
  std::vector<Vec2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

// ---------------------------------------------------------------------------
// Project layout
// ---------------------------------------------------------------------------

const GroupCircle* LayoutResult::group(std::string_view key) const {
  for (const auto& g : groups)
    if (g.key == key) return &g;
  return nullptr;
}

std::string group_key(const ElementRecord& node, std::string_view attribute) {
  const auto a = detail::lower(detail::trim(attribute));
  if (a == "type") return node.type;
  if (a == "asil") return std::string(render_asil(node.asil));
  for (SecComponent c : kSecComponents)
    if (a == component_name(c)) return render_sec_component(c, node.sec.get(c));
  throw InvalidArgument("cannot group by '" + std::string(attribute) + "'");
}

double node_radius(const LayoutConfig& config, const ElementRecord& node,
                   std::size_t degree) {
  double factor = 1.0;
  switch (config.size_by) {
    case SizeBy::Degree:
      factor = 1.0 + 0.1 * static_cast<double>(degree);
      break;
    case SizeBy::AsilRank:
      if (const auto rank = asil_rank(node.asil)) factor = 1.0 + 0.15 * *rank;
      break;
    case SizeBy::Constant:
      break;
  }
  return config.base_radius * factor;
}

namespace {

std::vector<Vec2> hull_for(const std::vector<NodePlacement>& members) {
  std::vector<Vec2> pts;
  for (const auto& m : members)
    for (int k = 0; k < 8; ++k) {
      const double angle = k * std::numbers::pi / 4;
      pts.push_back(m.center + Vec2{std::cos(angle), std::sin(angle)} * m.radius);
    }
  return compute_hull(pts);
}

void translate_group(LayoutResult& layout, std::size_t g, Vec2 to) {
  GroupCircle& group = layout.groups[g];
  const Vec2 shift = to - group.center;
  if (shift == Vec2{}) return;
  group.center = to;
  for (auto& n : layout.nodes)
    if (n.group == group.key) n.center = n.center + shift;
  for (auto& v : layout.hulls[g].vertices) v = v + shift;
}

}  // namespace

LayoutResult layout_project(const GraphSnapshot& snapshot,
                            const LayoutConfig& config,
                            const std::map<std::string, Vec2>& pinned) {
  config.validate();
  LayoutResult out;
  out.layout_id = snapshot.project_id();
  out.config = config;

  std::map<std::string, std::vector<PackItem>> members;
  for (std::size_t i = 0; i < snapshot.node_count(); ++i) {
    const auto& n = snapshot.nodes()[i];
    members[group_key(n, config.group_by)].push_back(
        {n.id, node_radius(config, n, snapshot.incident_links(i).size())});
  }

  std::map<std::string, PackResult> packs;
  std::map<std::string, double> radii;
  for (const auto& [key, items] : members) {
    auto pack = pack_group(items);
    radii[key] = pack.enclosing_radius + config.group_padding;
    packs.emplace(key, std::move(pack));
  }
  const auto centers = layout_groups(radii, config, pinned);

  for (const auto& [key, pack] : packs) {
    const Vec2 c = centers.at(key);
    GroupCircle group{key, key + " (" + std::to_string(pack.circles.size()) + ")",
                      c, radii.at(key), {}};
    std::vector<NodePlacement> placed;
    for (const auto& pc : pack.circles) {
      placed.push_back({pc.id, c + pc.center, pc.radius, key});
      group.member_ids.push_back(pc.id);
    }
    std::sort(group.member_ids.begin(), group.member_ids.end());
    out.hulls.push_back({key, hull_for(placed)});
    out.groups.push_back(std::move(group));
    out.nodes.insert(out.nodes.end(), placed.begin(), placed.end());
  }
  std::sort(out.nodes.begin(), out.nodes.end(),
            [](const NodePlacement& a, const NodePlacement& b) { return a.id < b.id; });
  return out;
}

std::vector<LayoutResult> align_layouts(std::vector<LayoutResult> layouts,
                                        const std::string& reference_id) {
  const auto ref_it =
      std::find_if(layouts.begin(), layouts.end(),
                   [&](const LayoutResult& l) { return l.layout_id == reference_id; });
  if (ref_it == layouts.end())
    throw NotFoundError("no layout '" + reference_id + "' to align against");
  LayoutResult& ref = *ref_it;
  for (const auto& l : layouts)
    if (detail::lower(l.config.group_by) != detail::lower(ref.config.group_by))
      throw InvalidArgument("layouts group by different attributes");

  // Spread the reference so the largest same-key circle fits at each slot.
  std::vector<Body> bodies;
  for (const auto& g : ref.groups) {
    double r = g.radius;
    for (const auto& l : layouts)
      if (const auto* other = l.group(g.key)) r = std::max(r, other->radius);
    bodies.push_back({g.center, {}, r, false});
  }
  if (!resolve(bodies, kMaxResolvePasses))
    relocate_stragglers(bodies, ref.config.canvas_center());
  for (std::size_t g = 0; g < ref.groups.size(); ++g)
    translate_group(ref, g, bodies[g].p);

  std::map<std::string, Vec2> anchors;
  for (const auto& g : ref.groups) anchors[g.key] = g.center;

  for (auto& layout : layouts) {
    if (&layout == &ref) continue;
    std::map<std::string, double> radii;
    std::map<std::string, Vec2> pins;
    for (const auto& g : layout.groups) {
      radii[g.key] = g.radius;
      if (const auto it = anchors.find(g.key); it != anchors.end())
        pins[g.key] = it->second;
    }
    const auto centers = layout_groups(radii, layout.config, pins);
    for (std::size_t g = 0; g < layout.groups.size(); ++g)
      translate_group(layout, g, centers.at(layout.groups[g].key));
  }
  return layouts;
}

}  // namespace fusalens
