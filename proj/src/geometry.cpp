#include "ncmatch/geometry.hpp"

#include "ncmatch/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace ncm {

std::string_view to_string(Color c) noexcept {
  switch (c) {
    case Color::blue: return "blue";
    case Color::red: return "red";
    case Color::none: break;
  }
  return "none";
}

std::string_view to_string(ProblemKind k) noexcept { return k == ProblemKind::bnm ? "BNM" : "MNM"; }

std::string_view to_string(GeometryClass g) noexcept {
  switch (g) {
    case GeometryClass::circle: return "circle";
    case GeometryClass::convex: return "convex";
    case GeometryClass::general: break;
  }
  return "general";
}

Point circle_point(const Rational& turn, Color color) {
  const double theta = 2.0 * std::numbers::pi * to_double(turn);
  constexpr std::int64_t kScale = 1'000'000'000;
  Point p;
  p.x = make_rational(std::llround(std::cos(theta) * kScale), kScale);
  p.y = make_rational(std::llround(std::sin(theta) * kScale), kScale);
  p.color = color;
  p.angle = turn;
  return p;
}

bool same_location(const Point& a, const Point& b) {
  if (a.angle && b.angle) return *a.angle == *b.angle;
  return a.x == b.x && a.y == b.y;
}

// --- Matching ---------------------------------------------------------------

Matching::Matching(std::vector<Edge> edges) : edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end());
}

void Matching::add(std::size_t i, std::size_t j) {
  Edge e(i, j);
  edges_.insert(std::upper_bound(edges_.begin(), edges_.end(), e), e);
}

bool Matching::contains(const Edge& e) const {
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

std::optional<std::size_t> Matching::partner(std::size_t i) const {
  for (const Edge& e : edges_) {
    if (e.touches(i)) return e.other(i);
  }
  return std::nullopt;
}

// --- predicates ---------------------------------------------------------------

namespace {

// Counter-clockwise cyclic order of three distinct turn fractions.
bool ccw_angles(const Rational& a, const Rational& b, const Rational& c) {
  return (a < b && b < c) || (b < c && c < a) || (c < a && a < b);
}

bool all_on_circle(std::initializer_list<const Point*> pts) {
  return std::all_of(pts.begin(), pts.end(), [](const Point* p) { return p->angle.has_value(); });
}

// c is known to be collinear with a, b.
bool within_box(const Point& a, const Point& b, const Point& c) {
  return std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= c.y &&
         c.y <= std::max(a.y, b.y);
}

}  // namespace

Orientation orientation(const Point& a, const Point& b, const Point& c) {
  if (all_on_circle({&a, &b, &c})) {
    if (*a.angle == *b.angle || *b.angle == *c.angle || *a.angle == *c.angle) {
      return Orientation::collinear;
    }
    return ccw_angles(*a.angle, *b.angle, *c.angle) ? Orientation::left : Orientation::right;
  }
  return static_cast<Orientation>(cross_sign(a.x, a.y, b.x, b.y, c.x, c.y));
}

bool segments_cross(const Point& a, const Point& b, const Point& c, const Point& d) {
  if (same_location(a, c) || same_location(a, d) || same_location(b, c) || same_location(b, d)) {
    fail(ErrorCode::shared_endpoint, "segments share an endpoint");
  }
  if (all_on_circle({&a, &b, &c, &d})) {
    return ccw_angles(*a.angle, *c.angle, *b.angle) != ccw_angles(*a.angle, *d.angle, *b.angle);
  }
  const int o1 = static_cast<int>(orientation(a, b, c));
  const int o2 = static_cast<int>(orientation(a, b, d));
  const int o3 = static_cast<int>(orientation(c, d, a));
  const int o4 = static_cast<int>(orientation(c, d, b));
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 == 0 && within_box(a, b, c)) return true;
  if (o2 == 0 && within_box(a, b, d)) return true;
  if (o3 == 0 && within_box(c, d, a)) return true;
  if (o4 == 0 && within_box(c, d, b)) return true;
  return false;
}

Side half_plane_side(const Point& from, const Point& to, const Point& p) {
  switch (orientation(from, to, p)) {
    case Orientation::left: return Side::left;
    case Orientation::right: return Side::right;
    case Orientation::collinear: break;
  }
  fail(ErrorCode::degenerate, "point is collinear with the directed edge");
}

// --- hull ---------------------------------------------------------------------

namespace {

std::vector<std::size_t> rotate_to_front(std::vector<std::size_t> order, std::size_t first) {
  auto it = std::find(order.begin(), order.end(), first);
  std::rotate(order.begin(), it, order.end());
  return order;
}

std::vector<std::size_t> circle_hull_order(const Instance& instance) {
  const auto& pts = instance.points;
  std::vector<std::size_t> idx(pts.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (!pts[i].angle) fail(ErrorCode::invalid_instance, "circle instance point without angle");
    idx[i] = i;
  }
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return *pts[a].angle > *pts[b].angle; });
  for (std::size_t k = 1; k < idx.size(); ++k) {
    if (*pts[idx[k]].angle == *pts[idx[k - 1]].angle) {
      fail(ErrorCode::invalid_instance, "two circle points share an angle");
    }
  }
  return rotate_to_front(std::move(idx), 0);
}

std::vector<std::size_t> coordinate_hull_order(const Instance& instance) {
  const auto& pts = instance.points;
  const std::size_t n = pts.size();
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return pts[a].x < pts[b].x || (pts[a].x == pts[b].x && pts[a].y < pts[b].y);
  });
  for (std::size_t k = 1; k < n; ++k) {
    if (pts[idx[k]].x == pts[idx[k - 1]].x && pts[idx[k]].y == pts[idx[k - 1]].y) {
      fail(ErrorCode::invalid_instance, "duplicate points");
    }
  }
  if (n <= 2) return idx.empty() ? idx : rotate_to_front(idx, 0);

  auto turn = [&](std::size_t o, std::size_t a, std::size_t b) {
    return cross_sign(pts[o].x, pts[o].y, pts[a].x, pts[a].y, pts[b].x, pts[b].y);
  };
  // Andrew's monotone chain, counter-clockwise, strict vertices only.
  std::vector<std::size_t> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && turn(hull[k - 2], hull[k - 1], idx[i]) <= 0) --k;
    hull[k++] = idx[i];
  }
  for (std::size_t i = n - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && turn(hull[k - 2], hull[k - 1], idx[i]) <= 0) --k;
    hull[k++] = idx[i];
  }
  hull.resize(k - 1);
  if (hull.size() != n) {
    fail(ErrorCode::not_convex, std::to_string(n - hull.size()) + " point(s) are not hull vertices");
  }
  std::reverse(hull.begin(), hull.end());
  return rotate_to_front(std::move(hull), 0);
}

}  // namespace

std::vector<std::size_t> hull_order(const Instance& instance) {
  if (instance.geometry == GeometryClass::circle) return circle_hull_order(instance);
  return coordinate_hull_order(instance);
}

std::vector<std::uint8_t> parity(const Instance& instance) {
  const auto order = hull_order(instance);
  std::vector<std::uint8_t> chi(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) chi[order[k]] = static_cast<std::uint8_t>(k % 2);
  return chi;
}

// --- validation ------------------------------------------------------------------

void validate_instance(const Instance& instance) {
  const auto& pts = instance.points;
  if (instance.n == 0) fail(ErrorCode::invalid_instance, "n must be positive");
  if (pts.size() != 2 * instance.n) {
    fail(ErrorCode::invalid_instance, "expected " + std::to_string(2 * instance.n) + " points, got " +
                                          std::to_string(pts.size()));
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].arrival_index != i + 1) {
      fail(ErrorCode::invalid_instance, "arrival index mismatch at position " + std::to_string(i));
    }
    Color want = Color::none;
    if (instance.kind == ProblemKind::bnm) want = i < instance.n ? Color::blue : Color::red;
    if (pts[i].color != want) {
      fail(ErrorCode::invalid_instance, "point " + std::to_string(i + 1) + " should be " +
                                            std::string(to_string(want)));
    }
  }
  if (instance.geometry == GeometryClass::circle) {
    for (const Point& p : pts) {
      if (!p.angle) fail(ErrorCode::invalid_instance, "circle point without angle");
      if (*p.angle < 0 || *p.angle >= 1) fail(ErrorCode::invalid_instance, "angle outside [0, 1)");
    }
    (void)circle_hull_order(instance);  // rejects repeated angles
    return;
  }
  // Distinctness is checked by the hull routine; convexity only where required.
  if (instance.geometry == GeometryClass::convex) {
    (void)coordinate_hull_order(instance);
    return;
  }
  std::vector<std::size_t> idx(pts.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return pts[a].x < pts[b].x || (pts[a].x == pts[b].x && pts[a].y < pts[b].y);
  });
  for (std::size_t k = 1; k < idx.size(); ++k) {
    if (pts[idx[k]].x == pts[idx[k - 1]].x && pts[idx[k]].y == pts[idx[k - 1]].y) {
      fail(ErrorCode::invalid_instance, "duplicate points");
    }
  }
  for (std::size_t a = 0; a < pts.size(); ++a) {
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      for (std::size_t c = b + 1; c < pts.size(); ++c) {
        if (orientation(pts[a], pts[b], pts[c]) == Orientation::collinear) {
          fail(ErrorCode::invalid_instance, "points " + std::to_string(a + 1) + ", " +
                                                std::to_string(b + 1) + ", " + std::to_string(c + 1) +
                                                " are collinear");
        }
      }
    }
  }
}

// --- availability ------------------------------------------------------------------

std::vector<std::size_t> available_set(const Instance& instance, const Matching& current,
                                       std::size_t i) {
  const auto& pts = instance.points;
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < i; ++j) {
    if (current.partner(j)) continue;
    if (instance.kind == ProblemKind::bnm && pts[j].color == pts[i].color) continue;
    bool blocked = false;
    for (const Edge& e : current.edges()) {
      if (segments_cross(pts[i], pts[j], pts[e.a], pts[e.b])) {
        blocked = true;
        break;
      }
    }
    if (!blocked) out.push_back(j);
  }
  return out;
}

AvailabilityTracker::AvailabilityTracker(const Instance& instance)
    : instance_(&instance), partner_(instance.points.size(), kUnmatched) {
  if (instance.geometry != GeometryClass::general) {
    const auto order = hull_order(instance);
    position_.resize(order.size());
    at_position_ = order;
    for (std::size_t k = 0; k < order.size(); ++k) position_[order[k]] = k;
  }
}

bool AvailabilityTracker::eligible(std::size_t i, std::size_t j) const {
  if (j >= i || partner_[j] != kUnmatched) return false;
  const auto& pts = instance_->points;
  return instance_->kind != ProblemKind::bnm || pts[i].color != pts[j].color;
}

std::vector<std::size_t> AvailabilityTracker::available(std::size_t i) const {
  std::vector<std::size_t> out;
  if (!convex_mode()) {
    for (std::size_t j = 0; j < i; ++j) {
      if (is_available(i, j)) out.push_back(j);
    }
    return out;
  }
  // Walk clockwise from i; an edge separates i from x iff exactly one of its
  // endpoints has been passed, so x is visible iff that count is zero.
  const std::size_t total = position_.size();
  const std::size_t start = position_[i];
  long open = 0;
  for (std::size_t off = 1; off < total; ++off) {
    const std::size_t x = at_position_[(start + off) % total];
    if (x > i) continue;
    const std::size_t y = partner_[x];
    if (y != kUnmatched) {
      const std::size_t off_y = (position_[y] + total - start) % total;
      open += off_y > off ? 1 : -1;
    } else if (open == 0 && eligible(i, x)) {
      out.push_back(x);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool AvailabilityTracker::is_available(std::size_t i, std::size_t j) const {
  if (!eligible(i, j)) return false;
  const auto& pts = instance_->points;
  if (!convex_mode()) {
    for (const Edge& e : matching_.edges()) {
      if (segments_cross(pts[i], pts[j], pts[e.a], pts[e.b])) return false;
    }
    return true;
  }
  const std::size_t total = position_.size();
  const std::size_t start = position_[i];
  const std::size_t off_j = (position_[j] + total - start) % total;
  long open = 0;
  for (std::size_t off = 1; off < off_j; ++off) {
    const std::size_t x = at_position_[(start + off) % total];
    const std::size_t y = partner_[x];
    if (x > i || y == kUnmatched) continue;
    const std::size_t off_y = (position_[y] + total - start) % total;
    open += off_y > off ? 1 : -1;
  }
  return open == 0;
}

void AvailabilityTracker::add_edge(std::size_t i, std::size_t j) {
  partner_[i] = j;
  partner_[j] = i;
  matching_.add(i, j);
}

std::optional<std::size_t> AvailabilityTracker::partner(std::size_t i) const {
  if (partner_[i] == kUnmatched) return std::nullopt;
  return partner_[i];
}

}  // namespace ncm
