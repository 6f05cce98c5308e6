#pragma once

#include "ncmatch/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace ncm {

enum class Color : std::uint8_t { none, blue, red };
enum class ProblemKind : std::uint8_t { mnm, bnm };
enum class GeometryClass : std::uint8_t { circle, convex, general };
enum class Orientation : std::int8_t { right = -1, collinear = 0, left = 1 };
enum class Side : std::uint8_t { left, right };

std::string_view to_string(Color c) noexcept;
std::string_view to_string(ProblemKind k) noexcept;
std::string_view to_string(GeometryClass g) noexcept;

/// A planar input point. Circle points carry `angle`, a turn fraction in
/// [0, 1) measured counter-clockwise from the positive x axis; on those points
/// every predicate is decided by angle order, and `x`/`y` are placeholders for
/// rendering only.
struct Point {
  Rational x;
  Rational y;
  std::size_t arrival_index = 0;  // 1-based
  Color color = Color::none;
  std::optional<Rational> angle;
};

// Exact rational approximations of (cos, sin) at 1e-9 resolution, used only
// for rendering and serialization of circle points.
Point circle_point(const Rational& turn, Color color = Color::none);

bool same_location(const Point& a, const Point& b);

struct Instance {
  std::vector<Point> points;
  ProblemKind kind = ProblemKind::mnm;
  GeometryClass geometry = GeometryClass::general;
  std::size_t n = 0;
};

// Throws Error(invalid_instance) or Error(not_convex) when the instance breaks
// a structural invariant (distinct points, coloring, angles, convexity,
// general position).
void validate_instance(const Instance& instance);

/// Undirected edge between two point indices (0-based), stored with a < b.
struct Edge {
  std::size_t a = 0;
  std::size_t b = 0;

  Edge() = default;
  Edge(std::size_t i, std::size_t j) : a(i < j ? i : j), b(i < j ? j : i) {}

  bool touches(std::size_t i) const { return a == i || b == i; }
  std::size_t other(std::size_t i) const { return a == i ? b : a; }
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// A set of edges kept sorted. Validity (disjoint endpoints, no crossings) is
/// checked by validate_matching, not on insertion.
class Matching {
 public:
  Matching() = default;
  explicit Matching(std::vector<Edge> edges);

  void add(std::size_t i, std::size_t j);
  bool contains(const Edge& e) const;
  std::optional<std::size_t> partner(std::size_t i) const;

  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }

  friend bool operator==(const Matching&, const Matching&) = default;

 private:
  std::vector<Edge> edges_;
};

Orientation orientation(const Point& a, const Point& b, const Point& c);

// True iff the closed segments [a,b] and [c,d] intersect. Throws
// Error(shared_endpoint) if the segments share an endpoint location.
bool segments_cross(const Point& a, const Point& b, const Point& c, const Point& d);

// Clockwise order of all points along the convex hull, starting at point 0.
// Throws Error(not_convex) if some point is not a strict hull vertex.
std::vector<std::size_t> hull_order(const Instance& instance);

// Clockwise hull rank of each point modulo 2, so parity[0] == 0.
std::vector<std::uint8_t> parity(const Instance& instance);

// Throws Error(degenerate) if p is collinear with the directed edge.
Side half_plane_side(const Point& from, const Point& to, const Point& p);

// Reference availability: every unmatched j < i (of the opposite color on
// BNM) such that the segment (i, j) crosses no edge of `current`.
std::vector<std::size_t> available_set(const Instance& instance, const Matching& current,
                                       std::size_t i);

/// Incremental availability for online simulation. On circle and convex
/// instances the test runs in O(#points) per query from cyclic hull
/// positions; on general instances it falls back to segment tests.
class AvailabilityTracker {
 public:
  explicit AvailabilityTracker(const Instance& instance);

  std::vector<std::size_t> available(std::size_t i) const;
  bool is_available(std::size_t i, std::size_t j) const;
  void add_edge(std::size_t i, std::size_t j);

  std::optional<std::size_t> partner(std::size_t i) const;
  const Matching& matching() const { return matching_; }
  bool convex_mode() const { return !position_.empty(); }
  // Clockwise hull position of each point (empty on general instances).
  const std::vector<std::size_t>& positions() const { return position_; }

 private:
  bool eligible(std::size_t i, std::size_t j) const;

  const Instance* instance_;
  std::vector<std::size_t> position_;
  std::vector<std::size_t> at_position_;
  std::vector<std::size_t> partner_;
  Matching matching_;
};

inline constexpr std::size_t kUnmatched = static_cast<std::size_t>(-1);

}  // namespace ncm
