#include "doctest.h"
#include "ncmatch/adversaries.hpp"
#include "ncmatch/error.hpp"
#include "ncmatch/offline_matching.hpp"
#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

using namespace ncm;

namespace {

Point pt(std::int64_t x, std::int64_t y) {
  Point p;
  p.x = x;
  p.y = y;
  return p;
}

Instance make(std::vector<Point> pts, ProblemKind kind, GeometryClass g) {
  Instance inst;
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i].arrival_index = i + 1;
  inst.points = std::move(pts);
  inst.kind = kind;
  inst.geometry = g;
  inst.n = inst.points.size() / 2;
  return inst;
}

double length(const Instance& inst, const oracle::EdgeList& edges) {
  double total = 0;
  for (auto [a, b] : edges) {
    const auto& p = inst.points[a];
    const auto& q = inst.points[b];
    total += std::hypot(to_double(p.x - q.x), to_double(p.y - q.y));
  }
  return total;
}

// Positions of the points in clockwise order around their centroid, starting at `from`.
std::vector<std::size_t> clockwise_around_centroid(const Instance& inst, std::size_t from) {
  double cx = 0, cy = 0;
  for (const auto& p : inst.points) {
    cx += to_double(p.x);
    cy += to_double(p.y);
  }
  cx /= double(inst.points.size());
  cy /= double(inst.points.size());
  std::vector<std::size_t> idx(inst.points.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  auto ang = [&](std::size_t i) {
    return std::atan2(to_double(inst.points[i].y) - cy, to_double(inst.points[i].x) - cx);
  };
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return ang(a) > ang(b); });
  std::rotate(idx.begin(), std::find(idx.begin(), idx.end(), from), idx.end());
  return idx;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::internal;
}

}  // namespace

TEST_CASE("min_length_pm on tiny inputs") {
  const auto two = make({pt(0, 0), pt(3, 4)}, ProblemKind::mnm, GeometryClass::convex);
  CHECK(min_length_pm(two).edges() == std::vector<Edge>{Edge(0, 1)});

  const auto sq = make({pt(0, 0), pt(1, 1), pt(1, 0), pt(0, 1)}, ProblemKind::mnm, GeometryClass::convex);
  const auto m = min_length_pm(sq);
  REQUIRE(m.size() == 2);
  CHECK_FALSE(m.contains(Edge(0, 1)));
  CHECK_FALSE(m.contains(Edge(2, 3)));
  CHECK(validate_matching(sq, m, true).valid());
}

TEST_CASE("min_length_pm reaches the brute-force minimum and never crosses") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const std::size_t n = 2 + seed % 4;
    const auto ai = seed % 3 == 0   ? random_circle_instance(ProblemKind::mnm, n, seed)
                    : seed % 3 == 1 ? random_general_instance(ProblemKind::mnm, n, seed)
                                    : random_general_instance(ProblemKind::bnm, n, seed);
    const auto& inst = ai.instance;
    double best = std::numeric_limits<double>::infinity();
    oracle::all_perfect_matchings(inst, [&](const oracle::EdgeList& e) { best = std::min(best, length(inst, e)); });
    const auto m = min_length_pm(inst);
    const auto edges = oracle::edge_list(m);
    REQUIRE(edges.size() == n);
    REQUIRE(oracle::noncrossing(inst, edges));
    REQUIRE(length(inst, edges) == doctest::Approx(best).epsilon(1e-9));
    REQUIRE(validate_matching(inst, m, true).perfect);
  }
}

TEST_CASE("brute force enforces its point cap") {
  const auto ai = random_general_instance(ProblemKind::mnm, 7, 1);
  CHECK(code_of([&] { (void)min_length_pm(ai.instance); }) == ErrorCode::cap_exceeded);
}

TEST_CASE("noncrossing_perfect_matchings counts Catalan many on a circle") {
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto ai = random_circle_instance(ProblemKind::mnm, n, 40 + n);
    REQUIRE(noncrossing_perfect_matchings(ai.instance).size() == oracle::catalan(n));
  }
}

TEST_CASE("convex_noncrossing_pm") {
  const auto fig = bnm_red_instance(Permutation{{2, 1, 4, 3}});
  CHECK(validate_matching(fig.instance, convex_noncrossing_pm(fig.instance), true).perfect);

  const auto two = make({pt(0, 0), pt(1, 0)}, ProblemKind::mnm, GeometryClass::convex);
  CHECK(convex_noncrossing_pm(two).edges() == std::vector<Edge>{Edge(0, 1)});

  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto kind = seed % 2 ? ProblemKind::mnm : ProblemKind::bnm;
    const auto ai = random_convex_instance(kind, 6, seed);
    bool exists = false;
    oracle::all_perfect_matchings(ai.instance, [&](const oracle::EdgeList& e) {
      if (!exists && oracle::noncrossing(ai.instance, e)) exists = true;
    });
    const auto m = convex_noncrossing_pm(ai.instance);
    const auto edges = oracle::edge_list(m);
    REQUIRE(exists);
    REQUIRE(edges.size() == 6);
    REQUIRE(oracle::noncrossing(ai.instance, edges));
    if (kind == ProblemKind::bnm)
      for (auto [a, b] : edges) REQUIRE(ai.instance.points[a].color != ai.instance.points[b].color);
  }
}

TEST_CASE("matching_to_bt on small hand-built instances") {
  const auto single = bnm_red_instance(Permutation{{1}});
  CHECK(matching_to_bt(single.instance, convex_noncrossing_pm(single.instance)) == BinaryTree::leaf());

  // Blues at 3/8 and 1/8 turns, red 1 at the bottom. Clockwise from red 1 the blue at 3/8 comes first.
  auto build = [](const Rational& second_red) {
    std::vector<Point> pts{circle_point(make_rational(3, 8), Color::blue), circle_point(make_rational(1, 8), Color::blue),
                           circle_point(make_rational(3, 4), Color::red), circle_point(second_red, Color::red)};
    return make(std::move(pts), ProblemKind::bnm, GeometryClass::circle);
  };
  // Second red at 5/8 pairs with the 3/8 blue, so red 1 takes the second blue clockwise.
  const auto outer = build(make_rational(5, 8));
  Matching mo;
  mo.add(3, 0);
  mo.add(2, 1);
  CHECK(matching_to_bt(outer, mo).str() == "(())");
  // Second red at 7/8: red 1 takes the first blue clockwise.
  const auto inner = build(make_rational(7, 8));
  Matching mi;
  mi.add(2, 0);
  mi.add(3, 1);
  CHECK(matching_to_bt(inner, mi).str() == "()()");
}

TEST_CASE("left subtree size encodes the clockwise rank of red 1's partner") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const std::size_t n = 1 + seed % 8;
    const auto ai = random_convex_instance(ProblemKind::bnm, n, seed);
    const auto& inst = ai.instance;
    const auto m = convex_noncrossing_pm(inst);
    const auto t = matching_to_bt(inst, m);
    REQUIRE(t.size() == n);
    const std::size_t r1 = n;
    const std::size_t partner = *m.partner(r1);
    std::size_t rank = 0;
    for (std::size_t v : clockwise_around_centroid(inst, r1)) {
      if (inst.points[v].color != Color::blue) continue;
      ++rank;
      if (v == partner) break;
    }
    REQUIRE(t.left().size() + 1 == rank);
  }
}

TEST_CASE("matching_to_bt preconditions") {
  const auto mnm = random_convex_instance(ProblemKind::mnm, 3, 2);
  CHECK(code_of([&] { (void)matching_to_bt(mnm.instance, convex_noncrossing_pm(mnm.instance)); }) ==
        ErrorCode::precondition_mismatch);

  const auto fig = bnm_red_instance(Permutation{{1, 2}});
  Matching partial;
  partial.add(0, 2);
  CHECK(code_of([&] { (void)matching_to_bt(fig.instance, partial); }) == ErrorCode::not_perfect);

  // Blues at 3/8, 1/8 and reds at 5/8, 7/8: the two "parallel" edges cross.
  std::vector<Point> pts{circle_point(make_rational(3, 8), Color::blue), circle_point(make_rational(1, 8), Color::blue),
                         circle_point(make_rational(5, 8), Color::red), circle_point(make_rational(7, 8), Color::red)};
  const auto inst = make(std::move(pts), ProblemKind::bnm, GeometryClass::circle);
  Matching crossing;
  crossing.add(0, 3);
  crossing.add(1, 2);
  CHECK(code_of([&] { (void)matching_to_bt(inst, crossing); }) == ErrorCode::crossing_detected);
}

TEST_CASE("validate_matching reports") {
  const auto sq = make({pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)}, ProblemKind::mnm, GeometryClass::convex);
  const auto empty = validate_matching(sq, Matching{});
  CHECK(empty.valid());
  CHECK(empty.matched_points == 0);
  CHECK_FALSE(empty.perfect);

  Matching diag;
  diag.add(0, 2);
  diag.add(1, 3);
  const auto rep = validate_matching(sq, diag);
  CHECK(rep.crossing_pairs.size() == 1);
  CHECK_FALSE(rep.valid());
  CHECK(rep.matched_points == 4);

  Matching dup;
  dup.add(0, 1);
  dup.add(1, 2);
  CHECK_FALSE(validate_matching(sq, dup).duplicate_endpoints.empty());

  const auto fig = bnm_red_instance(Permutation{{1, 2}});
  Matching same_color;
  same_color.add(0, 1);
  CHECK(validate_matching(fig.instance, same_color).color_violations.size() == 1);
}
