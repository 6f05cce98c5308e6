#include "ncmatch/offline_matching.hpp"

#include "ncmatch/error.hpp"

#include <mpfr.h>

#include <algorithm>
#include <string>

namespace ncm {

// --- enumeration ----------------------------------------------------------------

void for_each_perfect_matching(const Instance& instance, const BruteForceOptions& options,
                               const std::function<void(const std::vector<Edge>&)>& visit) {
  const auto& pts = instance.points;
  const std::size_t total = pts.size();
  if (total > options.point_cap) {
    fail(ErrorCode::cap_exceeded, "brute force over " + std::to_string(total) + " points exceeds cap " +
                                      std::to_string(options.point_cap));
  }
  if (total % 2 != 0) return;
  const bool bichromatic = instance.kind == ProblemKind::bnm;
  std::vector<bool> used(total, false);
  std::vector<Edge> edges;
  edges.reserve(total / 2);

  std::function<void()> extend = [&]() {
    std::size_t u = 0;
    while (u < total && used[u]) ++u;
    if (u == total) {
      visit(edges);
      return;
    }
    used[u] = true;
    for (std::size_t v = u + 1; v < total; ++v) {
      if (used[v] || (bichromatic && pts[u].color == pts[v].color)) continue;
      if (options.prune_crossings) {
        const bool crosses = std::any_of(edges.begin(), edges.end(), [&](const Edge& e) {
          return segments_cross(pts[u], pts[v], pts[e.a], pts[e.b]);
        });
        if (crosses) continue;
      }
      used[v] = true;
      edges.emplace_back(u, v);
      extend();
      edges.pop_back();
      used[v] = false;
    }
    used[u] = false;
  };
  extend();
}

std::vector<Matching> noncrossing_perfect_matchings(const Instance& instance, std::size_t point_cap) {
  std::vector<Matching> out;
  for_each_perfect_matching(instance, {point_cap, true},
                            [&](const std::vector<Edge>& edges) { out.emplace_back(edges); });
  return out;
}

// --- length intervals --------------------------------------------------------------

namespace {

class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~BigFloat() { mpfr_clear(v_); }
  BigFloat(const BigFloat& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  BigFloat& operator=(const BigFloat& other) {
    if (this != &other) {
      mpfr_set_prec(v_, mpfr_get_prec(other.v_));
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

struct Interval {
  BigFloat lo;
  BigFloat hi;
  explicit Interval(mpfr_prec_t prec) : lo(prec), hi(prec) {
    mpfr_set_zero(lo.get(), 1);
    mpfr_set_zero(hi.get(), 1);
  }
  void add(const Interval& other) {
    mpfr_add(lo.get(), lo.get(), other.lo.get(), MPFR_RNDD);
    mpfr_add(hi.get(), hi.get(), other.hi.get(), MPFR_RNDU);
  }
};

Interval edge_length(const Point& a, const Point& b, mpfr_prec_t prec) {
  Interval out(prec);
  if (a.angle && b.angle) {
    // Chord length 2 sin(pi d), d the angular separation in turns, d <= 1/2.
    Rational d = *a.angle - *b.angle;
    if (d < 0) d = -d;
    if (d > Rational(1) / 2) d = 1 - d;
    BigFloat pi(prec), arg(prec), half_pi(prec);
    mpfr_const_pi(pi.get(), MPFR_RNDD);
    mpfr_div_ui(half_pi.get(), pi.get(), 2, MPFR_RNDD);
    mpfr_set_q(arg.get(), d.backend().data(), MPFR_RNDD);
    mpfr_mul(arg.get(), arg.get(), pi.get(), MPFR_RNDD);
    mpfr_sin(out.lo.get(), arg.get(), MPFR_RNDD);
    mpfr_mul_ui(out.lo.get(), out.lo.get(), 2, MPFR_RNDD);

    mpfr_const_pi(pi.get(), MPFR_RNDU);
    mpfr_set_q(arg.get(), d.backend().data(), MPFR_RNDU);
    mpfr_mul(arg.get(), arg.get(), pi.get(), MPFR_RNDU);
    if (mpfr_cmp(arg.get(), half_pi.get()) >= 0) {
      mpfr_set_ui(out.hi.get(), 2, MPFR_RNDU);
    } else {
      mpfr_sin(out.hi.get(), arg.get(), MPFR_RNDU);
      mpfr_mul_ui(out.hi.get(), out.hi.get(), 2, MPFR_RNDU);
    }
    return out;
  }
  const Rational dx = a.x - b.x;
  const Rational dy = a.y - b.y;
  const Rational sq = dx * dx + dy * dy;
  mpfr_set_q(out.lo.get(), sq.backend().data(), MPFR_RNDD);
  mpfr_sqrt(out.lo.get(), out.lo.get(), MPFR_RNDD);
  mpfr_set_q(out.hi.get(), sq.backend().data(), MPFR_RNDU);
  mpfr_sqrt(out.hi.get(), out.hi.get(), MPFR_RNDU);
  return out;
}

Interval total_length(const Instance& instance, const std::vector<Edge>& edges, mpfr_prec_t prec) {
  Interval sum(prec);
  for (const Edge& e : edges) sum.add(edge_length(instance.points[e.a], instance.points[e.b], prec));
  return sum;
}

int compare_intervals(const Interval& l, const Interval& r) {
  if (mpfr_cmp(l.hi.get(), r.lo.get()) < 0) return -1;
  if (mpfr_cmp(l.lo.get(), r.hi.get()) > 0) return 1;
  return 0;
}

constexpr mpfr_prec_t kBasePrecision = 128;
constexpr mpfr_prec_t kMaxPrecision = 4096;

}  // namespace

int compare_total_length(const Instance& instance, const std::vector<Edge>& lhs,
                         const std::vector<Edge>& rhs) {
  for (mpfr_prec_t prec = kBasePrecision; prec <= kMaxPrecision; prec *= 2) {
    const int c = compare_intervals(total_length(instance, lhs, prec), total_length(instance, rhs, prec));
    if (c != 0) return c;
  }
  return 0;
}

Matching min_length_pm(const Instance& instance, const BruteForceOptions& options) {
  const std::size_t total = instance.points.size();
  std::vector<std::vector<Interval>> cache;
  cache.reserve(total);
  for (std::size_t a = 0; a < total; ++a) {
    cache.emplace_back();
    cache.back().reserve(total);
    for (std::size_t b = 0; b < total; ++b) {
      cache.back().push_back(a == b ? Interval(kBasePrecision)
                                    : edge_length(instance.points[a], instance.points[b], kBasePrecision));
    }
  }

  std::vector<Edge> best;
  Interval best_len(kBasePrecision);
  bool have_best = false;
  for_each_perfect_matching(instance, options, [&](const std::vector<Edge>& edges) {
    Interval len(kBasePrecision);
    for (const Edge& e : edges) len.add(cache[e.a][e.b]);
    bool take = !have_best;
    if (have_best) {
      int c = compare_intervals(len, best_len);
      if (c == 0) c = compare_total_length(instance, edges, best);
      if (c == 0) {
        std::vector<Edge> sorted = edges;
        std::sort(sorted.begin(), sorted.end());
        c = sorted < best ? -1 : 1;
      }
      take = c < 0;
    }
    if (take) {
      best = edges;
      std::sort(best.begin(), best.end());
      best_len = len;
      have_best = true;
    }
  });
  if (!have_best) fail(ErrorCode::not_perfect, "instance admits no perfect matching");
  return Matching(best);
}

// --- convex construction ----------------------------------------------------------------

namespace {

void convex_split(const Instance& instance, const std::vector<std::size_t>& arc, Matching& out) {
  if (arc.empty()) return;
  const auto& pts = instance.points;
  const bool bichromatic = instance.kind == ProblemKind::bnm;
  auto balanced = [&](std::size_t lo, std::size_t hi) {
    if ((hi - lo) % 2 != 0) return false;
    if (!bichromatic) return true;
    long diff = 0;
    for (std::size_t k = lo; k < hi; ++k) diff += pts[arc[k]].color == Color::blue ? 1 : -1;
    return diff == 0;
  };
  const std::size_t first = arc.front();
  for (std::size_t k = 1; k < arc.size(); ++k) {
    const std::size_t cand = arc[k];
    const bool compatible = bichromatic ? pts[cand].color != pts[first].color : k % 2 == 1;
    if (!compatible || !balanced(1, k) || !balanced(k + 1, arc.size())) continue;
    out.add(first, cand);
    convex_split(instance, std::vector<std::size_t>(arc.begin() + 1, arc.begin() + k), out);
    convex_split(instance, std::vector<std::size_t>(arc.begin() + k + 1, arc.end()), out);
    return;
  }
  fail(ErrorCode::internal, "no balanced partner for point " + std::to_string(first + 1));
}

}  // namespace

Matching convex_noncrossing_pm(const Instance& instance) {
  const auto order = hull_order(instance);
  if (order.size() % 2 != 0) fail(ErrorCode::invalid_instance, "odd number of points");
  Matching out;
  convex_split(instance, order, out);
  return out;
}

// --- tree conversion ------------------------------------------------------------------------

namespace {

struct RedBlue {
  std::size_t red;
  std::size_t blue;
};

BinaryTree matching_to_bt_impl(const Instance& instance, const std::vector<RedBlue>& edges) {
  if (edges.empty()) return {};
  const auto& pts = instance.points;
  const Point& r1 = pts[edges.front().red];
  const Point& b = pts[edges.front().blue];
  std::vector<RedBlue> left, right;
  for (std::size_t k = 1; k < edges.size(); ++k) {
    const Side sr = half_plane_side(r1, b, pts[edges[k].red]);
    const Side sb = half_plane_side(r1, b, pts[edges[k].blue]);
    if (sr != sb) fail(ErrorCode::crossing_detected, "edge straddles the splitting edge");
    (sr == Side::left ? left : right).push_back(edges[k]);
  }
  return BinaryTree::join(matching_to_bt_impl(instance, left), matching_to_bt_impl(instance, right));
}

}  // namespace

BinaryTree matching_to_bt(const Instance& instance, const Matching& matching) {
  if (instance.kind != ProblemKind::bnm) {
    fail(ErrorCode::precondition_mismatch, "matching_to_bt requires a BNM instance");
  }
  const MatchingReport report = validate_matching(instance, matching, true);
  if (!report.crossing_pairs.empty()) fail(ErrorCode::crossing_detected, "matching has crossing edges");
  if (!report.valid() || !report.perfect) fail(ErrorCode::not_perfect, "matching is not a perfect red-blue matching");
  std::vector<RedBlue> edges;
  for (const Edge& e : matching.edges()) {
    // On BNM instances blue indices precede red ones.
    edges.push_back({e.b, e.a});
  }
  std::sort(edges.begin(), edges.end(), [](const RedBlue& l, const RedBlue& r) { return l.red < r.red; });
  return matching_to_bt_impl(instance, edges);
}

// --- validation ------------------------------------------------------------------------------

MatchingReport validate_matching(const Instance& instance, const Matching& matching, bool require_perfect) {
  (void)require_perfect;  // perfectness is always reported
  MatchingReport report;
  const auto& pts = instance.points;
  const std::size_t total = pts.size();
  std::vector<std::size_t> degree(total, 0);
  std::vector<Edge> good;
  for (const Edge& e : matching.edges()) {
    if (e.a == e.b || e.b >= total) {
      report.invalid_edges.push_back(e);
      continue;
    }
    ++degree[e.a];
    ++degree[e.b];
    if (instance.kind == ProblemKind::bnm && pts[e.a].color == pts[e.b].color) {
      report.color_violations.push_back(e);
    }
    good.push_back(e);
  }
  for (std::size_t i = 0; i < total; ++i) {
    if (degree[i] > 1) report.duplicate_endpoints.push_back(i);
    if (degree[i] > 0) ++report.matched_points;
  }
  for (std::size_t x = 0; x < good.size(); ++x) {
    for (std::size_t y = x + 1; y < good.size(); ++y) {
      const Edge& e = good[x];
      const Edge& f = good[y];
      if (e.touches(f.a) || e.touches(f.b)) continue;
      if (segments_cross(pts[e.a], pts[e.b], pts[f.a], pts[f.b])) report.crossing_pairs.emplace_back(e, f);
    }
  }
  report.perfect = report.valid() && report.matched_points == total;
  return report;
}

}  // namespace ncm
