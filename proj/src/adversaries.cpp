#include "ncmatch/adversaries.hpp"

#include "ncmatch/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iterator>
#include <numeric>
#include <random>
#include <set>
#include <string>

namespace ncm {

namespace {

Rational wrap_turn(Rational t) {
  while (t < 0) t += 1;
  while (t >= 1) t -= 1;
  return t;
}

void add_meta(AnnotatedInstance& ai, std::string key, std::string value) {
  ai.meta.emplace_back(std::move(key), std::move(value));
}

}  // namespace

// --- BNM family ----------------------------------------------------------------------------

std::vector<Point> bnm_blue_positions(std::size_t n) {
  std::vector<Point> blues;
  blues.reserve(n);
  const auto denom = static_cast<std::int64_t>(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    const Rational turn = (1 - make_rational(static_cast<std::int64_t>(i), denom)) / 2;
    Point p = circle_point(turn, Color::blue);
    p.arrival_index = i;
    blues.push_back(std::move(p));
  }
  return blues;
}

AnnotatedInstance bnm_red_instance(const Permutation& sigma, bool require_avoiding) {
  if (!is_permutation(sigma) || sigma.size() == 0) fail(ErrorCode::bad_input, "not a permutation of 1..n");
  if (require_avoiding && !is_231_avoiding(sigma)) {
    fail(ErrorCode::not_231_avoiding, "permutation " + sigma.str() + " contains a 231 pattern");
  }
  const std::size_t n = sigma.size();
  AnnotatedInstance ai;
  ai.instance.kind = ProblemKind::bnm;
  ai.instance.geometry = GeometryClass::circle;
  ai.instance.n = n;
  ai.instance.points = bnm_blue_positions(n);
  ai.hidden_perm = sigma;

  // Boundaries of the lower semicircle, left (turn 1/2) to right (turn 1).
  std::vector<Rational> cuts{Rational(1) / 2, Rational(1)};
  for (std::size_t i = 1; i <= n; ++i) {
    // Arc whose midpoint gets final rank sigma_i: one past the earlier reds ranked below it.
    std::size_t j = 1;
    for (std::size_t l = 1; l < i; ++l) j += sigma.values[l - 1] < sigma.values[i - 1] ? 1 : 0;
    const Rational mid = (cuts[j - 1] + cuts[j]) / 2;
    cuts.insert(cuts.begin() + static_cast<std::ptrdiff_t>(j), mid);
    Point p = circle_point(mid, Color::red);
    p.arrival_index = n + i;
    ai.instance.points.push_back(std::move(p));
  }
  add_meta(ai, "family", "bnm-perm");
  add_meta(ai, "sigma", sigma.str());
  add_meta(ai, "generator_version", kGeneratorVersion);
  return ai;
}

// --- MNM prefix family ---------------------------------------------------------------------

AnnotatedInstance mnm_family_instance(unsigned k, const FamilyChoice& choice) {
  if (k == 0) fail(ErrorCode::bad_subset, "k must be positive");
  const unsigned prefix = 4 * k;
  if (choice.j > 2 * k) fail(ErrorCode::bad_subset, "j exceeds 2k");
  if (choice.intervals.size() != choice.j) fail(ErrorCode::bad_subset, "|S| differs from j");
  for (std::size_t t = 0; t < choice.intervals.size(); ++t) {
    const unsigned s = choice.intervals[t];
    if (s < 1 || s >= prefix) fail(ErrorCode::bad_subset, "interval " + std::to_string(s) + " outside 1..4k-1");
    if (t > 0 && choice.intervals[t - 1] >= s) fail(ErrorCode::bad_subset, "intervals must be strictly ascending");
  }

  AnnotatedInstance ai;
  ai.instance.kind = ProblemKind::mnm;
  ai.instance.geometry = GeometryClass::circle;
  ai.instance.n = 3 * k;
  ai.family_k = k;
  ai.hidden_choice = choice;
  const Rational quarter = Rational(1) / 4;
  const Rational step = make_rational(1, prefix);
  auto push = [&](const Rational& turn) {
    Point p = circle_point(wrap_turn(turn));
    p.arrival_index = ai.instance.points.size() + 1;
    ai.instance.points.push_back(std::move(p));
  };
  for (unsigned i = 1; i <= prefix; ++i) push(quarter - (i - 1) * step);
  for (unsigned s : choice.intervals) push(quarter - (Rational(s) - Rational(1) / 2) * step);
  const unsigned rest = 2 * k - choice.j;
  const Rational last_start = quarter - (prefix - 1) * step;
  for (unsigned t = 1; t <= rest; ++t) push(last_start - step * t / (rest + 1));

  add_meta(ai, "family", "mnm-family");
  add_meta(ai, "k", std::to_string(k));
  add_meta(ai, "generator_version", kGeneratorVersion);
  return ai;
}

std::vector<FamilyChoice> mnm_family_choices(unsigned k) {
  std::vector<FamilyChoice> out;
  const unsigned intervals = 4 * k - 1;
  std::vector<unsigned> current;
  std::function<void(unsigned, unsigned)> choose = [&](unsigned next, unsigned remaining) {
    if (remaining == 0) {
      out.push_back({static_cast<unsigned>(current.size()), current});
      return;
    }
    for (unsigned s = next; s + remaining - 1 <= intervals; ++s) {
      current.push_back(s);
      choose(s + 1, remaining - 1);
      current.pop_back();
    }
  };
  for (unsigned j = 0; j <= 2 * k; ++j) choose(1, j);
  return out;
}

BigInt mnm_family_size(unsigned k) {
  BigInt total = 0;
  for (unsigned j = 0; j <= 2 * k; ++j) total += binomial(4 * k - 1, j);
  return total;
}

std::vector<std::uint8_t> parity_fingerprint(const AnnotatedInstance& ai) {
  if (ai.family_k == 0) fail(ErrorCode::bad_input, "not a prefix-family instance");
  auto chi = parity(ai.instance);
  chi.resize(4 * ai.family_k);
  return chi;
}

std::vector<Matching> prefix_priors(const AnnotatedInstance& ai) {
  if (ai.family_k == 0) fail(ErrorCode::bad_input, "not a prefix-family instance");
  const std::size_t prefix = 4 * ai.family_k;
  const auto& pts = ai.instance.points;
  std::vector<Matching> out;
  std::vector<bool> used(prefix, false);
  std::vector<Edge> edges;
  std::function<void(std::size_t)> extend = [&](std::size_t u) {
    while (u < prefix && used[u]) ++u;
    if (u == prefix) {
      out.emplace_back(Matching([&] {
        auto sorted = edges;
        std::sort(sorted.begin(), sorted.end());
        return sorted;
      }()));
      return;
    }
    used[u] = true;
    extend(u + 1);  // u stays unmatched
    for (std::size_t v = u + 1; v < prefix; ++v) {
      if (used[v]) continue;
      const bool crosses = std::any_of(edges.begin(), edges.end(), [&](const Edge& e) {
        return segments_cross(pts[u], pts[v], pts[e.a], pts[e.b]);
      });
      if (crosses) continue;
      used[v] = true;
      edges.emplace_back(u, v);
      extend(u + 1);
      edges.pop_back();
      used[v] = false;
    }
    used[u] = false;
  };
  extend(0);
  return out;
}

ConsistencyReport consistent(const Matching& prior, const AnnotatedInstance& ai, CompletionMode mode,
                             std::size_t point_cap) {
  if (ai.family_k == 0) fail(ErrorCode::bad_input, "not a prefix-family instance");
  const auto& pts = ai.instance.points;
  const std::size_t total = pts.size();
  if (total > point_cap) fail(ErrorCode::cap_exceeded, "completion search over " + std::to_string(total) + " points");
  const std::size_t prefix = 4 * ai.family_k;
  const auto chi = parity(ai.instance);

  std::vector<bool> used(total, false);
  std::vector<Edge> edges;
  ConsistencyReport report;
  report.size_condition = prior.size() >= ai.family_k;
  report.parity_condition = true;
  for (const Edge& e : prior.edges()) {
    if (e.b >= prefix || used[e.a] || used[e.b]) fail(ErrorCode::bad_input, "prior is not a matching on the prefix");
    for (const Edge& f : edges) {
      if (segments_cross(pts[e.a], pts[e.b], pts[f.a], pts[f.b])) fail(ErrorCode::bad_input, "prior has a crossing");
    }
    used[e.a] = used[e.b] = true;
    edges.push_back(e);
    if (chi[e.a] == chi[e.b]) report.parity_condition = false;
  }

  std::function<bool()> complete = [&]() -> bool {
    std::size_t u = 0;
    while (u < total && used[u]) ++u;
    if (u == total) return true;
    used[u] = true;
    for (std::size_t v = u + 1; v < total; ++v) {
      if (used[v]) continue;
      if (mode == CompletionMode::online && v < prefix) continue;
      const bool crosses = std::any_of(edges.begin(), edges.end(), [&](const Edge& e) {
        return segments_cross(pts[u], pts[v], pts[e.a], pts[e.b]);
      });
      if (crosses) continue;
      used[v] = true;
      edges.emplace_back(u, v);
      const bool ok = complete();
      edges.pop_back();
      used[v] = false;
      if (ok) {
        used[u] = false;
        return true;
      }
    }
    used[u] = false;
    return false;
  };
  report.consistent = complete();
  return report;
}

// --- Markov-chain family -------------------------------------------------------------------

namespace {

// Midpoint of the arc from `anchor` to its clockwise (side 0) or
// counter-clockwise (side 1) neighbour in `placed`.
Rational arc_midpoint(const std::set<Rational>& placed, const Rational& anchor, int side) {
  auto it = placed.find(anchor);
  if (side == 0) {
    const Rational prev = it == placed.begin() ? *placed.rbegin() - 1 : *std::prev(it);
    return wrap_turn((anchor + prev) / 2);
  }
  auto next = std::next(it);
  const Rational succ = next == placed.end() ? *placed.begin() + 1 : *next;
  return wrap_turn((anchor + succ) / 2);
}

std::uint8_t coin(std::mt19937_64& rng) { return static_cast<std::uint8_t>(rng() >> 63); }

}  // namespace

AnnotatedInstance markov_instance(std::size_t n, std::uint64_t seed) {
  if (n == 0) fail(ErrorCode::bad_input, "n must be positive");
  const std::size_t total = 2 * n;
  MarkovTrace trace;
  trace.seed = seed;
  trace.parent.assign(total, 0);
  trace.fake.assign(total, 0);
  trace.f.assign(total, 0);
  trace.r.assign(total, 0);
  std::vector<Rational> turn(total);
  turn[0] = Rational(1) / 4;
  turn[1] = Rational(3) / 4;
  trace.parent[1] = 1;
  std::set<Rational> placed{turn[0], turn[1]};

  std::mt19937_64 rng(seed);
  for (std::size_t i = 2; i < total; ++i) {
    trace.f[i] = coin(rng);
    trace.r[i] = coin(rng);
    std::size_t anchor;
    int side;
    if (trace.parent[i - 1]) {
      anchor = i - 1;
      side = trace.r[i];
      trace.fake[i] = trace.f[i];
      trace.parent[i] = trace.f[i] ? 0 : 1;
    } else {
      // p_{i-1} is a fake child of p_{i-2}: continue in the other arc.
      anchor = i - 2;
      side = 1 - trace.r[i - 1];
      trace.parent[i] = 1;
    }
    turn[i] = arc_midpoint(placed, turn[anchor], side);
    placed.insert(turn[i]);
  }

  AnnotatedInstance ai;
  ai.instance.kind = ProblemKind::mnm;
  ai.instance.geometry = GeometryClass::circle;
  ai.instance.n = n;
  ai.instance.points.reserve(total);
  for (std::size_t i = 0; i < total; ++i) {
    Point p = circle_point(turn[i]);
    p.arrival_index = i + 1;
    ai.instance.points.push_back(std::move(p));
  }
  ai.markov = std::move(trace);
  add_meta(ai, "family", "markov");
  add_meta(ai, "n", std::to_string(n));
  add_meta(ai, "seed", std::to_string(seed));
  add_meta(ai, "rng", kRngName);
  add_meta(ai, "generator_version", kGeneratorVersion);
  return ai;
}

bool parent_recurrence_holds(const MarkovTrace& trace) {
  const std::size_t total = trace.parent.size();
  if (total == 0 || trace.parent[0] != 0 || trace.f.size() != total) return false;
  for (std::size_t i = 1; i < total; ++i) {
    if (trace.parent[i] != 1 - trace.parent[i - 1] * trace.f[i]) return false;
  }
  return total < 2 || trace.parent[1] == 1;
}

std::string verify_markov_trace(const AnnotatedInstance& ai) {
  if (!ai.markov) return "instance has no Markov annotations";
  const MarkovTrace& t = *ai.markov;
  const auto& pts = ai.instance.points;
  const std::size_t total = pts.size();
  if (t.parent.size() != total || t.fake.size() != total || t.f.size() != total || t.r.size() != total) {
    return "annotation length mismatch";
  }
  for (std::size_t i = 0; i < total; ++i) {
    if (!pts[i].angle) return "point " + std::to_string(i + 1) + " has no angle";
    const BigInt den = denominator(*pts[i].angle);
    if ((den & (den - 1)) != 0) return "point " + std::to_string(i + 1) + " is not dyadic";
  }
  if (*pts[0].angle != Rational(1) / 4 || (total > 1 && *pts[1].angle != Rational(3) / 4)) {
    return "poles misplaced";
  }
  if (total > 1 && !t.parent[1]) return "p_2 is not a parent";
  for (std::size_t i = 1; i < total; ++i) {
    const int expected = 1 - t.parent[i - 1] * t.f[i];
    if (t.parent[i] != expected) return "parent recurrence fails at point " + std::to_string(i + 1);
  }
  // Arc placement, recomputed by scanning every earlier point.
  for (std::size_t i = 2; i < total; ++i) {
    const bool after_parent = t.parent[i - 1] != 0;
    const std::size_t anchor = after_parent ? i - 1 : i - 2;
    const int side = after_parent ? t.r[i] : 1 - t.r[i - 1];
    const Rational& a = *pts[anchor].angle;
    Rational best_gap = 2;
    for (std::size_t q = 0; q < i; ++q) {
      if (q == anchor) continue;
      const Rational& b = *pts[q].angle;
      if (b == a) return "coincident points";
      Rational gap = side == 0 ? a - b : b - a;
      if (gap < 0) gap += 1;
      best_gap = std::min(best_gap, gap);
    }
    const Rational offset = best_gap / 2;
    const Rational expected = wrap_turn(side == 0 ? Rational(a - offset) : Rational(a + offset));
    if (*pts[i].angle != expected) return "point " + std::to_string(i + 1) + " is not at the expected arc midpoint";
  }
  return {};
}

// --- rate function ------------------------------------------------------------------------

double kl_divergence(double a, double p) {
  if (!(a > 0 && a < 1 && p > 0 && p < 1)) fail(ErrorCode::domain_error, "arguments must lie in (0, 1)");
  return a * std::log2(a / p) + (1 - a) * std::log2((1 - a) / (1 - p));
}

double approx_lb_rate(double alpha, int c) {
  if (c != 2 && c != 4) fail(ErrorCode::domain_error, "constant must be 2 or 4");
  if (!(alpha > 16.0 / 17.0 && alpha < 1)) fail(ErrorCode::domain_error, "alpha must lie in (16/17, 1)");
  const double inner = c * (1 - alpha) / alpha;
  if (!(inner > 0 && inner < 0.25)) fail(ErrorCode::domain_error, "relative entropy argument leaves (0, 1/4)");
  return alpha / 2 * kl_divergence(inner, 0.25);
}

// --- random instances ----------------------------------------------------------------------

namespace {

void finish_random(AnnotatedInstance& ai, ProblemKind kind, std::size_t n, GeometryClass geometry,
                   std::vector<Point> points, std::mt19937_64& rng, const char* family, std::uint64_t seed) {
  std::shuffle(points.begin(), points.end(), rng);
  for (std::size_t i = 0; i < points.size(); ++i) {
    points[i].arrival_index = i + 1;
    points[i].color = kind == ProblemKind::bnm ? (i < n ? Color::blue : Color::red) : Color::none;
  }
  ai.instance.kind = kind;
  ai.instance.geometry = geometry;
  ai.instance.n = n;
  ai.instance.points = std::move(points);
  add_meta(ai, "family", family);
  add_meta(ai, "n", std::to_string(n));
  add_meta(ai, "seed", std::to_string(seed));
  add_meta(ai, "rng", kRngName);
  add_meta(ai, "generator_version", kGeneratorVersion);
}

std::vector<std::int64_t> distinct_ints(std::mt19937_64& rng, std::size_t count, std::int64_t lo, std::int64_t hi) {
  std::uniform_int_distribution<std::int64_t> dist(lo, hi);
  std::set<std::int64_t> seen;
  std::vector<std::int64_t> out;
  while (out.size() < count) {
    const std::int64_t v = dist(rng);
    if (seen.insert(v).second) out.push_back(v);
  }
  return out;
}

}  // namespace

AnnotatedInstance random_convex_instance(ProblemKind kind, std::size_t n, std::uint64_t seed) {
  if (n == 0) fail(ErrorCode::bad_input, "n must be positive");
  std::mt19937_64 rng(seed);
  const std::size_t total = 2 * n;
  // Integer points on a parabola, then a random integer similarity.
  const auto xs = distinct_ints(rng, total, -1000, 1000);
  std::uniform_int_distribution<std::int64_t> coef(-40, 40);
  std::int64_t a = 0, b = 0;
  while (a == 0 && b == 0) {
    a = coef(rng);
    b = coef(rng);
  }
  const std::int64_t tx = coef(rng) * 1000, ty = coef(rng) * 1000;
  std::vector<Point> pts;
  for (std::int64_t x : xs) {
    const std::int64_t y = x * x;
    Point p;
    p.x = Rational(a * x - b * y + tx);
    p.y = Rational(b * x + a * y + ty);
    pts.push_back(std::move(p));
  }
  AnnotatedInstance ai;
  finish_random(ai, kind, n, GeometryClass::convex, std::move(pts), rng, "random-convex", seed);
  return ai;
}

AnnotatedInstance random_circle_instance(ProblemKind kind, std::size_t n, std::uint64_t seed) {
  if (n == 0) fail(ErrorCode::bad_input, "n must be positive");
  std::mt19937_64 rng(seed);
  constexpr std::int64_t kResolution = std::int64_t{1} << 20;
  const auto ks = distinct_ints(rng, 2 * n, 0, kResolution - 1);
  std::vector<Point> pts;
  for (std::int64_t k : ks) pts.push_back(circle_point(make_rational(k, kResolution)));
  AnnotatedInstance ai;
  finish_random(ai, kind, n, GeometryClass::circle, std::move(pts), rng, "random-circle", seed);
  return ai;
}

AnnotatedInstance random_general_instance(ProblemKind kind, std::size_t n, std::uint64_t seed) {
  if (n == 0) fail(ErrorCode::bad_input, "n must be positive");
  std::mt19937_64 rng(seed);
  constexpr std::int64_t kRange = 1'000'000;
  std::uniform_int_distribution<std::int64_t> dist(-kRange, kRange);
  std::vector<std::pair<std::int64_t, std::int64_t>> xy;
  std::set<std::int64_t> used_x;
  while (xy.size() < 2 * n) {
    const std::int64_t x = dist(rng), y = dist(rng);
    if (used_x.count(x)) continue;
    bool collinear = false;
    for (std::size_t s = 0; s < xy.size() && !collinear; ++s) {
      for (std::size_t t = s + 1; t < xy.size() && !collinear; ++t) {
        const auto [ax, ay] = xy[s];
        const auto [bx, by] = xy[t];
        collinear = (bx - ax) * (y - ay) - (by - ay) * (x - ax) == 0;
      }
    }
    if (collinear) continue;
    used_x.insert(x);
    xy.emplace_back(x, y);
  }
  std::vector<Point> pts;
  for (const auto& [x, y] : xy) {
    Point p;
    p.x = Rational(x);
    p.y = Rational(y);
    pts.push_back(std::move(p));
  }
  AnnotatedInstance ai;
  finish_random(ai, kind, n, GeometryClass::general, std::move(pts), rng, "random-general", seed);
  return ai;
}

}  // namespace ncm
