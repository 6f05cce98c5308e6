// Independent reference implementations used as test oracles. Nothing here
// calls into the library's predicates.
#pragma once

#include "ncmatch/geometry.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace oracle {

using ncm::Point;
using ncm::Rational;

// Sign of (b - a) x (c - a), computed directly on the exact coordinates.
inline int turn(const Point& a, const Point& b, const Point& c) {
  const Rational v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

inline bool between(const Rational& lo, const Rational& hi, const Rational& v) {
  return (lo <= v && v <= hi) || (hi <= v && v <= lo);
}

// Closed-segment intersection for four distinct endpoints.
inline bool cross(const Point& a, const Point& b, const Point& c, const Point& d) {
  if (a.angle && b.angle && c.angle && d.angle) {
    // Chords of a circle cross iff exactly one of c, d lies on the arc strictly between a and b.
    auto inside = [&](const Rational& t) {
      const Rational lo = *a.angle < *b.angle ? *a.angle : *b.angle;
      const Rational hi = *a.angle < *b.angle ? *b.angle : *a.angle;
      return lo < t && t < hi;
    };
    return inside(*c.angle) != inside(*d.angle);
  }
  const int d1 = turn(a, b, c), d2 = turn(a, b, d), d3 = turn(c, d, a), d4 = turn(c, d, b);
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  auto on = [](const Point& p, const Point& q, const Point& r) {
    return between(p.x, q.x, r.x) && between(p.y, q.y, r.y);
  };
  return (d1 == 0 && on(a, b, c)) || (d2 == 0 && on(a, b, d)) || (d3 == 0 && on(c, d, a)) ||
         (d4 == 0 && on(c, d, b));
}

using EdgeList = std::vector<std::pair<std::size_t, std::size_t>>;

// All perfect matchings of the points (respecting colors for BNM), crossing or not.
inline void all_perfect_matchings(const ncm::Instance& inst, const std::function<void(const EdgeList&)>& visit) {
  const std::size_t m = inst.points.size();
  std::vector<bool> used(m, false);
  EdgeList cur;
  std::function<void()> rec = [&] {
    std::size_t i = 0;
    while (i < m && used[i]) ++i;
    if (i == m) {
      visit(cur);
      return;
    }
    used[i] = true;
    for (std::size_t j = i + 1; j < m; ++j) {
      if (used[j]) continue;
      if (inst.kind == ncm::ProblemKind::bnm && inst.points[i].color == inst.points[j].color) continue;
      used[j] = true;
      cur.emplace_back(i, j);
      rec();
      cur.pop_back();
      used[j] = false;
    }
    used[i] = false;
  };
  rec();
}

inline bool noncrossing(const ncm::Instance& inst, const EdgeList& edges) {
  const auto& p = inst.points;
  for (std::size_t s = 0; s < edges.size(); ++s) {
    for (std::size_t t = s + 1; t < edges.size(); ++t) {
      const auto [a, b] = edges[s];
      const auto [c, d] = edges[t];
      if (a == c || a == d || b == c || b == d) continue;
      if (cross(p[a], p[b], p[c], p[d])) return false;
    }
  }
  return true;
}

inline EdgeList edge_list(const ncm::Matching& m) {
  EdgeList out;
  for (const auto& e : m.edges()) out.emplace_back(e.a, e.b);
  return out;
}

// Catalan numbers by the convolution recurrence in 64-bit arithmetic (exact up to n = 35).
inline std::uint64_t catalan(unsigned n) {
  std::vector<std::uint64_t> c(n + 1, 0);
  c[0] = 1;
  for (unsigned k = 1; k <= n; ++k)
    for (unsigned i = 0; i < k; ++i) c[k] += c[i] * c[k - 1 - i];
  return c[n];
}

inline unsigned ceil_log2(std::uint64_t v) {
  unsigned bits = 0;
  while ((std::uint64_t{1} << bits) < v) ++bits;
  return bits;
}

// Naive O(n^3) search for indices i<j<k with v[k] < v[i] < v[j].
inline bool has_231(const std::vector<int>& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      for (std::size_t k = j + 1; k < v.size(); ++k)
        if (v[k] < v[i] && v[i] < v[j]) return true;
  return false;
}

// Elias delta code built from its textbook description.
inline std::string elias_delta(std::uint64_t m) {
  std::string bin;
  for (std::uint64_t v = m; v; v >>= 1) bin.insert(bin.begin(), char('0' + (v & 1)));
  const std::uint64_t len = bin.size();
  std::string len_bin;
  for (std::uint64_t v = len; v; v >>= 1) len_bin.insert(len_bin.begin(), char('0' + (v & 1)));
  return std::string(len_bin.size() - 1, '0') + len_bin + bin.substr(1);
}

}  // namespace oracle
