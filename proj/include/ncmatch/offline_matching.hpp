#pragma once

#include "ncmatch/codecs.hpp"
#include "ncmatch/geometry.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace ncm {

inline constexpr std::size_t kBruteForcePointCap = 12;

struct BruteForceOptions {
  std::size_t point_cap = kBruteForcePointCap;
  // Skip partial pairings that already contain a crossing. The optimum is
  // never lost because a minimum-length perfect matching is non-crossing.
  bool prune_crossings = true;
};

// Calls `visit` with every perfect matching (red-blue pairs only on BNM),
// or only the non-crossing ones when pruning. Throws Error(cap_exceeded).
void for_each_perfect_matching(const Instance& instance, const BruteForceOptions& options,
                               const std::function<void(const std::vector<Edge>&)>& visit);

std::vector<Matching> noncrossing_perfect_matchings(const Instance& instance,
                                                    std::size_t point_cap = kBruteForcePointCap);

/// Perfect matching of minimum total Euclidean length. Totals are compared
/// with outward-rounded MPFR intervals refined on overlap; exact ties go to
/// the lexicographically smaller edge list.
Matching min_length_pm(const Instance& instance, const BruteForceOptions& options = {});

// -1, 0, 1 comparing the total lengths of two edge sets (0 = unresolved tie
// at the maximum precision).
int compare_total_length(const Instance& instance, const std::vector<Edge>& lhs,
                         const std::vector<Edge>& rhs);

// Divide and conquer along the hull order. Throws Error(not_convex).
Matching convex_noncrossing_pm(const Instance& instance);

// The recursive tree of a perfect non-crossing red-blue matching: the root is
// the first red point's edge, subtrees hold the edges left/right of it.
BinaryTree matching_to_bt(const Instance& instance, const Matching& matching);

struct MatchingReport {
  std::vector<std::pair<Edge, Edge>> crossing_pairs;
  std::vector<Edge> color_violations;
  std::vector<std::size_t> duplicate_endpoints;
  std::vector<Edge> invalid_edges;  // self-loops or out-of-range indices
  std::size_t matched_points = 0;
  bool perfect = false;

  bool valid() const {
    return crossing_pairs.empty() && color_violations.empty() && duplicate_endpoints.empty() &&
           invalid_edges.empty();
  }
};

MatchingReport validate_matching(const Instance& instance, const Matching& matching,
                                 bool require_perfect = false);

}  // namespace ncm
