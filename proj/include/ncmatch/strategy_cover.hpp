#pragma once

#include "ncmatch/geometry.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ncm {

inline constexpr std::size_t kStrategyCoverCap = 64;

struct StrategyCover {
  std::size_t family_size = 0;
  // Minimum number of deterministic strategies that together solve every
  // member optimally.
  std::size_t cover = 0;
  // Inclusion-maximal member sets solvable by a single strategy (bit i =
  // family member i).
  std::vector<std::uint64_t> maximal_sets;
  // One optimal cover, as indices into maximal_sets.
  std::vector<std::size_t> chosen;
};

/// Exhaustive search over the family's prefix trie: a strategy fixes one
/// decision (skip or an available partner) per trie node, and two members
/// share a node while their arrivals so far coincide geometrically. On BNM
/// families the blue batch must be identical across members. Throws
/// Error(cap_exceeded) above `cap` members (at most 64) and
/// Error(precondition_mismatch) on mixed families.
StrategyCover min_strategy_cover(const std::vector<Instance>& family, std::size_t cap = kStrategyCoverCap);

}  // namespace ncm
