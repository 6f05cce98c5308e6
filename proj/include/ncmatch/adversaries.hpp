#pragma once

#include "ncmatch/codecs.hpp"
#include "ncmatch/geometry.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ncm {

// Hidden state of a Markov-chain instance. Bits are indexed by the point
// they govern: F[i] decides whether p_i is fake (when p_{i-1} is a parent)
// and R[i] picks the arc of p_{i-1} that p_i goes into (0 = clockwise).
struct MarkovTrace {
  std::vector<std::uint8_t> parent;
  std::vector<std::uint8_t> fake;
  std::vector<std::uint8_t> f;
  std::vector<std::uint8_t> r;
  std::uint64_t seed = 0;
};

// One member of the prefix family: j extra points placed in the intervals
// listed in `intervals` (1-based, ascending), the rest in the last interval.
struct FamilyChoice {
  unsigned j = 0;
  std::vector<unsigned> intervals;
  friend bool operator==(const FamilyChoice&, const FamilyChoice&) = default;
};

struct AnnotatedInstance {
  Instance instance;
  std::optional<MarkovTrace> markov;
  std::optional<Permutation> hidden_perm;
  std::optional<FamilyChoice> hidden_choice;
  unsigned family_k = 0;
  // Provenance (family name, parameters, seed, generator identifiers).
  std::vector<std::pair<std::string, std::string>> meta;
};

inline constexpr const char* kRngName = "mt19937_64";
inline constexpr const char* kGeneratorVersion = "1";

// Blue points on the upper semicircle at turn fractions (1 - i/(n+1)) / 2,
// left to right.
std::vector<Point> bnm_blue_positions(std::size_t n);

// Red points by arc-midpoint insertion on the lower semicircle. Throws
// Error(not_231_avoiding) unless `require_avoiding` is false.
AnnotatedInstance bnm_red_instance(const Permutation& sigma, bool require_avoiding = true);

// Throws Error(bad_subset) on an invalid choice.
AnnotatedInstance mnm_family_instance(unsigned k, const FamilyChoice& choice);
std::vector<FamilyChoice> mnm_family_choices(unsigned k);
BigInt mnm_family_size(unsigned k);

// Parities of the 4k fixed prefix points in the full instance.
std::vector<std::uint8_t> parity_fingerprint(const AnnotatedInstance& ai);

// Every non-crossing (possibly empty) matching on the fixed prefix.
std::vector<Matching> prefix_priors(const AnnotatedInstance& ai);

enum class CompletionMode {
  // Later edges must involve a point arriving after the prefix, as they do
  // for an online algorithm that fixed `prior` by the end of the prefix.
  online,
  // Any perfect non-crossing matching containing `prior`.
  offline,
};

struct ConsistencyReport {
  bool consistent = false;
  bool size_condition = false;    // |prior| >= k
  bool parity_condition = false;  // every prior edge joins opposite parities
};

inline constexpr std::size_t kCompletionPointCap = 18;

// Throws Error(cap_exceeded) above `point_cap` points.
ConsistencyReport consistent(const Matching& prior, const AnnotatedInstance& ai,
                             CompletionMode mode = CompletionMode::online,
                             std::size_t point_cap = kCompletionPointCap);

// 2n points on the circle driven by seeded fair bits (mt19937_64, one draw
// per bit, top bit used; F then R for each point from p_3 on).
AnnotatedInstance markov_instance(std::size_t n, std::uint64_t seed);

// P_1 = 0, P_2 = 1 and P_i = 1 - P_{i-1} F_i for every later point.
bool parent_recurrence_holds(const MarkovTrace& trace);

// Replays the trace from the stored bits with an independent arc search.
// Returns an empty string on success, otherwise the first discrepancy.
std::string verify_markov_trace(const AnnotatedInstance& ai);

// Relative entropy between Bernoulli(a) and Bernoulli(p) in bits. Throws
// Error(domain_error) outside the open unit interval.
double kl_divergence(double a, double p);

// (alpha / 2) * D(c (1 - alpha) / alpha || 1/4) for c in {2, 4}.
double approx_lb_rate(double alpha, int c);

AnnotatedInstance random_convex_instance(ProblemKind kind, std::size_t n, std::uint64_t seed);
AnnotatedInstance random_circle_instance(ProblemKind kind, std::size_t n, std::uint64_t seed);
AnnotatedInstance random_general_instance(ProblemKind kind, std::size_t n, std::uint64_t seed);

}  // namespace ncm
