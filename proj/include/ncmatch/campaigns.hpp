#pragma once

#include "ncmatch/adversaries.hpp"
#include "ncmatch/io.hpp"

#include <cstddef>
#include <cstdint>
#include <string>

namespace ncm {

// Builds an instance for a generator family: bnm-perm {sigma}, mnm-family
// {k, j, S}, markov {n}, random-convex / random-circle / random-general
// {n, kind}. Throws Error(bad_input) on bad parameters.
AnnotatedInstance generate_instance(const std::string& family, const Json& params, std::uint64_t seed);

// Verification campaigns: bnm-lb {n}, mnm-lb {k}, catalan-bijections {n},
// coupling {n, trials, seed, workers}, rate-table {}. The result holds
// "check", "pass" and a "checks" array of {name, measured, expected, pass}.
Json run_campaign(const std::string& check, const Json& params);

// Codec utilities: catalan, elias-encode, elias-decode, tree-rank,
// tree-unrank, dyck-rank, dyck-unrank, perm-check, perm-to-tree.
Json run_codec(const std::string& op, const Json& args);

struct CouplingSummary {
  std::size_t traces = 0;
  std::size_t steps = 0;               // matches over all traces
  std::size_t y_above_x = 0;           // steps with Y_i > X_i
  std::size_t x_sum_above_u = 0;       // traces with sum X > U
  std::size_t y_even_above_u = 0;      // traces with sum of even Y > U
  std::size_t recurrence_failures = 0; // traces breaking P_i = 1 - P_{i-1} F_i
  std::size_t y_even_sum = 0;
  std::size_t y_even_count = 0;
  std::size_t unmatched_sum = 0;
  std::size_t x_sum = 0;
  double y_even_mean() const { return y_even_count ? double(y_even_sum) / double(y_even_count) : 0.0; }
};

// Greedy player against `trials` Markov instances; trace t uses seed
// splitmix64(seed + t). Work is split across `workers` threads (0 = from
// the NCMATCH_WORKERS environment variable, else hardware concurrency).
CouplingSummary coupling_campaign(std::size_t n, std::size_t trials, std::uint64_t seed, std::size_t workers = 0);

std::uint64_t splitmix64(std::uint64_t x);
std::size_t worker_count(std::size_t requested);

// Parses the bracket form produced by BinaryTree::str. Throws Error(bad_input).
BinaryTree parse_tree(const std::string& text);

}  // namespace ncm
