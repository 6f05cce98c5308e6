#include "doctest.h"
#include "ncmatch/adversaries.hpp"
#include "ncmatch/campaigns.hpp"
#include "ncmatch/coupling.hpp"
#include "ncmatch/error.hpp"
#include "ncmatch/offline_matching.hpp"
#include "ncmatch/online_engine.hpp"
#include "ncmatch/strategy_cover.hpp"
#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

using namespace ncm;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::internal;
}

std::vector<Rational> red_angles(const AnnotatedInstance& ai) {
  std::vector<Rational> out;
  for (const auto& p : ai.instance.points)
    if (p.color == Color::red) out.push_back(*p.angle);
  return out;
}

// Left-to-right rank (1-based) of each red along the lower semicircle, where angles grow from 1/2 to 1.
std::vector<int> red_ranks(const AnnotatedInstance& ai) {
  const auto a = red_angles(ai);
  std::vector<int> rank(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    rank[i] = 1 + int(std::count_if(a.begin(), a.end(), [&](const Rational& v) { return v < a[i]; }));
  return rank;
}

std::uint64_t binom(unsigned n, unsigned k) {
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("blue positions") {
  const auto one = bnm_blue_positions(1);
  REQUIRE(one.size() == 1);
  CHECK(*one[0].angle == make_rational(1, 4));
  const auto four = bnm_blue_positions(4);
  const std::vector<Rational> want{make_rational(2, 5), make_rational(3, 10), make_rational(1, 5), make_rational(1, 10)};
  for (std::size_t i = 0; i < 4; ++i) CHECK(*four[i].angle == want[i]);
  for (std::size_t n = 1; n <= 12; ++n)
    for (const auto& p : bnm_blue_positions(n)) REQUIRE((*p.angle > 0 && *p.angle < make_rational(1, 2)));
}

TEST_CASE("red instance construction") {
  const auto one = bnm_red_instance(Permutation{{1}});
  CHECK(*one.instance.points[1].angle == make_rational(3, 4));
  CHECK(one.instance.points[1].x == 0);

  const auto fig = bnm_red_instance(Permutation{{2, 1, 4, 3}});
  CHECK(fig.instance.points.size() == 8);
  CHECK(red_ranks(fig) == std::vector<int>{2, 1, 4, 3});

  for (unsigned n = 1; n <= 6; ++n)
    for (const auto& s : enumerate_231_avoiding(n)) REQUIRE(red_ranks(bnm_red_instance(s)) == s.values);

  CHECK(code_of([] { (void)bnm_red_instance(Permutation{{2, 3, 1}}); }) == ErrorCode::not_231_avoiding);
  const auto forced = bnm_red_instance(Permutation{{2, 3, 1}}, false);
  CHECK(red_ranks(forced) == std::vector<int>{2, 3, 1});
}

TEST_CASE("231-avoiding instances agree through the first difference") {
  for (unsigned n = 2; n <= 5; ++n) {
    const auto perms = enumerate_231_avoiding(n);
    std::vector<std::vector<Rational>> reds;
    for (const auto& p : perms) reds.push_back(red_angles(bnm_red_instance(p)));
    for (std::size_t a = 0; a < perms.size(); ++a) {
      for (std::size_t b = a + 1; b < perms.size(); ++b) {
        std::size_t i = 0;
        while (perms[a].values[i] == perms[b].values[i]) ++i;
        for (std::size_t t = 0; t <= i; ++t) REQUIRE(reds[a][t] == reds[b][t]);
      }
    }
  }
}

TEST_CASE("prefix family sizes and fingerprints") {
  for (unsigned k = 1; k <= 3; ++k) {
    std::uint64_t want = 0;
    for (unsigned j = 0; j <= 2 * k; ++j) want += binom(4 * k - 1, j);
    REQUIRE(mnm_family_size(k) == BigInt(want));
    REQUIRE(mnm_family_choices(k).size() == want);
  }
  CHECK(mnm_family_size(2) == 99);

  const auto min1 = mnm_family_instance(1, FamilyChoice{0, {}});
  CHECK(min1.instance.points.size() == 6);

  for (unsigned k = 1; k <= 3; ++k) {
    std::set<std::vector<std::uint8_t>> seen;
    for (const auto& c : mnm_family_choices(k)) {
      const auto ai = mnm_family_instance(k, c);
      const auto fp = parity_fingerprint(ai);
      REQUIRE(fp.size() == 4 * k);
      // Reference: parities of the prefix points read off the hull order directly.
      const auto chi = parity(ai.instance);
      REQUIRE(fp == std::vector<std::uint8_t>(chi.begin(), chi.begin() + 4 * k));
      REQUIRE(seen.insert(fp).second);
    }
  }
  const auto a = mnm_family_instance(2, FamilyChoice{1, {3}});
  const auto b = mnm_family_instance(2, FamilyChoice{1, {5}});
  CHECK(parity_fingerprint(a) != parity_fingerprint(b));

  CHECK(code_of([] { (void)mnm_family_instance(1, FamilyChoice{1, {4}}); }) == ErrorCode::bad_subset);
  CHECK(code_of([] { (void)mnm_family_instance(1, FamilyChoice{2, {2, 1}}); }) == ErrorCode::bad_subset);
  CHECK(code_of([] { (void)mnm_family_instance(1, FamilyChoice{3, {1, 2, 3}}); }) == ErrorCode::bad_subset);
}

TEST_CASE("consistency of prefix matchings") {
  for (const auto& c : mnm_family_choices(1)) {
    const auto ai = mnm_family_instance(1, c);
    CHECK(consistent(Matching{}, ai, CompletionMode::offline).consistent);
    const auto online = consistent(Matching{}, ai);
    CHECK_FALSE(online.consistent);
    CHECK_FALSE(online.size_condition);

    const auto chi = parity(ai.instance);
    for (const auto& prior : prefix_priors(ai)) {
      const auto rep = consistent(prior, ai);
      bool same_parity = false;
      for (const auto& e : prior.edges()) same_parity |= chi[e.a] == chi[e.b];
      CHECK(rep.parity_condition == !same_parity);
      if (same_parity || prior.size() < 1) CHECK_FALSE(rep.consistent);
      if (rep.consistent) CHECK((rep.size_condition && rep.parity_condition));
    }
  }
  const auto plain = random_circle_instance(ProblemKind::mnm, 3, 1);
  CHECK(code_of([&] { (void)consistent(Matching{}, plain); }) == ErrorCode::bad_input);
}

TEST_CASE("markov adversary") {
  const auto one = markov_instance(1, 3);
  REQUIRE(one.instance.points.size() == 2);
  CHECK(*one.instance.points[0].angle == make_rational(1, 4));
  CHECK(*one.instance.points[1].angle == make_rational(3, 4));
  CHECK(simulate(greedy_matching(), one.instance).matching.size() == 1);

  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto ai = markov_instance(40, seed);
    REQUIRE(ai.markov.has_value());
    REQUIRE(verify_markov_trace(ai).empty());
    const auto& t = *ai.markov;
    for (std::size_t i = 1; i < t.parent.size(); ++i) {
      // P_i = 1 - P_{i-1} F_i, checked directly from the recorded bits.
      REQUIRE(t.parent[i] == 1 - t.parent[i - 1] * t.f[i]);
    }
    for (const auto& p : ai.instance.points) {
      // Dyadic turn fractions only.
      BigInt den = denominator(*p.angle);
      REQUIRE((den & (den - 1)) == 0);
    }
  }
  const auto a = markov_instance(50, 7);
  const auto b = markov_instance(50, 7);
  REQUIRE(a.instance.points.size() == 100);
  for (std::size_t i = 0; i < 100; ++i) REQUIRE(*a.instance.points[i].angle == *b.instance.points[i].angle);
  CHECK(a.markov->f == b.markov->f);

  auto broken = markov_instance(20, 4);
  broken.markov->parent[5] ^= 1;
  CHECK_FALSE(verify_markov_trace(broken).empty());
}

TEST_CASE("coupling diagnostics on greedy traces") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto ai = markov_instance(60, seed);
    SimulateOptions opts;
    opts.record_available = true;
    const auto sim = simulate(greedy_matching(), ai.instance, opts);
    const auto d = coupling_diagnostics(ai, sim);
    const std::size_t unmatched = ai.instance.points.size() - 2 * sim.matching.size();
    REQUIRE(d.unmatched == unmatched);
    REQUIRE(d.isolated == unmatched);
    REQUIRE(d.x.size() == sim.matching.size());
    for (std::size_t i = 0; i < d.x.size(); ++i) REQUIRE(d.y[i] <= d.x[i]);
    REQUIRE(d.x_sum == std::accumulate(d.x.begin(), d.x.end(), std::size_t{0}));
    REQUIRE(d.x_sum <= unmatched);
    REQUIRE(d.y_even_sum <= unmatched);
  }
  const auto ai = markov_instance(10, 1);
  const auto bare = simulate(greedy_matching(), ai.instance);
  CHECK(code_of([&] { (void)coupling_diagnostics(ai, bare); }) == ErrorCode::precondition_mismatch);
}

TEST_CASE("relative entropy and approximation rates") {
  for (double p : {0.1, 0.25, 0.5, 0.9}) CHECK(kl_divergence(p, p) == doctest::Approx(0.0));
  // Reference: 1/8 log2(1/2) + 7/8 log2(7/6).
  const double want = 0.125 * std::log2(0.5) + 0.875 * std::log2(7.0 / 6.0);
  CHECK(kl_divergence(0.125, 0.25) == doctest::Approx(want).epsilon(1e-12));
  CHECK(kl_divergence(0.125, 0.25) == doctest::Approx(0.0696).epsilon(1e-3));
  for (int i = 1; i < 20; ++i)
    for (int j = 1; j < 20; ++j)
      if (i != j) REQUIRE(kl_divergence(i / 20.0, j / 20.0) > 0);

  // Golden value from an independent evaluation of (alpha/2) D(4(1-alpha)/alpha || 1/4).
  CHECK(approx_lb_rate(0.95, 4) == doctest::Approx(0.0029574666970577394).epsilon(1e-12));
  double prev = 0;
  for (double alpha : {0.95, 0.97, 0.99, 0.999}) {
    const double c2 = approx_lb_rate(alpha, 2), c4 = approx_lb_rate(alpha, 4);
    CHECK(c2 >= c4);
    CHECK(c2 > prev);
    prev = c2;
  }
  CHECK(approx_lb_rate(0.999999, 2) == doctest::Approx(0.5 * std::log2(4.0 / 3.0)).epsilon(1e-4));
  CHECK(code_of([] { (void)approx_lb_rate(0.95, 3); }) == ErrorCode::domain_error);
  // c=4 needs 4(1-alpha)/alpha below 1/4, that is alpha above 16/17.
  CHECK(code_of([] { (void)approx_lb_rate(0.9, 4); }) == ErrorCode::domain_error);
  CHECK(code_of([] { (void)kl_divergence(0.0, 0.5); }) == ErrorCode::domain_error);
}

TEST_CASE("random generators are seeded and valid") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    for (auto kind : {ProblemKind::mnm, ProblemKind::bnm}) {
      const auto c = random_convex_instance(kind, 7, seed);
      CHECK_NOTHROW(validate_instance(c.instance));
      CHECK(hull_order(c.instance).size() == 14);
      const auto g = random_general_instance(kind, 7, seed);
      CHECK_NOTHROW(validate_instance(g.instance));
      const auto g2 = random_general_instance(kind, 7, seed);
      for (std::size_t i = 0; i < 14; ++i) REQUIRE(g.instance.points[i].x == g2.instance.points[i].x);
    }
  }
}

TEST_CASE("strategy cover") {
  auto family = [](unsigned n) {
    std::vector<Instance> out;
    for (const auto& s : enumerate_231_avoiding(n)) out.push_back(bnm_red_instance(s).instance);
    return out;
  };
  CHECK(min_strategy_cover(family(1)).cover == 1);
  CHECK(min_strategy_cover(family(2)).cover == 2);
  CHECK(min_strategy_cover(family(3)).cover == 5);

  const std::vector<Instance> pair{bnm_red_instance(Permutation{{2, 3, 1}}, false).instance,
                                   bnm_red_instance(Permutation{{2, 1, 3}}).instance};
  CHECK(min_strategy_cover(pair).cover == 1);

  // All 3! permutations need fewer than 6 strategies.
  std::vector<Instance> all;
  std::vector<int> v{1, 2, 3};
  do all.push_back(bnm_red_instance(Permutation{v}, false).instance);
  while (std::next_permutation(v.begin(), v.end()));
  CHECK(min_strategy_cover(all).cover < 6);

  std::vector<Instance> big(65, family(1)[0]);
  CHECK(code_of([&] { (void)min_strategy_cover(big); }) == ErrorCode::cap_exceeded);
}

TEST_CASE("splitmix64 reference values") {
  // First outputs of the published splitmix64 generator seeded with 0.
  CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
}
