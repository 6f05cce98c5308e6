#include "doctest.h"
#include "ncmatch/codecs.hpp"
#include "ncmatch/error.hpp"
#include "support.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

using namespace ncm;

namespace {

// Bracket strings "(" left ")" right of every binary tree with n nodes.
std::vector<std::string> all_trees(unsigned n) {
  if (n == 0) return {""};
  std::vector<std::string> out;
  for (unsigned l = 0; l < n; ++l)
    for (const auto& a : all_trees(l))
      for (const auto& b : all_trees(n - 1 - l)) out.push_back("(" + a + ")" + b);
  return out;
}

// Balanced 0/1 words of length 2n in lexicographic order, by filtering all strings.
std::vector<std::string> all_dyck(unsigned n) {
  std::vector<std::string> out;
  const unsigned len = 2 * n;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
    std::string s;
    int h = 0;
    bool ok = true;
    for (unsigned b = len; b-- > 0;) {
      const bool down = (v >> b) & 1;
      s.push_back(down ? '1' : '0');
      h += down ? -1 : 1;
      if (h < 0) ok = false;
    }
    if (ok && h == 0) out.push_back(s);
  }
  return out;
}

std::vector<std::vector<int>> all_231_avoiding(unsigned n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  std::vector<std::vector<int>> out;
  do {
    if (!oracle::has_231(v)) out.push_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
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

TEST_CASE("catalan numbers") {
  CHECK(catalan(0) == 1);
  CHECK(catalan(3) == 5);
  CHECK(catalan(10) == 16796);
  for (unsigned n = 0; n <= 30; ++n) REQUIRE(catalan(n) == BigInt(oracle::catalan(n)));
}

TEST_CASE("tree ranking is a bijection onto 0..C_n-1") {
  CHECK(tree_rank(BinaryTree::leaf()) == 0);
  for (unsigned n = 0; n <= 8; ++n) {
    const auto trees = all_trees(n);
    REQUIRE(trees.size() == oracle::catalan(n));
    std::set<std::string> seen;
    for (std::uint64_t r = 0; r < trees.size(); ++r) {
      const auto t = tree_unrank(n, BigInt(r));
      REQUIRE(t.size() == n);
      REQUIRE(tree_rank(t) == BigInt(r));
      seen.insert(t.str());
    }
    REQUIRE(seen == std::set<std::string>(trees.begin(), trees.end()));
  }
  CHECK(code_of([] { (void)tree_unrank(3, 5); }) == ErrorCode::rank_out_of_range);
}

TEST_CASE("dyck ranking follows lexicographic order") {
  CHECK(dyck_unrank(1, 0).str() == "01");
  CHECK(dyck_rank(DyckWord::parse("0011")) == 0);
  CHECK(dyck_rank(DyckWord::parse("0101")) == 1);
  for (unsigned n = 1; n <= 8; ++n) {
    const auto words = all_dyck(n);
    REQUIRE(words.size() == oracle::catalan(n));
    for (std::uint64_t r = 0; r < words.size(); ++r) {
      REQUIRE(dyck_unrank(n, BigInt(r)).str() == words[r]);
      REQUIRE(dyck_rank(DyckWord::parse(words[r])) == BigInt(r));
    }
  }
  CHECK(code_of([] { (void)dyck_rank(DyckWord::parse("0110")); }) == ErrorCode::invalid_dyck);
}

TEST_CASE("231 pattern detection") {
  CHECK(is_231_avoiding(Permutation{{1, 4, 2, 3, 5}}));
  const auto w = find_231(Permutation{{3, 1, 5, 4, 2}});
  REQUIRE(w.has_value());
  const std::vector<int> v{3, 1, 5, 4, 2};
  CHECK(v[w->k] < v[w->i]);
  CHECK(v[w->i] < v[w->j]);
  CHECK(std::vector<int>{v[w->i], v[w->j], v[w->k]} == std::vector<int>{3, 5, 2});
  CHECK(is_231_avoiding(Permutation{{1, 2, 3, 4, 5, 6}}));
}

TEST_CASE("231-avoiding enumeration") {
  CHECK(enumerate_231_avoiding(1).size() == 1);
  const auto three = enumerate_231_avoiding(3);
  CHECK(three.size() == 5);
  CHECK(std::find(three.begin(), three.end(), Permutation{{2, 3, 1}}) == three.end());
  for (unsigned n = 1; n <= 7; ++n) {
    std::set<std::vector<int>> got;
    for (const auto& p : enumerate_231_avoiding(n)) got.insert(p.values);
    const auto want = all_231_avoiding(n);
    REQUIRE(got == std::set<std::vector<int>>(want.begin(), want.end()));
    REQUIRE(want.size() == oracle::catalan(n));
  }
  CHECK(code_of([] { (void)enumerate_231_avoiding(11); }) == ErrorCode::cap_exceeded);
}

TEST_CASE("bijections between trees, Dyck words and permutations") {
  CHECK(tree_to_dyck(BinaryTree::leaf()).str() == "01");
  CHECK(tree_to_perm(BinaryTree::leaf()).values == std::vector<int>{1});
  for (unsigned n = 1; n <= 8; ++n) {
    std::set<std::string> dycks;
    std::set<std::vector<int>> perms;
    for (const auto& s : all_trees(n)) {
      BinaryTree t;
      for (std::uint64_t r = 0; r < oracle::catalan(n); ++r) {
        const auto cand = tree_unrank(n, BigInt(r));
        if (cand.str() == s) t = cand;
      }
      const auto w = tree_to_dyck(t);
      const auto p = tree_to_perm(t);
      REQUIRE(!oracle::has_231(p.values));
      REQUIRE(dyck_to_tree(w) == t);
      REQUIRE(perm_to_tree(p) == t);
      dycks.insert(w.str());
      perms.insert(p.values);
      if (n > 5) break;  // image checks below cover larger n
    }
    if (n <= 5) {
      const auto wd = all_dyck(n);
      const auto wp = all_231_avoiding(n);
      REQUIRE(dycks == std::set<std::string>(wd.begin(), wd.end()));
      REQUIRE(perms == std::set<std::vector<int>>(wp.begin(), wp.end()));
    }
  }
  for (unsigned n = 6; n <= 8; ++n) {
    for (const auto& v : all_231_avoiding(n)) {
      const Permutation p{v};
      REQUIRE(tree_to_perm(perm_to_tree(p)) == p);
      REQUIRE(dyck_to_tree(tree_to_dyck(perm_to_tree(p))) == perm_to_tree(p));
    }
  }
  CHECK(code_of([] { (void)perm_to_tree(Permutation{{2, 3, 1}}); }) == ErrorCode::not_231_avoiding);
}

TEST_CASE("Elias delta code") {
  CHECK(bits_to_string(elias_delta_encode(1)) == "1");
  CHECK(elias_delta_encode(17).size() == 9);
  for (std::uint64_t m = 1; m <= 10000; ++m) {
    const auto bits = elias_delta_encode(m);
    REQUIRE(bits_to_string(bits) == oracle::elias_delta(m));
    AdviceTape tape;
    tape.write(bits);
    REQUIRE(elias_delta_decode(tape) == m);
    REQUIRE(tape.remaining() == 0);
  }
  AdviceTape cut;
  cut.write(std::vector<std::uint8_t>{0, 0, 1});
  CHECK(code_of([&] { (void)elias_delta_decode(cut); }) == ErrorCode::truncated_code);
  CHECK(code_of([] { (void)elias_delta_encode(0); }) == ErrorCode::bad_input);
}

TEST_CASE("fixed-width ranked codes") {
  AdviceTape one;
  write_ranked(one, 0, 1);
  CHECK(one.bits_written() == 0);
  AdviceTape fourteen;
  write_ranked(fourteen, 13, 14);
  CHECK(fourteen.bits_written() == 4);
  for (std::uint64_t u = 1; u <= 1024; ++u) {
    AdviceTape tape;
    for (std::uint64_t r = 0; r < u; ++r) write_ranked(tape, BigInt(r), BigInt(u));
    REQUIRE(tape.bits_written() == u * oracle::ceil_log2(u));
    for (std::uint64_t r = 0; r < u; ++r) REQUIRE(read_ranked(tape, BigInt(u)) == BigInt(r));
  }
  AdviceTape empty;
  CHECK(code_of([&] { (void)read_ranked(empty, 14); }) == ErrorCode::tape_exhausted);
}
