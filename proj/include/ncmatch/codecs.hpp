#pragma once

#include "ncmatch/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ncm {

// C_n = binomial(2n, n) / (n + 1), exact.
BigInt catalan(unsigned n);

/// Ordered rooted binary tree stored as a preorder node array. Every tree
/// built through this interface has a unique layout, so structural equality
/// is array equality.
class BinaryTree {
 public:
  struct Node {
    int left = -1;
    int right = -1;
    friend bool operator==(const Node&, const Node&) = default;
  };

  BinaryTree() = default;
  static BinaryTree leaf();
  static BinaryTree join(const BinaryTree& left, const BinaryTree& right);

  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }
  const std::vector<Node>& nodes() const { return nodes_; }

  BinaryTree left() const;
  BinaryTree right() const;

  // Subtree size for every node index.
  std::vector<std::size_t> subtree_sizes() const;

  // Bracket form: empty tree is "", a node is "(" left ")" right.
  std::string str() const;

  friend bool operator==(const BinaryTree&, const BinaryTree&) = default;

 private:
  BinaryTree subtree(int root) const;
  std::vector<Node> nodes_;
};

// Canonical order: by left-subtree size, then left rank (major), right rank.
BigInt tree_rank(const BinaryTree& t);
BinaryTree tree_unrank(unsigned n, const BigInt& rank);

struct DyckWord {
  std::vector<std::uint8_t> bits;  // 0 = up, 1 = down
  std::size_t half_length() const { return bits.size() / 2; }
  std::string str() const;
  static DyckWord parse(std::string_view text);
  friend bool operator==(const DyckWord&, const DyckWord&) = default;
};

bool is_dyck(const std::vector<std::uint8_t>& bits);

// Lexicographic rank (0 < 1) among the Dyck words of the same length.
BigInt dyck_rank(const DyckWord& w);
DyckWord dyck_unrank(unsigned n, const BigInt& rank);

struct Permutation {
  std::vector<int> values;  // a reordering of 1..n
  std::size_t size() const { return values.size(); }
  std::string str() const;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;
};

bool is_permutation(const Permutation& p);

struct Pattern231 {
  std::size_t i, j, k;  // 0-based positions with v[k] < v[i] < v[j]
};

// nullopt when the permutation is 231-avoiding.
std::optional<Pattern231> find_231(const Permutation& p);
inline bool is_231_avoiding(const Permutation& p) { return !find_231(p).has_value(); }

inline constexpr unsigned kDefaultEnumerationCap = 10;

void for_each_231_avoiding(unsigned n, const std::function<void(const Permutation&)>& visit,
                           unsigned cap = kDefaultEnumerationCap);
std::vector<Permutation> enumerate_231_avoiding(unsigned n, unsigned cap = kDefaultEnumerationCap);

DyckWord tree_to_dyck(const BinaryTree& t);
BinaryTree dyck_to_tree(const DyckWord& w);
BinaryTree perm_to_tree(const Permutation& p);
Permutation tree_to_perm(const BinaryTree& t);

/// Finite advice tape. The oracle appends; the online side reads through a
/// cursor and reading past the written content is an error.
class AdviceTape {
 public:
  void write(bool bit) { bits_.push_back(bit ? 1 : 0); }
  void write(const std::vector<std::uint8_t>& bits);
  bool read();

  std::size_t bits_written() const { return bits_.size(); }
  std::size_t cursor() const { return cursor_; }
  std::size_t remaining() const { return bits_.size() - cursor_; }
  void rewind() { cursor_ = 0; }
  const std::vector<std::uint8_t>& bits() const { return bits_; }
  std::string str() const;

 private:
  std::vector<std::uint8_t> bits_;
  std::size_t cursor_ = 0;
};

std::vector<std::uint8_t> elias_delta_encode(std::uint64_t m);
// Throws Error(truncated_code) if the tape runs out mid-codeword.
std::uint64_t elias_delta_decode(AdviceTape& tape);

// ceil(log2(universe)); 0 for universe == 1.
std::size_t ranked_width(const BigInt& universe);
void write_ranked(AdviceTape& tape, const BigInt& rank, const BigInt& universe);
BigInt read_ranked(AdviceTape& tape, const BigInt& universe);

std::string bits_to_string(const std::vector<std::uint8_t>& bits);

}  // namespace ncm
