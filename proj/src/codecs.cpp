#include "ncmatch/codecs.hpp"

#include "ncmatch/error.hpp"

#include <algorithm>
#include <map>

namespace ncm {

BigInt catalan(unsigned n) { return binomial(2 * n, n) / (n + 1); }

namespace {

std::vector<BigInt> catalan_table(unsigned n) {
  std::vector<BigInt> table(n + 1);
  for (unsigned k = 0; k <= n; ++k) table[k] = catalan(k);
  return table;
}

}  // namespace

// --- BinaryTree ----------------------------------------------------------------

BinaryTree BinaryTree::leaf() { return join(BinaryTree{}, BinaryTree{}); }

BinaryTree BinaryTree::join(const BinaryTree& left, const BinaryTree& right) {
  BinaryTree t;
  const int nl = static_cast<int>(left.size());
  t.nodes_.reserve(1 + left.size() + right.size());
  t.nodes_.push_back({left.empty() ? -1 : 1, right.empty() ? -1 : 1 + nl});
  auto append = [&t](const BinaryTree& sub, int shift) {
    for (Node nd : sub.nodes_) {
      if (nd.left >= 0) nd.left += shift;
      if (nd.right >= 0) nd.right += shift;
      t.nodes_.push_back(nd);
    }
  };
  append(left, 1);
  append(right, 1 + nl);
  return t;
}

std::vector<std::size_t> BinaryTree::subtree_sizes() const {
  std::vector<std::size_t> sz(nodes_.size(), 1);
  // Children always follow their parent in preorder.
  for (std::size_t i = nodes_.size(); i-- > 0;) {
    if (nodes_[i].left >= 0) sz[i] += sz[nodes_[i].left];
    if (nodes_[i].right >= 0) sz[i] += sz[nodes_[i].right];
  }
  return sz;
}

BinaryTree BinaryTree::subtree(int root) const {
  BinaryTree t;
  if (root < 0) return t;
  const auto sz = subtree_sizes();
  for (std::size_t i = root; i < root + sz[root]; ++i) {
    Node nd = nodes_[i];
    if (nd.left >= 0) nd.left -= root;
    if (nd.right >= 0) nd.right -= root;
    t.nodes_.push_back(nd);
  }
  return t;
}

BinaryTree BinaryTree::left() const { return empty() ? BinaryTree{} : subtree(nodes_[0].left); }
BinaryTree BinaryTree::right() const { return empty() ? BinaryTree{} : subtree(nodes_[0].right); }

std::string BinaryTree::str() const {
  if (empty()) return "";
  return "(" + left().str() + ")" + right().str();
}

// --- ranking ---------------------------------------------------------------------

namespace {

BigInt tree_rank_impl(const BinaryTree& t, const std::vector<BigInt>& cat) {
  const std::size_t n = t.size();
  if (n == 0) return 0;
  const BinaryTree l = t.left();
  const BinaryTree r = t.right();
  const std::size_t ls = l.size();
  BigInt rank = 0;
  for (std::size_t k = 0; k < ls; ++k) rank += cat[k] * cat[n - 1 - k];
  rank += tree_rank_impl(l, cat) * cat[n - 1 - ls] + tree_rank_impl(r, cat);
  return rank;
}

BinaryTree tree_unrank_impl(unsigned n, BigInt rank, const std::vector<BigInt>& cat) {
  if (n == 0) return {};
  unsigned ls = 0;
  for (; ls < n; ++ls) {
    const BigInt block = cat[ls] * cat[n - 1 - ls];
    if (rank < block) break;
    rank -= block;
  }
  const BigInt& right_count = cat[n - 1 - ls];
  return BinaryTree::join(tree_unrank_impl(ls, rank / right_count, cat),
                          tree_unrank_impl(n - 1 - ls, rank % right_count, cat));
}

}  // namespace

BigInt tree_rank(const BinaryTree& t) {
  return tree_rank_impl(t, catalan_table(static_cast<unsigned>(t.size())));
}

BinaryTree tree_unrank(unsigned n, const BigInt& rank) {
  const auto cat = catalan_table(n);
  if (rank < 0 || rank >= cat[n]) {
    fail(ErrorCode::rank_out_of_range, "tree rank " + rank.str() + " outside [0, C_" +
                                           std::to_string(n) + ")");
  }
  return tree_unrank_impl(n, rank, cat);
}

// --- Dyck words ------------------------------------------------------------------

std::string bits_to_string(const std::vector<std::uint8_t>& bits) {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

std::string DyckWord::str() const { return bits_to_string(bits); }

DyckWord DyckWord::parse(std::string_view text) {
  DyckWord w;
  for (char c : text) {
    if (c != '0' && c != '1') fail(ErrorCode::invalid_dyck, "non-binary character in Dyck word");
    w.bits.push_back(c == '1');
  }
  if (!is_dyck(w.bits)) fail(ErrorCode::invalid_dyck, "'" + std::string(text) + "' is not a Dyck word");
  return w;
}

bool is_dyck(const std::vector<std::uint8_t>& bits) {
  long height = 0;
  for (auto b : bits) {
    height += b ? -1 : 1;
    if (height < 0) return false;
  }
  return height == 0;
}

namespace {

// Number of ways to finish from height h with r steps left.
BigInt completions(std::size_t r, std::size_t h) {
  if (h > r || (r - h) % 2 != 0) return 0;
  const auto u = static_cast<unsigned>((r - h) / 2);
  BigInt c = binomial(static_cast<unsigned>(r), u);
  if (u > 0) c -= binomial(static_cast<unsigned>(r), u - 1);
  return c;
}

}  // namespace

BigInt dyck_rank(const DyckWord& w) {
  if (!is_dyck(w.bits)) fail(ErrorCode::invalid_dyck, "not a Dyck word: " + w.str());
  const std::size_t len = w.bits.size();
  BigInt rank = 0;
  std::size_t h = 0;
  for (std::size_t pos = 0; pos < len; ++pos) {
    if (w.bits[pos]) {
      rank += completions(len - pos - 1, h + 1);
      --h;
    } else {
      ++h;
    }
  }
  return rank;
}

DyckWord dyck_unrank(unsigned n, const BigInt& rank) {
  if (rank < 0 || rank >= catalan(n)) {
    fail(ErrorCode::rank_out_of_range, "Dyck rank " + rank.str() + " outside [0, C_" +
                                           std::to_string(n) + ")");
  }
  DyckWord w;
  BigInt rest = rank;
  std::size_t h = 0;
  const std::size_t len = 2 * static_cast<std::size_t>(n);
  for (std::size_t pos = 0; pos < len; ++pos) {
    const BigInt with_up = completions(len - pos - 1, h + 1);
    if (rest < with_up) {
      w.bits.push_back(0);
      ++h;
    } else {
      rest -= with_up;
      w.bits.push_back(1);
      --h;
    }
  }
  return w;
}

// --- permutations ------------------------------------------------------------------

std::string Permutation::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(values[i]);
  }
  return s + ")";
}

bool is_permutation(const Permutation& p) {
  std::vector<bool> seen(p.size() + 1, false);
  for (int v : p.values) {
    if (v < 1 || static_cast<std::size_t>(v) > p.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

std::optional<Pattern231> find_231(const Permutation& p) {
  const auto& v = p.values;
  const std::size_t n = v.size();
  if (n < 3) return std::nullopt;
  // suffix_min[j] = position of the minimum of v[j..n).
  std::vector<std::size_t> suffix_min(n);
  suffix_min[n - 1] = n - 1;
  for (std::size_t j = n - 1; j-- > 0;) {
    suffix_min[j] = v[j] < v[suffix_min[j + 1]] ? j : suffix_min[j + 1];
  }
  for (std::size_t j = 1; j + 1 < n; ++j) {
    const std::size_t k = suffix_min[j + 1];
    for (std::size_t i = 0; i < j; ++i) {
      if (v[i] < v[j] && v[k] < v[i]) return Pattern231{i, j, k};
    }
  }
  return std::nullopt;
}

namespace {

// All 231-avoiding arrangements of 1..n: n splits the sequence into a prefix
// on 1..k and a suffix on k+1..n-1, each 231-avoiding.
const std::vector<std::vector<int>>& avoiders_of_size(
    unsigned n, std::map<unsigned, std::vector<std::vector<int>>>& memo) {
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  std::vector<std::vector<int>> out;
  if (n == 0) {
    out.push_back({});
  } else {
    for (unsigned k = 0; k < n; ++k) {
      const auto lefts = avoiders_of_size(k, memo);
      const auto rights = avoiders_of_size(n - 1 - k, memo);
      for (const auto& l : lefts) {
        for (const auto& r : rights) {
          std::vector<int> seq = l;
          seq.push_back(static_cast<int>(n));
          for (int x : r) seq.push_back(x + static_cast<int>(k));
          out.push_back(std::move(seq));
        }
      }
    }
  }
  return memo.emplace(n, std::move(out)).first->second;
}

}  // namespace

void for_each_231_avoiding(unsigned n, const std::function<void(const Permutation&)>& visit,
                           unsigned cap) {
  if (n > cap) {
    fail(ErrorCode::cap_exceeded, "enumeration of size " + std::to_string(n) + " exceeds cap " +
                                      std::to_string(cap));
  }
  std::map<unsigned, std::vector<std::vector<int>>> memo;
  for (const auto& seq : avoiders_of_size(n, memo)) visit(Permutation{seq});
}

std::vector<Permutation> enumerate_231_avoiding(unsigned n, unsigned cap) {
  std::vector<Permutation> out;
  for_each_231_avoiding(n, [&](const Permutation& p) { out.push_back(p); }, cap);
  return out;
}

// --- bijections ----------------------------------------------------------------------

namespace {

void tree_to_dyck_impl(const BinaryTree& t, int node, std::vector<std::uint8_t>& out) {
  if (node < 0) return;
  out.push_back(0);
  tree_to_dyck_impl(t, t.nodes()[node].left, out);
  out.push_back(1);
  tree_to_dyck_impl(t, t.nodes()[node].right, out);
}

BinaryTree dyck_to_tree_impl(const std::vector<std::uint8_t>& bits, std::size_t lo, std::size_t hi) {
  if (lo == hi) return {};
  // bits[lo] is an up-step; find its matching down-step.
  long h = 0;
  std::size_t close = lo;
  for (std::size_t i = lo; i < hi; ++i) {
    h += bits[i] ? -1 : 1;
    if (h == 0) {
      close = i;
      break;
    }
  }
  return BinaryTree::join(dyck_to_tree_impl(bits, lo + 1, close), dyck_to_tree_impl(bits, close + 1, hi));
}

BinaryTree perm_to_tree_impl(const std::vector<int>& v, std::size_t lo, std::size_t hi, int offset) {
  if (lo == hi) return {};
  const auto top = std::max_element(v.begin() + lo, v.begin() + hi) - v.begin();
  const int left_size = static_cast<int>(top - lo);
  return BinaryTree::join(perm_to_tree_impl(v, lo, top, offset),
                          perm_to_tree_impl(v, top + 1, hi, offset + left_size));
}

// Inverse of perm_to_tree: the root carries the largest value of its subtree,
// the left subtree the smallest left_size values and the right subtree the rest.
void tree_to_perm_impl(const BinaryTree& t, int node, const std::vector<std::size_t>& sz, int offset,
                       std::vector<int>& out) {
  if (node < 0) return;
  const auto& nd = t.nodes()[node];
  const int left_size = nd.left >= 0 ? static_cast<int>(sz[nd.left]) : 0;
  tree_to_perm_impl(t, nd.left, sz, offset, out);
  out.push_back(offset + static_cast<int>(sz[node]));
  tree_to_perm_impl(t, nd.right, sz, offset + left_size, out);
}

}  // namespace

DyckWord tree_to_dyck(const BinaryTree& t) {
  DyckWord w;
  tree_to_dyck_impl(t, t.empty() ? -1 : 0, w.bits);
  return w;
}

BinaryTree dyck_to_tree(const DyckWord& w) {
  if (!is_dyck(w.bits)) fail(ErrorCode::invalid_dyck, "not a Dyck word: " + w.str());
  return dyck_to_tree_impl(w.bits, 0, w.bits.size());
}

BinaryTree perm_to_tree(const Permutation& p) {
  if (!is_permutation(p)) fail(ErrorCode::bad_input, "not a permutation: " + p.str());
  if (auto w = find_231(p)) {
    fail(ErrorCode::not_231_avoiding, p.str() + " contains a 231 pattern at positions " +
                                          std::to_string(w->i + 1) + "," + std::to_string(w->j + 1) +
                                          "," + std::to_string(w->k + 1));
  }
  return perm_to_tree_impl(p.values, 0, p.size(), 0);
}

Permutation tree_to_perm(const BinaryTree& t) {
  Permutation p;
  tree_to_perm_impl(t, t.empty() ? -1 : 0, t.subtree_sizes(), 0, p.values);
  return p;
}

// --- tape and codes --------------------------------------------------------------------

void AdviceTape::write(const std::vector<std::uint8_t>& bits) {
  for (auto b : bits) write(b != 0);
}

bool AdviceTape::read() {
  if (cursor_ >= bits_.size()) {
    fail(ErrorCode::tape_exhausted, "advice tape exhausted after " + std::to_string(bits_.size()) +
                                        " bits");
  }
  return bits_[cursor_++] != 0;
}

std::string AdviceTape::str() const { return bits_to_string(bits_); }

std::vector<std::uint8_t> elias_delta_encode(std::uint64_t m) {
  if (m == 0) fail(ErrorCode::bad_input, "Elias delta encodes positive integers only");
  const unsigned width = 64 - __builtin_clzll(m);                         // floor(log m) + 1
  const unsigned len_of_width = 63 - __builtin_clzll(std::uint64_t{width});  // floor(log width)
  std::vector<std::uint8_t> out(len_of_width, 0);
  for (int b = static_cast<int>(len_of_width); b >= 0; --b) out.push_back((width >> b) & 1u);
  for (int b = static_cast<int>(width) - 2; b >= 0; --b) out.push_back((m >> b) & 1u);
  return out;
}

std::uint64_t elias_delta_decode(AdviceTape& tape) {
  try {
    unsigned zeros = 0;
    while (!tape.read()) {
      if (++zeros > 6) fail(ErrorCode::truncated_code, "Elias delta prefix too long");
    }
    std::uint64_t width = 1;
    for (unsigned b = 0; b < zeros; ++b) width = (width << 1) | (tape.read() ? 1u : 0u);
    if (width > 64) fail(ErrorCode::truncated_code, "Elias delta length field exceeds 64");
    std::uint64_t m = 1;
    for (std::uint64_t b = 1; b < width; ++b) m = (m << 1) | (tape.read() ? 1u : 0u);
    return m;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::tape_exhausted) throw;
    fail(ErrorCode::truncated_code, "tape ended inside an Elias delta codeword");
  }
}

std::size_t ranked_width(const BigInt& universe) {
  if (universe < 1) fail(ErrorCode::bad_input, "universe size must be positive");
  return bit_length(universe - 1);
}

void write_ranked(AdviceTape& tape, const BigInt& rank, const BigInt& universe) {
  if (rank < 0 || rank >= universe) {
    fail(ErrorCode::rank_out_of_range, "rank " + rank.str() + " outside [0, " + universe.str() + ")");
  }
  const std::size_t width = ranked_width(universe);
  for (std::size_t b = width; b-- > 0;) tape.write(mpz_tstbit(rank.backend().data(), b) != 0);
}

BigInt read_ranked(AdviceTape& tape, const BigInt& universe) {
  const std::size_t width = ranked_width(universe);
  BigInt v = 0;
  for (std::size_t b = 0; b < width; ++b) {
    v <<= 1;
    if (tape.read()) v += 1;
  }
  if (v >= universe) {
    fail(ErrorCode::rank_out_of_range, "decoded rank " + v.str() + " outside [0, " + universe.str() + ")");
  }
  return v;
}

}  // namespace ncm
