#include "ncmatch/strategy_cover.hpp"

#include "ncmatch/error.hpp"

#include <algorithm>
#include <bit>
#include <optional>
#include <string>

namespace ncm {

namespace {

using Mask = std::uint64_t;

std::vector<Mask> keep_maximal(std::vector<Mask> sets) {
  std::sort(sets.begin(), sets.end(), [](Mask a, Mask b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa > pb : a < b;
  });
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<Mask> out;
  for (Mask s : sets) {
    const bool dominated = std::any_of(out.begin(), out.end(), [&](Mask t) { return (s & ~t) == 0; });
    if (!dominated) out.push_back(s);
  }
  return out;
}

std::vector<Mask> product_union(const std::vector<Mask>& lhs, const std::vector<Mask>& rhs) {
  std::vector<Mask> out;
  out.reserve(lhs.size() * rhs.size());
  for (Mask a : lhs) {
    for (Mask b : rhs) out.push_back(a | b);
  }
  return keep_maximal(std::move(out));
}

class CoverSearch {
 public:
  explicit CoverSearch(const std::vector<Instance>& family) : family_(family) {
    const Instance& first = family.front();
    total_ = first.points.size();
    first_item_ = first.kind == ProblemKind::bnm ? first.n : 0;
    for (const Instance& inst : family) {
      if (inst.kind != first.kind || inst.points.size() != total_ || inst.n != first.n) {
        fail(ErrorCode::precondition_mismatch, "family members differ in kind or size");
      }
      for (std::size_t b = 0; b < first_item_; ++b) {
        if (!same_location(inst.points[b], first.points[b])) {
          fail(ErrorCode::precondition_mismatch, "blue points differ across the family");
        }
      }
    }
  }

  std::vector<Mask> root_options() {
    if (total_ == first_item_) return {};
    std::vector<Mask> out;
    for (const auto& group : split(all_members(), first_item_)) {
      const auto sub = solve(group, first_item_);
      out = out.empty() ? sub : product_union(out, sub);
    }
    return out;
  }

 private:
  std::vector<std::size_t> all_members() const {
    std::vector<std::size_t> m(family_.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = i;
    return m;
  }

  // Partition members by the location of point `item`.
  std::vector<std::vector<std::size_t>> split(const std::vector<std::size_t>& members, std::size_t item) const {
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t m : members) {
      auto it = std::find_if(groups.begin(), groups.end(), [&](const std::vector<std::size_t>& g) {
        return same_location(family_[g.front()].points[item], family_[m].points[item]);
      });
      if (it == groups.end()) {
        groups.push_back({m});
      } else {
        it->push_back(m);
      }
    }
    return groups;
  }

  static Mask mask_of(const std::vector<std::size_t>& members) {
    Mask m = 0;
    for (std::size_t i : members) m |= Mask{1} << i;
    return m;
  }

  // Members in `members` share points 0..item; point `item` awaits a decision.
  std::vector<Mask> solve(const std::vector<std::size_t>& members, std::size_t item) {
    const Instance& rep = family_[members.front()];
    const auto avail = available_set(rep, Matching(edges_sorted()), item);
    std::vector<Mask> options;
    std::vector<std::optional<std::size_t>> decisions{std::nullopt};
    for (std::size_t j : avail) decisions.emplace_back(j);
    for (const auto& decision : decisions) {
      if (decision) edges_.emplace_back(item, *decision);
      std::vector<Mask> result;
      if (item + 1 == total_) {
        result.push_back(edges_.size() * 2 == total_ ? mask_of(members) : 0);
      } else if (unmatched_after(item) > total_ - item - 1) {
        result.push_back(0);
      } else {
        result.push_back(0);
        for (const auto& group : split(members, item + 1)) result = product_union(result, solve(group, item + 1));
      }
      options.insert(options.end(), result.begin(), result.end());
      if (decision) edges_.pop_back();
    }
    return keep_maximal(std::move(options));
  }

  // Points up to `item` left unmatched; each later arrival can absorb one.
  std::size_t unmatched_after(std::size_t item) const { return item + 1 - 2 * edges_.size(); }

  std::vector<Edge> edges_sorted() const {
    auto e = edges_;
    std::sort(e.begin(), e.end());
    return e;
  }

  const std::vector<Instance>& family_;
  std::size_t total_ = 0;
  std::size_t first_item_ = 0;
  std::vector<Edge> edges_;
};

bool cover_within(const std::vector<Mask>& sets, Mask all, Mask covered, std::size_t budget,
                  std::vector<std::size_t>& chosen) {
  if (covered == all) return true;
  if (budget == 0) return false;
  const int u = std::countr_zero(all & ~covered);
  for (std::size_t s = 0; s < sets.size(); ++s) {
    if (!((sets[s] >> u) & 1)) continue;
    chosen.push_back(s);
    if (cover_within(sets, all, covered | sets[s], budget - 1, chosen)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace

StrategyCover min_strategy_cover(const std::vector<Instance>& family, std::size_t cap) {
  StrategyCover out;
  out.family_size = family.size();
  if (family.empty()) return out;
  const std::size_t limit = std::min(cap, kStrategyCoverCap);
  if (family.size() > limit) {
    fail(ErrorCode::cap_exceeded, "family of " + std::to_string(family.size()) + " exceeds cap " + std::to_string(limit));
  }
  CoverSearch search(family);
  out.maximal_sets = search.root_options();
  const Mask all = family.size() == 64 ? ~Mask{0} : (Mask{1} << family.size()) - 1;
  Mask reachable = 0;
  for (Mask s : out.maximal_sets) reachable |= s;
  if (reachable != all) fail(ErrorCode::not_perfect, "some member has no perfect non-crossing solution");
  for (std::size_t budget = 1; budget <= family.size(); ++budget) {
    out.chosen.clear();
    if (cover_within(out.maximal_sets, all, 0, budget, out.chosen)) {
      out.cover = budget;
      return out;
    }
  }
  fail(ErrorCode::internal, "set cover search failed");
}

}  // namespace ncm
