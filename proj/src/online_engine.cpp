#include "ncmatch/online_engine.hpp"

#include "ncmatch/error.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace ncm {

SimulationResult simulate(const OnlineAlgorithm& alg, const Instance& instance, const SimulateOptions& options) {
  SimulationResult result;
  AdviceTape tape = alg.oracle ? alg.oracle(instance) : AdviceTape{};
  tape.rewind();
  result.bits_written = tape.bits_written();
  result.advice = tape.bits();

  const std::span<const Point> points(instance.points);
  auto player = alg.make_player();
  player->start(alg.n_known ? std::optional<std::size_t>(instance.n) : std::nullopt, tape);

  AvailabilityTracker tracker(instance);
  std::size_t first = 0;
  if (instance.kind == ProblemKind::bnm) {
    player->receive_blues(points.first(instance.n), tape);
    first = instance.n;
  }
  result.log.reserve(points.size() - first);
  for (std::size_t i = first; i < points.size(); ++i) {
    std::vector<std::size_t> avail = tracker.available(i);
    const ArrivalView view{i, points.first(i + 1), avail};
    const std::optional<std::size_t> choice = player->on_arrival(view, tape);
    if (choice) {
      if (!std::binary_search(avail.begin(), avail.end(), *choice)) {
        fail(ErrorCode::illegal_match, alg.name + " matched point " + std::to_string(i + 1) + " to unavailable point " +
                                           std::to_string(*choice + 1));
      }
      tracker.add_edge(i, *choice);
    }
    result.log.push_back({i, choice, avail.size()});
    if (options.record_available) result.available_sets.push_back(std::move(avail));
  }
  result.matching = tracker.matching();
  result.bits_read = tape.cursor();
  if (options.validate) result.report = validate_matching(instance, result.matching, false);
  return result;
}

std::vector<std::size_t> clockwise_from(const Point& r, std::span<const Point> points,
                                        std::vector<std::size_t> candidates) {
  std::sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
    return a != b && orientation(r, points[a], points[b]) == Orientation::right;
  });
  return candidates;
}

// --- BTMatching -------------------------------------------------------------------------

AdviceTape bt_matching_oracle(const Instance& instance) {
  if (instance.kind != ProblemKind::bnm) fail(ErrorCode::precondition_mismatch, "bt requires a BNM instance");
  const Matching m = convex_noncrossing_pm(instance);
  const BinaryTree t = matching_to_bt(instance, m);
  AdviceTape tape;
  write_ranked(tape, tree_rank(t), catalan(static_cast<unsigned>(instance.n)));
  return tape;
}

namespace {

class BtPlayer final : public Player {
 public:
  void receive_blues(std::span<const Point> blues, AdviceTape& tape) override {
    const auto n = static_cast<unsigned>(blues.size());
    tree_ = tree_unrank(n, read_ranked(tape, catalan(n)));
    sizes_ = tree_.subtree_sizes();
    labels_.assign(tree_.size(), std::nullopt);
  }

  std::optional<std::size_t> on_arrival(const ArrivalView& view, AdviceTape&) override {
    const Point& r = view.revealed[view.index];
    const auto& nodes = tree_.nodes();
    int node = nodes.empty() ? -1 : 0;
    while (node >= 0 && labels_[node]) {
      const auto [red, blue] = *labels_[node];
      const Side side = half_plane_side(view.revealed[red], view.revealed[blue], r);
      node = side == Side::left ? nodes[node].left : nodes[node].right;
    }
    if (node < 0) fail(ErrorCode::internal, "advice tree has no free node for this red point");
    const int left = nodes[node].left;
    const std::size_t k = left < 0 ? 0 : sizes_[left];
    const auto order =
        clockwise_from(r, view.revealed, std::vector<std::size_t>(view.available.begin(), view.available.end()));
    if (k >= order.size()) fail(ErrorCode::internal, "fewer available blues than the advice tree expects");
    labels_[node] = std::make_pair(view.index, order[k]);
    return order[k];
  }

 private:
  BinaryTree tree_;
  std::vector<std::size_t> sizes_;
  std::vector<std::optional<std::pair<std::size_t, std::size_t>>> labels_;
};

}  // namespace

OnlineAlgorithm bt_matching() {
  return {"bt", bt_matching_oracle, [] { return std::make_unique<BtPlayer>(); }, true};
}

// --- SortedMatching ---------------------------------------------------------------------

namespace {

std::vector<std::size_t> sorted_by_x(const Instance& instance) {
  std::vector<std::size_t> order(instance.points.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  const auto& pts = instance.points;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pts[a].x < pts[b].x; });
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (pts[order[k - 1]].x == pts[order[k]].x) {
      fail(ErrorCode::duplicate_x, "points " + std::to_string(order[k - 1] + 1) + " and " +
                                       std::to_string(order[k] + 1) + " share an x-coordinate");
    }
  }
  return order;
}

class SortedPlayer final : public Player {
 public:
  std::optional<std::size_t> on_arrival(const ArrivalView& view, AdviceTape& tape) override {
    const std::size_t i = view.index;
    if (!tape.read()) {
      unmatched_.insert(i);
      return std::nullopt;
    }
    const bool to_right = tape.read();
    const Rational& xi = view.revealed[i].x;
    std::optional<std::size_t> best;
    for (std::size_t j : unmatched_) {
      const Rational& xj = view.revealed[j].x;
      if (to_right ? xj <= xi : xj >= xi) continue;
      if (!best || (to_right ? xj < view.revealed[*best].x : xj > view.revealed[*best].x)) best = j;
    }
    if (!best) fail(ErrorCode::internal, "no unmatched point on the advised side");
    unmatched_.erase(*best);
    return best;
  }

 private:
  std::set<std::size_t> unmatched_;
};

}  // namespace

AdviceTape sorted_matching_oracle(const Instance& instance) {
  if (instance.kind != ProblemKind::mnm) fail(ErrorCode::precondition_mismatch, "sorted requires an MNM instance");
  if (instance.geometry == GeometryClass::circle) {
    fail(ErrorCode::precondition_mismatch, "sorted needs exact coordinates, not circle angles");
  }
  const auto order = sorted_by_x(instance);
  std::vector<std::size_t> partner(order.size());
  for (std::size_t k = 0; k + 1 < order.size(); k += 2) {
    partner[order[k]] = order[k + 1];
    partner[order[k + 1]] = order[k];
  }
  const auto& pts = instance.points;
  AdviceTape tape;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::size_t j = partner[i];
    if (j > i) {
      tape.write(false);
    } else {
      tape.write(true);
      tape.write(pts[j].x > pts[i].x);
    }
  }
  return tape;
}

OnlineAlgorithm sorted_matching() {
  return {"sorted", sorted_matching_oracle, [] { return std::make_unique<SortedPlayer>(); }, true};
}

// --- ASAPMatching -----------------------------------------------------------------------

namespace {

std::size_t pick(std::span<const std::size_t> available, TieBreak tie_break) {
  return tie_break == TieBreak::smallest_index ? available.front() : available.back();
}

class AsapPlayer final : public Player {
 public:
  explicit AsapPlayer(TieBreak tie_break) : tie_break_(tie_break) {}

  void start(std::optional<std::size_t> n, AdviceTape& tape) override {
    const std::size_t size = n ? *n : static_cast<std::size_t>(elias_delta_decode(tape));
    const auto half = static_cast<unsigned>(size);
    word_ = dyck_unrank(half, read_ranked(tape, catalan(half)));
  }

  std::optional<std::size_t> on_arrival(const ArrivalView& view, AdviceTape&) override {
    if (view.index >= word_.bits.size()) fail(ErrorCode::internal, "more arrivals than advised");
    if (!word_.bits[view.index]) return std::nullopt;
    if (view.available.empty()) fail(ErrorCode::internal, "advice says match but nothing is available");
    return pick(view.available, tie_break_);
  }

 private:
  TieBreak tie_break_;
  DyckWord word_;
};

}  // namespace

DyckWord asap_dyck_word(const Instance& instance, TieBreak tie_break) {
  if (instance.kind != ProblemKind::mnm) fail(ErrorCode::precondition_mismatch, "asap requires an MNM instance");
  const auto chi = parity(instance);
  AvailabilityTracker tracker(instance);
  DyckWord word;
  word.bits.reserve(instance.points.size());
  for (std::size_t i = 0; i < instance.points.size(); ++i) {
    const auto avail = tracker.available(i);
    const bool match =
        std::any_of(avail.begin(), avail.end(), [&](std::size_t j) { return chi[j] != chi[i]; });
    word.bits.push_back(match ? 1 : 0);
    if (match) tracker.add_edge(i, pick(avail, tie_break));
  }
  if (!is_dyck(word.bits)) fail(ErrorCode::invalid_dyck, "oracle produced a non-Dyck word");
  return word;
}

AdviceTape asap_oracle(const Instance& instance, const AsapOptions& options) {
  const DyckWord word = asap_dyck_word(instance, options.tie_break);
  AdviceTape tape;
  if (!options.n_known) tape.write(elias_delta_encode(instance.n));
  write_ranked(tape, dyck_rank(word), catalan(static_cast<unsigned>(instance.n)));
  return tape;
}

OnlineAlgorithm asap_matching(const AsapOptions& options) {
  return {options.n_known ? "asap" : "asap-unknown-n",
          [options](const Instance& instance) { return asap_oracle(instance, options); },
          [tie = options.tie_break] { return std::make_unique<AsapPlayer>(tie); }, options.n_known};
}

// --- greedy baseline --------------------------------------------------------------------

namespace {

class GreedyPlayer final : public Player {
 public:
  std::optional<std::size_t> on_arrival(const ArrivalView& view, AdviceTape&) override {
    if (view.available.empty()) return std::nullopt;
    return view.available.front();
  }
};

}  // namespace

OnlineAlgorithm greedy_matching() {
  return {"greedy", {}, [] { return std::make_unique<GreedyPlayer>(); }, true};
}

std::optional<OnlineAlgorithm> algorithm_by_name(const std::string& name) {
  if (name == "bt") return bt_matching();
  if (name == "asap") return asap_matching();
  if (name == "asap-unknown-n") return asap_matching({false, TieBreak::smallest_index});
  if (name == "asap-largest") return asap_matching({true, TieBreak::largest_index});
  if (name == "sorted") return sorted_matching();
  if (name == "greedy") return greedy_matching();
  return std::nullopt;
}

}  // namespace ncm
