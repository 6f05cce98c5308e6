#pragma once

#include "ncmatch/codecs.hpp"
#include "ncmatch/geometry.hpp"
#include "ncmatch/offline_matching.hpp"

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ncm {

// What a player sees when point `index` arrives: the revealed prefix (on BNM
// this includes every blue point) and the indices it may legally match.
struct ArrivalView {
  std::size_t index = 0;
  std::span<const Point> revealed;
  std::span<const std::size_t> available;  // ascending
};

class Player {
 public:
  virtual ~Player() = default;
  // `n` is the instance size for known-n players, nullopt otherwise.
  virtual void start(std::optional<std::size_t> n, AdviceTape& tape) {
    (void)n;
    (void)tape;
  }
  // BNM only: the blue batch, before any red arrival.
  virtual void receive_blues(std::span<const Point> blues, AdviceTape& tape) {
    (void)blues;
    (void)tape;
  }
  // Returns the partner index, or nullopt to leave the point unmatched.
  virtual std::optional<std::size_t> on_arrival(const ArrivalView& view, AdviceTape& tape) = 0;
};

struct OnlineAlgorithm {
  std::string name;
  std::function<AdviceTape(const Instance&)> oracle;  // empty: no advice
  std::function<std::unique_ptr<Player>()> make_player;
  bool n_known = true;
};

struct StepRecord {
  std::size_t index = 0;
  std::optional<std::size_t> partner;
  std::size_t available_count = 0;
};

struct SimulationResult {
  Matching matching;
  std::size_t bits_written = 0;
  std::size_t bits_read = 0;
  std::vector<StepRecord> log;
  // Available set at every step, filled when SimulateOptions::record_available.
  std::vector<std::vector<std::size_t>> available_sets;
  MatchingReport report;
  // Oracle output, kept for inspection.
  std::vector<std::uint8_t> advice;
};

struct SimulateOptions {
  bool record_available = false;
  // Run validate_matching on the final matching. The harness never commits
  // an unavailable edge, so this is a redundant cross-check.
  bool validate = true;
};

// Throws Error(illegal_match) when the player picks an unavailable point and
// propagates oracle precondition errors.
SimulationResult simulate(const OnlineAlgorithm& alg, const Instance& instance,
                          const SimulateOptions& options = {});

enum class TieBreak { smallest_index, largest_index };

struct AsapOptions {
  bool n_known = true;
  TieBreak tie_break = TieBreak::smallest_index;
};

OnlineAlgorithm bt_matching();
OnlineAlgorithm sorted_matching();
OnlineAlgorithm asap_matching(const AsapOptions& options = {});
OnlineAlgorithm greedy_matching();

// Oracle halves, exposed for direct inspection.
AdviceTape bt_matching_oracle(const Instance& instance);
AdviceTape sorted_matching_oracle(const Instance& instance);
AdviceTape asap_oracle(const Instance& instance, const AsapOptions& options = {});
// The Dyck word a_1..a_2n the ASAP oracle encodes.
DyckWord asap_dyck_word(const Instance& instance, TieBreak tie_break = TieBreak::smallest_index);

// Blues sorted clockwise as seen from r (the first one follows r on the hull).
std::vector<std::size_t> clockwise_from(const Point& r, std::span<const Point> points,
                                        std::vector<std::size_t> candidates);

// Looks up an algorithm by CLI name: bt, asap, asap-unknown-n, asap-largest, sorted, greedy.
std::optional<OnlineAlgorithm> algorithm_by_name(const std::string& name);

}  // namespace ncm
