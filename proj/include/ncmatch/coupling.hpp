#pragma once

#include "ncmatch/adversaries.hpp"
#include "ncmatch/online_engine.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace ncm {

// Occupancy of the two sides of a match at time T: first character for the
// clockwise side (between p_T and its partner), second for the other side.
enum class SideClass : std::uint8_t { empty_empty, empty_some, some_empty, some_some };

std::string_view to_string(SideClass c) noexcept;  // "00", "0+", "+0", "++"

struct CouplingDiagnostics {
  std::vector<std::size_t> times;  // 0-based arrival index of each match
  std::vector<SideClass> classes;
  std::vector<std::uint8_t> x;
  std::vector<std::uint8_t> y;
  std::size_t unmatched = 0;
  // At the end of the input every unmatched point is isolated.
  std::size_t isolated = 0;
  std::size_t x_sum = 0;
  std::size_t y_sum = 0;
  std::size_t y_even_sum = 0;    // Y_2 + Y_4 + ...
  std::size_t y_even_count = 0;  // number of even match indices
};

/// Indicators X_i (the match at T_i isolates a point) and Y_i (its coupled
/// lower bound) for every match of the simulation. Requires a Markov
/// instance and a simulation run with SimulateOptions::record_available.
CouplingDiagnostics coupling_diagnostics(const AnnotatedInstance& ai, const SimulationResult& sim);

}  // namespace ncm
