#include "ncmatch/coupling.hpp"

#include "ncmatch/error.hpp"

namespace ncm {

std::string_view to_string(SideClass c) noexcept {
  switch (c) {
    case SideClass::empty_empty: return "00";
    case SideClass::empty_some: return "0+";
    case SideClass::some_empty: return "+0";
    case SideClass::some_some: return "++";
  }
  return "?";
}

namespace {

// Clockwise distance in turns from `from` to `to`, in [0, 1).
Rational clockwise_gap(const Rational& from, const Rational& to) {
  Rational d = from - to;
  if (d < 0) d += 1;
  return d;
}

}  // namespace

CouplingDiagnostics coupling_diagnostics(const AnnotatedInstance& ai, const SimulationResult& sim) {
  if (!ai.markov) fail(ErrorCode::precondition_mismatch, "coupling needs a Markov instance");
  if (sim.available_sets.size() != sim.log.size()) {
    fail(ErrorCode::precondition_mismatch, "simulation did not record available sets");
  }
  const MarkovTrace& tr = *ai.markov;
  const auto& pts = ai.instance.points;
  const std::size_t total = pts.size();

  CouplingDiagnostics out;
  for (std::size_t step = 0; step < sim.log.size(); ++step) {
    const StepRecord& rec = sim.log[step];
    if (!rec.partner) continue;
    const std::size_t t = rec.index;
    const std::size_t j = *rec.partner;
    const Rational& at = *pts[t].angle;
    const Rational to_partner = clockwise_gap(at, *pts[j].angle);
    bool cw_side = false, ccw_side = false;
    for (std::size_t q : sim.available_sets[step]) {
      if (q == j) continue;
      (clockwise_gap(at, *pts[q].angle) < to_partner ? cw_side : ccw_side) = true;
    }
    const SideClass cls = cw_side ? (ccw_side ? SideClass::some_some : SideClass::some_empty)
                                  : (ccw_side ? SideClass::empty_some : SideClass::empty_empty);

    std::uint8_t x = 0, y = 0;
    if (t + 1 < total) {
      const int f_next = tr.f[t + 1];
      const int r_next = tr.r[t + 1];
      int isolates = 0;
      switch (cls) {
        // A fake child on an empty side is stranded; a parent child moving to
        // one side strands the other side's available points.
        case SideClass::empty_empty: isolates = f_next; break;
        case SideClass::some_some: isolates = 1 - f_next; break;
        case SideClass::empty_some: isolates = 1 - r_next; break;
        case SideClass::some_empty: isolates = r_next; break;
      }
      x = static_cast<std::uint8_t>(tr.parent[t] * isolates);
      y = static_cast<std::uint8_t>((1 - tr.f[t]) * isolates);
    }
    out.times.push_back(t);
    out.classes.push_back(cls);
    out.x.push_back(x);
    out.y.push_back(y);
    out.x_sum += x;
    out.y_sum += y;
    if (out.times.size() % 2 == 0) {
      ++out.y_even_count;
      out.y_even_sum += y;
    }
  }
  out.unmatched = total - 2 * sim.matching.size();
  out.isolated = out.unmatched;
  return out;
}

}  // namespace ncm
