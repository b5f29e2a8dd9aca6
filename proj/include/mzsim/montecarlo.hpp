#pragma once

#include <cstdint>
#include <vector>

#include "mzsim/coincidence.hpp"
#include "mzsim/detector.hpp"
#include "mzsim/fock.hpp"

namespace mzsim {

// Finite acquisition: a fixed number of measurement gates per phase point
// and a seed that fully determines every draw.
struct ShotConfig {
    long long shots = 1;
    std::uint64_t seed = 0;
};

// Draw a binomial count over `shots` gates at each point of an analytic
// scan. Rates become count/shots with matching binomial standard errors.
// Points use independently derived RNG streams, so the result is
// deterministic and independent of evaluation order.
CoincidenceScan sample_scan(const CoincidenceScan& ideal, const ShotConfig& cfg);

// Sample whole gates instead of a single pattern: at each phase point one
// multinomial draw over the full reported (m,n) outcome grid, sliced into
// per-pattern scans. Counts are correlated across patterns exactly as in a
// real experiment, and per-point totals equal cfg.shots.
std::vector<CoincidenceScan> sample_full_experiment(
    const TwoModeState& state, Injection injection, const PhaseGrid& grid,
    const std::vector<CoincidencePattern>& patterns, const DetectorModel& d1,
    const DetectorModel& d2, const ShotConfig& cfg);

}  // namespace mzsim
