#include "mzsim/montecarlo.hpp"

#include <cmath>
#include <random>

#include "mzsim/errors.hpp"
#include "mzsim/rng.hpp"

namespace mzsim {

namespace {

long long binomial_draw(std::mt19937_64& gen, long long trials, double p) {
    if (trials <= 0 || p <= 0.0) return 0;
    if (p >= 1.0) return trials;
    std::binomial_distribution<long long> draw(trials, p);
    return draw(gen);
}

}  // namespace

CoincidenceScan sample_scan(const CoincidenceScan& ideal, const ShotConfig& cfg) {
    if (cfg.shots < 1) throw ParameterError("sample_scan: shots must be positive");
    ideal.validate();

    CoincidenceScan out = ideal;
    out.provenance = Provenance::MonteCarlo;
    out.shots = std::vector<long long>(ideal.values.size(), cfg.shots);
    out.std_errors = std::vector<double>(ideal.values.size());

    for (std::size_t i = 0; i < ideal.values.size(); ++i) {
        double p = ideal.values[i];
        if (p < -1e-9 || p > 1.0 + 1e-9)
            throw InputError("sample_scan: value " + std::to_string(p) + " at point " +
                             std::to_string(i) + " is not a probability");
        p = std::min(1.0, std::max(0.0, p));
        std::mt19937_64 gen(derive_seed(cfg.seed, static_cast<std::uint64_t>(i)));
        const long long count = binomial_draw(gen, cfg.shots, p);
        out.values[i] = static_cast<double>(count) / static_cast<double>(cfg.shots);
        (*out.std_errors)[i] = binomial_std_error(out.values[i], cfg.shots);
    }
    return out;
}

std::vector<CoincidenceScan> sample_full_experiment(
    const TwoModeState& state, Injection injection, const PhaseGrid& grid,
    const std::vector<CoincidencePattern>& patterns, const DetectorModel& d1,
    const DetectorModel& d2, const ShotConfig& cfg) {
    if (cfg.shots < 1) throw ParameterError("sample_full_experiment: shots must be positive");
    if (patterns.empty()) throw ParameterError("sample_full_experiment: no patterns requested");
    for (const auto& pattern : patterns) {
        if (pattern.m < 0 || pattern.n < 0)
            throw ParameterError("sample_full_experiment: negative pattern");
        if (pattern.m > d1.n_max() || pattern.n > d2.n_max())
            throw DimensionError("sample_full_experiment: pattern exceeds detector range");
    }

    std::vector<CoincidenceScan> scans(patterns.size());
    for (std::size_t s = 0; s < patterns.size(); ++s) {
        scans[s].grid = grid;
        scans[s].values.assign(grid.size(), 0.0);
        scans[s].shots = std::vector<long long>(grid.size(), cfg.shots);
        scans[s].std_errors = std::vector<double>(grid.size());
        scans[s].pattern = patterns[s];
        scans[s].provenance = Provenance::MonteCarlo;
    }

    const int rows = d1.n_max() + 1;
    const int cols = d2.n_max() + 1;

    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Eigen::MatrixXd joint =
            reported_joint_distribution(state, injection, grid.phases[i], d1, d2);
        std::mt19937_64 gen(derive_seed(cfg.seed, static_cast<std::uint64_t>(i)));

        // Multinomial draw by sequential binomial conditioning over the
        // flattened outcome grid.
        Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(rows, cols);
        long long remaining = cfg.shots;
        double mass_left = 1.0;
        for (int m = 0; m < rows && remaining > 0; ++m) {
            for (int n = 0; n < cols && remaining > 0; ++n) {
                const double p = joint(m, n);
                if (m == rows - 1 && n == cols - 1) {
                    counts(m, n) = static_cast<double>(remaining);
                    remaining = 0;
                    break;
                }
                const double conditional = mass_left > 0 ? std::min(1.0, p / mass_left) : 1.0;
                const long long c = binomial_draw(gen, remaining, conditional);
                counts(m, n) = static_cast<double>(c);
                remaining -= c;
                mass_left = std::max(0.0, mass_left - p);
            }
        }

        for (std::size_t s = 0; s < patterns.size(); ++s) {
            const double rate =
                counts(patterns[s].m, patterns[s].n) / static_cast<double>(cfg.shots);
            scans[s].values[i] = rate;
            (*scans[s].std_errors)[i] = binomial_std_error(rate, cfg.shots);
        }
    }
    return scans;
}

}  // namespace mzsim
