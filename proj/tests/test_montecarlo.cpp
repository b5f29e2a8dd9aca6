#include <doctest.h>

#include <cmath>
#include <vector>

#include "mzsim/coincidence.hpp"
#include "mzsim/detector.hpp"
#include "mzsim/errors.hpp"
#include "mzsim/montecarlo.hpp"
#include "mzsim/states.hpp"

using namespace mzsim;

TEST_CASE("shot sampling is deterministic and correctly normalized") {
    const PhaseGrid grid = PhaseGrid::uniform_2pi(24);
    const CoincidenceScan ideal = scan_coherent_vacuum({1.0, 0.0}, grid, {1, 0});
    const ShotConfig cfg{5000, 424242};

    const CoincidenceScan a = sample_scan(ideal, cfg);
    const CoincidenceScan b = sample_scan(ideal, cfg);
    REQUIRE(a.values.size() == grid.size());
    REQUIRE(a.shots.has_value());
    REQUIRE(a.std_errors.has_value());
    CHECK(a.provenance == Provenance::MonteCarlo);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(a.values[i] == b.values[i]);  // bit-for-bit reproducible
        // Every value is an integer count over the configured shots.
        const double count = a.values[i] * double(cfg.shots);
        CHECK(count == doctest::Approx(std::round(count)).epsilon(1e-9));
        CHECK((*a.std_errors)[i] > 0.0);
        CHECK((*a.shots)[i] == cfg.shots);
    }

    const CoincidenceScan c = sample_scan(ideal, {5000, 424243});
    bool all_equal = true;
    for (std::size_t i = 0; i < grid.size(); ++i) all_equal &= (a.values[i] == c.values[i]);
    CHECK_FALSE(all_equal);
}

TEST_CASE("zero- and one-probability points sample exactly") {
    CoincidenceScan scan;
    scan.grid = PhaseGrid::from_values({0.0, 1.0, 2.0});
    scan.values = {0.0, 1.0, 0.5};
    const CoincidenceScan out = sample_scan(scan, {1000, 7});
    CHECK(out.values[0] == 0.0);
    CHECK(out.values[1] == 1.0);
    CHECK(out.values[2] > 0.0);
    CHECK(out.values[2] < 1.0);
}

TEST_CASE("sampling validates rates and shot counts") {
    CoincidenceScan scan;
    scan.grid = PhaseGrid::from_values({0.0, 1.0});
    scan.values = {0.2, 1.5};
    CHECK_THROWS_AS(sample_scan(scan, {100, 1}), InputError);
    scan.values = {0.2, 0.4};
    CHECK_THROWS_AS(sample_scan(scan, {0, 1}), ParameterError);
}

TEST_CASE("sampled means track the analytic rates") {
    const PhaseGrid grid = PhaseGrid::from_values({0.4, 1.9, 3.3});
    const CoincidenceScan ideal = scan_coherent_vacuum({1.2, 0.3}, grid, {1, 1});
    const long long shots = 2000;
    const int runs = 200;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double sum = 0.0;
        for (int r = 0; r < runs; ++r)
            sum += sample_scan(ideal, {shots, 1000 + std::uint64_t(r)}).values[i];
        const double mean = sum / runs;
        const double p = ideal.values[i];
        const double sigma_of_mean = std::sqrt(p * (1 - p) / double(shots) / double(runs));
        CHECK(std::abs(mean - p) < 5 * sigma_of_mean + 1e-12);
    }
}

TEST_CASE("error bars shrink like one over the square root of shots") {
    const PhaseGrid grid = PhaseGrid::from_values({0.9});
    const CoincidenceScan ideal = scan_coherent_vacuum({1.0, 0.0}, grid, {1, 0});
    const CoincidenceScan coarse = sample_scan(ideal, {10000, 5});
    const CoincidenceScan fine = sample_scan(ideal, {1000000, 5});
    const double ratio = (*coarse.std_errors)[0] / (*fine.std_errors)[0];
    CHECK(ratio == doctest::Approx(10.0).epsilon(0.15));
}

TEST_CASE("full-experiment draws conserve the gate count at every point") {
    const TwoModeState psi = coherent_product({0.9, 0.0}, {0.3, 0.2}, 18);
    const PhaseGrid grid = PhaseGrid::uniform_2pi(8);
    const DetectorModel d = imperfect_detector(0.8, 0.02, 0.01, 18, 4);
    std::vector<CoincidencePattern> patterns;
    for (int m = 0; m <= 4; ++m)
        for (int n = 0; n <= 4; ++n) patterns.push_back({m, n});

    const ShotConfig cfg{3000, 99};
    const std::vector<CoincidenceScan> scans =
        sample_full_experiment(psi, Injection::Full, grid, patterns, d, d, cfg);
    REQUIRE(scans.size() == patterns.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double total = 0.0;
        for (const auto& scan : scans) total += scan.values[i];
        // The reported grid is exhaustive here (n_max = 4 with saturation),
        // so the per-point counts add up to exactly the number of gates.
        CHECK(total * double(cfg.shots) == doctest::Approx(double(cfg.shots)).epsilon(1e-9));
    }
    for (const auto& scan : scans) {
        CHECK(scan.provenance == Provenance::MonteCarlo);
        REQUIRE(scan.shots.has_value());
        CHECK((*scan.shots)[0] == cfg.shots);
    }

    // Deterministic replay.
    const std::vector<CoincidenceScan> replay =
        sample_full_experiment(psi, Injection::Full, grid, patterns, d, d, cfg);
    for (std::size_t s = 0; s < scans.size(); ++s)
        for (std::size_t i = 0; i < grid.size(); ++i)
            CHECK(scans[s].values[i] == replay[s].values[i]);
}

TEST_CASE("two-photon interference populates only total-count-conserving patterns") {
    const TwoModeState noon = noon_state(2);
    const PhaseGrid grid = PhaseGrid::uniform_2pi(6);
    const DetectorModel ideal = ideal_detector(2);
    std::vector<CoincidencePattern> patterns;
    for (int m = 0; m <= 2; ++m)
        for (int n = 0; n <= 2 - m; ++n) patterns.push_back({m, n});

    const std::vector<CoincidenceScan> scans =
        sample_full_experiment(noon, Injection::Half, grid, patterns, ideal, ideal, {4000, 31});
    for (std::size_t s = 0; s < patterns.size(); ++s) {
        const int total = patterns[s].total();
        for (double v : scans[s].values) {
            if (total != 2 && total != 0) CHECK(v == 0.0);  // photons arrive in pairs
        }
    }
}

TEST_CASE("full-experiment rejects patterns the detectors cannot report") {
    const TwoModeState psi = coherent_product({0.5, 0.0}, {0.0, 0.0}, 10);
    const PhaseGrid grid = PhaseGrid::uniform_2pi(4);
    const DetectorModel d = imperfect_detector(0.9, 0.0, 0.0, 10, 3);
    const std::vector<CoincidencePattern> bad = {{5, 0}};
    CHECK_THROWS_AS(sample_full_experiment(psi, Injection::Full, grid, bad, d, d, {100, 1}),
                    DimensionError);
}
