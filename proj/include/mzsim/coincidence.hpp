#ifndef MZSIM_COINCIDENCE_HPP
#define MZSIM_COINCIDENCE_HPP

#include <optional>
#include <string>
#include <vector>

#include "mzsim/detector.hpp"
#include "mzsim/states.hpp"

namespace mzsim {

// m clicks at detector D1, n clicks at detector D2.
struct CoincidencePattern {
    int m = 0;
    int n = 0;
    int total() const { return m + n; }
};

// Phase axis in radians. "uniform" marks the canonical M-point grid
// 2*pi*i/M covering [0, 2*pi) with the endpoint excluded.
struct PhaseGrid {
    std::vector<double> phases;
    bool uniform = false;
    double span = 0.0;

    std::size_t size() const { return phases.size(); }

    static PhaseGrid uniform_2pi(int points);
    // Validates strict monotonicity and detects the canonical uniform grid.
    static PhaseGrid from_values(std::vector<double> phases);
};

enum class Provenance { Analytic, Trace, MonteCarlo, Ingested };

std::string to_string(Provenance p);

// Sampled coincidence rates over a phase grid. Shot counts and standard
// errors are both present or both absent.
struct CoincidenceScan {
    PhaseGrid grid;
    std::vector<double> values;
    std::optional<std::vector<long long>> shots;
    std::optional<std::vector<double>> std_errors;
    CoincidencePattern pattern;
    Provenance provenance = Provenance::Analytic;

    void validate() const;
};

// Standard error of a binomial rate estimate; the rate is clamped to
// [1/(2 shots), 1 - 1/(2 shots)] so that zero-count points keep a
// nonzero error.
double binomial_std_error(double rate, long long shots);

// --- pointwise engines ------------------------------------------------

// General engine: propagate the state through the interferometer, form the
// ideal photon-number joint distribution at the outputs, apply the
// detector responses.
double coincidence_trace(const TwoModeState& state, Injection injection, double phi,
                         CoincidencePattern pattern, const DetectorModel& d1,
                         const DetectorModel& d2);

// Ideal output-count joint distribution of the propagated state;
// entry (j, k) is the probability of j photons at port 1 and k at port 2.
Eigen::MatrixXd ideal_joint_distribution(const TwoModeState& state, Injection injection,
                                         double phi);

// Reported-count joint distribution after detector responses,
// renormalized over the truncation deficit (which must be below 1e-9).
Eigen::MatrixXd reported_joint_distribution(const TwoModeState& state, Injection injection,
                                            double phi, const DetectorModel& d1,
                                            const DetectorModel& d2);

// Closed form for |alpha>|0> through the full MZI with ideal detectors:
// e^{-|a|^2}/(n! m!) |a|^{2(m+n)} sin^{2m}(phi/2) cos^{2n}(phi/2)
double coherent_vacuum_analytic(CoherentAmplitude alpha, double phi, CoincidencePattern pattern);

// Closed form for |alpha>|beta> through the full MZI with ideal detectors:
// Poisson product at the transformed output amplitudes.
double coherent_pair_analytic(CoherentAmplitude alpha, CoherentAmplitude beta, double phi,
                              CoincidencePattern pattern);

// Coherent pair with arbitrary detectors and injection point. The outputs
// stay coherent, so the incident counts are independent Poissons and the
// detector responses factorize.
double coherent_pair_detected(CoherentAmplitude alpha, CoherentAmplitude beta,
                              Injection injection, double phi, CoincidencePattern pattern,
                              const DetectorModel& d1, const DetectorModel& d2);

// --- scan drivers -----------------------------------------------------

CoincidenceScan scan_coherent_vacuum(CoherentAmplitude alpha, const PhaseGrid& grid,
                                     CoincidencePattern pattern);

CoincidenceScan scan_coherent_pair(CoherentAmplitude alpha, CoherentAmplitude beta,
                                   const PhaseGrid& grid, CoincidencePattern pattern);

// Weight-linear average of coherent-pair rates.
CoincidenceScan mixture_scan(const ClassicalMixture& mix, const PhaseGrid& grid,
                             CoincidencePattern pattern);

// Mixture through arbitrary detectors (weight-linear in the rates).
CoincidenceScan mixture_scan_detected(const ClassicalMixture& mix, Injection injection,
                                      const PhaseGrid& grid, CoincidencePattern pattern,
                                      const DetectorModel& d1, const DetectorModel& d2);

// Trace-engine scan of a pure state.
CoincidenceScan scan_state(const TwoModeState& state, Injection injection, const PhaseGrid& grid,
                           CoincidencePattern pattern, const DetectorModel& d1,
                           const DetectorModel& d2);

}  // namespace mzsim

#endif
