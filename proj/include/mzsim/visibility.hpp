#pragma once

#include <optional>

#include <Eigen/Dense>

#include "mzsim/coincidence.hpp"

namespace mzsim {

// Truncated harmonic series a0 + sum_k (a_k cos k*phi + b_k sin k*phi),
// k = 1..k_max, as fitted to a coincidence scan. Coefficients are stored
// as cosine/sine pairs; amplitude/phase views are derived on demand.
struct FourierSeries {
    int k_max = 0;
    Eigen::VectorXd cos_coeff;  // size k_max+1; index 0 is the mean term
    Eigen::VectorXd sin_coeff;  // size k_max+1; index 0 unused (zero)
    double residual = 0.0;      // root-mean-square misfit of the source scan
    CoincidencePattern pattern;
    // Covariance of the stacked coefficient vector (a0, a1, b1, ..., aK, bK),
    // propagated from per-point standard errors when the scan carries them.
    std::optional<Eigen::MatrixXd> coeff_cov;

    // |A_k|; for k = 0 this is |a0|.
    double amplitude(int k) const;
    // Oscillation phase delta_k in [0, 2*pi); by convention 0 when the
    // amplitude is below 1e-12 (the phase is undefined there).
    double phase(int k) const;
    double evaluate(double phi) const;
};

enum class VisibilityMethod { DirectFit, ShiftSuperimpose };

std::string to_string(VisibilityMethod m);

struct VisibilityEstimate {
    CoincidencePattern pattern;
    int harmonic = 0;           // the Fourier index N the ratio refers to
    double value = 0.0;         // |A_N / A_0|
    double uncertainty = 0.0;   // one sigma; 0 when no error information
    VisibilityMethod method = VisibilityMethod::DirectFit;
};

// Linear least-squares fit of the scan in the {1, cos k*phi, sin k*phi}
// basis. Requires at least 2*k_max + 2 grid points and a full-rank design
// (throws IdentifiabilityError otherwise). On the canonical uniform grid
// the solution coincides with the discrete Fourier transform.
FourierSeries fit_fourier(const CoincidenceScan& scan, int k_max);

// |A_N / A_0| with first-order uncertainty propagation through the fit
// when coefficient covariance is available. Throws UndefinedVisibilityError
// when the mean term vanishes.
VisibilityEstimate n_fold_visibility(const FourierSeries& series, int N);

// Average the scan with copies of itself shifted by 2*pi*j/N, j = 0..N-1.
// Exactly cancels every harmonic whose index is not a multiple of N and
// leaves multiples of N untouched. Requires the canonical uniform grid
// with a point count divisible by N (throws GridError otherwise).
CoincidenceScan shift_superimpose(const CoincidenceScan& scan, int N);

// Parametric bootstrap: re-draw each point's count from a Poisson law at
// the observed mean, refit, and report the spread of |A_N/A_0| across
// `resamples` replicas. The central value is the plain fit of the input
// scan. Requires shot counts (throws InputError without them). When
// `superimpose` is set, each replica is shift-superimposed before fitting
// and the central value uses the same pipeline.
VisibilityEstimate bootstrap_uncertainty(const CoincidenceScan& scan, int N, int resamples,
                                         std::uint64_t seed, bool superimpose = false);

}  // namespace mzsim
