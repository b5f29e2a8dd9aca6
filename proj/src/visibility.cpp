#include "mzsim/visibility.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "mzsim/errors.hpp"
#include "mzsim/rng.hpp"

namespace mzsim {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kVanishing = 1e-12;

// Design matrix of the harmonic basis {1, cos k*phi, sin k*phi} with
// columns ordered (a0, a1, b1, ..., aK, bK).
Eigen::MatrixXd harmonic_design(const std::vector<double>& phases, int k_max) {
    const auto rows = static_cast<Eigen::Index>(phases.size());
    Eigen::MatrixXd design(rows, 2 * k_max + 1);
    for (Eigen::Index i = 0; i < rows; ++i) {
        design(i, 0) = 1.0;
        for (int k = 1; k <= k_max; ++k) {
            design(i, 2 * k - 1) = std::cos(k * phases[static_cast<std::size_t>(i)]);
            design(i, 2 * k) = std::sin(k * phases[static_cast<std::size_t>(i)]);
        }
    }
    return design;
}

FourierSeries fit_from_values(const PhaseGrid& grid, const std::vector<double>& values,
                              const std::optional<std::vector<double>>& std_errors,
                              CoincidencePattern pattern, int k_max) {
    const int coeff_count = 2 * k_max + 1;
    const auto points = static_cast<int>(grid.size());
    if (points < 2 * k_max + 2)
        throw IdentifiabilityError("fit_fourier: need at least 2*k_max + 2 grid points, got " +
                                   std::to_string(points));

    Eigen::MatrixXd design = harmonic_design(grid.phases, k_max);
    Eigen::Map<const Eigen::VectorXd> rhs(values.data(), points);

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < coeff_count)
        throw IdentifiabilityError(
            "fit_fourier: rank-deficient design (phases coincide modulo 2*pi)");
    Eigen::VectorXd beta = qr.solve(rhs);

    FourierSeries series;
    series.k_max = k_max;
    series.pattern = pattern;
    series.cos_coeff = Eigen::VectorXd::Zero(k_max + 1);
    series.sin_coeff = Eigen::VectorXd::Zero(k_max + 1);
    series.cos_coeff[0] = beta[0];
    for (int k = 1; k <= k_max; ++k) {
        series.cos_coeff[k] = beta[2 * k - 1];
        series.sin_coeff[k] = beta[2 * k];
    }
    series.residual = std::sqrt((design * beta - rhs).squaredNorm() / points);

    if (std_errors) {
        // Unweighted solution, first-order error propagation:
        // cov(beta) = (X^T X)^-1 X^T diag(sigma^2) X (X^T X)^-1.
        Eigen::MatrixXd normal = design.transpose() * design;
        Eigen::MatrixXd normal_inv = normal.ldlt().solve(
            Eigen::MatrixXd::Identity(coeff_count, coeff_count));
        Eigen::VectorXd var(points);
        for (int i = 0; i < points; ++i) {
            const double s = (*std_errors)[static_cast<std::size_t>(i)];
            var[i] = s * s;
        }
        Eigen::MatrixXd weighted = design.transpose() * var.asDiagonal() * design;
        series.coeff_cov = normal_inv * weighted * normal_inv;
    }
    return series;
}

}  // namespace

double FourierSeries::amplitude(int k) const {
    if (k < 0 || k > k_max)
        throw ParameterError("FourierSeries::amplitude: index out of range");
    if (k == 0) return std::abs(cos_coeff[0]);
    return std::hypot(cos_coeff[k], sin_coeff[k]);
}

double FourierSeries::phase(int k) const {
    if (k < 0 || k > k_max)
        throw ParameterError("FourierSeries::phase: index out of range");
    if (k == 0 || amplitude(k) < kVanishing) return 0.0;
    // a cos k*phi + b sin k*phi = A cos(k*phi - delta) with delta = atan2(b, a).
    double delta = std::atan2(sin_coeff[k], cos_coeff[k]);
    if (delta < 0) delta += kTwoPi;
    if (delta >= kTwoPi) delta = 0.0;  // roundoff from the wrap above
    return delta;
}

double FourierSeries::evaluate(double phi) const {
    double sum = cos_coeff[0];
    for (int k = 1; k <= k_max; ++k)
        sum += cos_coeff[k] * std::cos(k * phi) + sin_coeff[k] * std::sin(k * phi);
    return sum;
}

std::string to_string(VisibilityMethod m) {
    return m == VisibilityMethod::DirectFit ? "direct-fit" : "shift-superimpose";
}

FourierSeries fit_fourier(const CoincidenceScan& scan, int k_max) {
    if (k_max < 1) throw ParameterError("fit_fourier: k_max must be positive");
    scan.validate();
    return fit_from_values(scan.grid, scan.values, scan.std_errors, scan.pattern, k_max);
}

VisibilityEstimate n_fold_visibility(const FourierSeries& series, int N) {
    if (N < 1) throw ParameterError("n_fold_visibility: N must be positive");
    if (N > series.k_max)
        throw ParameterError("n_fold_visibility: N exceeds the fitted k_max");
    const double mean = series.cos_coeff[0];
    if (std::abs(mean) < kVanishing)
        throw UndefinedVisibilityError(
            "n_fold_visibility: mean term vanishes; visibility undefined");

    const double a = series.cos_coeff[N];
    const double b = series.sin_coeff[N];
    const double amp = std::hypot(a, b);

    VisibilityEstimate estimate;
    estimate.pattern = series.pattern;
    estimate.harmonic = N;
    estimate.value = amp / std::abs(mean);
    estimate.method = VisibilityMethod::DirectFit;

    if (series.coeff_cov) {
        // Delta method over (a0, aN, bN). At amp == 0 the gradient of the
        // amplitude is undefined; fall back to the coefficient scale there.
        const Eigen::MatrixXd& cov = *series.coeff_cov;
        const int ia = 2 * N - 1;
        const int ib = 2 * N;
        if (amp < kVanishing) {
            estimate.uncertainty =
                std::sqrt(std::max(0.0, 0.5 * (cov(ia, ia) + cov(ib, ib)))) / std::abs(mean);
        } else {
            Eigen::Vector3d grad;
            grad[0] = -estimate.value / mean;
            grad[1] = a / (amp * std::abs(mean));
            grad[2] = b / (amp * std::abs(mean));
            Eigen::Matrix3d block;
            block << cov(0, 0), cov(0, ia), cov(0, ib),
                     cov(ia, 0), cov(ia, ia), cov(ia, ib),
                     cov(ib, 0), cov(ib, ia), cov(ib, ib);
            estimate.uncertainty = std::sqrt(std::max(0.0, double(grad.transpose() * block * grad)));
        }
    }
    return estimate;
}

CoincidenceScan shift_superimpose(const CoincidenceScan& scan, int N) {
    if (N < 1) throw ParameterError("shift_superimpose: N must be positive");
    scan.validate();
    if (!scan.grid.uniform)
        throw GridError("shift_superimpose: requires the canonical uniform grid over [0, 2*pi)");
    const auto points = scan.grid.size();
    if (points % static_cast<std::size_t>(N) != 0)
        throw GridError("shift_superimpose: point count " + std::to_string(points) +
                        " not divisible by " + std::to_string(N));

    const std::size_t stride = points / static_cast<std::size_t>(N);
    CoincidenceScan out = scan;
    for (std::size_t i = 0; i < points; ++i) {
        double sum = 0.0;
        for (int j = 0; j < N; ++j)
            sum += scan.values[(i + static_cast<std::size_t>(j) * stride) % points];
        out.values[i] = sum / N;
    }
    // Each output point aggregates N independently measured points; track
    // the combined gate count and the correspondingly reduced errors.
    if (scan.shots) {
        out.shots = std::vector<long long>(points);
        out.std_errors = std::vector<double>(points);
        for (std::size_t i = 0; i < points; ++i) {
            long long total = 0;
            for (int j = 0; j < N; ++j)
                total += (*scan.shots)[(i + static_cast<std::size_t>(j) * stride) % points];
            (*out.shots)[i] = total;
            (*out.std_errors)[i] = binomial_std_error(out.values[i], total);
        }
    }
    return out;
}

VisibilityEstimate bootstrap_uncertainty(const CoincidenceScan& scan, int N, int resamples,
                                         std::uint64_t seed, bool superimpose) {
    if (N < 1) throw ParameterError("bootstrap_uncertainty: N must be positive");
    if (resamples < 1) throw ParameterError("bootstrap_uncertainty: resamples must be positive");
    scan.validate();
    if (!scan.shots)
        throw InputError("bootstrap_uncertainty: scan carries no shot counts");

    const auto fit_visibility = [&](const CoincidenceScan& s) {
        FourierSeries series =
            superimpose ? fit_fourier(shift_superimpose(s, N), N) : fit_fourier(s, N);
        return n_fold_visibility(series, N).value;
    };

    VisibilityEstimate estimate;
    estimate.pattern = scan.pattern;
    estimate.harmonic = N;
    estimate.value = fit_visibility(scan);
    estimate.method =
        superimpose ? VisibilityMethod::ShiftSuperimpose : VisibilityMethod::DirectFit;

    const auto points = scan.grid.size();
    std::vector<double> spread;
    spread.reserve(static_cast<std::size_t>(resamples));
    CoincidenceScan replica = scan;
    for (int r = 0; r < resamples; ++r) {
        std::mt19937_64 gen(derive_seed(seed, static_cast<std::uint64_t>(r)));
        for (std::size_t i = 0; i < points; ++i) {
            const long long shots = (*scan.shots)[i];
            const double mean_count = scan.values[i] * static_cast<double>(shots);
            double rate = 0.0;
            if (mean_count > 0) {
                std::poisson_distribution<long long> draw(mean_count);
                rate = static_cast<double>(draw(gen)) / static_cast<double>(shots);
            }
            replica.values[i] = rate;
            if (replica.std_errors)
                (*replica.std_errors)[i] = binomial_std_error(rate, shots);
        }
        spread.push_back(fit_visibility(replica));
    }

    double mean = 0.0;
    for (double v : spread) mean += v;
    mean /= static_cast<double>(spread.size());
    double var = 0.0;
    for (double v : spread) var += (v - mean) * (v - mean);
    if (spread.size() > 1) var /= static_cast<double>(spread.size() - 1);
    estimate.uncertainty = std::sqrt(var);
    return estimate;
}

}  // namespace mzsim
