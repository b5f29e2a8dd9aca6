#include "mzsim/coincidence.hpp"

#include <cmath>
#include <numbers>

namespace mzsim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double factorial(int n) { return std::tgamma(double(n) + 1.0); }

// Poisson pmf over 0..S
std::vector<double> poisson_pmf(double mean, int S) {
    std::vector<double> pmf(S + 1);
    pmf[0] = std::exp(-mean);
    for (int t = 1; t <= S; ++t) pmf[t] = pmf[t - 1] * mean / double(t);
    return pmf;
}

}  // namespace

PhaseGrid PhaseGrid::uniform_2pi(int points) {
    if (points < 0) throw ParameterError("PhaseGrid: negative point count");
    PhaseGrid g;
    g.uniform = points > 0;
    g.span = kTwoPi;
    g.phases.resize(points);
    for (int i = 0; i < points; ++i) g.phases[i] = kTwoPi * double(i) / double(points);
    return g;
}

PhaseGrid PhaseGrid::from_values(std::vector<double> phases) {
    for (size_t i = 1; i < phases.size(); ++i)
        if (!(phases[i] > phases[i - 1]))
            throw GridError("PhaseGrid: phases must be strictly increasing");
    PhaseGrid g;
    g.phases = std::move(phases);
    g.span = g.phases.empty() ? 0.0 : g.phases.back() - g.phases.front();
    g.uniform = false;
    const size_t M = g.phases.size();
    if (M > 0) {
        bool canonical = true;
        for (size_t i = 0; i < M; ++i)
            if (std::abs(g.phases[i] - kTwoPi * double(i) / double(M)) > 1e-9) {
                canonical = false;
                break;
            }
        if (canonical) {
            g.uniform = true;
            g.span = kTwoPi;
        }
    }
    return g;
}

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::Analytic: return "analytic";
        case Provenance::Trace: return "trace";
        case Provenance::MonteCarlo: return "montecarlo";
        case Provenance::Ingested: return "ingested";
    }
    return "unknown";
}

void CoincidenceScan::validate() const {
    if (values.size() != grid.size()) throw InputError("scan: value/grid length mismatch");
    for (double v : values)
        if (!(v >= 0.0)) throw InputError("scan: negative rate");
    if (shots.has_value() != std_errors.has_value())
        throw InputError("scan: shots and errors must come together");
    if (shots && shots->size() != values.size()) throw InputError("scan: shots length mismatch");
    if (std_errors && std_errors->size() != values.size())
        throw InputError("scan: errors length mismatch");
}

double binomial_std_error(double rate, long long shots) {
    if (shots < 1) throw ParameterError("binomial_std_error: shots must be positive");
    const double lo = 0.5 / double(shots);
    const double p = std::min(std::max(rate, lo), 1.0 - lo);
    return std::sqrt(p * (1.0 - p) / double(shots));
}

Eigen::MatrixXd ideal_joint_distribution(const TwoModeState& state, Injection injection,
                                         double phi) {
    const int S = state.cutoff();
    const BlockUnitary u =
        injection == Injection::Full ? full_mzi(phi, S) : half_mzi(phi, S);
    const TwoModeState out = apply(u, state);
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(S + 1, S + 1);
    for (int s = 0; s <= S; ++s)
        for (int j = 0; j <= s; ++j) p(j, s - j) += std::norm(out.blocks[s](j));
    return p;
}

double coincidence_trace(const TwoModeState& state, Injection injection, double phi,
                         CoincidencePattern pattern, const DetectorModel& d1,
                         const DetectorModel& d2) {
    // A pattern beyond the cutoff is well-defined only when no photon mass
    // was discarded there (dark counts can still report it).
    if (pattern.total() > state.cutoff() && state.truncation_tail > 1e-9)
        throw DimensionError("coincidence_trace: cutoff too small for requested pattern");
    const Eigen::MatrixXd p = ideal_joint_distribution(state, injection, phi);
    if (pattern.m > d1.n_max() || pattern.n > d2.n_max()) return 0.0;
    if (p.rows() - 1 > d1.max_incident() || p.cols() - 1 > d2.max_incident())
        throw DimensionError("coincidence_trace: state cutoff exceeds detector range");

    // Direct response contraction; the distribution may undershoot 1 by the
    // truncation tail, which the cutoff policy keeps below reporting
    // precision.
    double rate = 0.0;
    for (int j = 0; j < p.rows(); ++j)
        for (int k = 0; k < p.cols(); ++k) {
            const double q = p(j, k);
            if (q != 0.0) rate += q * d1.response(pattern.m, j) * d2.response(pattern.n, k);
        }
    return rate;
}

Eigen::MatrixXd reported_joint_distribution(const TwoModeState& state, Injection injection,
                                            double phi, const DetectorModel& d1,
                                            const DetectorModel& d2) {
    if (state.truncation_tail > 1e-9)
        throw InputError("reported_joint_distribution: truncation tail too large");
    const Eigen::MatrixXd p = ideal_joint_distribution(state, injection, phi);
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(d1.n_max() + 1, d2.n_max() + 1);
    for (int j = 0; j < p.rows(); ++j)
        for (int k = 0; k < p.cols(); ++k) {
            const double w = p(j, k);
            if (w == 0.0) continue;
            for (int m = 0; m <= d1.n_max(); ++m) {
                const double r1 = d1.response(m, j) * w;
                if (r1 == 0.0) continue;
                for (int n = 0; n <= d2.n_max(); ++n) q(m, n) += r1 * d2.response(n, k);
            }
        }
    q /= q.sum();
    return q;
}

double coherent_vacuum_analytic(CoherentAmplitude alpha, double phi, CoincidencePattern pattern) {
    const double aa = std::norm(alpha);
    const double s2 = std::sin(0.5 * phi) * std::sin(0.5 * phi);
    const double c2 = std::cos(0.5 * phi) * std::cos(0.5 * phi);
    return std::exp(-aa) / (factorial(pattern.m) * factorial(pattern.n)) *
           std::pow(aa, pattern.total()) * std::pow(s2, pattern.m) * std::pow(c2, pattern.n);
}

namespace {

double poisson_product_rate(Complex mu, Complex nu, CoincidencePattern pattern) {
    const double mu2 = std::norm(mu);
    const double nu2 = std::norm(nu);
    return std::exp(-(mu2 + nu2)) * std::pow(mu2, pattern.m) * std::pow(nu2, pattern.n) /
           (factorial(pattern.m) * factorial(pattern.n));
}

}  // namespace

double coherent_pair_analytic(CoherentAmplitude alpha, CoherentAmplitude beta, double phi,
                              CoincidencePattern pattern) {
    const Eigen::Matrix2cd m = mode_matrix(Injection::Full, phi);
    const Complex mu = m(0, 0) * alpha + m(0, 1) * beta;
    const Complex nu = m(1, 0) * alpha + m(1, 1) * beta;
    return poisson_product_rate(mu, nu, pattern);
}

double coherent_pair_detected(CoherentAmplitude alpha, CoherentAmplitude beta,
                              Injection injection, double phi, CoincidencePattern pattern,
                              const DetectorModel& d1, const DetectorModel& d2) {
    const Eigen::Matrix2cd m = mode_matrix(injection, phi);
    const Complex mu = m(0, 0) * alpha + m(0, 1) * beta;
    const Complex nu = m(1, 0) * alpha + m(1, 1) * beta;
    if (pattern.m > d1.n_max() || pattern.n > d2.n_max()) return 0.0;

    // The detector responses factorize over the two independent Poisson
    // output streams.
    const int S1 = std::min(d1.max_incident(), default_cutoff(std::norm(mu)));
    const int S2 = std::min(d2.max_incident(), default_cutoff(std::norm(nu)));
    const std::vector<double> p1 = poisson_pmf(std::norm(mu), S1);
    const std::vector<double> p2 = poisson_pmf(std::norm(nu), S2);
    double r1 = 0.0, r2 = 0.0;
    for (int j = 0; j <= S1; ++j) r1 += p1[j] * d1.response(pattern.m, j);
    for (int k = 0; k <= S2; ++k) r2 += p2[k] * d2.response(pattern.n, k);
    return r1 * r2;
}

namespace {

template <typename F>
CoincidenceScan pointwise(const PhaseGrid& grid, CoincidencePattern pattern, Provenance prov,
                          F&& rate) {
    CoincidenceScan scan;
    scan.grid = grid;
    scan.pattern = pattern;
    scan.provenance = prov;
    scan.values.reserve(grid.size());
    for (double phi : grid.phases) scan.values.push_back(rate(phi));
    return scan;
}

}  // namespace

CoincidenceScan scan_coherent_vacuum(CoherentAmplitude alpha, const PhaseGrid& grid,
                                     CoincidencePattern pattern) {
    return pointwise(grid, pattern, Provenance::Analytic,
                     [&](double phi) { return coherent_vacuum_analytic(alpha, phi, pattern); });
}

CoincidenceScan scan_coherent_pair(CoherentAmplitude alpha, CoherentAmplitude beta,
                                   const PhaseGrid& grid, CoincidencePattern pattern) {
    return pointwise(grid, pattern, Provenance::Analytic, [&](double phi) {
        return coherent_pair_analytic(alpha, beta, phi, pattern);
    });
}

CoincidenceScan mixture_scan(const ClassicalMixture& mix, const PhaseGrid& grid,
                             CoincidencePattern pattern) {
    mix.validate();
    return pointwise(grid, pattern, Provenance::Analytic, [&](double phi) {
        double rate = 0.0;
        for (const auto& c : mix.components)
            rate += c.weight * coherent_pair_analytic(c.alpha, c.beta, phi, pattern);
        return rate;
    });
}

CoincidenceScan mixture_scan_detected(const ClassicalMixture& mix, Injection injection,
                                      const PhaseGrid& grid, CoincidencePattern pattern,
                                      const DetectorModel& d1, const DetectorModel& d2) {
    mix.validate();
    return pointwise(grid, pattern, Provenance::Analytic, [&](double phi) {
        double rate = 0.0;
        for (const auto& c : mix.components)
            rate += c.weight *
                    coherent_pair_detected(c.alpha, c.beta, injection, phi, pattern, d1, d2);
        return rate;
    });
}

CoincidenceScan scan_state(const TwoModeState& state, Injection injection, const PhaseGrid& grid,
                           CoincidencePattern pattern, const DetectorModel& d1,
                           const DetectorModel& d2) {
    return pointwise(grid, pattern, Provenance::Trace, [&](double phi) {
        return coincidence_trace(state, injection, phi, pattern, d1, d2);
    });
}

}  // namespace mzsim
