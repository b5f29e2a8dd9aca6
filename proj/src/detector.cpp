#include "mzsim/detector.hpp"

#include <cmath>
#include <vector>

namespace mzsim {

namespace {

// pmf of Binomial(count, p) over 0..count
std::vector<double> binomial_pmf(int count, double p) {
    std::vector<double> pmf(count + 1);
    pmf[0] = std::pow(1.0 - p, count);
    if (count == 0) return pmf;
    // iterative ratio update; falls back to the closed form when 1-p == 0
    if (p < 1.0) {
        const double ratio = p / (1.0 - p);
        for (int i = 1; i <= count; ++i)
            pmf[i] = pmf[i - 1] * ratio * double(count - i + 1) / double(i);
    } else {
        for (int i = 0; i < count; ++i) pmf[i] = 0.0;
        pmf[count] = 1.0;
    }
    return pmf;
}

}  // namespace

DetectorModel ideal_detector(int S) {
    if (S < 0) throw ParameterError("ideal_detector: S must be >= 0");
    DetectorModel d;
    d.response = Eigen::MatrixXd::Identity(S + 1, S + 1);
    return d;
}

DetectorModel imperfect_detector(double eta, double nu, double epsilon, int S, int n_max) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw ParameterError("imperfect_detector: eta outside [0,1]");
    if (!(nu >= 0.0)) throw ParameterError("imperfect_detector: nu must be >= 0");
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw ParameterError("imperfect_detector: epsilon outside [0,1]");
    if (S < 0 || n_max < 0) throw ParameterError("imperfect_detector: negative dimension");

    DetectorModel d;
    d.efficiency = eta;
    d.dark_mean = nu;
    d.crosstalk = epsilon;
    d.response = Eigen::MatrixXd::Zero(n_max + 1, S + 1);

    // Poisson pmf of the dark stage, needed up to n_max - 1 extra counts
    std::vector<double> dark(std::max(n_max, 1));
    dark[0] = std::exp(-nu);
    for (size_t t = 1; t < dark.size(); ++t) dark[t] = dark[t - 1] * nu / double(t);

    for (int k = 0; k <= S; ++k) {
        const std::vector<double> surv = binomial_pmf(k, eta);

        // exact distribution of post-dark counts d < n_max
        std::vector<double> post_dark(n_max, 0.0);
        for (int dd = 0; dd < n_max; ++dd) {
            double acc = 0.0;
            for (int i = 0; i <= std::min(dd, k); ++i) acc += surv[i] * dark[dd - i];
            post_dark[dd] = acc;
        }

        // cross-talk: c = d + Binomial(d, epsilon); any c < n_max needs only
        // d <= c < n_max, so rows below the saturation row are exact
        double below = 0.0;
        for (int dd = 0; dd < n_max; ++dd) {
            if (post_dark[dd] == 0.0) continue;
            const std::vector<double> extra = binomial_pmf(dd, epsilon);
            for (int e = 0; e <= dd; ++e) {
                const int c = dd + e;
                if (c < n_max) {
                    d.response(c, k) += post_dark[dd] * extra[e];
                    below += post_dark[dd] * extra[e];
                }
            }
        }
        d.response(n_max, k) = std::max(0.0, 1.0 - below);
    }
    return d;
}

double joint_response(const DetectorModel& d1, const DetectorModel& d2, int m, int n,
                      const Eigen::MatrixXd& p_ideal) {
    if (m < 0 || n < 0) throw ParameterError("joint_response: negative click count");
    const double total = p_ideal.sum();
    if (std::abs(total - 1.0) > 1e-9)
        throw InputError("joint_response: incident distribution not normalized");
    if (p_ideal.rows() - 1 > d1.max_incident() || p_ideal.cols() - 1 > d2.max_incident())
        throw DimensionError("joint_response: distribution exceeds detector range");
    if (m > d1.n_max() || n > d2.n_max()) return 0.0;

    double rate = 0.0;
    for (int j = 0; j < p_ideal.rows(); ++j)
        for (int k = 0; k < p_ideal.cols(); ++k) {
            const double p = p_ideal(j, k);
            if (p != 0.0) rate += p * d1.response(m, j) * d2.response(n, k);
        }
    return rate;
}

}  // namespace mzsim
