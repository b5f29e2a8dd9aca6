#ifndef MZSIM_DETECTOR_HPP
#define MZSIM_DETECTOR_HPP

#include <Eigen/Dense>

#include "mzsim/errors.hpp"

namespace mzsim {

// Count-response model of a photon-number-resolving detector.
// response(n, k) = P(report n clicks | k incident photons) for
// 0 <= k <= max_incident and 0 <= n <= n_max. Reports of n_max and above
// are accumulated in the saturation row n_max, so every column sums to 1.
struct DetectorModel {
    Eigen::MatrixXd response;  // (n_max+1) x (max_incident+1)
    double efficiency = 1.0;   // eta
    double dark_mean = 0.0;    // nu, mean dark counts per gate
    double crosstalk = 0.0;    // epsilon, extra-count probability per click

    int n_max() const { return static_cast<int>(response.rows()) - 1; }
    int max_incident() const { return static_cast<int>(response.cols()) - 1; }

    // P(report n | k incident); n above n_max is unreachable, hence 0.
    double prob(int n, int k) const {
        if (k < 0 || k > max_incident()) throw DimensionError("detector: incident count out of range");
        if (n < 0 || n > n_max()) return 0.0;
        return response(n, k);
    }
};

// Projective number measurement: report == incident.
DetectorModel ideal_detector(int S);

// Binomial loss (eta), then Poisson dark counts (nu), then per-click
// Bernoulli cross-talk (epsilon). Columns cover 0..S incident photons,
// rows 0..n_max reported clicks with saturation at n_max.
DetectorModel imperfect_detector(double eta, double nu, double epsilon, int S, int n_max);

// P(D1 reports m and D2 reports n) for an ideal incident-photon joint
// distribution p_ideal(j, k). p_ideal must be normalized within 1e-9.
double joint_response(const DetectorModel& d1, const DetectorModel& d2, int m, int n,
                      const Eigen::MatrixXd& p_ideal);

}  // namespace mzsim

#endif
