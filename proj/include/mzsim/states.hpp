#ifndef MZSIM_STATES_HPP
#define MZSIM_STATES_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "mzsim/fock.hpp"

namespace mzsim {

// Dimensionless field amplitude; |alpha|^2 is the mean photon number.
using CoherentAmplitude = std::complex<double>;

// Convex mixture of coherent-product states |alpha_i>|beta_i>, the discrete
// form of a positive P-function state.
struct ClassicalMixture {
    struct Component {
        double weight;
        CoherentAmplitude alpha;
        CoherentAmplitude beta;
    };
    std::vector<Component> components;

    void validate() const;  // weights >= 0 and summing to 1 within 1e-12
};

// P(Poisson(mean) > S)
double poisson_tail(double mean, int S);

// Smallest cutoff (from the mean + 10 sqrt(mean) + 20 initial guess) whose
// Poisson tail is below 1e-12.
int default_cutoff(double mean);

// Truncated |alpha>|beta> with the discarded mass recorded as
// truncation_tail.
TwoModeState coherent_product(CoherentAmplitude alpha, CoherentAmplitude beta, int S);

// (|N,0> + |0,N>)/sqrt(2)
TwoModeState noon_state(int N);

// Basis state |m,n>
TwoModeState fock_pair(int m, int n);

// k components, weights simplex-uniform, amplitudes uniform in the complex
// disk of radius max_amplitude. Deterministic given seed.
ClassicalMixture random_classical_mixture(int k, double max_amplitude, std::uint64_t seed);

}  // namespace mzsim

#endif
