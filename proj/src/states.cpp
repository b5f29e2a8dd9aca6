#include "mzsim/states.hpp"

#include <cmath>
#include <numbers>

#include "mzsim/rng.hpp"

namespace mzsim {

void ClassicalMixture::validate() const {
    if (components.empty()) throw ParameterError("mixture: no components");
    double total = 0.0;
    for (const auto& c : components) {
        if (!(c.weight >= 0.0)) throw ParameterError("mixture: negative weight");
        total += c.weight;
    }
    if (std::abs(total - 1.0) > 1e-12) throw ParameterError("mixture: weights do not sum to 1");
}

double poisson_tail(double mean, int S) {
    if (mean < 0.0) throw ParameterError("poisson_tail: negative mean");
    if (mean > 500.0) throw ParameterError("poisson_tail: mean photon number too large");
    double pmf = std::exp(-mean);
    double cdf = pmf;
    for (int s = 1; s <= S; ++s) {
        pmf *= mean / s;
        cdf += pmf;
    }
    return std::max(0.0, 1.0 - cdf);
}

int default_cutoff(double mean) {
    int S = static_cast<int>(std::ceil(mean + 10.0 * std::sqrt(mean) + 20.0));
    while (poisson_tail(mean, S) > 1e-12) S += 8;
    return S;
}

TwoModeState coherent_product(CoherentAmplitude alpha, CoherentAmplitude beta, int S) {
    if (S < 0) throw ParameterError("coherent_product: cutoff must be >= 0");
    const double mean = std::norm(alpha) + std::norm(beta);
    if (mean > 500.0) throw ParameterError("coherent_product: mean photon number too large");

    // c_{j,k} = e^{-mean/2} alpha^j beta^k / sqrt(j! k!), built iteratively
    std::vector<Complex> pa(S + 1), pb(S + 1);
    pa[0] = pb[0] = Complex(1.0);
    for (int t = 1; t <= S; ++t) {
        pa[t] = pa[t - 1] * alpha / std::sqrt(double(t));
        pb[t] = pb[t - 1] * beta / std::sqrt(double(t));
    }
    const double scale = std::exp(-0.5 * mean);

    TwoModeState psi = TwoModeState::zero(S);
    double mass = 0.0;
    for (int s = 0; s <= S; ++s) {
        for (int j = 0; j <= s; ++j) {
            const Complex c = scale * pa[j] * pb[s - j];
            psi.blocks[s](j) = c;
            mass += std::norm(c);
        }
    }
    psi.truncation_tail = std::max(0.0, 1.0 - mass);
    return psi;
}

TwoModeState noon_state(int N) {
    if (N < 1) throw ParameterError("noon_state: N must be >= 1");
    TwoModeState psi = TwoModeState::zero(N);
    const double r = 1.0 / std::sqrt(2.0);
    psi.blocks[N](N) = Complex(r);  // |N,0>
    psi.blocks[N](0) = Complex(r);  // |0,N>
    return psi;
}

TwoModeState fock_pair(int m, int n) {
    if (m < 0 || n < 0) throw ParameterError("fock_pair: negative photon number");
    TwoModeState psi = TwoModeState::zero(m + n);
    psi.blocks[m + n](m) = Complex(1.0);
    return psi;
}

ClassicalMixture random_classical_mixture(int k, double max_amplitude, std::uint64_t seed) {
    if (k < 1) throw ParameterError("random_classical_mixture: k must be >= 1");
    if (!(max_amplitude > 0.0)) throw ParameterError("random_classical_mixture: max_amplitude must be > 0");

    UniformStream rng(splitmix64(seed));
    ClassicalMixture mix;
    mix.components.resize(k);

    // simplex-uniform weights via normalized exponentials
    double total = 0.0;
    for (auto& c : mix.components) {
        c.weight = -std::log1p(-rng.next());
        total += c.weight;
    }
    for (auto& c : mix.components) c.weight /= total;

    auto disk = [&rng, max_amplitude]() {
        const double r = max_amplitude * std::sqrt(rng.next());
        const double theta = 2.0 * std::numbers::pi * rng.next();
        return std::polar(r, theta);
    };
    for (auto& c : mix.components) {
        c.alpha = disk();
        c.beta = disk();
    }
    return mix;
}

}  // namespace mzsim
