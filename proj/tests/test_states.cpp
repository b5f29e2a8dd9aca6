#include <doctest.h>

#include <cmath>

#include "mzsim/errors.hpp"
#include "mzsim/states.hpp"

using namespace mzsim;

namespace {

double poisson_pmf(double mean, int k) {
    return std::exp(-mean + k * std::log(mean) - std::lgamma(double(k) + 1.0));
}

}  // namespace

TEST_CASE("coherent product carries Poisson mass per total photon block") {
    const CoherentAmplitude alpha(1.0, 0.0), beta(0.3, -0.4);
    const double mean = std::norm(alpha) + std::norm(beta);
    const TwoModeState psi = coherent_product(alpha, beta, 24);
    for (int s = 0; s <= 24; ++s)
        CHECK(psi.blocks[s].squaredNorm() == doctest::Approx(poisson_pmf(mean, s)).epsilon(1e-10));
    CHECK(psi.norm_sq() + psi.truncation_tail == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("coherent amplitudes match the closed form") {
    const CoherentAmplitude alpha(0.8, 0.1), beta(-0.2, 0.5);
    const TwoModeState psi = coherent_product(alpha, beta, 12);
    const double mean = std::norm(alpha) + std::norm(beta);
    for (int s = 0; s <= 6; ++s)
        for (int j = 0; j <= s; ++j) {
            const int k = s - j;
            const Complex expected = std::exp(-mean / 2) * std::pow(alpha, j) *
                                     std::pow(beta, k) /
                                     std::sqrt(std::tgamma(j + 1.0) * std::tgamma(k + 1.0));
            CHECK(std::abs(psi.blocks[s](j) - expected) < 1e-13);
        }
}

TEST_CASE("vacuum is exact and unit-photon truncation tails shrink as promised") {
    const TwoModeState vac = coherent_product({0, 0}, {0, 0}, 0);
    CHECK(vac.blocks[0](0) == Complex(1, 0));
    CHECK(vac.truncation_tail == 0.0);

    const TwoModeState one = coherent_product({1, 0}, {0, 0}, 20);
    CHECK(one.truncation_tail < 1e-12);
    CHECK(one.blocks[0](0).real() == doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
}

TEST_CASE("default cutoff keeps the Poisson tail below reporting precision") {
    for (double mean : {0.0, 0.1, 1.0, 5.0, 20.0, 100.0, 400.0}) {
        const int S = default_cutoff(mean);
        CHECK(poisson_tail(mean, S) < 1e-12);
    }
    CHECK_THROWS_AS(coherent_product({30.0, 0}, {0, 0}, 10), ParameterError);  // mean 900
}

TEST_CASE("noon state is the balanced two-slot superposition") {
    for (int N : {1, 2, 3, 5}) {
        const TwoModeState psi = noon_state(N);
        CHECK(psi.cutoff() == N);
        CHECK(psi.norm_sq() == doctest::Approx(1.0).epsilon(1e-15));
        const double r = 1.0 / std::sqrt(2.0);
        CHECK(std::abs(psi.blocks[N](N) - Complex(r, 0)) < 1e-15);  // |N,0>
        CHECK(std::abs(psi.blocks[N](0) - Complex(r, 0)) < 1e-15);  // |0,N>
        for (int j = 1; j < N; ++j) CHECK(std::abs(psi.blocks[N](j)) == 0.0);
    }
    CHECK_THROWS_AS(noon_state(0), ParameterError);
}

TEST_CASE("fock pair puts unit amplitude on the requested slot") {
    const TwoModeState psi = fock_pair(2, 3);
    CHECK(psi.cutoff() == 5);
    CHECK(std::abs(psi.blocks[5](2) - Complex(1, 0)) < 1e-15);
    CHECK(psi.norm_sq() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(fock_pair(-1, 0), ParameterError);
}

TEST_CASE("classical mixtures validate their weights") {
    ClassicalMixture mix;
    mix.components.push_back({0.5, {1.0, 0}, {0, 0}});
    mix.components.push_back({0.5, {0, 0.5}, {0.2, 0}});
    CHECK_NOTHROW(mix.validate());

    ClassicalMixture bad;
    bad.components.push_back({0.7, {1.0, 0}, {0, 0}});
    CHECK_THROWS_AS(bad.validate(), ParameterError);  // weights must sum to 1

    ClassicalMixture negative;
    negative.components.push_back({-0.2, {1, 0}, {0, 0}});
    negative.components.push_back({1.2, {1, 0}, {0, 0}});
    CHECK_THROWS_AS(negative.validate(), ParameterError);

    CHECK_THROWS_AS(ClassicalMixture{}.validate(), ParameterError);  // empty
}

TEST_CASE("random mixtures are deterministic, normalized, and inside the disk") {
    const double radius = 1.5;
    const ClassicalMixture a = random_classical_mixture(6, radius, 42);
    const ClassicalMixture b = random_classical_mixture(6, radius, 42);
    REQUIRE(a.components.size() == 6);
    double total = 0.0;
    for (std::size_t i = 0; i < a.components.size(); ++i) {
        CHECK(a.components[i].weight == b.components[i].weight);
        CHECK(a.components[i].alpha == b.components[i].alpha);
        CHECK(a.components[i].beta == b.components[i].beta);
        CHECK(a.components[i].weight > 0.0);
        CHECK(std::abs(a.components[i].alpha) <= radius + 1e-12);
        CHECK(std::abs(a.components[i].beta) <= radius + 1e-12);
        total += a.components[i].weight;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_NOTHROW(a.validate());

    const ClassicalMixture c = random_classical_mixture(6, radius, 43);
    CHECK(a.components[0].alpha != c.components[0].alpha);
    CHECK_THROWS_AS(random_classical_mixture(0, radius, 1), ParameterError);
}
