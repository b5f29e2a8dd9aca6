#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mzsim/coincidence.hpp"
#include "mzsim/visibility.hpp"

namespace mzsim {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Exact binomial coefficient; zero outside 0 <= b <= a.
BigInt binomial(int a, int b);

// The largest N-fold visibility any classical (positive-P) state can
// produce at pattern (m,n), kept as an exact reduced rational.
struct ClassicalBoundValue {
    CoincidencePattern pattern;
    BigRational exact;

    double value() const;
    std::string rational_string() const;  // e.g. "1/2"
    // Percentage rendering rounded half away from zero to `decimals`
    // places, with trailing zeros (and a bare '.') trimmed.
    std::string percent_string(int decimals) const;
};

ClassicalBoundValue classical_bound(int m, int n);

// All patterns with 1 <= m+n <= n_max and m >= n, ordered by total photon
// number then by m ascending.
std::vector<ClassicalBoundValue> bound_table(int n_max);

enum class VerdictLabel { ClassicalConsistent, NonclassicalViolation, Inconclusive };

std::string to_string(VerdictLabel label);

struct Verdict {
    CoincidencePattern pattern;
    double visibility = 0.0;
    double sigma = 0.0;
    double bound = 0.0;
    std::string bound_rational;
    double threshold = 3.0;               // decision threshold in sigmas
    std::optional<double> margin;         // (visibility - bound)/sigma when sigma > 0
    VerdictLabel label = VerdictLabel::Inconclusive;
};

// Three-zone decision at `threshold` sigmas: violation when the value is
// significantly above the bound, consistent when significantly at-or-below,
// inconclusive in between. A bound of 1 (or more) can never be exceeded by
// a visibility ratio, so it always classifies as consistent.
Verdict classify(const VisibilityEstimate& v, double threshold = 3.0);

struct BoundRatioEntry {
    CoincidencePattern pattern;
    double max_ratio = 0.0;  // max over trials of visibility / bound
};

struct BoundCheckReport {
    int trials = 0;
    int n_max = 0;
    std::uint64_t seed = 0;
    std::vector<BoundRatioEntry> pair_entries;     // random coherent pairs
    std::vector<BoundRatioEntry> mixture_entries;  // random classical mixtures
    std::vector<BoundRatioEntry> saturation;       // coherent-vacuum reference case
    bool all_within = true;                        // every ratio <= 1 + 1e-9
    std::string counterexample;                    // populated on first violation
};

// Randomized stress test of the bound: draws `trials` coherent pairs and
// `trials` classical mixtures, fits every pattern with total photon number
// up to n_max, and records the worst visibility/bound ratio per pattern.
BoundCheckReport verify_bound_random(int trials, int n_max, std::uint64_t seed);

}  // namespace mzsim
