#include "mzsim/bound.hpp"

#include <cmath>
#include <sstream>

#include "mzsim/errors.hpp"
#include "mzsim/rng.hpp"
#include "mzsim/states.hpp"

namespace mzsim {

namespace {

constexpr double kRatioSlack = 1e-9;

std::string format_complex(CoherentAmplitude a) {
    std::ostringstream os;
    os << a.real() << (a.imag() < 0 ? "" : "+") << a.imag() << "i";
    return os.str();
}

std::string describe_mixture(const ClassicalMixture& mix) {
    std::ostringstream os;
    for (std::size_t c = 0; c < mix.components.size(); ++c) {
        const auto& comp = mix.components[c];
        if (c) os << "; ";
        os << "w=" << comp.weight << " alpha=" << format_complex(comp.alpha)
           << " beta=" << format_complex(comp.beta);
    }
    return os.str();
}

}  // namespace

BigInt binomial(int a, int b) {
    if (b < 0 || b > a || a < 0) return BigInt(0);
    if (b > a - b) b = a - b;
    BigInt result = 1;
    for (int i = 1; i <= b; ++i) {
        result *= a - b + i;
        result /= i;  // exact: result is C(a-b+i, i) after each step
    }
    return result;
}

double ClassicalBoundValue::value() const { return static_cast<double>(exact); }

std::string ClassicalBoundValue::rational_string() const {
    std::ostringstream os;
    os << numerator(exact);
    if (denominator(exact) != 1) os << "/" << denominator(exact);
    return os.str();
}

std::string ClassicalBoundValue::percent_string(int decimals) const {
    if (decimals < 0) throw ParameterError("percent_string: decimals must be nonnegative");
    const BigRational percent = exact * 100;
    const BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(decimals));
    const BigInt num = numerator(percent) * scale;
    const BigInt den = denominator(percent);
    BigInt scaled = num / den;
    if (2 * (num % den) >= den) ++scaled;  // round half away from zero (all positive)

    std::string digits = scaled.str();
    if (decimals == 0) return digits;
    if (static_cast<int>(digits.size()) <= decimals)
        digits.insert(0, static_cast<std::size_t>(decimals) + 1 - digits.size(), '0');
    digits.insert(digits.size() - static_cast<std::size_t>(decimals), 1, '.');
    while (digits.back() == '0') digits.pop_back();
    if (digits.back() == '.') digits.pop_back();
    return digits;
}

ClassicalBoundValue classical_bound(int m, int n) {
    if (m < 0 || n < 0) throw ParameterError("classical_bound: photon counts must be nonnegative");
    if (m + n == 0)
        throw ParameterError("classical_bound: pattern (0,0) is degenerate, no bound defined");

    BigInt sum = 0;
    for (int r = 0; r <= 2 * n; ++r) {
        const BigInt term = binomial(2 * n, r) * binomial(2 * m, n + m - r);
        sum += (r % 2 == 0) ? term : -term;
    }
    if (sum == 0)
        throw ArithmeticError("classical_bound: alternating sum vanishes for pattern (" +
                              std::to_string(m) + "," + std::to_string(n) + ")");
    if (sum < 0) sum = -sum;

    ClassicalBoundValue out;
    out.pattern = {m, n};
    out.exact = BigRational(2, sum);
    return out;
}

std::vector<ClassicalBoundValue> bound_table(int n_max) {
    if (n_max < 1) throw ParameterError("bound_table: n_max must be positive");
    std::vector<ClassicalBoundValue> table;
    for (int total = 1; total <= n_max; ++total)
        for (int m = (total + 1) / 2; m <= total; ++m)
            table.push_back(classical_bound(m, total - m));
    return table;
}

std::string to_string(VerdictLabel label) {
    switch (label) {
        case VerdictLabel::ClassicalConsistent: return "classical-consistent";
        case VerdictLabel::NonclassicalViolation: return "nonclassical-violation";
        case VerdictLabel::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

Verdict classify(const VisibilityEstimate& v, double threshold) {
    if (v.value < 0) throw ParameterError("classify: visibility must be nonnegative");
    if (threshold < 0) throw ParameterError("classify: threshold must be nonnegative");

    const ClassicalBoundValue bound = classical_bound(v.pattern.m, v.pattern.n);

    Verdict verdict;
    verdict.pattern = v.pattern;
    verdict.visibility = v.value;
    verdict.sigma = v.uncertainty;
    verdict.bound = bound.value();
    verdict.bound_rational = bound.rational_string();
    verdict.threshold = threshold;
    if (v.uncertainty > 0) verdict.margin = (v.value - verdict.bound) / v.uncertainty;

    // Saturating classical states sit exactly on the bound; give the
    // comparison a hair of slack so float roundoff cannot flip a verdict.
    const double edge = verdict.bound + kRatioSlack;
    if (bound.exact >= 1) {
        // A visibility ratio tops out at 1, so a unit bound is unbeatable.
        verdict.label = VerdictLabel::ClassicalConsistent;
    } else if (v.value - threshold * v.uncertainty > edge) {
        verdict.label = VerdictLabel::NonclassicalViolation;
    } else if (v.value + threshold * v.uncertainty <= edge) {
        verdict.label = VerdictLabel::ClassicalConsistent;
    } else {
        verdict.label = VerdictLabel::Inconclusive;
    }
    return verdict;
}

namespace {

// Worst visibility/bound ratio over every pattern with 1 <= m+n <= n_max
// for one classical source; updates `entries` in place and reports the
// first violation through `counterexample`.
void accumulate_ratios(const ClassicalMixture& mix, const PhaseGrid& grid, int n_max,
                       std::vector<BoundRatioEntry>& entries, bool& all_within,
                       std::string& counterexample, const std::string& source_label) {
    std::size_t slot = 0;
    for (int total = 1; total <= n_max; ++total) {
        for (int m = 0; m <= total; ++m, ++slot) {
            const CoincidencePattern pattern{m, total - m};
            const CoincidenceScan scan = mixture_scan(mix, grid, pattern);
            const FourierSeries series = fit_fourier(scan, total);
            const double visibility = n_fold_visibility(series, total).value;
            const double bound = classical_bound(pattern.m, pattern.n).value();
            const double ratio = visibility / bound;
            if (ratio > entries[slot].max_ratio) entries[slot].max_ratio = ratio;
            if (ratio > 1.0 + kRatioSlack && all_within) {
                all_within = false;
                std::ostringstream os;
                os << source_label << " pattern (" << pattern.m << "," << pattern.n
                   << "): visibility " << visibility << " exceeds bound " << bound << " (ratio "
                   << ratio << "); source: " << describe_mixture(mix);
                counterexample = os.str();
            }
        }
    }
}

std::vector<BoundRatioEntry> make_entries(int n_max) {
    std::vector<BoundRatioEntry> entries;
    for (int total = 1; total <= n_max; ++total)
        for (int m = 0; m <= total; ++m)
            entries.push_back({{m, total - m}, 0.0});
    return entries;
}

}  // namespace

BoundCheckReport verify_bound_random(int trials, int n_max, std::uint64_t seed) {
    if (trials < 1) throw ParameterError("verify_bound_random: trials must be positive");
    if (n_max < 1) throw ParameterError("verify_bound_random: n_max must be positive");

    const PhaseGrid grid = PhaseGrid::uniform_2pi(std::max(64, 2 * n_max + 2));
    constexpr double kMaxAmplitude = 1.5;

    BoundCheckReport report;
    report.trials = trials;
    report.n_max = n_max;
    report.seed = seed;
    report.pair_entries = make_entries(n_max);
    report.mixture_entries = make_entries(n_max);
    report.saturation = make_entries(n_max);

    // Reference case: coherent light against vacuum attains the bound.
    ClassicalMixture vacuum_case;
    vacuum_case.components.push_back({1.0, CoherentAmplitude(1.0, 0.0), CoherentAmplitude(0.0, 0.0)});
    bool saturation_ok = true;
    std::string unused;
    accumulate_ratios(vacuum_case, grid, n_max, report.saturation, saturation_ok, unused,
                      "coherent-vacuum");

    for (int t = 0; t < trials; ++t) {
        const ClassicalMixture pair =
            random_classical_mixture(1, kMaxAmplitude, derive_seed(seed, 2 * t));
        accumulate_ratios(pair, grid, n_max, report.pair_entries, report.all_within,
                          report.counterexample, "coherent-pair trial " + std::to_string(t));

        const std::uint64_t mix_seed = derive_seed(seed, 2 * t + 1);
        UniformStream pick(mix_seed);
        const int components = 1 + static_cast<int>(pick.next() * 8.0);
        const ClassicalMixture mix =
            random_classical_mixture(std::min(components, 8), kMaxAmplitude,
                                     derive_seed(mix_seed, 0x6d6978));
        accumulate_ratios(mix, grid, n_max, report.mixture_entries, report.all_within,
                          report.counterexample, "mixture trial " + std::to_string(t));
    }
    return report;
}

}  // namespace mzsim
