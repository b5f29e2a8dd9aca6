// Command-line front end: classical-bound tables, fringe simulation,
// scan analysis with bound verdicts, a randomized verification battery,
// and plot-ready columnar data.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mzsim/bound.hpp"
#include "mzsim/coincidence.hpp"
#include "mzsim/detector.hpp"
#include "mzsim/errors.hpp"
#include "mzsim/fock.hpp"
#include "mzsim/io.hpp"
#include "mzsim/montecarlo.hpp"
#include "mzsim/rng.hpp"
#include "mzsim/states.hpp"
#include "mzsim/visibility.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

struct BoundArgs {
    std::vector<int> pattern;
    int table = 0;
    std::string format = "text";
};

struct SimulateArgs {
    std::vector<std::string> source;
    std::vector<int> pattern;
    std::string injection = "full";
    int points = 64;
    double eta = 1.0;
    double dark = 0.0;
    double crosstalk = 0.0;
    long long shots = 0;  // 0 = analytic scan
    std::uint64_t seed = 12345;
    std::string out;
};

struct AnalyzeArgs {
    std::string scan_path;
    int n_fold = 0;  // 0 = pattern total
    int k_max = 0;   // 0 = n_fold
    bool superimpose = false;
    int bootstrap = 0;
    std::uint64_t seed = 12345;
    double threshold = 3.0;
    std::string out;
};

struct VerifyArgs {
    int trials = 100;
    int n_max = 5;
    std::uint64_t seed = 12345;
};

struct PlotdataArgs {
    int bounds = 0;
    std::string scan_path;
    std::string report_path;
    std::vector<std::string> bar_reports;
    std::string out_prefix;
};

std::string format_double(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

mzsim::Injection parse_injection(const std::string& text) {
    if (text == "full") return mzsim::Injection::Full;
    if (text == "half") return mzsim::Injection::Half;
    throw mzsim::ParameterError("injection must be 'full' or 'half', got '" + text + "'");
}

// --- bound ------------------------------------------------------------

void print_bound_rows(const std::vector<mzsim::ClassicalBoundValue>& rows,
                      const std::string& format) {
    if (format == "csv") {
        std::cout << "m,n,numerator,denominator,value,percent\n";
        for (const auto& row : rows)
            std::cout << row.pattern.m << "," << row.pattern.n << ","
                      << numerator(row.exact).str() << "," << denominator(row.exact).str() << ","
                      << format_double(row.value()) << "," << row.percent_string(4) << "\n";
        return;
    }
    if (format == "json") {
        std::cout << "[\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& row = rows[i];
            std::cout << "  {\"m\": " << row.pattern.m << ", \"n\": " << row.pattern.n
                      << ", \"numerator\": \"" << numerator(row.exact).str()
                      << "\", \"denominator\": \"" << denominator(row.exact).str()
                      << "\", \"value\": " << format_double(row.value()) << "}"
                      << (i + 1 < rows.size() ? "," : "") << "\n";
        }
        std::cout << "]\n";
        return;
    }
    std::cout << "  m   n   exact         percent\n";
    for (const auto& row : rows) {
        std::ostringstream rational;
        rational << std::left << std::setw(12) << row.rational_string();
        std::cout << std::setw(3) << row.pattern.m << " " << std::setw(3) << row.pattern.n << "   "
                  << rational.str() << "  " << row.percent_string(4) << "%\n";
    }
}

int cmd_bound(const BoundArgs& args) {
    if (args.format != "text" && args.format != "csv" && args.format != "json")
        throw mzsim::ParameterError("unknown --format '" + args.format + "'");
    if (args.table > 0) {
        print_bound_rows(mzsim::bound_table(args.table), args.format);
        return 0;
    }
    if (args.pattern.size() != 2)
        throw mzsim::ParameterError("bound requires 'm n' positionals or --table N");
    const auto row = mzsim::classical_bound(args.pattern[0], args.pattern[1]);
    if (args.format == "text")
        std::cout << row.rational_string() << " (" << row.percent_string(4) << "%)\n";
    else
        print_bound_rows({row}, args.format);
    return 0;
}

// --- simulate -----------------------------------------------------------

double component_cutoff_mean(const mzsim::ClassicalMixture& mix) {
    double worst = 0.0;
    for (const auto& component : mix.components) {
        const double reach = std::abs(component.alpha) + std::abs(component.beta);
        worst = std::max(worst, reach * reach);
    }
    return worst;
}

int cmd_simulate(const SimulateArgs& args) {
    if (args.source.empty()) throw mzsim::ParameterError("--source is required");
    if (args.pattern.size() != 2) throw mzsim::ParameterError("--pattern requires two integers");
    const mzsim::CoincidencePattern pattern{args.pattern[0], args.pattern[1]};
    if (pattern.m < 0 || pattern.n < 0)
        throw mzsim::ParameterError("pattern counts must be nonnegative");
    if (args.points < 2 * pattern.total() + 2)
        throw mzsim::ParameterError("--points must be at least 2*(m+n)+2 = " +
                                    std::to_string(2 * pattern.total() + 2));
    if (args.eta < 0 || args.eta > 1) throw mzsim::ParameterError("--eta must lie in [0,1]");
    if (args.dark < 0) throw mzsim::ParameterError("--dark must be nonnegative");
    if (args.crosstalk < 0 || args.crosstalk > 1)
        throw mzsim::ParameterError("--crosstalk must lie in [0,1]");

    const mzsim::Injection injection = parse_injection(args.injection);
    const mzsim::PhaseGrid grid = mzsim::PhaseGrid::uniform_2pi(args.points);
    const bool ideal = args.eta == 1.0 && args.dark == 0.0 && args.crosstalk == 0.0;
    const int pattern_reach = std::max(pattern.m, pattern.n) + 2;

    const std::string kind = args.source[0];
    const auto numeric = [&](std::size_t i) {
        if (i >= args.source.size())
            throw mzsim::ParameterError("--source " + kind + ": missing argument");
        try {
            return std::stod(args.source[i]);
        } catch (const std::exception&) {
            throw mzsim::ParameterError("--source " + kind + ": cannot parse '" +
                                        args.source[i] + "'");
        }
    };

    mzsim::CoincidenceScan scan;
    if (kind == "coherent" || kind == "coherent-pair" || kind == "mixture") {
        mzsim::ClassicalMixture mix;
        if (kind == "coherent") {
            if (args.source.size() < 2 || args.source.size() > 3)
                throw mzsim::ParameterError("--source coherent takes 1 or 2 numbers (re [im])");
            const double re = numeric(1);
            const double im = args.source.size() == 3 ? numeric(2) : 0.0;
            mix.components.push_back({1.0, {re, im}, {0.0, 0.0}});
        } else if (kind == "coherent-pair") {
            if (args.source.size() != 3 && args.source.size() != 5)
                throw mzsim::ParameterError(
                    "--source coherent-pair takes 2 or 4 numbers (a b | a_re a_im b_re b_im)");
            if (args.source.size() == 3)
                mix.components.push_back({1.0, {numeric(1), 0.0}, {numeric(2), 0.0}});
            else
                mix.components.push_back(
                    {1.0, {numeric(1), numeric(2)}, {numeric(3), numeric(4)}});
        } else {
            if (args.source.size() != 2)
                throw mzsim::ParameterError("--source mixture takes a file path");
            mix = mzsim::read_mixture_file(args.source[1]);
        }

        if (ideal && injection == mzsim::Injection::Full) {
            scan = mzsim::mixture_scan(mix, grid, pattern);
        } else {
            const int cutoff = mzsim::default_cutoff(component_cutoff_mean(mix));
            const mzsim::DetectorModel d =
                ideal ? mzsim::ideal_detector(cutoff)
                      : mzsim::imperfect_detector(args.eta, args.dark, args.crosstalk, cutoff,
                                                  pattern_reach);
            scan = mzsim::mixture_scan_detected(mix, injection, grid, pattern, d, d);
        }
    } else if (kind == "noon") {
        if (args.source.size() != 2)
            throw mzsim::ParameterError("--source noon takes a photon number N");
        int photons = 0;
        try {
            photons = std::stoi(args.source[1]);
        } catch (const std::exception&) {
            throw mzsim::ParameterError("--source noon: cannot parse '" + args.source[1] + "'");
        }
        const mzsim::TwoModeState state = mzsim::noon_state(photons);
        const mzsim::DetectorModel d =
            ideal ? mzsim::ideal_detector(photons)
                  : mzsim::imperfect_detector(args.eta, args.dark, args.crosstalk, photons,
                                              pattern_reach);
        scan = mzsim::scan_state(state, injection, grid, pattern, d, d);
    } else {
        throw mzsim::ParameterError("unknown source kind '" + kind +
                                    "' (coherent | coherent-pair | noon | mixture)");
    }
    scan.pattern = pattern;

    if (args.shots > 0) scan = mzsim::sample_scan(scan, {args.shots, args.seed});

    mzsim::ScanRecord record;
    record.scan = scan;
    std::string source_text = kind;
    for (std::size_t i = 1; i < args.source.size(); ++i) source_text += " " + args.source[i];
    record.set_meta("tool", std::string("mzsim ") + kVersion);
    record.set_meta("source", source_text);
    record.set_meta("injection", args.injection);
    record.set_meta("pattern_m", std::to_string(pattern.m));
    record.set_meta("pattern_n", std::to_string(pattern.n));
    record.set_meta("points", std::to_string(args.points));
    record.set_meta("eta", format_double(args.eta));
    record.set_meta("dark", format_double(args.dark));
    record.set_meta("crosstalk", format_double(args.crosstalk));
    record.set_meta("provenance", mzsim::to_string(scan.provenance));
    if (args.shots > 0) {
        record.set_meta("shots", std::to_string(args.shots));
        record.set_meta("seed", std::to_string(args.seed));
    }

    if (args.out.empty())
        std::cout << mzsim::render_scan_text(record);
    else
        mzsim::write_scan_file(args.out, record);
    return 0;
}

// --- analyze ------------------------------------------------------------

int cmd_analyze(const AnalyzeArgs& args) {
    const mzsim::ScanRecord record = mzsim::read_scan_file(args.scan_path);
    if (record.meta("pattern_m").empty() || record.meta("pattern_n").empty())
        throw mzsim::InputError(args.scan_path +
                                ": pattern_m/pattern_n metadata required for analysis");
    const mzsim::CoincidencePattern pattern = record.scan.pattern;
    if (pattern.total() < 1)
        throw mzsim::InputError("pattern (0,0) carries no oscillation index to analyze");

    const int n_fold = args.n_fold > 0 ? args.n_fold : pattern.total();
    const int k_max = args.k_max > 0 ? args.k_max : n_fold;
    if (k_max < n_fold) throw mzsim::ParameterError("--k-max must be at least the fitted N");

    const mzsim::CoincidenceScan target =
        args.superimpose ? mzsim::shift_superimpose(record.scan, n_fold) : record.scan;
    const mzsim::FourierSeries series = mzsim::fit_fourier(target, k_max);

    mzsim::VisibilityEstimate estimate;
    if (args.bootstrap > 0) {
        estimate = mzsim::bootstrap_uncertainty(record.scan, n_fold, args.bootstrap, args.seed,
                                                args.superimpose);
    } else {
        estimate = mzsim::n_fold_visibility(series, n_fold);
        estimate.method = args.superimpose ? mzsim::VisibilityMethod::ShiftSuperimpose
                                           : mzsim::VisibilityMethod::DirectFit;
    }

    const mzsim::ClassicalBoundValue bound = mzsim::classical_bound(pattern.m, pattern.n);
    const mzsim::Verdict verdict = mzsim::classify(estimate, args.threshold);

    std::cout << "pattern (" << pattern.m << "," << pattern.n << "): visibility "
              << std::setprecision(6) << std::fixed << estimate.value << " +/- "
              << estimate.uncertainty << ", bound " << bound.rational_string() << " ("
              << bound.percent_string(4) << "%), " << mzsim::to_string(verdict.label);
    std::cout.unsetf(std::ios::fixed);
    if (verdict.margin) std::cout << " (margin " << std::setprecision(3) << *verdict.margin << " sigma)";
    if (n_fold != pattern.total())
        std::cout << " [note: harmonic " << n_fold << " differs from m+n = " << pattern.total()
                  << "; the bound addresses the latter]";
    std::cout << "\n";

    const std::string json_text =
        mzsim::render_report_json(record, series, estimate, bound, verdict);
    if (args.out.empty())
        std::cout << json_text;
    else
        mzsim::write_report_file(args.out, json_text);
    return 0;
}

// --- verify -------------------------------------------------------------

bool check(const std::string& label, bool ok, std::ostringstream& failures,
           const std::string& detail = {}) {
    std::cout << (ok ? "PASS" : "FAIL") << "  " << label << "\n";
    if (!ok) failures << label << (detail.empty() ? "" : ": " + detail) << "\n";
    return ok;
}

int cmd_verify(const VerifyArgs& args) {
    if (args.trials < 1) throw mzsim::ParameterError("--trials must be positive");
    if (args.n_max < 1) throw mzsim::ParameterError("--n-max must be positive");

    std::ostringstream failures;
    bool all_ok = true;

    // Block-matrix unitarity of the lifted beam splitter.
    for (int S : {20, 40, 60}) {
        const double defect = mzsim::beam_splitter(S).unitarity_defect();
        all_ok &= check("beam-splitter unitarity, cutoff " + std::to_string(S) +
                            " (defect " + format_double(defect) + ")",
                        defect <= 1e-12, failures);
    }

    // Single-photon fringes of the full interferometer.
    {
        mzsim::UniformStream stream(mzsim::derive_seed(args.seed, 0xfeed));
        double worst = 0.0;
        const mzsim::TwoModeState one = mzsim::fock_pair(1, 0);
        const mzsim::DetectorModel ideal = mzsim::ideal_detector(1);
        for (int i = 0; i < 50; ++i) {
            const double phi = stream.next() * 2.0 * M_PI;
            const double p1 =
                mzsim::coincidence_trace(one, mzsim::Injection::Full, phi, {1, 0}, ideal, ideal);
            const double p2 =
                mzsim::coincidence_trace(one, mzsim::Injection::Full, phi, {0, 1}, ideal, ideal);
            const double s = std::sin(phi / 2), c = std::cos(phi / 2);
            worst = std::max({worst, std::abs(p1 - s * s), std::abs(p2 - c * c)});
        }
        all_ok &= check("single-photon fringe closed form (worst " + format_double(worst) + ")",
                        worst <= 1e-10, failures);
    }

    // Trace engine against the coherent-pair closed form.
    {
        mzsim::UniformStream stream(mzsim::derive_seed(args.seed, 0xcafe));
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const mzsim::CoherentAmplitude alpha(stream.next() * 1.2 - 0.6,
                                                 stream.next() * 1.2 - 0.6);
            const mzsim::CoherentAmplitude beta(stream.next() * 1.2 - 0.6,
                                                stream.next() * 1.2 - 0.6);
            const double phi = stream.next() * 2.0 * M_PI;
            const int m = static_cast<int>(stream.next() * 4);
            const int n = static_cast<int>(stream.next() * 4);
            const int cutoff = mzsim::default_cutoff(std::norm(alpha) + std::norm(beta) +
                                                     2 * std::abs(alpha) * std::abs(beta));
            const mzsim::TwoModeState in = mzsim::coherent_product(alpha, beta, cutoff);
            const mzsim::DetectorModel ideal = mzsim::ideal_detector(cutoff);
            const double traced =
                mzsim::coincidence_trace(in, mzsim::Injection::Full, phi, {m, n}, ideal, ideal);
            const double closed = mzsim::coherent_pair_analytic(alpha, beta, phi, {m, n});
            worst = std::max(worst, std::abs(traced - closed));
        }
        all_ok &= check("trace engine vs coherent closed form (worst " + format_double(worst) +
                            ")",
                        worst <= 1e-9, failures);
    }

    // Randomized classical-bound domination.
    {
        const mzsim::BoundCheckReport report =
            mzsim::verify_bound_random(args.trials, args.n_max, args.seed);
        all_ok &= check("classical bound domination, " + std::to_string(args.trials) +
                            " trials, N <= " + std::to_string(args.n_max),
                        report.all_within, failures, report.counterexample);

        std::cout << "\n  saturating coherent-vacuum ratios (visibility / bound):\n";
        for (const auto& entry : report.saturation)
            std::cout << "    (" << entry.pattern.m << "," << entry.pattern.n << ")  "
                      << std::fixed << std::setprecision(6) << entry.max_ratio << "\n";
        std::cout << "  worst random-source ratios per pattern:\n";
        for (std::size_t i = 0; i < report.pair_entries.size(); ++i) {
            const auto& pair_entry = report.pair_entries[i];
            std::cout << "    (" << pair_entry.pattern.m << "," << pair_entry.pattern.n
                      << ")  pair " << std::setprecision(6) << pair_entry.max_ratio << "  mixture "
                      << report.mixture_entries[i].max_ratio << "\n";
        }
        std::cout.unsetf(std::ios::fixed);

        double saturation_gap = 0.0;
        for (const auto& entry : report.saturation)
            saturation_gap = std::max(saturation_gap, std::abs(entry.max_ratio - 1.0));
        all_ok &= check("coherent-vacuum saturation ratio = 1 (worst gap " +
                            format_double(saturation_gap) + ")",
                        saturation_gap <= 1e-6, failures);
    }

    if (!all_ok) {
        std::cerr << "verification failures:\n" << failures.str();
        return 1;
    }
    return 0;
}

// --- plotdata -----------------------------------------------------------

int cmd_plotdata(const PlotdataArgs& args) {
    if (args.out_prefix.empty()) throw mzsim::ParameterError("--out prefix is required");
    const bool overlay_requested = !args.scan_path.empty() || !args.report_path.empty();
    if (args.bounds <= 0 && !overlay_requested && args.bar_reports.empty())
        throw mzsim::ParameterError(
            "nothing to do: pass --bounds N, --scan with --report, or --bars");

    const auto open_out = [](const std::string& path) {
        std::ofstream out(path);
        if (!out) throw mzsim::InputError("cannot write file: " + path);
        return out;
    };

    if (args.bounds > 0) {
        auto out = open_out(args.out_prefix + "_bounds.txt");
        out << "# N balanced_bound lopsided_bound\n";
        for (int total = 1; total <= args.bounds; ++total) {
            const auto balanced =
                mzsim::classical_bound((total + 1) / 2, total - (total + 1) / 2);
            const auto lopsided = mzsim::classical_bound(total, 0);
            out << total << " " << format_double(balanced.value()) << " "
                << format_double(lopsided.value()) << "\n";
        }
    }

    if (overlay_requested) {
        if (args.scan_path.empty() || args.report_path.empty())
            throw mzsim::ParameterError("overlay output needs both --scan and --report");
        const mzsim::ScanRecord record = mzsim::read_scan_file(args.scan_path);
        const mzsim::ReportSummary report = mzsim::read_report_file(args.report_path);
        auto out = open_out(args.out_prefix + "_overlay.txt");
        out << "# phase measured fitted\n";
        for (std::size_t i = 0; i < record.scan.values.size(); ++i) {
            const double phi = record.scan.grid.phases[i];
            double fitted = report.amplitudes.empty() ? 0.0 : report.amplitudes[0];
            for (int k = 1; k <= report.k_max; ++k)
                fitted += report.amplitudes[static_cast<std::size_t>(k)] *
                          std::cos(k * phi - report.phases[static_cast<std::size_t>(k)]);
            out << format_double(phi) << " " << format_double(record.scan.values[i]) << " "
                << format_double(fitted) << "\n";
        }
    }

    if (!args.bar_reports.empty()) {
        auto out = open_out(args.out_prefix + "_bars.txt");
        out << "# m n visibility sigma bound\n";
        for (const auto& path : args.bar_reports) {
            const mzsim::ReportSummary report = mzsim::read_report_file(path);
            out << report.pattern.m << " " << report.pattern.n << " "
                << format_double(report.visibility) << " " << format_double(report.sigma) << " "
                << format_double(report.bound) << "\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mach-Zehnder multiphoton coincidence toolkit"};
    app.set_version_flag("--version", std::string("mzsim ") + kVersion);
    app.require_subcommand(1);

    BoundArgs bound_args;
    auto* bound_cmd = app.add_subcommand(
        "bound", "Classical visibility bound for a detection pattern (exact rational)");
    bound_cmd->add_option("pattern", bound_args.pattern,
                          "Pattern 'm n' (photons at ports 1 and 2)")
        ->expected(0, 2);
    bound_cmd->add_option("--table", bound_args.table,
                          "Render all patterns with m+n up to this total");
    bound_cmd->add_option("--format", bound_args.format, "Output format: text | csv | json");

    SimulateArgs sim_args;
    auto* sim_cmd = app.add_subcommand(
        "simulate", "Compute a coincidence fringe scan (analytic, or sampled with --shots)");
    sim_cmd->add_option("--source", sim_args.source,
                        "Light source: 'coherent RE [IM]' | 'coherent-pair A B' "
                        "| 'noon N' | 'mixture FILE'")
        ->required()
        ->expected(-1);
    sim_cmd->add_option("--pattern", sim_args.pattern, "Detection pattern 'm n'")
        ->required()
        ->expected(2);
    sim_cmd->add_option("--injection", sim_args.injection,
                        "Where the state enters: 'full' interferometer or 'half' (inside)");
    sim_cmd->add_option("--points", sim_args.points, "Uniform grid points over [0, 2*pi)");
    sim_cmd->add_option("--eta", sim_args.eta, "Detector efficiency in [0,1]");
    sim_cmd->add_option("--dark", sim_args.dark, "Mean dark counts per gate");
    sim_cmd->add_option("--crosstalk", sim_args.crosstalk, "Per-click duplication probability");
    sim_cmd->add_option("--shots", sim_args.shots, "Measurement gates per point (Monte Carlo)");
    sim_cmd->add_option("--seed", sim_args.seed, "RNG seed for --shots");
    sim_cmd->add_option("--out", sim_args.out, "Output scan CSV path (default: stdout)");

    AnalyzeArgs ana_args;
    auto* ana_cmd = app.add_subcommand(
        "analyze", "Fit a scan file, extract the N-fold visibility, compare to the bound");
    ana_cmd->add_option("scan", ana_args.scan_path, "Scan CSV file")->required();
    ana_cmd->add_option("--n-fold", ana_args.n_fold,
                        "Harmonic index N (default: m+n from metadata)");
    ana_cmd->add_option("--k-max", ana_args.k_max, "Fit truncation (default: N)");
    ana_cmd->add_flag("--superimpose", ana_args.superimpose,
                      "Average the N copies shifted by 2*pi*j/N before fitting");
    ana_cmd->add_option("--bootstrap", ana_args.bootstrap,
                        "Poisson-bootstrap resamples for the uncertainty (requires shots)");
    ana_cmd->add_option("--seed", ana_args.seed, "Bootstrap RNG seed");
    ana_cmd->add_option("--threshold", ana_args.threshold, "Verdict decision threshold in sigma");
    ana_cmd->add_option("--out", ana_args.out, "Report JSON path (default: stdout)");

    VerifyArgs ver_args;
    auto* ver_cmd = app.add_subcommand(
        "verify", "Randomized verification battery (unitarity, oracles, bound domination)");
    ver_cmd->add_option("--trials", ver_args.trials, "Random classical sources per family");
    ver_cmd->add_option("--n-max", ver_args.n_max, "Largest pattern total to stress");
    ver_cmd->add_option("--seed", ver_args.seed, "Battery RNG seed");

    PlotdataArgs plot_args;
    auto* plot_cmd =
        app.add_subcommand("plotdata", "Emit plot-ready columnar text files (no rendering)");
    plot_cmd->add_option("--bounds", plot_args.bounds, "Bound-vs-N curve up to this total");
    plot_cmd->add_option("--scan", plot_args.scan_path, "Scan CSV for a measured/fitted overlay");
    plot_cmd->add_option("--report", plot_args.report_path, "Report JSON for the overlay");
    plot_cmd->add_option("--bars", plot_args.bar_reports,
                         "Report JSON files for a visibility-vs-pattern bar table")
        ->expected(-1);
    plot_cmd->add_option("--out", plot_args.out_prefix, "Output file prefix")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForVersion") return 0;
        return code == 0 ? 0 : 2;
    }

    try {
        if (bound_cmd->parsed()) return cmd_bound(bound_args);
        if (sim_cmd->parsed()) return cmd_simulate(sim_args);
        if (ana_cmd->parsed()) return cmd_analyze(ana_args);
        if (ver_cmd->parsed()) return cmd_verify(ver_args);
        if (plot_cmd->parsed()) return cmd_plotdata(plot_args);
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const mzsim::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const mzsim::ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const mzsim::GridError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const mzsim::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
