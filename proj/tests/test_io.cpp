#include <doctest.h>

#include <cmath>
#include <functional>
#include <string>

#include "mzsim/bound.hpp"
#include "mzsim/coincidence.hpp"
#include "mzsim/errors.hpp"
#include "mzsim/io.hpp"
#include "mzsim/visibility.hpp"

using namespace mzsim;

namespace {

std::string message_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("scan text round-trips values exactly") {
    ScanRecord record;
    record.scan = scan_coherent_pair({0.7, 0.1}, {0.3, -0.2}, PhaseGrid::uniform_2pi(16), {2, 1});
    record.set_meta("source", "coherent-pair 0.7+0.1i 0.3-0.2i");
    record.set_meta("pattern_m", "2");
    record.set_meta("pattern_n", "1");

    const std::string text = render_scan_text(record);
    const ScanRecord back = parse_scan_text(text, "roundtrip");
    REQUIRE(back.scan.values.size() == record.scan.values.size());
    for (std::size_t i = 0; i < record.scan.values.size(); ++i) {
        CHECK(back.scan.grid.phases[i] == record.scan.grid.phases[i]);  // exact: 17 digits
        CHECK(back.scan.values[i] == record.scan.values[i]);
    }
    CHECK(back.scan.grid.uniform);
    CHECK(back.scan.pattern.m == 2);
    CHECK(back.scan.pattern.n == 1);
    CHECK(back.meta("source") == record.meta("source"));
    CHECK(back.scan.provenance == Provenance::Ingested);
    CHECK_FALSE(back.scan.shots.has_value());
}

TEST_CASE("scan text carries shot counts into standard errors") {
    const std::string text =
        "# pattern_m: 1\n"
        "# pattern_n: 0\n"
        "phase,rate,shots\n"
        "0,0.25,400\n"
        "1.5,0.5,400\n"
        "3.0,0.125,800\n";
    const ScanRecord record = parse_scan_text(text, "shots");
    REQUIRE(record.scan.shots.has_value());
    REQUIRE(record.scan.std_errors.has_value());
    CHECK((*record.scan.shots)[2] == 800);
    CHECK((*record.scan.std_errors)[1] ==
          doctest::Approx(binomial_std_error(0.5, 400)).epsilon(1e-12));

    // And back out again, preserving the three-column shape.
    const ScanRecord back = parse_scan_text(render_scan_text(record), "again");
    REQUIRE(back.scan.shots.has_value());
    CHECK((*back.scan.shots)[0] == 400);
}

TEST_CASE("scan parsing reports the offending line") {
    auto error_text = [](const std::string& body) {
        return message_of([&] { parse_scan_text(body, "scan.csv"); });
    };

    CHECK(error_text("phase,rate\n0,0.1\n0,0.2\n").find("scan.csv:3") != std::string::npos);
    CHECK(error_text("phase,rate\n0,0.1\n1,-0.2\n").find("scan.csv:3") != std::string::npos);
    CHECK(error_text("phase,rate\n0,0.1,50\n").find("scan.csv:2") != std::string::npos);
    CHECK(error_text("phase,rate,shots\n0,0.1,0\n").find("scan.csv:2") != std::string::npos);
    CHECK(error_text("angle,rate\n0,0.1\n").find("scan.csv:1") != std::string::npos);
    CHECK(error_text("phase,rate\n0,zebra\n").find("scan.csv:2") != std::string::npos);
    CHECK(error_text("phase,rate\n").find("no data") != std::string::npos);
    CHECK_THROWS_AS(parse_scan_text("phase,rate\n0,0.1\n1,oops\n", "x"), InputError);
}

TEST_CASE("mixture files renormalize weights and validate shape") {
    const std::string text =
        "# two-component example\n"
        "2 1.0 0.0 0.0 0.0\n"
        "6 0.1 0.2 -0.3 0.4\n";
    const ClassicalMixture mix = parse_mixture_text(text, "mix.txt");
    REQUIRE(mix.components.size() == 2);
    CHECK(mix.components[0].weight == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(mix.components[1].weight == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(mix.components[1].alpha == CoherentAmplitude(0.1, 0.2));
    CHECK(mix.components[1].beta == CoherentAmplitude(-0.3, 0.4));
    CHECK_NOTHROW(mix.validate());

    CHECK(message_of([&] { parse_mixture_text("1 0 0 0\n", "m.txt"); }).find("m.txt:1") !=
          std::string::npos);
    CHECK_THROWS_AS(parse_mixture_text("-1 0 0 0 0\n", "m.txt"), InputError);
    CHECK_THROWS_AS(parse_mixture_text("# only comments\n", "m.txt"), InputError);
}

TEST_CASE("analysis reports round-trip through JSON") {
    ScanRecord record;
    record.scan = scan_coherent_pair({1.0, 0.0}, {0.5, 0.0}, PhaseGrid::uniform_2pi(32), {2, 1});
    record.set_meta("source", "coherent-pair 1 0.5");

    const FourierSeries fit = fit_fourier(record.scan, 3);
    const VisibilityEstimate vis = n_fold_visibility(fit, 3);
    const ClassicalBoundValue bound = classical_bound(2, 1);
    const Verdict verdict = classify(vis);

    const std::string json = render_report_json(record, fit, vis, bound, verdict);
    CHECK(json.find("\"unweighted\"") != std::string::npos);
    CHECK(json.find("\"numerator\": \"1\"") != std::string::npos);
    CHECK(json.find("\"denominator\": \"2\"") != std::string::npos);

    const ReportSummary summary = parse_report_json(json, "report.json");
    CHECK(summary.pattern.m == 2);
    CHECK(summary.pattern.n == 1);
    CHECK(summary.k_max == 3);
    REQUIRE(summary.amplitudes.size() == 4);
    for (int k = 0; k <= 3; ++k) {
        CHECK(summary.amplitudes[k] == fit.amplitude(k));  // exact float round-trip
        CHECK(summary.phases[k] == fit.phase(k));
    }
    CHECK(summary.visibility == vis.value);
    CHECK(summary.sigma == vis.uncertainty);
    CHECK(summary.bound == doctest::Approx(0.5).epsilon(1e-15));

    CHECK_THROWS_AS(parse_report_json("{not json", "bad.json"), InputError);
    CHECK_THROWS_AS(parse_report_json("{\"fit\": {}}", "empty.json"), InputError);
}
