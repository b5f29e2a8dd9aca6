#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mzsim/bound.hpp"
#include "mzsim/coincidence.hpp"
#include "mzsim/states.hpp"
#include "mzsim/visibility.hpp"

namespace mzsim {

// A coincidence scan paired with its file metadata. Metadata lines are
// `# key: value` comments preceding the CSV header `phase,rate[,shots]`;
// insertion order is preserved on write.
struct ScanRecord {
    CoincidenceScan scan;
    std::vector<std::pair<std::string, std::string>> metadata;

    // First metadata value for `key`, or empty string.
    std::string meta(const std::string& key) const;
    void set_meta(const std::string& key, const std::string& value);
};

// Parse scan CSV text. Errors carry `name:line:` prefixes. Phases must be
// strictly increasing, rates nonnegative; a `shots` column adds binomial
// standard errors. Pattern metadata (`pattern_m`, `pattern_n`) is applied
// to the scan when present.
ScanRecord parse_scan_text(const std::string& text, const std::string& name);
ScanRecord read_scan_file(const std::string& path);

std::string render_scan_text(const ScanRecord& record);
void write_scan_file(const std::string& path, const ScanRecord& record);

// Classical mixture file: one component per line, `weight alpha_re
// alpha_im beta_re beta_im`, `#` comments allowed. Weights are
// renormalized to sum to one.
ClassicalMixture parse_mixture_text(const std::string& text, const std::string& name);
ClassicalMixture read_mixture_file(const std::string& path);

// Full analysis result serialized as JSON: fit coefficients, visibility,
// bound, and verdict. Floats round-trip exactly.
std::string render_report_json(const ScanRecord& source, const FourierSeries& fit,
                               const VisibilityEstimate& visibility,
                               const ClassicalBoundValue& bound, const Verdict& verdict);
void write_report_file(const std::string& path, const std::string& json_text);

// Parsed-back subset of a report used by plot-data generation.
struct ReportSummary {
    CoincidencePattern pattern;
    int k_max = 0;
    std::vector<double> amplitudes;  // index k = 0..k_max
    std::vector<double> phases;      // index k = 0..k_max
    double visibility = 0.0;
    double sigma = 0.0;
    double bound = 0.0;
};

ReportSummary parse_report_json(const std::string& text, const std::string& name);
ReportSummary read_report_file(const std::string& path);

}  // namespace mzsim
