#include "mzsim/io.hpp"

#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "mzsim/errors.hpp"

namespace mzsim {

namespace {

constexpr const char* kToolName = "mzsim";
constexpr const char* kToolVersion = "0.1.0";

std::string trim(const std::string& s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(begin, end - begin);
}

[[noreturn]] void fail_at(const std::string& name, std::size_t line, const std::string& message) {
    throw InputError(name + ":" + std::to_string(line) + ": " + message);
}

double parse_double(const std::string& token, const std::string& name, std::size_t line,
                    const std::string& what) {
    try {
        std::size_t used = 0;
        const double value = std::stod(token, &used);
        if (used != token.size()) throw std::invalid_argument("trailing characters");
        return value;
    } catch (const std::exception&) {
        fail_at(name, line, "cannot parse " + what + " from '" + token + "'");
    }
}

long long parse_count(const std::string& token, const std::string& name, std::size_t line) {
    try {
        std::size_t used = 0;
        const long long value = std::stoll(token, &used);
        if (used != token.size()) throw std::invalid_argument("trailing characters");
        return value;
    } catch (const std::exception&) {
        fail_at(name, line, "cannot parse shot count from '" + token + "'");
    }
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::string current;
    for (char c : line) {
        if (c == sep) {
            fields.push_back(trim(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    fields.push_back(trim(current));
    return fields;
}

std::string format_double(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

std::string ScanRecord::meta(const std::string& key) const {
    for (const auto& [k, v] : metadata)
        if (k == key) return v;
    return {};
}

void ScanRecord::set_meta(const std::string& key, const std::string& value) {
    for (auto& [k, v] : metadata) {
        if (k == key) {
            v = value;
            return;
        }
    }
    metadata.emplace_back(key, value);
}

ScanRecord parse_scan_text(const std::string& text, const std::string& name) {
    ScanRecord record;
    std::vector<double> phases;
    std::vector<double> values;
    std::vector<long long> shots;

    bool saw_header = false;
    bool has_shots = false;
    std::istringstream stream(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        const std::string content = trim(line);
        if (content.empty()) continue;
        if (content[0] == '#') {
            const std::string body = trim(content.substr(1));
            const std::size_t colon = body.find(':');
            if (colon != std::string::npos)
                record.metadata.emplace_back(trim(body.substr(0, colon)),
                                             trim(body.substr(colon + 1)));
            continue;
        }
        if (!saw_header) {
            if (content == "phase,rate") {
                has_shots = false;
            } else if (content == "phase,rate,shots") {
                has_shots = true;
            } else {
                fail_at(name, line_no,
                        "expected header 'phase,rate' or 'phase,rate,shots', got '" + content +
                            "'");
            }
            saw_header = true;
            continue;
        }
        const std::vector<std::string> fields = split(content, ',');
        const std::size_t expected = has_shots ? 3 : 2;
        if (fields.size() != expected)
            fail_at(name, line_no,
                    "expected " + std::to_string(expected) + " columns, got " +
                        std::to_string(fields.size()));
        const double phase = parse_double(fields[0], name, line_no, "phase");
        const double rate = parse_double(fields[1], name, line_no, "rate");
        if (!phases.empty() && phase <= phases.back())
            fail_at(name, line_no, "phases must be strictly increasing");
        if (rate < 0) fail_at(name, line_no, "negative rate");
        phases.push_back(phase);
        values.push_back(rate);
        if (has_shots) {
            const long long count = parse_count(fields[2], name, line_no);
            if (count < 1) fail_at(name, line_no, "shot count must be positive");
            shots.push_back(count);
        }
    }
    if (!saw_header) throw InputError(name + ": missing CSV header");
    if (phases.empty()) throw InputError(name + ": no data rows");

    record.scan.grid = PhaseGrid::from_values(std::move(phases));
    record.scan.values = std::move(values);
    if (has_shots) {
        record.scan.std_errors = std::vector<double>(shots.size());
        for (std::size_t i = 0; i < shots.size(); ++i)
            (*record.scan.std_errors)[i] = binomial_std_error(record.scan.values[i], shots[i]);
        record.scan.shots = std::move(shots);
    }
    record.scan.provenance = Provenance::Ingested;

    const std::string m_text = record.meta("pattern_m");
    const std::string n_text = record.meta("pattern_n");
    if (!m_text.empty() && !n_text.empty()) {
        try {
            record.scan.pattern.m = std::stoi(m_text);
            record.scan.pattern.n = std::stoi(n_text);
        } catch (const std::exception&) {
            throw InputError(name + ": pattern metadata is not integral");
        }
        if (record.scan.pattern.m < 0 || record.scan.pattern.n < 0)
            throw InputError(name + ": pattern metadata must be nonnegative");
    }
    record.scan.validate();
    return record;
}

ScanRecord read_scan_file(const std::string& path) {
    return parse_scan_text(read_text_file(path), path);
}

std::string render_scan_text(const ScanRecord& record) {
    std::ostringstream os;
    for (const auto& [key, value] : record.metadata) os << "# " << key << ": " << value << "\n";
    const bool has_shots = record.scan.shots.has_value();
    os << (has_shots ? "phase,rate,shots" : "phase,rate") << "\n";
    for (std::size_t i = 0; i < record.scan.values.size(); ++i) {
        os << format_double(record.scan.grid.phases[i]) << ","
           << format_double(record.scan.values[i]);
        if (has_shots) os << "," << (*record.scan.shots)[i];
        os << "\n";
    }
    return os.str();
}

void write_scan_file(const std::string& path, const ScanRecord& record) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write file: " + path);
    out << render_scan_text(record);
}

ClassicalMixture parse_mixture_text(const std::string& text, const std::string& name) {
    ClassicalMixture mix;
    std::istringstream stream(text);
    std::string line;
    std::size_t line_no = 0;
    double weight_sum = 0.0;
    while (std::getline(stream, line)) {
        ++line_no;
        const std::string content = trim(line);
        if (content.empty() || content[0] == '#') continue;
        std::istringstream fields(content);
        double w, ar, ai, br, bi;
        if (!(fields >> w >> ar >> ai >> br >> bi))
            fail_at(name, line_no,
                    "expected 'weight alpha_re alpha_im beta_re beta_im', got '" + content + "'");
        std::string extra;
        if (fields >> extra) fail_at(name, line_no, "unexpected trailing field '" + extra + "'");
        if (w <= 0) fail_at(name, line_no, "component weight must be positive");
        mix.components.push_back({w, CoherentAmplitude(ar, ai), CoherentAmplitude(br, bi)});
        weight_sum += w;
    }
    if (mix.components.empty()) throw InputError(name + ": no mixture components");
    for (auto& component : mix.components) component.weight /= weight_sum;
    mix.validate();
    return mix;
}

ClassicalMixture read_mixture_file(const std::string& path) {
    return parse_mixture_text(read_text_file(path), path);
}

std::string render_report_json(const ScanRecord& source, const FourierSeries& fit,
                               const VisibilityEstimate& visibility,
                               const ClassicalBoundValue& bound, const Verdict& verdict) {
    nlohmann::ordered_json report;
    report["pattern"] = {{"m", fit.pattern.m}, {"n", fit.pattern.n}};

    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [key, value] : source.metadata) meta[key] = value;
    report["source"] = meta;

    nlohmann::ordered_json components = nlohmann::ordered_json::array();
    for (int k = 0; k <= fit.k_max; ++k)
        components.push_back(
            {{"k", k}, {"amplitude", fit.amplitude(k)}, {"phase", fit.phase(k)}});
    report["fit"] = {{"k_max", fit.k_max},
                     {"residual", fit.residual},
                     {"least_squares", "unweighted"},
                     {"components", components}};

    report["visibility"] = {{"value", visibility.value},
                            {"sigma", visibility.uncertainty},
                            {"harmonic", visibility.harmonic},
                            {"method", to_string(visibility.method)}};

    report["bound"] = {{"numerator", numerator(bound.exact).str()},
                       {"denominator", denominator(bound.exact).str()},
                       {"value", bound.value()}};

    nlohmann::ordered_json verdict_json = {{"label", to_string(verdict.label)},
                                           {"threshold", verdict.threshold}};
    if (verdict.margin)
        verdict_json["margin"] = *verdict.margin;
    else
        verdict_json["margin"] = nullptr;
    report["verdict"] = verdict_json;

    report["provenance"] = to_string(source.scan.provenance);
    report["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    return report.dump(2) + "\n";
}

void write_report_file(const std::string& path, const std::string& json_text) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write file: " + path);
    out << json_text;
}

ReportSummary parse_report_json(const std::string& text, const std::string& name) {
    nlohmann::json report;
    try {
        report = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(name + ": invalid JSON: " + e.what());
    }
    try {
        ReportSummary summary;
        summary.pattern.m = report.at("pattern").at("m").get<int>();
        summary.pattern.n = report.at("pattern").at("n").get<int>();
        summary.k_max = report.at("fit").at("k_max").get<int>();
        summary.amplitudes.assign(static_cast<std::size_t>(summary.k_max) + 1, 0.0);
        summary.phases.assign(static_cast<std::size_t>(summary.k_max) + 1, 0.0);
        for (const auto& component : report.at("fit").at("components")) {
            const int k = component.at("k").get<int>();
            if (k < 0 || k > summary.k_max) continue;
            summary.amplitudes[static_cast<std::size_t>(k)] =
                component.at("amplitude").get<double>();
            summary.phases[static_cast<std::size_t>(k)] = component.at("phase").get<double>();
        }
        summary.visibility = report.at("visibility").at("value").get<double>();
        summary.sigma = report.at("visibility").at("sigma").get<double>();
        summary.bound = report.at("bound").at("value").get<double>();
        return summary;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(name + ": missing report field: " + e.what());
    }
}

ReportSummary read_report_file(const std::string& path) {
    return parse_report_json(read_text_file(path), path);
}

}  // namespace mzsim
