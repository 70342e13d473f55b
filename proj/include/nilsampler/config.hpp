#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "nilsampler/equidist.hpp"
#include "nilsampler/normal_form.hpp"
#include "nilsampler/orbit.hpp"

namespace nilsampler {

/// Malformed configuration: unknown keys, wrong types, unparsable values.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
    OrbitSpec orbit;
    int max_freq = 5;
    Thresholds thresholds;
    std::size_t l2_exact_limit = 100'000;
    int vdc_H = 100;
    Frequency vdc_frequency;  // torus character for vdc runs; default e_1
    std::optional<std::int64_t> progression_sweep;
    std::optional<std::string> report_path, series_path, dump_path;
    nlohmann::json canonical;  // the parsed document, keys sorted
};

/// Number, decimal string, or constant expression such as "sqrt(2)" or "(sqrt(5)-1)/2".
DoubleDouble parse_scalar(const nlohmann::json& v);
/// {"heisenberg": [x, y, z]} or {"dim": n, "entries": {"1,2": x, ...}} (1-based positions).
GroupElement<DoubleDouble> parse_element(const nlohmann::json& v);

ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::string& path);

/// FNV-1a 64 of the canonical (sorted-key, compact) JSON text, as 16 hex digits.
std::string spec_hash(const nlohmann::json& canonical);

nlohmann::ordered_json to_json(const NormalForm& nf);
nlohmann::ordered_json to_json(const PropertyReport& rep);
nlohmann::ordered_json to_json(const CorrelationTable& t, int H);
nlohmann::ordered_json to_json(const Diagnostic& d);
/// Report document: Weyl table, discrepancies, verdicts, scheme, N, thresholds.
nlohmann::ordered_json to_json(const EquidistReport& rep, const OrbitSpec& spec, const std::string& hash);

/// Running averages: points, last_n, max |Weyl|, then one |Weyl| column per frequency.
void write_series_csv(std::ostream& os, const EquidistReport& rep);
void write_dump_header(std::ostream& os, int dim);
void write_dump_rows(std::ostream& os, const OrbitChunk& chunk, int dim);

}  // namespace nilsampler
