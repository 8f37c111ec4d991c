#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "cdd/harness.hpp"

namespace cdd {

/// Parse a config object; unknown keys are rejected so typos fail loudly.
ExperimentConfig config_from_json(const nlohmann::json& j);

/// Canonical echo of a config (sorted keys, defaults filled in).
nlohmann::json config_to_json(const ExperimentConfig& cfg);

/// SER sweep CSV: '#'-prefixed metadata lines, then the fixed schema
/// decoder,snr_db,trials,errors,ser,ci_lo,ci_hi. The body below the '#'
/// block is a pure function of config and seed.
std::string sweep_csv(const SweepResult& result);

/// Rate CSV with schema receiver,snr_db,draws,rate_bits,std_err.
std::string rate_csv(const RateResult& result);

/// Rows of a sweep CSV for one decoder, ready for slope fitting.
std::vector<CurvePoint> curve_from_csv(std::istream& in, const std::string& decoder);

/// Everything after the metadata block (used for byte-identity checks).
std::string csv_body(const std::string& csv);

std::string bound_report_text(const BoundReport& rep);
nlohmann::json bound_report_json(const BoundReport& rep);

nlohmann::json sweep_json(const SweepResult& result);
nlohmann::json rate_json(const RateResult& result);
nlohmann::json diversity_json(const DiversityFit& fit);

} // namespace cdd
