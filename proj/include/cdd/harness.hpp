#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cdd/fusion.hpp"

namespace cdd {

enum class CodeFamily { Simplex, RM1, SCRS, Naive, Custom, CodewordSet };
enum class DecoderKind { ML, SubsetML, Hamming, MRC, UncodedMajority };

std::string to_string(CodeFamily f);
std::string to_string(DecoderKind d);
std::optional<CodeFamily> code_family_from_string(const std::string& s);
std::optional<DecoderKind> decoder_from_string(const std::string& s);

/// Which code the receive nodes implement.
struct CodeConfig {
    CodeFamily family = CodeFamily::SCRS;
    std::vector<std::vector<int>> rows; // Custom: inline K x N entries
    std::string file;                   // Custom: generator text file
    std::vector<uint32_t> columns;      // CodewordSet: one integer per node
};

/// Declarative description of one experiment.
struct ExperimentConfig {
    std::string constellation = "qpsk";
    int M = 4;
    int B = 1;
    int N = 0;         // 0 = derive from the code family where it is fixed
    unsigned poly = 0; // 0 = default primitive polynomial for B
    CodeConfig code;
    ChannelModel::Kind channel_kind = ChannelModel::Kind::IidRayleigh;
    std::vector<double> gains; // fixed-gain amplitudes
    std::vector<DecoderKind> decoders;
    std::vector<double> snr_grid_db;
    long trials_per_point = 0;
    uint64_t master_seed = 1;
    long mc_samples = 100000; // per (symbol, node) for Monte-Carlo tables
    TableMethod table_method = TableMethod::Auto;
    int threads = 1; // 0 = hardware concurrency
    bool disable_noise = false;

    // achievable-rate runs
    long rate_channel_draws = 10000;
    long rate_mrc_noise_samples = 20000;
    bool rate_include_centralized = true;

    std::vector<LabeledPoint> custom_points; // custom constellation
};

/// Config turned into runnable pieces. compile_experiment throws ConfigError
/// with every problem it found; warnings (e.g. an all-zero custom column)
/// are returned for the caller to surface.
struct CompiledExperiment {
    FieldPtr field;
    int K = 0;
    int N = 0;
    int Q = 0; // 2^B
    std::optional<GeneratorMatrix> generator;
    std::optional<CodewordSet> codeword_set;
    std::vector<std::vector<uint8_t>> node_maps; // N maps, symbol -> output
    std::vector<GFVector> codebook;              // symbol-indexed codewords
    std::optional<SubsetPlan> plan;              // when subset ML is requested
    int d_min = 0;
    std::optional<BoundReport> bounds;
    ChannelModel channel;
    std::vector<std::string> warnings;
};

/// for_sweep adds the SER-sweep-only requirements (a nonempty decoder set,
/// trials_per_point >= 1); rate runs leave it false.
CompiledExperiment compile_experiment(const ExperimentConfig& cfg, bool for_sweep = false);

/// Builds the configured constellation at energy rho.
Constellation constellation_for(const ExperimentConfig& cfg, double rho);

/// Canonical textual echo of a config and its FNV-1a hash (implemented in
/// the I/O layer; recorded in every result's metadata).
std::string canonical_config_text(const ExperimentConfig& cfg);
uint64_t config_hash(const ExperimentConfig& cfg);

struct PointResult {
    DecoderKind decoder = DecoderKind::ML;
    double snr_db = 0.0;
    long trials = 0;
    long errors = 0;
    double ser = 0.0;
    double ci_lo = 0.0; // 95% Wilson interval
    double ci_hi = 0.0;
};

struct RunMetadata {
    std::string config_json; // canonical echo
    uint64_t config_hash = 0;
    uint64_t seed = 0;
    int d_min = 0;
    std::optional<BoundReport> bounds;
    std::string scheme;
    std::string channel;
    std::string notes; // grouping/phase conventions
    int threads = 0;
    double wall_ms = 0.0;
};

struct SweepResult {
    std::vector<PointResult> points; // decoder-major, SNR ascending within
    RunMetadata meta;
};

/// Monte-Carlo SER sweep. One symbol per trial, channel redrawn every trial,
/// every configured decoder scored on the same draws. Trial t of SNR point p
/// uses substream p * trials_per_point + t of the master seed, so results
/// are identical for any worker count.
SweepResult run_ser_sweep(const ExperimentConfig& cfg);

struct CurvePoint {
    double snr_db = 0.0;
    double ser = 0.0;
    long errors = 0;
};

struct DiversityFit {
    bool estimable = false;
    double slope = 0.0;
    double std_err = 0.0;
    double win_lo_db = 0.0;
    double win_hi_db = 0.0;
    int points_used = 0;
    std::string reason; // set when not estimable
};

/// Weighted least-squares slope of -log10(SER) against log10(rho). Points
/// need errors >= min_errors to participate; without an explicit window the
/// highest 10 dB of qualifying points is used. Fewer than 3 usable points
/// yields an explicit not-estimable result.
DiversityFit estimate_diversity(const std::vector<CurvePoint>& curve,
                                std::optional<std::pair<double, double>> window_db = std::nullopt,
                                long min_errors = 100);

/// Extract one decoder's curve from a sweep.
std::vector<CurvePoint> curve_of(const SweepResult& sweep, DecoderKind decoder);

struct RatePoint {
    std::string receiver; // coded | naive | centralized
    double snr_db = 0.0;
    long draws = 0;
    double rate = 0.0;    // bits per channel use
    double std_err = 0.0; // over channel draws
};

struct RateResult {
    std::vector<RatePoint> points;
    RunMetadata meta;
};

/// Average achievable rate of the quantized system: exact mutual information
/// over all Q^N output patterns per channel draw (requires N*B <= 20),
/// averaged over Monte-Carlo channel draws. The coded receiver uses the
/// configured rules, the naive receiver round-robin single-component rules,
/// and the centralized baseline Monte-Carlo-integrates the post-MRC scalar
/// channel.
RateResult achievable_rate(const ExperimentConfig& cfg);

/// Mutual information in bits of the discrete channel s -> (u_1..u_N) under
/// uniform input, from exact enumeration of all output patterns.
double mutual_information_exact(const TransitionModel& tables, int M);

/// Exact SER of a decoder under the given per-node tables, by enumerating
/// all output patterns. Used as the small-instance oracle for Monte-Carlo
/// estimates.
double exact_ser(const TransitionModel& tables, int M,
                 const std::function<int(const std::vector<uint8_t>&)>& decode);

} // namespace cdd
