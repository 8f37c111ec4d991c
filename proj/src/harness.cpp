#include "cdd/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

namespace cdd {

std::string to_string(CodeFamily f)
{
    switch (f) {
    case CodeFamily::Simplex: return "simplex";
    case CodeFamily::RM1: return "rm1";
    case CodeFamily::SCRS: return "scrs";
    case CodeFamily::Naive: return "naive";
    case CodeFamily::Custom: return "custom";
    case CodeFamily::CodewordSet: return "codeword_set";
    }
    return "?";
}

std::string to_string(DecoderKind d)
{
    switch (d) {
    case DecoderKind::ML: return "ml";
    case DecoderKind::SubsetML: return "subset_ml";
    case DecoderKind::Hamming: return "hamming";
    case DecoderKind::MRC: return "mrc";
    case DecoderKind::UncodedMajority: return "uncoded_majority";
    }
    return "?";
}

std::optional<CodeFamily> code_family_from_string(const std::string& s)
{
    for (CodeFamily f : {CodeFamily::Simplex, CodeFamily::RM1, CodeFamily::SCRS, CodeFamily::Naive,
                         CodeFamily::Custom, CodeFamily::CodewordSet})
        if (to_string(f) == s) return f;
    return std::nullopt;
}

std::optional<DecoderKind> decoder_from_string(const std::string& s)
{
    for (DecoderKind d : {DecoderKind::ML, DecoderKind::SubsetML, DecoderKind::Hamming,
                          DecoderKind::MRC, DecoderKind::UncodedMajority})
        if (to_string(d) == s) return d;
    return std::nullopt;
}

namespace {

bool is_power_of_two(long v) { return v > 0 && (v & (v - 1)) == 0; }

int int_log2(long v)
{
    int b = 0;
    while ((1L << b) < v) ++b;
    return b;
}

bool has_decoder(const ExperimentConfig& cfg, DecoderKind d)
{
    return std::find(cfg.decoders.begin(), cfg.decoders.end(), d) != cfg.decoders.end();
}

} // namespace

Constellation constellation_for(const ExperimentConfig& cfg, double rho)
{
    if (cfg.constellation == "custom") return make_custom_constellation(cfg.custom_points, rho);
    return make_constellation(cfg.constellation, cfg.M, rho);
}

CompiledExperiment compile_experiment(const ExperimentConfig& cfg, bool for_sweep)
{
    std::vector<std::string> problems;
    auto fail = [&](const std::string& msg) { problems.push_back(msg); };

    CompiledExperiment out;

    // Signal set and compression ratio.
    const bool m_pow2 = is_power_of_two(cfg.M) && cfg.M >= 2;
    if (!m_pow2) fail("M must be a power of two >= 2, got " + std::to_string(cfg.M));
    if (cfg.B < 1 || cfg.B > 8) fail("B must satisfy 1 <= B <= 8, got " + std::to_string(cfg.B));
    int K = 0;
    if (m_pow2 && cfg.B >= 1) {
        const int bits = int_log2(cfg.M);
        if (cfg.B > bits)
            fail("B=" + std::to_string(cfg.B) + " exceeds log2(M)=" + std::to_string(bits));
        else if (bits % cfg.B != 0)
            fail("compression ratio log2(M)/B = " + std::to_string(bits) + "/" +
                 std::to_string(cfg.B) + " is not an integer");
        else
            K = bits / cfg.B;
    }

    Constellation label_ref; // labels only; energy irrelevant here
    bool have_constellation = false;
    try {
        label_ref = constellation_for(cfg, 1.0);
        have_constellation = true;
        if (label_ref.M() != cfg.M)
            fail("constellation has " + std::to_string(label_ref.M()) + " points, config says M=" +
                 std::to_string(cfg.M));
    } catch (const Error& e) {
        fail(e.what());
    }

    if (cfg.table_method == TableMethod::Analytic && have_constellation &&
        !analytic_supported(label_ref))
        fail("analytic transition tables are not available for constellation '" +
             cfg.constellation + "'");

    // Field.
    try {
        out.field = cfg.poly == 0 ? FieldSpec::make(cfg.B) : FieldSpec::make(cfg.B, cfg.poly);
    } catch (const Error& e) {
        fail(e.what());
    }

    // Code.
    int N = cfg.N;
    if (out.field && K >= 1) {
        try {
            switch (cfg.code.family) {
            case CodeFamily::Simplex: {
                auto G = simplex_generator(K, out.field);
                if (N != 0 && N != G.cols())
                    fail("simplex code for K=" + std::to_string(K) + ", B=" +
                         std::to_string(cfg.B) + " has N=" + std::to_string(G.cols()) +
                         ", config says N=" + std::to_string(N));
                N = G.cols();
                out.generator = std::move(G);
                break;
            }
            case CodeFamily::RM1: {
                auto G = rm1_generator(K, out.field);
                if (N != 0 && N != G.cols())
                    fail("first-order Reed-Muller code for K=" + std::to_string(K) + ", B=" +
                         std::to_string(cfg.B) + " has N=" + std::to_string(G.cols()) +
                         ", config says N=" + std::to_string(N));
                N = G.cols();
                out.generator = std::move(G);
                break;
            }
            case CodeFamily::SCRS:
                if (N < 1)
                    fail("SCRS code needs an explicit N >= K");
                else
                    out.generator = scrs_generator(N, K, out.field);
                break;
            case CodeFamily::Naive:
                if (N < 1)
                    fail("naive rules need an explicit N >= 1");
                else
                    out.generator = naive_generator(N, K, out.field);
                break;
            case CodeFamily::Custom: {
                if (cfg.code.rows.empty() == cfg.code.file.empty()) {
                    fail("custom code needs exactly one of inline rows or a generator file");
                    break;
                }
                if (!cfg.code.file.empty()) {
                    std::ifstream in(cfg.code.file);
                    if (!in) {
                        fail("cannot open generator file '" + cfg.code.file + "'");
                        break;
                    }
                    out.generator = GeneratorMatrix::from_text(in);
                } else {
                    const int rows = static_cast<int>(cfg.code.rows.size());
                    const int cols = rows ? static_cast<int>(cfg.code.rows[0].size()) : 0;
                    std::vector<uint8_t> entries;
                    bool ok = rows >= 1 && cols >= 1;
                    for (const auto& row : cfg.code.rows) {
                        if (static_cast<int>(row.size()) != cols) ok = false;
                        for (int v : row) {
                            if (v < 0 || v >= out.field->order()) ok = false;
                            entries.push_back(static_cast<uint8_t>(std::max(v, 0)));
                        }
                    }
                    if (!ok) {
                        fail("custom generator rows must be rectangular with entries in GF(2^" +
                             std::to_string(cfg.B) + ")");
                        break;
                    }
                    out.generator = GeneratorMatrix(rows, cols, std::move(entries), out.field);
                }
                if (out.generator->rows() != K)
                    fail("custom generator has K=" + std::to_string(out.generator->rows()) +
                         " rows, constellation and B imply K=" + std::to_string(K));
                if (N != 0 && N != out.generator->cols())
                    fail("custom generator has N=" + std::to_string(out.generator->cols()) +
                         " columns, config says N=" + std::to_string(N));
                N = out.generator->cols();
                if (out.generator->has_zero_column())
                    out.warnings.push_back(
                        "custom generator contains an all-zero column; that node never carries "
                        "information");
                break;
            }
            case CodeFamily::CodewordSet: {
                if (cfg.B != 1) fail("codeword-set rules forward single bits; B must be 1");
                if (cfg.code.columns.empty()) {
                    fail("codeword-set code needs its column integers");
                    break;
                }
                if (N != 0 && N != static_cast<int>(cfg.code.columns.size()))
                    fail("codeword-set has N=" + std::to_string(cfg.code.columns.size()) +
                         " columns, config says N=" + std::to_string(N));
                N = static_cast<int>(cfg.code.columns.size());
                if (cfg.M > 31) {
                    fail("codeword-set columns support at most M=31 rows");
                    break;
                }
                CodewordSet cws{cfg.M, cfg.code.columns};
                for (uint32_t col : cfg.code.columns)
                    if (col >> cfg.M)
                        fail("codeword-set column " + std::to_string(col) +
                             " has bits beyond M=" + std::to_string(cfg.M) + " rows");
                out.codeword_set = std::move(cws);
                break;
            }
            }
        } catch (const Error& e) {
            fail(e.what());
        }
    }

    // Decoders (rate-only runs may leave the set empty).
    if (for_sweep && cfg.decoders.empty())
        fail("a SER sweep needs at least one decoder");
    if (cfg.decoders.size() > 32) fail("at most 32 decoders per run");
    if (has_decoder(cfg, DecoderKind::SubsetML) && cfg.code.family == CodeFamily::CodewordSet)
        fail("selected-subset ML needs shared linear rules; the codeword-set scheme has none");

    // Sweep shape.
    if (cfg.snr_grid_db.empty()) fail("snr_grid_db must not be empty");
    if (for_sweep && cfg.trials_per_point < 1)
        fail("trials_per_point must be >= 1, got " + std::to_string(cfg.trials_per_point));
    if (cfg.mc_samples < 1)
        fail("mc_samples must be >= 1, got " + std::to_string(cfg.mc_samples));
    if (cfg.threads < 0) fail("threads must be >= 0");

    // Channel.
    if (cfg.channel_kind == ChannelModel::Kind::FixedGain) {
        if (N > 0 && static_cast<int>(cfg.gains.size()) != N)
            fail("fixed-gain channel needs one amplitude per node: " +
                 std::to_string(cfg.gains.size()) + " given, N=" + std::to_string(N));
        for (double g : cfg.gains)
            if (g < 0.0) fail("fixed-gain amplitudes must be nonnegative");
    }

    if (!problems.empty()) {
        std::string msg = "invalid experiment config:";
        for (const auto& p : problems) msg += "\n  - " + p;
        throw ConfigError(msg);
    }

    out.K = K;
    out.N = N;
    out.Q = 1 << cfg.B;
    out.channel = cfg.channel_kind == ChannelModel::Kind::FixedGain
                      ? ChannelModel::fixed(cfg.gains)
                      : ChannelModel::rayleigh(N);

    if (out.codeword_set) {
        out.node_maps = out.codeword_set->node_maps();
        out.codebook = out.codeword_set->rows();
        out.d_min = pairwise_min_distance(out.codebook);
    } else {
        const GeneratorMatrix& G = *out.generator;
        out.node_maps.reserve(N);
        for (int i = 0; i < N; ++i)
            out.node_maps.push_back(symbol_output_map(label_ref, rule_for_column(G, i)));
        out.codebook = symbol_codewords(label_ref, G);
        out.d_min = build_code(G).d_min;
        if (has_decoder(cfg, DecoderKind::SubsetML)) {
            out.plan = subset_plan_from_generator(G);
            validate_plan(*out.plan, G);
        }
    }
    if (N <= 64) out.bounds = griesmer_report(K, out.field, std::max(out.d_min, 1), N);
    return out;
}

namespace {

// 95% Wilson score interval.
std::pair<double, double> wilson_interval(long errors, long trials)
{
    constexpr double z = 1.959963984540054;
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(errors) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    const double lo = errors == 0 ? 0.0 : std::max(0.0, center - half);
    const double hi = errors == trials ? 1.0 : std::min(1.0, center + half);
    return {lo, hi};
}

std::string scheme_string(const ExperimentConfig& cfg, const CompiledExperiment& ce)
{
    std::ostringstream s;
    s << to_string(cfg.code.family) << " K=" << ce.K << " B=" << cfg.B << " N=" << ce.N;
    return s.str();
}

std::string channel_string(const ExperimentConfig& cfg)
{
    if (cfg.channel_kind == ChannelModel::Kind::IidRayleigh) return "iid_rayleigh";
    std::ostringstream s;
    s << "fixed_gain[";
    for (size_t i = 0; i < cfg.gains.size(); ++i) s << (i ? "," : "") << cfg.gains[i];
    s << "]";
    return s.str();
}

struct TrialWorkspace {
    std::vector<cplx> y;
    std::vector<int> votes;
    GFVector u;
    TrialWorkspace(int N, const FieldPtr& field) : y(N), votes(N), u(GFVector::zeros(N, field)) {}
};

// Scores every configured decoder on one independently seeded trial; returns
// a bitmask of decoder errors.
uint32_t run_trial(const ExperimentConfig& cfg, const CompiledExperiment& ce,
                   const Constellation& c, uint64_t stream, TrialWorkspace& ws)
{
    Rng rng = Rng::substream(cfg.master_seed, stream);
    const std::vector<cplx> h = sample_channel(ce.channel, rng);
    const int s = rng.uniform_int(cfg.M);

    for (int i = 0; i < ce.N; ++i) {
        ws.y[i] = h[i] * c.points[s];
        if (!cfg.disable_noise) ws.y[i] = add_noise(ws.y[i], rng);
    }
    for (int i = 0; i < ce.N; ++i) {
        ws.votes[i] = hard_detect(ws.y[i], h[i], c);
        ws.u[static_cast<size_t>(i)] = ce.node_maps[i][ws.votes[i]];
    }

    TransitionModel tables;
    bool have_tables = false;
    auto need_tables = [&]() -> const TransitionModel& {
        if (!have_tables) {
            tables = build_transition_model(h, c, ce.node_maps, ce.Q, cfg.table_method, &rng,
                                            cfg.mc_samples);
            have_tables = true;
        }
        return tables;
    };

    uint32_t errors = 0;
    for (size_t d = 0; d < cfg.decoders.size(); ++d) {
        int decoded = -1;
        switch (cfg.decoders[d]) {
        case DecoderKind::ML:
            decoded = ml_decode(ws.u, need_tables());
            break;
        case DecoderKind::SubsetML:
            decoded = subset_ml_decode(ws.u, h, need_tables(), *ce.plan);
            break;
        case DecoderKind::Hamming:
            decoded = hamming_decode(ws.u, ce.codebook);
            break;
        case DecoderKind::MRC:
            decoded = centralized_mrc(ws.y, h, c);
            break;
        case DecoderKind::UncodedMajority:
            decoded = uncoded_majority(ws.votes, cfg.M);
            break;
        }
        if (decoded != s) errors |= 1u << d;
    }
    return errors;
}

int resolve_threads(int requested)
{
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

} // namespace

SweepResult run_ser_sweep(const ExperimentConfig& cfg)
{
    const auto t0 = std::chrono::steady_clock::now();
    CompiledExperiment ce = compile_experiment(cfg, /*for_sweep=*/true);
    const int n_dec = static_cast<int>(cfg.decoders.size());
    const int n_pts = static_cast<int>(cfg.snr_grid_db.size());
    const int threads = resolve_threads(cfg.threads);

    // errors[point][decoder]
    std::vector<std::vector<long>> errors(n_pts, std::vector<long>(n_dec, 0));

    for (int p = 0; p < n_pts; ++p) {
        const double rho = std::pow(10.0, cfg.snr_grid_db[p] / 10.0);
        const Constellation c = constellation_for(cfg, rho);
        const long trials = cfg.trials_per_point;

        std::vector<std::vector<long>> local(threads, std::vector<long>(n_dec, 0));
        auto work = [&](int w) {
            const long lo = trials * w / threads;
            const long hi = trials * (w + 1) / threads;
            TrialWorkspace ws(ce.N, ce.field);
            for (long t = lo; t < hi; ++t) {
                const uint64_t stream =
                    static_cast<uint64_t>(p) * static_cast<uint64_t>(trials) + static_cast<uint64_t>(t);
                const uint32_t mask = run_trial(cfg, ce, c, stream, ws);
                for (int d = 0; d < n_dec; ++d)
                    if (mask & (1u << d)) ++local[w][d];
            }
        };
        if (threads == 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            pool.reserve(threads);
            for (int w = 0; w < threads; ++w) pool.emplace_back(work, w);
            for (auto& th : pool) th.join();
        }
        for (int w = 0; w < threads; ++w)
            for (int d = 0; d < n_dec; ++d) errors[p][d] += local[w][d];
    }

    SweepResult result;
    for (int d = 0; d < n_dec; ++d) {
        for (int p = 0; p < n_pts; ++p) {
            PointResult pr;
            pr.decoder = cfg.decoders[d];
            pr.snr_db = cfg.snr_grid_db[p];
            pr.trials = cfg.trials_per_point;
            pr.errors = errors[p][d];
            pr.ser = static_cast<double>(pr.errors) / static_cast<double>(pr.trials);
            std::tie(pr.ci_lo, pr.ci_hi) = wilson_interval(pr.errors, pr.trials);
            result.points.push_back(pr);
        }
    }

    result.meta.config_json = canonical_config_text(cfg);
    result.meta.config_hash = config_hash(cfg);
    result.meta.seed = cfg.master_seed;
    result.meta.d_min = ce.d_min;
    result.meta.bounds = ce.bounds;
    result.meta.scheme = scheme_string(cfg, ce);
    result.meta.channel = channel_string(cfg);
    result.meta.threads = threads;
    result.meta.notes = "subset grouping by identical columns (first occurrence); "
                        "fixed-gain phases drawn uniformly per realization";
    for (const auto& w : ce.warnings) result.meta.notes += "; warning: " + w;
    result.meta.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

std::vector<CurvePoint> curve_of(const SweepResult& sweep, DecoderKind decoder)
{
    std::vector<CurvePoint> curve;
    for (const auto& p : sweep.points)
        if (p.decoder == decoder) curve.push_back({p.snr_db, p.ser, p.errors});
    return curve;
}

DiversityFit estimate_diversity(const std::vector<CurvePoint>& curve,
                                std::optional<std::pair<double, double>> window_db,
                                long min_errors)
{
    DiversityFit fit;

    std::vector<CurvePoint> usable;
    for (const auto& pt : curve)
        if (pt.errors >= min_errors && pt.ser > 0.0) usable.push_back(pt);

    if (usable.empty()) {
        fit.reason = "no points with at least " + std::to_string(min_errors) + " errors";
        return fit;
    }
    std::sort(usable.begin(), usable.end(),
              [](const CurvePoint& a, const CurvePoint& b) { return a.snr_db < b.snr_db; });

    double lo, hi;
    if (window_db) {
        lo = window_db->first;
        hi = window_db->second;
    } else {
        hi = usable.back().snr_db;
        lo = hi - 10.0 - 1e-9; // highest 10 dB of qualifying points
    }

    std::vector<CurvePoint> in;
    for (const auto& pt : usable)
        if (pt.snr_db >= lo - 1e-12 && pt.snr_db <= hi + 1e-12) in.push_back(pt);

    if (in.size() < 3) {
        fit.reason = "need at least 3 reliable points in the window, found " +
                     std::to_string(in.size());
        return fit;
    }

    // Ordinary least squares of y = -log10(ser) on x = log10(rho); the
    // binomial uncertainty of each point propagates through the fit
    // coefficients into the slope confidence.
    const double ln10 = std::log(10.0);
    const size_t n = in.size();
    std::vector<double> xs(n), ys(n), var_y(n);
    double xbar = 0.0, ybar = 0.0;
    for (size_t i = 0; i < n; ++i) {
        xs[i] = in[i].snr_db / 10.0;
        ys[i] = -std::log10(in[i].ser);
        var_y[i] = std::max((1.0 - in[i].ser) / (static_cast<double>(in[i].errors) * ln10 * ln10),
                            1e-300);
        xbar += xs[i] / n;
        ybar += ys[i] / n;
    }
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - xbar) * (xs[i] - xbar);
        sxy += (xs[i] - xbar) * (ys[i] - ybar);
    }
    if (sxx <= 0.0) {
        fit.reason = "window has no SNR spread";
        return fit;
    }

    // slope = sum c_i y_i with c_i = (x_i - xbar)/sxx
    double slope_var = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double c = (xs[i] - xbar) / sxx;
        slope_var += c * c * var_y[i];
    }

    fit.estimable = true;
    fit.slope = sxy / sxx;
    fit.std_err = std::sqrt(slope_var);
    fit.win_lo_db = in.front().snr_db;
    fit.win_hi_db = in.back().snr_db;
    fit.points_used = static_cast<int>(in.size());
    return fit;
}

double mutual_information_exact(const TransitionModel& tables, int M)
{
    const int N = static_cast<int>(tables.node.size());
    if (N < 1) throw ContractError("mutual information needs at least one node table");
    const int Q = tables.node[0].cols;

    double total_bits = 0.0;
    std::vector<int> u(N, 0);
    std::vector<double> p_given_s(M);
    while (true) {
        double pbar = 0.0;
        for (int m = 0; m < M; ++m) {
            double p = 1.0;
            for (int i = 0; i < N; ++i) p *= tables.node[i].at(m, u[i]);
            p_given_s[m] = p;
            pbar += p;
        }
        pbar /= M;
        if (pbar > 0.0)
            for (int m = 0; m < M; ++m)
                if (p_given_s[m] > 0.0)
                    total_bits += p_given_s[m] * std::log2(p_given_s[m] / pbar);

        int i = N - 1;
        while (i >= 0 && ++u[i] == Q) u[i--] = 0;
        if (i < 0) break;
    }
    return std::max(0.0, total_bits / M);
}

double exact_ser(const TransitionModel& tables, int M,
                 const std::function<int(const std::vector<uint8_t>&)>& decode)
{
    const int N = static_cast<int>(tables.node.size());
    const int Q = tables.node[0].cols;
    double err = 0.0;
    std::vector<uint8_t> u(N, 0);
    while (true) {
        const int decoded = decode(u);
        for (int m = 0; m < M; ++m) {
            if (m == decoded) continue;
            double p = 1.0;
            for (int i = 0; i < N; ++i) p *= tables.node[i].at(m, u[i]);
            err += p;
        }
        int i = N - 1;
        while (i >= 0 && ++u[i] == Q) u[i--] = 0;
        if (i < 0) break;
    }
    return err / M;
}

namespace {

// Monte-Carlo estimate of the post-MRC scalar-channel mutual information at
// one channel draw: I = log2(M) - E[ log2 sum_s' exp(l_s' - l_s) ] with
// l_s = -||h||^2 |y - s|^2.
double mrc_rate_one_draw(const Constellation& c, double h_norm2, long samples, Rng& rng)
{
    const int M = c.M();
    const double inv_norm = 1.0 / std::sqrt(h_norm2);
    std::vector<double> l(M);
    double acc = 0.0;
    for (long n = 0; n < samples; ++n) {
        const cplx noise = rng.cnormal() * inv_norm;
        const int s = rng.uniform_int(M);
        const cplx y = c.points[s] + noise;
        double max_l = -HUGE_VAL;
        for (int m = 0; m < M; ++m) {
            l[m] = -h_norm2 * std::norm(y - c.points[m]);
            max_l = std::max(max_l, l[m]);
        }
        double sum = 0.0;
        for (int m = 0; m < M; ++m) sum += std::exp(l[m] - max_l);
        acc += std::log2(sum) + (max_l - l[s]) * 1.4426950408889634; // log2(e)
    }
    return std::log2(static_cast<double>(M)) - acc / static_cast<double>(samples);
}

} // namespace

RateResult achievable_rate(const ExperimentConfig& cfg_in)
{
    const auto t0 = std::chrono::steady_clock::now();
    const ExperimentConfig& cfg = cfg_in;
    CompiledExperiment coded = compile_experiment(cfg);
    if (static_cast<long>(coded.N) * cfg.B > 20)
        throw ConfigError("exact rate enumeration needs N*B <= 20 (2^" +
                          std::to_string(coded.N * cfg.B) +
                          " output patterns requested); reduce N or B");
    if (cfg.rate_channel_draws < 1) throw ConfigError("rate_channel_draws must be >= 1");

    // Baseline with round-robin single-component rules at the same size.
    ExperimentConfig naive_cfg = cfg;
    naive_cfg.code = CodeConfig{CodeFamily::Naive, {}, "", {}};
    naive_cfg.N = coded.N;
    CompiledExperiment naive = compile_experiment(naive_cfg);

    const long draws = cfg.rate_channel_draws;
    const int n_pts = static_cast<int>(cfg.snr_grid_db.size());

    struct Accum {
        double sum = 0.0, sum2 = 0.0;
        void add(double v)
        {
            sum += v;
            sum2 += v * v;
        }
        double mean(long n) const { return sum / static_cast<double>(n); }
        double std_err(long n) const
        {
            if (n < 2) return 0.0;
            const double m = mean(n);
            const double var = std::max(0.0, sum2 / static_cast<double>(n) - m * m);
            return std::sqrt(var / static_cast<double>(n - 1));
        }
    };

    RateResult result;
    for (int p = 0; p < n_pts; ++p) {
        const double rho = std::pow(10.0, cfg.snr_grid_db[p] / 10.0);
        const Constellation c = constellation_for(cfg, rho);
        Accum a_coded, a_naive, a_mrc;

        for (long d = 0; d < draws; ++d) {
            Rng rng = Rng::substream(cfg.master_seed,
                                     static_cast<uint64_t>(p) * static_cast<uint64_t>(draws) +
                                         static_cast<uint64_t>(d));
            const auto h = sample_channel(coded.channel, rng);

            const auto coded_tables = build_transition_model(h, c, coded.node_maps, coded.Q,
                                                             cfg.table_method, &rng, cfg.mc_samples);
            a_coded.add(mutual_information_exact(coded_tables, cfg.M));

            const auto naive_tables = build_transition_model(h, c, naive.node_maps, naive.Q,
                                                             cfg.table_method, &rng, cfg.mc_samples);
            a_naive.add(mutual_information_exact(naive_tables, cfg.M));

            if (cfg.rate_include_centralized) {
                double h_norm2 = 0.0;
                for (const cplx& hi : h) h_norm2 += std::norm(hi);
                a_mrc.add(h_norm2 > 0.0
                              ? mrc_rate_one_draw(c, h_norm2, cfg.rate_mrc_noise_samples, rng)
                              : 0.0);
            }
        }

        const double snr = cfg.snr_grid_db[p];
        result.points.push_back({"coded", snr, draws, a_coded.mean(draws), a_coded.std_err(draws)});
        result.points.push_back({"naive", snr, draws, a_naive.mean(draws), a_naive.std_err(draws)});
        if (cfg.rate_include_centralized)
            result.points.push_back(
                {"centralized", snr, draws, a_mrc.mean(draws), a_mrc.std_err(draws)});
    }

    result.meta.config_json = canonical_config_text(cfg);
    result.meta.config_hash = config_hash(cfg);
    result.meta.seed = cfg.master_seed;
    result.meta.d_min = coded.d_min;
    result.meta.bounds = coded.bounds;
    result.meta.scheme = scheme_string(cfg, coded);
    result.meta.channel = channel_string(cfg);
    result.meta.threads = 1;
    result.meta.notes = "naive baseline: round-robin single-component rules; fixed-gain phases "
                        "drawn uniformly per realization";
    for (const auto& w : coded.warnings) result.meta.notes += "; warning: " + w;
    result.meta.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

} // namespace cdd
