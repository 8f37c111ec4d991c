// Command-line front end: build codes and bound reports, run SER sweeps and
// rate experiments from JSON configs, fit diversity slopes from CSVs, and
// regenerate the bundled experiment presets.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cdd/experiment_io.hpp"
#include "cdd/presets.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

void print_error(const std::string& kind, const std::string& what)
{
    nlohmann::json j{{"error", kind}, {"message", what}};
    std::cerr << j.dump() << "\n";
}

cdd::ExperimentConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw cdd::ConfigError("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw cdd::ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    return cdd::config_from_json(j);
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw cdd::Error("cannot write '" + path + "'");
    out << content;
}

std::vector<double> parse_snr_spec(const std::string& spec)
{
    // "lo:step:hi" or comma-separated values
    std::vector<double> out;
    if (spec.find(':') != std::string::npos) {
        double lo, step, hi;
        if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &lo, &step, &hi) != 3 || step <= 0)
            throw cdd::ConfigError("bad SNR spec '" + spec + "', expected lo:step:hi");
        for (double v = lo; v <= hi + 1e-9; v += step) out.push_back(v);
    } else {
        std::stringstream ss(spec);
        std::string tok;
        while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    }
    if (out.empty()) throw cdd::ConfigError("empty SNR spec");
    return out;
}

int cmd_code(const std::string& family, int K, int B, int N, unsigned poly,
             const std::string& matrix_file, const std::string& out_file, bool as_json)
{
    auto spec = poly == 0 ? cdd::FieldSpec::make(B) : cdd::FieldSpec::make(B, poly);

    std::optional<cdd::GeneratorMatrix> G;
    if (!matrix_file.empty()) {
        std::ifstream in(matrix_file);
        if (!in) throw cdd::ConfigError("cannot open matrix file '" + matrix_file + "'");
        G = cdd::GeneratorMatrix::from_text(in);
    } else if (family == "simplex") {
        G = cdd::simplex_generator(K, spec);
    } else if (family == "rm1") {
        G = cdd::rm1_generator(K, spec);
    } else if (family == "scrs") {
        if (N < 1) throw cdd::ConfigError("--family scrs needs --N");
        G = cdd::scrs_generator(N, K, spec);
    } else if (family == "naive") {
        if (N < 1) throw cdd::ConfigError("--family naive needs --N");
        G = cdd::naive_generator(N, K, spec);
    } else {
        throw cdd::ConfigError("unknown family '" + family +
                               "' (simplex, rm1, scrs, naive, or --matrix-file)");
    }

    if (G->has_zero_column())
        std::cerr << "warning: generator has an all-zero column; that node never carries "
                     "information\n";

    const cdd::Code code = cdd::build_code(*G);
    const auto report = cdd::griesmer_report(G->rows(), G->spec(), std::max(code.d_min, 1), G->cols());

    if (as_json) {
        nlohmann::json j;
        j["K"] = G->rows();
        j["N"] = G->cols();
        j["B"] = G->spec()->bits();
        j["poly"] = G->spec()->poly();
        j["d_min"] = code.d_min;
        j["generator"] = G->to_text();
        j["bounds"] = cdd::bound_report_json(report);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << G->to_text();
        std::cout << "d_min " << code.d_min << "\n";
        std::cout << cdd::bound_report_text(report);
    }
    if (!out_file.empty()) write_file(out_file, G->to_text());
    return kExitOk;
}

int cmd_ser(cdd::ExperimentConfig cfg, const std::string& out_file, bool as_json)
{
    const cdd::SweepResult result = cdd::run_ser_sweep(cfg);
    const std::string csv = cdd::sweep_csv(result);
    if (!out_file.empty())
        write_file(out_file, csv);
    else if (!as_json)
        std::cout << csv;
    if (as_json) std::cout << cdd::sweep_json(result).dump(2) << "\n";
    return kExitOk;
}

int cmd_rate(cdd::ExperimentConfig cfg, const std::string& out_file, bool as_json)
{
    const cdd::RateResult result = cdd::achievable_rate(cfg);
    const std::string csv = cdd::rate_csv(result);
    if (!out_file.empty())
        write_file(out_file, csv);
    else if (!as_json)
        std::cout << csv;
    if (as_json) std::cout << cdd::rate_json(result).dump(2) << "\n";
    return kExitOk;
}

int cmd_diversity(const std::string& csv_file, const std::string& decoder, double win_lo,
                  double win_hi, long min_errors, bool as_json)
{
    std::ifstream in(csv_file);
    if (!in) throw cdd::ConfigError("cannot open CSV file '" + csv_file + "'");
    const auto curve = cdd::curve_from_csv(in, decoder);
    if (curve.empty())
        throw cdd::ConfigError("CSV has no rows for decoder '" + decoder + "'");

    std::optional<std::pair<double, double>> window;
    if (win_lo <= win_hi && (win_lo != 0.0 || win_hi != 0.0)) window = {{win_lo, win_hi}};
    const auto fit = cdd::estimate_diversity(curve, window, min_errors);

    if (as_json) {
        std::cout << cdd::diversity_json(fit).dump(2) << "\n";
    } else if (fit.estimable) {
        std::printf("slope %.3f +/- %.3f over %.1f..%.1f dB (%d points)\n", fit.slope, fit.std_err,
                    fit.win_lo_db, fit.win_hi_db, fit.points_used);
    } else {
        std::cout << "not estimable: " << fit.reason << "\n";
    }
    return kExitOk;
}

int cmd_reproduce(const std::string& name, const std::string& out_dir, long trials, int threads,
                  uint64_t seed, bool has_seed)
{
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    for (auto run : cdd::reproduce_preset(name)) {
        if (trials > 0) run.config.trials_per_point = trials;
        if (threads >= 0) run.config.threads = threads;
        if (has_seed) run.config.master_seed = seed;

        const std::string stem = name + (run.variant.empty() ? "" : "_" + run.variant);
        const std::string path = (fs::path(out_dir) / (stem + ".csv")).string();

        if (run.kind == cdd::PresetRun::Kind::Ser) {
            const auto result = cdd::run_ser_sweep(run.config);
            write_file(path, cdd::sweep_csv(result));
            std::cout << stem << ": " << path << "  (d_min " << result.meta.d_min << ")\n";
            for (cdd::DecoderKind d : run.config.decoders) {
                const auto fit = cdd::estimate_diversity(cdd::curve_of(result, d));
                if (fit.estimable)
                    std::printf("  %-17s slope %.2f +/- %.2f over %.1f..%.1f dB\n",
                                cdd::to_string(d).c_str(), fit.slope, fit.std_err, fit.win_lo_db,
                                fit.win_hi_db);
                else
                    std::printf("  %-17s slope not estimable (%s)\n", cdd::to_string(d).c_str(),
                                fit.reason.c_str());
            }
        } else {
            const auto result = cdd::achievable_rate(run.config);
            write_file(path, cdd::rate_csv(result));
            std::cout << stem << ": " << path << "\n";
        }
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"coded distributed diversity reception simulator"};
    app.require_subcommand(1);

    // code
    auto* code = app.add_subcommand("code", "build a generator matrix and its bound report");
    std::string family = "scrs", matrix_file, code_out;
    int K = 2, B = 1, N = 0;
    unsigned poly = 0;
    bool code_json = false;
    code->add_option("--family", family, "simplex | rm1 | scrs | naive");
    code->add_option("--K", K, "message length over GF(2^B)");
    code->add_option("--B", B, "bits per node output");
    code->add_option("--N", N, "number of receive nodes (scrs/naive)");
    code->add_option("--poly", poly, "primitive polynomial bitmask (default per B)");
    code->add_option("--matrix-file", matrix_file, "analyze an existing generator text file");
    code->add_option("--out", code_out, "write the generator text here");
    code->add_flag("--json", code_json, "machine-readable output");

    // shared sweep options
    std::string config_path, out_file, snr_spec;
    long trials = 0;
    int threads = -1;
    uint64_t seed = 0;
    bool ser_json = false, rate_json_flag = false;

    auto* ser = app.add_subcommand("ser", "run a symbol-error-rate sweep");
    ser->add_option("--config", config_path, "JSON experiment config")->required();
    ser->add_option("--out", out_file, "CSV output path (default stdout)");
    auto* ser_trials = ser->add_option("--trials", trials, "override trials per SNR point");
    ser->add_option("--threads", threads, "override worker count (0 = hardware)");
    auto* ser_seed = ser->add_option("--seed", seed, "override master seed");
    ser->add_option("--snr", snr_spec, "override grid: lo:step:hi or v1,v2,...");
    ser->add_flag("--json", ser_json, "also print the JSON mirror");

    auto* rate = app.add_subcommand("rate", "estimate achievable rates");
    rate->add_option("--config", config_path, "JSON experiment config")->required();
    rate->add_option("--out", out_file, "CSV output path (default stdout)");
    auto* rate_draws = rate->add_option("--draws", trials, "override channel draws");
    rate->add_option("--threads", threads, "override worker count");
    auto* rate_seed = rate->add_option("--seed", seed, "override master seed");
    rate->add_option("--snr", snr_spec, "override grid: lo:step:hi or v1,v2,...");
    rate->add_flag("--json", rate_json_flag, "also print the JSON mirror");

    auto* div = app.add_subcommand("diversity", "fit a diversity slope from a sweep CSV");
    std::string csv_file, decoder = "ml";
    double win_lo = 0.0, win_hi = 0.0;
    long min_errors = 100;
    bool div_json = false;
    div->add_option("--csv", csv_file, "sweep CSV produced by 'ser'")->required();
    div->add_option("--decoder", decoder, "curve to fit (default ml)");
    div->add_option("--window-lo", win_lo, "window low edge in dB");
    div->add_option("--window-hi", win_hi, "window high edge in dB");
    div->add_option("--min-errors", min_errors, "reliability cutoff per point (default 100)");
    div->add_flag("--json", div_json, "machine-readable output");

    auto* rep = app.add_subcommand("reproduce", "run a bundled experiment preset");
    std::string preset, out_dir = ".";
    rep->add_option("preset", preset, "one of: motivating fig2 fig3 fig4a fig4b fig5a fig5b")
        ->required();
    rep->add_option("--out", out_dir, "output directory (default .)");
    rep->add_option("--trials", trials, "override trials per SNR point");
    rep->add_option("--threads", threads, "override worker count");
    auto* rep_seed = rep->add_option("--seed", seed, "override master seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        print_error("cli", e.what());
        return kExitConfig;
    }

    try {
        if (code->parsed())
            return cmd_code(family, K, B, N, poly, matrix_file, code_out, code_json);
        if (ser->parsed()) {
            auto cfg = load_config(config_path);
            if (!ser_trials->empty()) cfg.trials_per_point = trials;
            if (threads >= 0) cfg.threads = threads;
            if (!ser_seed->empty()) cfg.master_seed = seed;
            if (!snr_spec.empty()) cfg.snr_grid_db = parse_snr_spec(snr_spec);
            return cmd_ser(cfg, out_file, ser_json);
        }
        if (rate->parsed()) {
            auto cfg = load_config(config_path);
            if (!rate_draws->empty()) cfg.rate_channel_draws = trials;
            if (threads >= 0) cfg.threads = threads;
            if (!rate_seed->empty()) cfg.master_seed = seed;
            if (!snr_spec.empty()) cfg.snr_grid_db = parse_snr_spec(snr_spec);
            return cmd_rate(cfg, out_file, rate_json_flag);
        }
        if (div->parsed())
            return cmd_diversity(csv_file, decoder, win_lo, win_hi, min_errors, div_json);
        if (rep->parsed())
            return cmd_reproduce(preset, out_dir, trials, threads, seed, !rep_seed->empty());
    } catch (const cdd::ConfigError& e) {
        print_error("config", e.what());
        return kExitConfig;
    } catch (const cdd::ConstructionError& e) {
        print_error("config", e.what());
        return kExitConfig;
    } catch (const cdd::Error& e) {
        print_error("runtime", e.what());
        return kExitRuntime;
    } catch (const std::exception& e) {
        print_error("runtime", e.what());
        return kExitRuntime;
    }
    return kExitOk;
}
