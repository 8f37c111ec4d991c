#include "cdd/presets.hpp"

namespace cdd {

namespace {

std::vector<double> grid(double lo, double step, double hi)
{
    std::vector<double> g;
    for (double v = lo; v <= hi + 1e-9; v += step) g.push_back(v);
    return g;
}

// Three-node single-bit QPSK rules: per-component detection everywhere
// versus the scheme whose third node watches both components.
const std::vector<std::vector<int>> kNaive3 = {{1, 0, 1}, {0, 1, 0}};
const std::vector<std::vector<int>> kSmart3 = {{1, 0, 1}, {0, 1, 1}};

// Reference single-bit codeword-set rules for QPSK with ten nodes.
const std::vector<uint32_t> kCodewordSet10 = {6, 12, 4, 9, 12, 9, 12, 6, 1, 3};

ExperimentConfig base_qpsk_b1()
{
    ExperimentConfig cfg;
    cfg.constellation = "qpsk";
    cfg.M = 4;
    cfg.B = 1;
    return cfg;
}

std::vector<PresetRun> motivating()
{
    std::vector<PresetRun> runs;
    for (const auto& [variant, rows] : {std::pair{"naive", kNaive3}, std::pair{"simplex", kSmart3}}) {
        ExperimentConfig cfg = base_qpsk_b1();
        cfg.N = 3;
        cfg.code = CodeConfig{CodeFamily::Custom, rows, "", {}};
        cfg.decoders = {DecoderKind::ML};
        cfg.snr_grid_db = grid(10.0, 2.5, 25.0);
        cfg.trials_per_point = 1000000;
        cfg.master_seed = 71001;
        runs.push_back({PresetRun::Kind::Ser, variant, cfg});
    }
    return runs;
}

std::vector<PresetRun> fig2()
{
    std::vector<PresetRun> runs;
    ExperimentConfig scrs = base_qpsk_b1();
    scrs.N = 10;
    scrs.code = CodeConfig{CodeFamily::SCRS, {}, "", {}};
    scrs.decoders = {DecoderKind::ML, DecoderKind::Hamming, DecoderKind::MRC,
                     DecoderKind::UncodedMajority};
    scrs.snr_grid_db = grid(0.0, 1.0, 10.0);
    scrs.trials_per_point = 1000000;
    scrs.master_seed = 72001;
    runs.push_back({PresetRun::Kind::Ser, "scrs", scrs});

    ExperimentConfig prior = base_qpsk_b1();
    prior.N = 10;
    prior.code = CodeConfig{CodeFamily::CodewordSet, {}, "", kCodewordSet10};
    prior.decoders = {DecoderKind::ML, DecoderKind::Hamming};
    prior.snr_grid_db = grid(0.0, 1.0, 10.0);
    prior.trials_per_point = 1000000;
    prior.master_seed = 72002;
    runs.push_back({PresetRun::Kind::Ser, "codeword_set", prior});
    return runs;
}

std::vector<PresetRun> fig3()
{
    // 8PSK, single-bit nodes, rule period 7; one N below, at and above a
    // whole number of rule groups.
    std::vector<PresetRun> runs;
    for (int N : {7, 14, 30}) {
        ExperimentConfig cfg;
        cfg.constellation = "8psk";
        cfg.M = 8;
        cfg.B = 1;
        cfg.N = N;
        cfg.code = CodeConfig{CodeFamily::SCRS, {}, "", {}};
        cfg.decoders = {DecoderKind::ML, DecoderKind::SubsetML};
        cfg.snr_grid_db = grid(0.0, 2.0, 16.0);
        cfg.trials_per_point = 100000;
        cfg.master_seed = 73000 + N;
        runs.push_back({PresetRun::Kind::Ser, "n" + std::to_string(N), cfg});
    }
    return runs;
}

std::vector<PresetRun> fig4a()
{
    std::vector<PresetRun> runs;
    for (int N : {7, 14, 21}) {
        ExperimentConfig cfg;
        cfg.constellation = "8psk";
        cfg.M = 8;
        cfg.B = 1;
        cfg.N = N;
        cfg.code = CodeConfig{CodeFamily::SCRS, {}, "", {}};
        cfg.decoders = {DecoderKind::ML, DecoderKind::Hamming};
        cfg.snr_grid_db = grid(0.0, 2.0, 16.0);
        cfg.trials_per_point = 100000;
        cfg.master_seed = 74000 + N;
        runs.push_back({PresetRun::Kind::Ser, "n" + std::to_string(N), cfg});
    }
    return runs;
}

std::vector<PresetRun> fig4b()
{
    std::vector<PresetRun> runs;
    for (int N : {5, 10, 20}) {
        ExperimentConfig cfg;
        cfg.constellation = "16qam";
        cfg.M = 16;
        cfg.B = 2;
        cfg.N = N;
        cfg.code = CodeConfig{CodeFamily::SCRS, {}, "", {}};
        cfg.decoders = {DecoderKind::ML, DecoderKind::Hamming};
        cfg.snr_grid_db = grid(0.0, 2.0, 18.0);
        cfg.trials_per_point = 100000;
        cfg.master_seed = 74500 + N;
        runs.push_back({PresetRun::Kind::Ser, "n" + std::to_string(N), cfg});
    }
    return runs;
}

std::vector<PresetRun> fig5(bool fixed)
{
    ExperimentConfig cfg = base_qpsk_b1();
    cfg.N = 3;
    cfg.code = CodeConfig{CodeFamily::Custom, kSmart3, "", {}};
    if (fixed) {
        cfg.channel_kind = ChannelModel::Kind::FixedGain;
        cfg.gains = {1.5, 0.3, 1.5};
    }
    cfg.snr_grid_db = grid(0.0, 2.0, 20.0);
    cfg.rate_channel_draws = 10000;
    cfg.rate_mrc_noise_samples = 20000;
    cfg.master_seed = fixed ? 75002 : 75001;
    return {{PresetRun::Kind::Rate, fixed ? "fixed_gain" : "rayleigh", cfg}};
}

} // namespace

std::vector<std::string> preset_names()
{
    return {"motivating", "fig2", "fig3", "fig4a", "fig4b", "fig5a", "fig5b"};
}

std::vector<PresetRun> reproduce_preset(const std::string& name)
{
    if (name == "motivating") return motivating();
    if (name == "fig2") return fig2();
    if (name == "fig3") return fig3();
    if (name == "fig4a") return fig4a();
    if (name == "fig4b") return fig4b();
    if (name == "fig5a") return fig5(false);
    if (name == "fig5b") return fig5(true);
    std::string known;
    for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
    throw ConfigError("unknown preset '" + name + "' (known: " + known + ")");
}

} // namespace cdd
