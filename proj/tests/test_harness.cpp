#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "cdd/experiment_io.hpp"
#include "cdd/presets.hpp"

using namespace cdd;

namespace {

ExperimentConfig small_qpsk_sweep()
{
    ExperimentConfig cfg;
    cfg.constellation = "qpsk";
    cfg.M = 4;
    cfg.B = 1;
    cfg.N = 3;
    cfg.code.family = CodeFamily::SCRS;
    cfg.decoders = {DecoderKind::ML, DecoderKind::Hamming, DecoderKind::MRC,
                    DecoderKind::UncodedMajority};
    cfg.snr_grid_db = {5.0, 10.0};
    cfg.trials_per_point = 4000;
    cfg.master_seed = 321;
    return cfg;
}

} // namespace

TEST_CASE("config validation reports every problem at once")
{
    ExperimentConfig cfg;
    cfg.constellation = "qpsk";
    cfg.M = 8;              // wrong for qpsk, and log2(8)/2 is not integral
    cfg.B = 2;
    cfg.N = 3;
    cfg.code.family = CodeFamily::SCRS;
    cfg.decoders = {};
    cfg.snr_grid_db = {};
    cfg.trials_per_point = 0;

    try {
        run_ser_sweep(cfg);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("decoder") != std::string::npos);
        CHECK(msg.find("constellation") != std::string::npos); // M mismatch
        CHECK(msg.find("not an integer") != std::string::npos);
        CHECK(msg.find("snr_grid_db") != std::string::npos);
        CHECK(msg.find("trials_per_point") != std::string::npos);
    }
}

TEST_CASE("config validation catches scheme-specific problems")
{
    SUBCASE("simplex length mismatch")
    {
        ExperimentConfig cfg = small_qpsk_sweep();
        cfg.code.family = CodeFamily::Simplex;
        cfg.N = 5; // K=2, B=1 simplex has N=3
        CHECK_THROWS_AS(compile_experiment(cfg), ConfigError);
        cfg.N = 0;
        CHECK(compile_experiment(cfg).N == 3);
    }

    SUBCASE("subset ML cannot run on codeword-set rules")
    {
        ExperimentConfig cfg = small_qpsk_sweep();
        cfg.N = 10;
        cfg.code.family = CodeFamily::CodewordSet;
        cfg.code.columns = {6, 12, 4, 9, 12, 9, 12, 6, 1, 3};
        cfg.decoders = {DecoderKind::SubsetML};
        CHECK_THROWS_AS(compile_experiment(cfg), ConfigError);
        cfg.decoders = {DecoderKind::Hamming};
        CHECK(compile_experiment(cfg).d_min == 5);
    }

    SUBCASE("fixed gains must cover every node")
    {
        ExperimentConfig cfg = small_qpsk_sweep();
        cfg.channel_kind = ChannelModel::Kind::FixedGain;
        cfg.gains = {1.0, 1.0};
        CHECK_THROWS_AS(compile_experiment(cfg), ConfigError);
    }

    SUBCASE("custom zero column warns but compiles")
    {
        ExperimentConfig cfg = small_qpsk_sweep();
        cfg.code.family = CodeFamily::Custom;
        cfg.code.rows = {{1, 0, 0}, {0, 1, 0}};
        const auto ce = compile_experiment(cfg);
        CHECK(ce.warnings.size() == 1);
        CHECK(ce.d_min == 1); // the dead node contributes nothing
    }
}

TEST_CASE("compiled experiments expose the right code data")
{
    const auto ce = compile_experiment(small_qpsk_sweep());
    CHECK(ce.K == 2);
    CHECK(ce.N == 3);
    CHECK(ce.Q == 2);
    CHECK(ce.d_min == 2);
    CHECK(ce.codebook.size() == 4);
    CHECK(ce.node_maps.size() == 3);
    REQUIRE(ce.bounds.has_value());
    CHECK(ce.bounds->griesmer_equality);
}

TEST_CASE("disabling noise drives every decoder to zero errors")
{
    ExperimentConfig cfg = small_qpsk_sweep();
    cfg.disable_noise = true;
    cfg.trials_per_point = 500;
    const auto result = run_ser_sweep(cfg);
    for (const auto& p : result.points) {
        CHECK(p.errors == 0);
        CHECK(p.ser == 0.0);
        CHECK(p.ci_lo == 0.0);
    }
}

TEST_CASE("sweeps are reproducible and worker-count independent")
{
    ExperimentConfig cfg = small_qpsk_sweep();
    cfg.trials_per_point = 3000;

    cfg.threads = 1;
    const auto r1 = run_ser_sweep(cfg);
    cfg.threads = 3;
    const auto r3 = run_ser_sweep(cfg);

    REQUIRE(r1.points.size() == r3.points.size());
    for (size_t i = 0; i < r1.points.size(); ++i) {
        CHECK(r1.points[i].errors == r3.points[i].errors);
        CHECK(r1.points[i].ser == r3.points[i].ser);
    }
    CHECK(csv_body(sweep_csv(r1)) == csv_body(sweep_csv(r3)));

    // different seed, different outcome
    cfg.master_seed += 1;
    const auto r_other = run_ser_sweep(cfg);
    bool any_diff = false;
    for (size_t i = 0; i < r1.points.size(); ++i)
        any_diff |= r1.points[i].errors != r_other.points[i].errors;
    CHECK(any_diff);
}

TEST_CASE("wilson intervals bracket the estimate")
{
    ExperimentConfig cfg = small_qpsk_sweep();
    cfg.trials_per_point = 2000;
    const auto result = run_ser_sweep(cfg);
    for (const auto& p : result.points) {
        CHECK(p.ci_lo <= p.ser + 1e-12);
        CHECK(p.ser <= p.ci_hi + 1e-12);
        CHECK(p.ci_hi <= 1.0);
        CHECK(p.trials == 2000);
        CHECK(p.ser == doctest::Approx(double(p.errors) / p.trials));
    }
}

TEST_CASE("diversity estimation")
{
    SUBCASE("exact power law gives the exact slope")
    {
        std::vector<CurvePoint> curve;
        for (double snr = 5.0; snr <= 25.0; snr += 2.5) {
            const double rho = std::pow(10.0, snr / 10.0);
            curve.push_back({snr, std::pow(rho, -2.0), 100000});
        }
        const auto fit = estimate_diversity(curve);
        REQUIRE(fit.estimable);
        CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-9));
        // intercept invariance
        for (auto& pt : curve) pt.ser *= 37.5;
        const auto fit2 = estimate_diversity(curve);
        CHECK(fit2.slope == doctest::Approx(2.0).epsilon(1e-9));
    }

    SUBCASE("default window keeps the top 10 dB of qualifying points")
    {
        std::vector<CurvePoint> curve;
        for (double snr = 0.0; snr <= 30.0; snr += 2.0) {
            const double rho = std::pow(10.0, snr / 10.0);
            const long errors = snr >= 22.0 ? 50 : 5000; // top of the grid unreliable
            curve.push_back({snr, 0.5 * std::pow(rho, -1.0), errors});
        }
        const auto fit = estimate_diversity(curve);
        REQUIRE(fit.estimable);
        CHECK(fit.win_hi_db == doctest::Approx(20.0));
        CHECK(fit.win_lo_db == doctest::Approx(10.0));
        CHECK(fit.slope == doctest::Approx(1.0).epsilon(1e-9));
    }

    SUBCASE("not estimable cases name the reason")
    {
        CHECK_FALSE(estimate_diversity({}).estimable);

        std::vector<CurvePoint> few = {{10.0, 1e-2, 1000}, {12.0, 1e-2, 1000}};
        const auto fit = estimate_diversity(few);
        CHECK_FALSE(fit.estimable);
        CHECK(fit.reason.find("3") != std::string::npos);

        std::vector<CurvePoint> unreliable;
        for (double snr = 0.0; snr <= 20.0; snr += 2.0)
            unreliable.push_back({snr, 1e-3, 50});
        CHECK_FALSE(estimate_diversity(unreliable).estimable);
    }

    SUBCASE("explicit window restricts the fit")
    {
        std::vector<CurvePoint> curve;
        for (double snr = 0.0; snr <= 30.0; snr += 2.0) {
            const double rho = std::pow(10.0, snr / 10.0);
            // slope 1 below 14 dB, slope 3 above
            const double ser = snr < 14.0 ? 0.1 / rho : 0.1 * std::pow(10.0, 1.4 * 2) / std::pow(rho, 3.0);
            curve.push_back({snr, ser, 10000});
        }
        const auto lo = estimate_diversity(curve, {{0.0, 12.0}});
        const auto hi = estimate_diversity(curve, {{16.0, 30.0}});
        REQUIRE(lo.estimable);
        REQUIRE(hi.estimable);
        CHECK(lo.slope == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(hi.slope == doctest::Approx(3.0).epsilon(1e-6));
    }
}

TEST_CASE("exact enumeration oracles")
{
    // two-node toy: known tables, SER and mutual information by hand
    TransitionModel t;
    ProbTable a(2, 2), b(2, 2);
    a.at(0, 0) = 0.9;
    a.at(0, 1) = 0.1;
    a.at(1, 0) = 0.2;
    a.at(1, 1) = 0.8;
    b.at(0, 0) = 1.0;
    b.at(0, 1) = 0.0;
    b.at(1, 0) = 1.0;
    b.at(1, 1) = 0.0; // node b is useless
    t.node = {a, b};

    // ML on node a alone: decode 0 iff u_a = 0; error = (0.1 + 0.2)/2
    auto decode = [&](const std::vector<uint8_t>& u) { return u[0] == 0 ? 0 : 1; };
    CHECK(exact_ser(t, 2, decode) == doctest::Approx(0.15).epsilon(1e-12));

    // I(s; u) = I(s; u_a): binary channel with P(0|0)=0.9, P(0|1)=0.2
    const double p0 = 0.55, p1 = 0.45;
    const double expect = 0.5 * (0.9 * std::log2(0.9 / p0) + 0.1 * std::log2(0.1 / p1)) +
                          0.5 * (0.2 * std::log2(0.2 / p0) + 0.8 * std::log2(0.8 / p1));
    CHECK(mutual_information_exact(t, 2) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("achievable rate behaves at the extremes")
{
    ExperimentConfig cfg;
    cfg.constellation = "qpsk";
    cfg.M = 4;
    cfg.B = 1;
    cfg.N = 3;
    cfg.code.family = CodeFamily::Custom;
    cfg.code.rows = {{1, 0, 1}, {0, 1, 1}};
    cfg.channel_kind = ChannelModel::Kind::FixedGain;
    cfg.gains = {1.5, 1.5, 1.5};
    cfg.rate_channel_draws = 64;
    cfg.rate_mrc_noise_samples = 2000;
    cfg.master_seed = 9;

    SUBCASE("zero SNR carries zero information")
    {
        cfg.snr_grid_db = {-300.0};
        const auto r = achievable_rate(cfg);
        for (const auto& p : r.points) {
            CHECK(p.rate >= 0.0);
            CHECK(p.rate < 1e-3);
        }
    }

    SUBCASE("high SNR with good gains saturates near log2(M)")
    {
        cfg.snr_grid_db = {25.0};
        const auto r = achievable_rate(cfg);
        for (const auto& p : r.points) {
            if (p.receiver == "centralized") continue; // estimated, still near 2
            CHECK(p.rate == doctest::Approx(2.0).epsilon(1e-3));
        }
    }

    SUBCASE("rates respect 0 <= R <= min(log2 M, N*B)")
    {
        cfg.channel_kind = ChannelModel::Kind::IidRayleigh;
        cfg.gains.clear();
        cfg.snr_grid_db = {0.0, 10.0};
        cfg.rate_channel_draws = 200;
        const auto r = achievable_rate(cfg);
        for (const auto& p : r.points) {
            CHECK(p.rate >= 0.0);
            if (p.receiver != "centralized") CHECK(p.rate <= 2.0 + 1e-12);
        }
    }

    SUBCASE("output-space enumeration is size-guarded")
    {
        cfg.code.family = CodeFamily::SCRS;
        cfg.code.rows.clear();
        cfg.N = 21;
        cfg.channel_kind = ChannelModel::Kind::IidRayleigh;
        cfg.gains.clear();
        cfg.snr_grid_db = {0.0};
        CHECK_THROWS_AS(achievable_rate(cfg), ConfigError);
    }
}

TEST_CASE("sweep CSV round-trips through the curve reader")
{
    ExperimentConfig cfg = small_qpsk_sweep();
    cfg.trials_per_point = 1000;
    const auto result = run_ser_sweep(cfg);
    const std::string csv = sweep_csv(result);

    std::istringstream in(csv);
    const auto curve = curve_from_csv(in, "ml");
    REQUIRE(curve.size() == 2);
    const auto ml_points = curve_of(result, DecoderKind::ML);
    for (size_t i = 0; i < curve.size(); ++i) {
        CHECK(curve[i].snr_db == doctest::Approx(ml_points[i].snr_db));
        CHECK(curve[i].errors == ml_points[i].errors);
        CHECK(curve[i].ser == doctest::Approx(ml_points[i].ser).epsilon(1e-6));
    }

    std::istringstream in2(csv);
    CHECK(curve_from_csv(in2, "nonexistent").empty());
    std::istringstream junk("not,a,csv\n");
    CHECK_THROWS_AS(curve_from_csv(junk, "ml"), ConfigError);
}

TEST_CASE("config JSON round-trip and rejection of unknown keys")
{
    ExperimentConfig cfg = small_qpsk_sweep();
    cfg.code.family = CodeFamily::Custom;
    cfg.code.rows = {{1, 0, 1}, {0, 1, 0}};
    cfg.channel_kind = ChannelModel::Kind::FixedGain;
    cfg.gains = {1.5, 0.3, 1.5};

    const auto j = config_to_json(cfg);
    const auto back = config_from_json(j);
    CHECK(config_to_json(back) == j);
    CHECK(config_hash(back) == config_hash(cfg));

    auto bad = j;
    bad["trails_per_point"] = 10; // typo must not pass silently
    CHECK_THROWS_AS(config_from_json(bad), ConfigError);

    auto bad2 = j;
    bad2["decoders"] = {"ml", "bogus"};
    CHECK_THROWS_AS(config_from_json(bad2), ConfigError);
}

TEST_CASE("presets cover the documented names")
{
    for (const auto& name : preset_names()) {
        const auto runs = reproduce_preset(name);
        CHECK(!runs.empty());
        for (const auto& run : runs) {
            const bool for_sweep = run.kind == PresetRun::Kind::Ser;
            CHECK_NOTHROW(compile_experiment(run.config, for_sweep));
            if (!for_sweep) {
                const auto ce = compile_experiment(run.config);
                CHECK(ce.N * run.config.B <= 20); // exact rate enumeration stays feasible
            }
        }
    }
    CHECK_THROWS_AS(reproduce_preset("fig9"), ConfigError);
}

TEST_CASE("decoder ordering: ML at least as good as the alternatives")
{
    ExperimentConfig cfg;
    cfg.constellation = "qpsk";
    cfg.M = 4;
    cfg.B = 1;
    cfg.N = 6;
    cfg.code.family = CodeFamily::SCRS;
    cfg.decoders = {DecoderKind::ML, DecoderKind::SubsetML, DecoderKind::Hamming};
    cfg.snr_grid_db = {6.0};
    cfg.trials_per_point = 40000;
    cfg.master_seed = 777;
    const auto result = run_ser_sweep(cfg);

    const auto ml = curve_of(result, DecoderKind::ML).at(0);
    const auto sub = curve_of(result, DecoderKind::SubsetML).at(0);
    const auto ham = curve_of(result, DecoderKind::Hamming).at(0);
    REQUIRE(ml.errors >= 100);
    auto sigma = [&](const CurvePoint& p) {
        return std::sqrt(p.ser * (1.0 - p.ser) / cfg.trials_per_point);
    };
    CHECK(ml.ser <= ham.ser + 3.0 * (sigma(ml) + sigma(ham)));
    CHECK(ml.ser <= sub.ser + 3.0 * (sigma(ml) + sigma(sub)));
}
