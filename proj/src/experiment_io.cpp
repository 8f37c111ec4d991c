#include "cdd/experiment_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <istream>
#include <set>
#include <sstream>

namespace cdd {

using nlohmann::json;

namespace {

std::string channel_kind_name(ChannelModel::Kind k)
{
    return k == ChannelModel::Kind::IidRayleigh ? "iid_rayleigh" : "fixed_gain";
}

std::string table_method_name(TableMethod m)
{
    switch (m) {
    case TableMethod::Auto: return "auto";
    case TableMethod::Analytic: return "analytic";
    case TableMethod::MonteCarlo: return "monte_carlo";
    }
    return "?";
}

[[noreturn]] void bad(const std::string& msg) { throw ConfigError("config: " + msg); }

template <typename T>
T get_or(const json& j, const char* key, T fallback)
{
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        bad(std::string("key '") + key + "' has the wrong type");
    }
}

} // namespace

ExperimentConfig config_from_json(const json& j)
{
    if (!j.is_object()) bad("top level must be an object");

    static const std::set<std::string> known = {
        "constellation", "M", "B", "N", "poly", "code", "channel", "decoders", "snr_grid_db",
        "trials_per_point", "master_seed", "mc_samples", "table_method", "threads",
        "disable_noise", "rate", "custom_points"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key())) bad("unknown key '" + it.key() + "'");

    ExperimentConfig cfg;
    cfg.constellation = get_or<std::string>(j, "constellation", cfg.constellation);
    cfg.M = get_or<int>(j, "M", cfg.M);
    cfg.B = get_or<int>(j, "B", cfg.B);
    cfg.N = get_or<int>(j, "N", cfg.N);
    cfg.poly = get_or<unsigned>(j, "poly", cfg.poly);

    if (j.contains("code")) {
        const json& jc = j.at("code");
        if (!jc.is_object() || !jc.contains("family")) bad("'code' must be an object with a 'family'");
        const auto fam = code_family_from_string(jc.at("family").get<std::string>());
        if (!fam) bad("unknown code family '" + jc.at("family").get<std::string>() + "'");
        cfg.code.family = *fam;
        cfg.code.file = get_or<std::string>(jc, "file", "");
        if (jc.contains("rows")) cfg.code.rows = jc.at("rows").get<std::vector<std::vector<int>>>();
        if (jc.contains("columns"))
            cfg.code.columns = jc.at("columns").get<std::vector<uint32_t>>();
    }

    if (j.contains("channel")) {
        const json& jch = j.at("channel");
        const std::string kind = get_or<std::string>(jch, "kind", "iid_rayleigh");
        if (kind == "iid_rayleigh") {
            cfg.channel_kind = ChannelModel::Kind::IidRayleigh;
        } else if (kind == "fixed_gain") {
            cfg.channel_kind = ChannelModel::Kind::FixedGain;
            cfg.gains = get_or<std::vector<double>>(jch, "gains", {});
        } else {
            bad("unknown channel kind '" + kind + "'");
        }
    }

    if (j.contains("decoders")) {
        for (const auto& name : j.at("decoders")) {
            const auto d = decoder_from_string(name.get<std::string>());
            if (!d) bad("unknown decoder '" + name.get<std::string>() + "'");
            cfg.decoders.push_back(*d);
        }
    }

    cfg.snr_grid_db = get_or<std::vector<double>>(j, "snr_grid_db", {});
    cfg.trials_per_point = get_or<long>(j, "trials_per_point", cfg.trials_per_point);
    cfg.master_seed = get_or<uint64_t>(j, "master_seed", cfg.master_seed);
    cfg.mc_samples = get_or<long>(j, "mc_samples", cfg.mc_samples);
    cfg.threads = get_or<int>(j, "threads", cfg.threads);
    cfg.disable_noise = get_or<bool>(j, "disable_noise", cfg.disable_noise);

    if (j.contains("table_method")) {
        const std::string m = j.at("table_method").get<std::string>();
        if (m == "auto")
            cfg.table_method = TableMethod::Auto;
        else if (m == "analytic")
            cfg.table_method = TableMethod::Analytic;
        else if (m == "monte_carlo")
            cfg.table_method = TableMethod::MonteCarlo;
        else
            bad("unknown table_method '" + m + "'");
    }

    if (j.contains("rate")) {
        const json& jr = j.at("rate");
        cfg.rate_channel_draws = get_or<long>(jr, "channel_draws", cfg.rate_channel_draws);
        cfg.rate_mrc_noise_samples =
            get_or<long>(jr, "mrc_noise_samples", cfg.rate_mrc_noise_samples);
        cfg.rate_include_centralized =
            get_or<bool>(jr, "include_centralized", cfg.rate_include_centralized);
    }

    if (j.contains("custom_points")) {
        for (const auto& jp : j.at("custom_points")) {
            LabeledPoint p;
            p.re = jp.at("re").get<double>();
            p.im = jp.at("im").get<double>();
            p.label = jp.at("label").get<std::vector<uint8_t>>();
            cfg.custom_points.push_back(std::move(p));
        }
    }
    return cfg;
}

json config_to_json(const ExperimentConfig& cfg)
{
    json j;
    j["constellation"] = cfg.constellation;
    j["M"] = cfg.M;
    j["B"] = cfg.B;
    j["N"] = cfg.N;
    j["poly"] = cfg.poly;
    json jc;
    jc["family"] = to_string(cfg.code.family);
    if (!cfg.code.rows.empty()) jc["rows"] = cfg.code.rows;
    if (!cfg.code.file.empty()) jc["file"] = cfg.code.file;
    if (!cfg.code.columns.empty()) jc["columns"] = cfg.code.columns;
    j["code"] = jc;
    json jch;
    jch["kind"] = channel_kind_name(cfg.channel_kind);
    if (cfg.channel_kind == ChannelModel::Kind::FixedGain) jch["gains"] = cfg.gains;
    j["channel"] = jch;
    std::vector<std::string> decs;
    for (DecoderKind d : cfg.decoders) decs.push_back(to_string(d));
    j["decoders"] = decs;
    j["snr_grid_db"] = cfg.snr_grid_db;
    j["trials_per_point"] = cfg.trials_per_point;
    j["master_seed"] = cfg.master_seed;
    j["mc_samples"] = cfg.mc_samples;
    j["table_method"] = table_method_name(cfg.table_method);
    j["threads"] = cfg.threads;
    j["disable_noise"] = cfg.disable_noise;
    json jr;
    jr["channel_draws"] = cfg.rate_channel_draws;
    jr["mrc_noise_samples"] = cfg.rate_mrc_noise_samples;
    jr["include_centralized"] = cfg.rate_include_centralized;
    j["rate"] = jr;
    if (!cfg.custom_points.empty()) {
        json pts = json::array();
        for (const auto& p : cfg.custom_points)
            pts.push_back({{"re", p.re}, {"im", p.im}, {"label", p.label}});
        j["custom_points"] = pts;
    }
    return j;
}

std::string canonical_config_text(const ExperimentConfig& cfg) { return config_to_json(cfg).dump(); }

uint64_t config_hash(const ExperimentConfig& cfg)
{
    const std::string text = canonical_config_text(cfg);
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

namespace {

void append_metadata(std::string& out, const RunMetadata& meta)
{
    char buf[256];
    out += "# metadata:\n";
    std::snprintf(buf, sizeof(buf), "# config_hash: %016" PRIx64 "\n", meta.config_hash);
    out += buf;
    std::snprintf(buf, sizeof(buf), "# seed: %" PRIu64 "\n", meta.seed);
    out += buf;
    out += "# scheme: " + meta.scheme + "\n";
    out += "# channel: " + meta.channel + "\n";
    std::snprintf(buf, sizeof(buf), "# d_min: %d\n", meta.d_min);
    out += buf;
    if (meta.bounds) {
        std::snprintf(buf, sizeof(buf),
                      "# griesmer_min_length: %lld (equality %s, max d at this N: %d)\n",
                      static_cast<long long>(meta.bounds->griesmer_min_length),
                      meta.bounds->griesmer_equality ? "yes" : "no",
                      meta.bounds->max_dmin_at_length);
        out += buf;
    }
    if (!meta.notes.empty()) out += "# notes: " + meta.notes + "\n";
    std::snprintf(buf, sizeof(buf), "# threads: %d\n", meta.threads);
    out += buf;
    std::snprintf(buf, sizeof(buf), "# wall_ms: %.1f\n", meta.wall_ms);
    out += buf;
}

} // namespace

std::string sweep_csv(const SweepResult& result)
{
    std::string out;
    append_metadata(out, result.meta);
    out += "decoder,snr_db,trials,errors,ser,ci_lo,ci_hi\n";
    char buf[256];
    for (const auto& p : result.points) {
        std::snprintf(buf, sizeof(buf), "%s,%.4f,%ld,%ld,%.6e,%.6e,%.6e\n",
                      to_string(p.decoder).c_str(), p.snr_db, p.trials, p.errors, p.ser, p.ci_lo,
                      p.ci_hi);
        out += buf;
    }
    return out;
}

std::string rate_csv(const RateResult& result)
{
    std::string out;
    append_metadata(out, result.meta);
    out += "receiver,snr_db,draws,rate_bits,std_err\n";
    char buf[256];
    for (const auto& p : result.points) {
        std::snprintf(buf, sizeof(buf), "%s,%.4f,%ld,%.8f,%.3e\n", p.receiver.c_str(), p.snr_db,
                      p.draws, p.rate, p.std_err);
        out += buf;
    }
    return out;
}

std::vector<CurvePoint> curve_from_csv(std::istream& in, const std::string& decoder)
{
    std::vector<CurvePoint> curve;
    std::string line;
    bool saw_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!saw_header && line.rfind("decoder,", 0) == 0) {
            saw_header = true;
            continue;
        }
        std::istringstream row(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(row, field, ',')) fields.push_back(field);
        if (fields.size() != 7) throw ConfigError("CSV row with " + std::to_string(fields.size()) +
                                                  " fields, expected 7: " + line);
        if (fields[0] != decoder) continue;
        CurvePoint pt;
        pt.snr_db = std::stod(fields[1]);
        pt.errors = std::stol(fields[3]);
        pt.ser = std::stod(fields[4]);
        curve.push_back(pt);
    }
    if (!saw_header) throw ConfigError("not a sweep CSV: missing header row");
    return curve;
}

std::string csv_body(const std::string& csv)
{
    std::string body;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '#') continue;
        body += line;
        body += '\n';
    }
    return body;
}

std::string bound_report_text(const BoundReport& rep)
{
    std::ostringstream out;
    out << "code parameters        K=" << rep.K << " B=" << rep.B << " N=" << rep.N
        << " d=" << rep.d << "\n";
    out << "griesmer min length    " << rep.griesmer_min_length << "\n";
    out << "griesmer equality      " << (rep.griesmer_equality ? "true" : "false") << "\n";
    out << "max d at this length   " << rep.max_dmin_at_length
        << (rep.d == rep.max_dmin_at_length ? "  (achieved)" : "") << "\n";
    out << "sphere packing         " << (rep.sphere_packing_ok ? "satisfied" : "violated") << "\n";
    out << "gilbert-varshamov      " << (rep.gilbert_varshamov_exists ? "existence guaranteed"
                                                                      : "no guarantee") << "\n";
    out << "linear-relaxation cap  d <= " << rep.dmin_upper_bound.num << "/"
        << rep.dmin_upper_bound.den << " = " << rep.dmin_upper_bound.value() << "\n";
    for (const auto& note : rep.notes) out << "note: " << note << "\n";
    return out.str();
}

json bound_report_json(const BoundReport& rep)
{
    json j;
    j["K"] = rep.K;
    j["B"] = rep.B;
    j["N"] = rep.N;
    j["d"] = rep.d;
    j["griesmer_min_length"] = rep.griesmer_min_length;
    j["griesmer_equality"] = rep.griesmer_equality;
    j["max_dmin_at_length"] = rep.max_dmin_at_length;
    j["sphere_packing_ok"] = rep.sphere_packing_ok;
    j["gilbert_varshamov_exists"] = rep.gilbert_varshamov_exists;
    j["dmin_upper_bound"] = {{"num", rep.dmin_upper_bound.num},
                             {"den", rep.dmin_upper_bound.den},
                             {"value", rep.dmin_upper_bound.value()}};
    j["notes"] = rep.notes;
    return j;
}

namespace {

json metadata_json(const RunMetadata& meta)
{
    json j;
    if (!meta.config_json.empty()) j["config"] = json::parse(meta.config_json);
    j["config_hash"] = meta.config_hash;
    j["seed"] = meta.seed;
    j["d_min"] = meta.d_min;
    j["scheme"] = meta.scheme;
    j["channel"] = meta.channel;
    j["notes"] = meta.notes;
    j["threads"] = meta.threads;
    j["wall_ms"] = meta.wall_ms;
    if (meta.bounds) j["bounds"] = bound_report_json(*meta.bounds);
    return j;
}

} // namespace

json sweep_json(const SweepResult& result)
{
    json pts = json::array();
    for (const auto& p : result.points)
        pts.push_back({{"decoder", to_string(p.decoder)},
                       {"snr_db", p.snr_db},
                       {"trials", p.trials},
                       {"errors", p.errors},
                       {"ser", p.ser},
                       {"ci_lo", p.ci_lo},
                       {"ci_hi", p.ci_hi}});
    return json{{"meta", metadata_json(result.meta)}, {"points", pts}};
}

json rate_json(const RateResult& result)
{
    json pts = json::array();
    for (const auto& p : result.points)
        pts.push_back({{"receiver", p.receiver},
                       {"snr_db", p.snr_db},
                       {"draws", p.draws},
                       {"rate_bits", p.rate},
                       {"std_err", p.std_err}});
    return json{{"meta", metadata_json(result.meta)}, {"points", pts}};
}

json diversity_json(const DiversityFit& fit)
{
    json j;
    j["estimable"] = fit.estimable;
    if (fit.estimable) {
        j["slope"] = fit.slope;
        j["std_err"] = fit.std_err;
        j["window_db"] = {fit.win_lo_db, fit.win_hi_db};
        j["points_used"] = fit.points_used;
    } else {
        j["reason"] = fit.reason;
    }
    return j;
}

} // namespace cdd
