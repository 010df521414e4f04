#include "fmpkit/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <thread>

namespace fmpkit {

namespace {

using nlohmann::json;

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

double require_number(const json& j, const std::string& field, double lo, double hi,
                      bool lo_strict = false, bool hi_strict = false) {
    if (!j.is_number()) throw ConfigInvalid(field, "must be a number");
    const double v = j.get<double>();
    const bool lo_ok = lo_strict ? v > lo : v >= lo;
    const bool hi_ok = hi_strict ? v < hi : v <= hi;
    if (!lo_ok || !hi_ok) {
        throw ConfigInvalid(field, "must be in " + std::string(lo_strict ? "(" : "[") +
                                       fmt_double(lo) + ", " + fmt_double(hi) +
                                       (hi_strict ? ")" : "]"));
    }
    return v;
}

int require_int(const json& j, const std::string& field, int lo, int hi) {
    if (!j.is_number_integer()) throw ConfigInvalid(field, "must be an integer");
    const int v = j.get<int>();
    if (v < lo || v > hi) {
        throw ConfigInvalid(field, "must be in [" + std::to_string(lo) + ", " +
                                       std::to_string(hi) + "]");
    }
    return v;
}

std::vector<double> per_user_list(const json& j, const std::string& field, int users, double lo,
                                  double hi, bool lo_strict) {
    std::vector<double> out;
    if (j.is_array()) {
        if (static_cast<int>(j.size()) != users) {
            throw ConfigInvalid(field, "needs one entry per user");
        }
        for (size_t i = 0; i < j.size(); ++i) {
            out.push_back(require_number(j[i], field + "[" + std::to_string(i) + "]", lo, hi,
                                         lo_strict));
        }
    } else {
        out.assign(users, require_number(j, field, lo, hi, lo_strict));
    }
    return out;
}

const char* const kTopLevelKeys[] = {
    "problem",    "method",          "users",       "bs_antennas",   "user_antennas",
    "streams",    "power_dbw",       "static_power_w", "amp_inefficiency", "blocklength",
    "error_prob", "packet_bits",     "rate_floors", "weights",       "tradeoff_alpha",
    "mse_mode",   "ris",             "channel",     "trials",        "seed",
    "tolerance",  "max_iterations",  "output_dir"};

const char* const kRisKeys[] = {"enabled",      "elements",    "set",       "slack",
                                "min_modulus",  "sharpness",   "phase_offset", "phase_count",
                                "mode"};

const char* const kChannelKeys[] = {"rician_factor", "bandwidth_hz", "noise_density_dbm_hz",
                                    "pathloss_literal"};

void reject_unknown_keys(const json& j, std::span<const char* const> allowed,
                         const std::string& scope) {
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const char* k : allowed) {
            if (key == k) known = true;
        }
        if (!known) throw ConfigInvalid(scope.empty() ? key : scope + "." + key, "unknown key");
    }
}

json canonical_json(const ExperimentConfig& c) {
    json j;
    j["problem"] = to_string(c.problem);
    j["method"] = to_string(c.method);
    j["users"] = c.users;
    j["bs_antennas"] = c.bs_antennas;
    j["user_antennas"] = c.user_antennas;
    j["streams"] = c.streams;
    j["power_dbw"] = c.power_dbw;
    j["static_power_w"] = c.params.static_power;
    j["amp_inefficiency"] = c.params.amp_inefficiency;
    j["blocklength"] = c.params.blocklength;
    j["error_prob"] = c.params.error_prob;
    j["packet_bits"] = c.params.packet_bits;
    j["rate_floors"] = c.params.rate_floors;
    j["weights"] = c.params.user_weights;
    j["tradeoff_alpha"] = c.params.tradeoff_alpha;
    j["mse_mode"] = c.params.mse_mode == MseMode::literal ? "literal" : "signal_inclusive";
    j["ris"] = {{"enabled", c.ris_enabled},
                {"elements", c.ris.elements},
                {"set", to_string(c.ris.set)},
                {"slack", c.ris.relax_slack},
                {"min_modulus", c.ris.min_modulus},
                {"sharpness", c.ris.sharpness},
                {"phase_offset", c.ris.phase_offset},
                {"phase_count", c.ris.phase_count},
                {"mode", to_string(c.ris_mode)}};
    j["channel"] = {{"rician_factor", c.channel.rician_factor},
                    {"bandwidth_hz", c.channel.bandwidth_hz},
                    {"noise_density_dbm_hz", c.channel.noise_density_dbm_hz},
                    {"pathloss_literal", c.channel.pathloss.literal_power_scaling}};
    j["trials"] = c.trials;
    j["seed"] = c.seed;
    j["tolerance"] = c.tolerance;
    j["max_iterations"] = c.max_iterations;
    return j;
}

}  // namespace

std::string to_string(Method method) {
    switch (method) {
        case Method::framework: return "framework";
        case Method::gda: return "gda";
        case Method::dinkelbach: return "dinkelbach";
        case Method::both: return "both";
    }
    return "unknown";
}

std::optional<Method> parse_method(const std::string& name) {
    for (Method m : {Method::framework, Method::gda, Method::dinkelbach, Method::both}) {
        if (to_string(m) == name) return m;
    }
    return std::nullopt;
}

ExperimentConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigInvalid("<root>", std::string("not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigInvalid("<root>", "must be a JSON object");
    reject_unknown_keys(j, kTopLevelKeys, "");

    ExperimentConfig c;
    if (j.contains("problem")) {
        const auto kind = parse_problem_kind(j["problem"].get<std::string>());
        if (!kind) throw ConfigInvalid("problem", "unknown problem kind");
        c.problem = *kind;
    }
    if (j.contains("method")) {
        const auto method = parse_method(j["method"].get<std::string>());
        if (!method) throw ConfigInvalid("method", "unknown method");
        c.method = *method;
    }
    if (j.contains("users")) c.users = require_int(j["users"], "users", 1, 8);
    if (j.contains("bs_antennas")) c.bs_antennas = require_int(j["bs_antennas"], "bs_antennas", 1, 32);
    if (j.contains("user_antennas")) {
        c.user_antennas = require_int(j["user_antennas"], "user_antennas", 1, 32);
    }
    if (j.contains("streams")) c.streams = require_int(j["streams"], "streams", 1, 32);
    if (c.streams > std::min(c.bs_antennas, c.user_antennas)) {
        throw ConfigInvalid("streams", "must not exceed min(bs_antennas, user_antennas)");
    }
    if (j.contains("power_dbw")) {
        if (!j["power_dbw"].is_array() || j["power_dbw"].empty()) {
            throw ConfigInvalid("power_dbw", "must be a nonempty array of dB values");
        }
        c.power_dbw.clear();
        for (size_t i = 0; i < j["power_dbw"].size(); ++i) {
            c.power_dbw.push_back(
                require_number(j["power_dbw"][i], "power_dbw[" + std::to_string(i) + "]", -60.0,
                               60.0));
        }
    }
    if (j.contains("static_power_w")) {
        c.params.static_power = require_number(j["static_power_w"], "static_power_w", 0.0, 1e6,
                                               /*lo_strict=*/true);
    }
    if (j.contains("amp_inefficiency")) {
        c.params.amp_inefficiency =
            require_number(j["amp_inefficiency"], "amp_inefficiency", 1.0, 1e3);
    }
    if (j.contains("blocklength")) {
        c.params.blocklength = require_number(j["blocklength"], "blocklength", 1.0, 1e12);
    }
    if (j.contains("error_prob")) {
        c.params.error_prob = require_number(j["error_prob"], "error_prob", 0.0, 0.5,
                                             /*lo_strict=*/true, /*hi_strict=*/true);
    }
    c.params.packet_bits.assign(c.users, 256.0);
    if (j.contains("packet_bits")) {
        c.params.packet_bits =
            per_user_list(j["packet_bits"], "packet_bits", c.users, 0.0, 1e9, true);
    }
    c.params.rate_floors.assign(c.users, 0.01);
    if (j.contains("rate_floors")) {
        c.params.rate_floors = per_user_list(j["rate_floors"], "rate_floors", c.users, 0.0, 1e3,
                                             false);
    }
    c.params.user_weights.assign(c.users, 1.0);
    if (j.contains("weights")) {
        c.params.user_weights = per_user_list(j["weights"], "weights", c.users, 0.0, 1e6, false);
    }
    if (j.contains("tradeoff_alpha")) {
        c.params.tradeoff_alpha = require_number(j["tradeoff_alpha"], "tradeoff_alpha", 0.0, 1.0);
    }
    if (j.contains("mse_mode")) {
        const std::string mode = j["mse_mode"].get<std::string>();
        if (mode == "literal") {
            c.params.mse_mode = MseMode::literal;
        } else if (mode == "signal_inclusive") {
            c.params.mse_mode = MseMode::signal_inclusive;
        } else {
            throw ConfigInvalid("mse_mode", "must be literal or signal_inclusive");
        }
    }
    if (j.contains("ris")) {
        const json& r = j["ris"];
        if (!r.is_object()) throw ConfigInvalid("ris", "must be an object");
        reject_unknown_keys(r, kRisKeys, "ris");
        if (r.contains("enabled")) {
            if (!r["enabled"].is_boolean()) throw ConfigInvalid("ris.enabled", "must be boolean");
            c.ris_enabled = r["enabled"].get<bool>();
        }
        if (r.contains("elements")) c.ris.elements = require_int(r["elements"], "ris.elements", 1, 256);
        if (r.contains("set")) {
            const auto set = parse_ris_set(r["set"].get<std::string>());
            if (!set) throw ConfigInvalid("ris.set", "must be one of D, D1, D2, D3");
            c.ris.set = *set;
        }
        if (r.contains("slack")) {
            c.ris.relax_slack = require_number(r["slack"], "ris.slack", 0.0, 1.0, true, true);
        }
        if (r.contains("min_modulus")) {
            c.ris.min_modulus =
                require_number(r["min_modulus"], "ris.min_modulus", 0.0, 1.0, false, true);
        }
        if (r.contains("sharpness")) {
            c.ris.sharpness = require_number(r["sharpness"], "ris.sharpness", 0.0, 64.0);
        }
        if (r.contains("phase_offset")) {
            c.ris.phase_offset = require_number(r["phase_offset"], "ris.phase_offset", -10.0, 10.0);
        }
        if (r.contains("phase_count")) {
            c.ris.phase_count = require_int(r["phase_count"], "ris.phase_count", 1, 4096);
        }
        if (r.contains("mode")) {
            const auto mode = parse_ris_mode(r["mode"].get<std::string>());
            if (!mode) throw ConfigInvalid("ris.mode", "must be optimized, random or off");
            c.ris_mode = *mode;
        }
    }
    if (j.contains("channel")) {
        const json& ch = j["channel"];
        if (!ch.is_object()) throw ConfigInvalid("channel", "must be an object");
        reject_unknown_keys(ch, kChannelKeys, "channel");
        if (ch.contains("rician_factor")) {
            c.channel.rician_factor =
                require_number(ch["rician_factor"], "channel.rician_factor", 0.0, 1e12);
        }
        if (ch.contains("bandwidth_hz")) {
            c.channel.bandwidth_hz =
                require_number(ch["bandwidth_hz"], "channel.bandwidth_hz", 1.0, 1e12);
        }
        if (ch.contains("noise_density_dbm_hz")) {
            c.channel.noise_density_dbm_hz = require_number(
                ch["noise_density_dbm_hz"], "channel.noise_density_dbm_hz", -300.0, 0.0);
        }
        if (ch.contains("pathloss_literal")) {
            if (!ch["pathloss_literal"].is_boolean()) {
                throw ConfigInvalid("channel.pathloss_literal", "must be boolean");
            }
            c.channel.pathloss.literal_power_scaling = ch["pathloss_literal"].get<bool>();
        }
    }
    if (j.contains("trials")) c.trials = require_int(j["trials"], "trials", 1, 100000);
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer()) {
            throw ConfigInvalid("seed", "must be a nonnegative integer");
        }
        c.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("tolerance")) {
        c.tolerance = require_number(j["tolerance"], "tolerance", 0.0, 1.0, true, true);
    }
    if (j.contains("max_iterations")) {
        c.max_iterations = require_int(j["max_iterations"], "max_iterations", 1, 100000);
    }
    if (j.contains("output_dir")) c.output_dir = j["output_dir"].get<std::string>();

    c.channel.users = c.users;
    c.channel.bs_antennas = c.bs_antennas;
    c.channel.user_antennas = c.user_antennas;
    c.channel.ris_elements = c.ris.elements;

    if (c.method == Method::gda && c.problem != ProblemKind::maxmin_ee) {
        throw ConfigInvalid("method", "gda pairs with problem maxmin_ee");
    }
    if (c.method == Method::dinkelbach && c.problem != ProblemKind::see_gee) {
        throw ConfigInvalid("method", "dinkelbach pairs with problem see_gee");
    }
    if (c.method == Method::both && c.problem != ProblemKind::maxmin_ee &&
        c.problem != ProblemKind::see_gee) {
        throw ConfigInvalid("method", "both needs a problem with a baseline");
    }
    if (c.ris_enabled && c.method != Method::framework) {
        throw ConfigInvalid("ris.enabled", "baselines run without the reflecting surface");
    }
    if (c.problem == ProblemKind::wsum_sinr && c.streams != 1) {
        throw ConfigInvalid("streams", "wsum_sinr needs single-stream beamformers");
    }

    c.hash = fnv1a(canonical_json(c).dump());
    return c;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigInvalid("<file>", "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string config_hash_hex(const ExperimentConfig& config) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(config.hash));
    return buf;
}

void recompute_hash(ExperimentConfig& config) {
    config.hash = fnv1a(canonical_json(config).dump());
}

namespace {

struct Cell {
    int power_index;
    int trial;
    Method method;  // framework / gda / dinkelbach
};

ResultRecord run_cell(const ExperimentConfig& config, const Cell& cell) {
    ResultRecord rec;
    rec.trial = cell.trial;
    rec.power_index = cell.power_index;
    rec.power_dbw = config.power_dbw[cell.power_index];
    rec.method = to_string(cell.method);

    SystemParams params = config.params;
    params.total_power = std::pow(10.0, rec.power_dbw / 10.0);

    const ChannelSet channels = generate(config.channel, config.seed, cell.trial);
    NetworkState final_state = make_state(channels);

    if (cell.method == Method::framework) {
        if (config.ris_enabled) {
            AoOptions options;
            options.tolerance = config.tolerance;
            options.max_iterations = config.max_iterations;
            options.theta_seed = config.seed + 1000003ull * cell.trial;
            AoResult res = ao_driver(config.problem, config.ris, config.ris_mode, channels,
                                     params, config.streams, options);
            rec.objective = res.objective;
            rec.iterations = static_cast<int>(res.trace.size()) - 1;
            rec.w_updates = res.w_updates;
            rec.converged = res.converged;
            rec.trace = res.trace;
            final_state = (config.ris_mode == RisMode::off ? make_state(channels)
                                                           : make_ris_state(channels, res.theta))
                              .with_beamformers(res.beamformers);
        } else {
            MmOptions options;
            options.tolerance = config.tolerance;
            options.max_iterations = config.max_iterations;
            SolveSummary res =
                solve_problem(config.problem, final_state, params, config.streams, options);
            rec.objective = res.objective;
            rec.iterations = static_cast<int>(res.trace.iterations.size());
            rec.w_updates = res.trace.solve_count;
            rec.converged = res.trace.converged;
            rec.trace = res.trace.objectives;
            final_state = final_state.with_beamformers(res.beamformers);
        }
    } else {
        OptimizationContext ctx = beamformer_context(final_state, params);
        VarList init = ensure_feasible_init(config.problem, ctx,
                                            initial_beamformers(final_state, params,
                                                                config.streams));
        BaselineResult res =
            cell.method == Method::gda
                ? gda_maxmin_ee(ctx, init, config.tolerance, config.tolerance * 0.1,
                                config.max_iterations)
                : dinkelbach_gee(ctx, init, config.tolerance, config.tolerance * 0.1,
                                 config.max_iterations);
        rec.objective = res.objective;
        rec.iterations = static_cast<int>(res.trace.size()) - 1;
        rec.w_updates = res.updates;
        rec.converged = true;
        rec.trace = res.trace;
        final_state = final_state.with_beamformers(res.beamformers);
    }

    rec.metrics = snapshot(final_state, params);
    for (int k = 0; k < config.users; ++k) {
        rec.sum_rate += rec.metrics.rate[k];
        rec.sum_delay += rec.metrics.delay[k];
    }
    rec.min_ee = *std::min_element(rec.metrics.ee.begin(), rec.metrics.ee.end());
    rec.gee = rec.metrics.gee;
    return rec;
}

void write_results_csv(const ExperimentConfig& config,
                       const std::vector<ResultRecord>& records, std::ostream& os) {
    os << "config_hash,problem,method,trial,power_dbw,status,objective,iterations,w_updates,"
          "converged,sum_rate,sum_delay,min_ee,gee";
    for (int k = 0; k < config.users; ++k) {
        os << ",rate_u" << k << ",ee_u" << k << ",delay_u" << k << ",mse_u" << k;
    }
    os << ",trace_file,error\n";
    for (const auto& r : records) {
        os << config_hash_hex(config) << "," << to_string(config.problem) << "," << r.method << ","
           << r.trial << "," << fmt_double(r.power_dbw) << "," << (r.ok ? "ok" : "error") << ","
           << fmt_double(r.objective) << "," << r.iterations << "," << r.w_updates << ","
           << (r.converged ? 1 : 0) << "," << fmt_double(r.sum_rate) << ","
           << fmt_double(r.sum_delay) << "," << fmt_double(r.min_ee) << "," << fmt_double(r.gee);
        for (int k = 0; k < config.users; ++k) {
            if (r.ok) {
                os << "," << fmt_double(r.metrics.rate[k]) << "," << fmt_double(r.metrics.ee[k])
                   << "," << fmt_double(r.metrics.delay[k]) << ","
                   << fmt_double(r.metrics.mse[k]);
            } else {
                os << ",,,,";
            }
        }
        os << "," << r.trace_name << "," << r.error << "\n";
    }
}

void write_summary_csv(const ExperimentConfig& config,
                       const std::vector<ResultRecord>& records, std::ostream& os) {
    os << "config_hash,problem,method,power_dbw,trials,mean_objective,stderr_objective,"
          "mean_sum_rate,mean_sum_delay,mean_min_ee,mean_gee,mean_iterations,mean_w_updates\n";
    for (size_t p = 0; p < config.power_dbw.size(); ++p) {
        for (const char* method : {"framework", "gda", "dinkelbach"}) {
            std::vector<const ResultRecord*> group;
            for (const auto& r : records) {
                if (r.ok && r.power_index == static_cast<int>(p) && r.method == method) {
                    group.push_back(&r);
                }
            }
            if (group.empty()) continue;
            const double n = static_cast<double>(group.size());
            double mean = 0.0, mean_rate = 0.0, mean_delay = 0.0, mean_min_ee = 0.0,
                   mean_gee = 0.0, mean_iter = 0.0, mean_updates = 0.0;
            for (const auto* r : group) {
                mean += r->objective;
                mean_rate += r->sum_rate;
                mean_delay += r->sum_delay;
                mean_min_ee += r->min_ee;
                mean_gee += r->gee;
                mean_iter += r->iterations;
                mean_updates += r->w_updates;
            }
            mean /= n;
            mean_rate /= n;
            mean_delay /= n;
            mean_min_ee /= n;
            mean_gee /= n;
            mean_iter /= n;
            mean_updates /= n;
            double var = 0.0;
            for (const auto* r : group) var += (r->objective - mean) * (r->objective - mean);
            const double stderr_obj = group.size() > 1 ? std::sqrt(var / (n * (n - 1.0))) : 0.0;
            os << config_hash_hex(config) << "," << to_string(config.problem) << "," << method
               << "," << fmt_double(config.power_dbw[p]) << "," << group.size() << ","
               << fmt_double(mean) << "," << fmt_double(stderr_obj) << "," << fmt_double(mean_rate)
               << "," << fmt_double(mean_delay) << "," << fmt_double(mean_min_ee) << ","
               << fmt_double(mean_gee) << "," << fmt_double(mean_iter) << ","
               << fmt_double(mean_updates) << "\n";
        }
    }
}

}  // namespace

ExperimentOutcome run_experiment(const ExperimentConfig& config, const std::string& out_dir,
                                 int jobs) {
    namespace fs = std::filesystem;
    ExperimentOutcome outcome;
    const fs::path root = out_dir.empty() ? fs::path(config.output_dir) : fs::path(out_dir);
    outcome.trace_dir = root / "traces";
    fs::create_directories(outcome.trace_dir);

    std::vector<Cell> cells;
    for (size_t p = 0; p < config.power_dbw.size(); ++p) {
        for (int trial = 0; trial < config.trials; ++trial) {
            if (config.method == Method::framework || config.method == Method::both) {
                cells.push_back({static_cast<int>(p), trial, Method::framework});
            }
            if (config.method == Method::gda ||
                (config.method == Method::both && config.problem == ProblemKind::maxmin_ee)) {
                cells.push_back({static_cast<int>(p), trial, Method::gda});
            }
            if (config.method == Method::dinkelbach ||
                (config.method == Method::both && config.problem == ProblemKind::see_gee)) {
                cells.push_back({static_cast<int>(p), trial, Method::dinkelbach});
            }
        }
    }

    std::vector<ResultRecord> records(cells.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const size_t i = next.fetch_add(1);
            if (i >= cells.size()) break;
            try {
                records[i] = run_cell(config, cells[i]);
            } catch (const std::exception& e) {
                records[i].trial = cells[i].trial;
                records[i].power_index = cells[i].power_index;
                records[i].power_dbw = config.power_dbw[cells[i].power_index];
                records[i].method = to_string(cells[i].method);
                records[i].ok = false;
                records[i].error = e.what();
            }
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    // single collector: trace files and CSVs written in a fixed order
    for (auto& rec : records) {
        if (!rec.ok) {
            ++outcome.failures;
            continue;
        }
        rec.trace_name = config_hash_hex(config) + "_" + rec.method + "_p" +
                         std::to_string(rec.power_index) + "_t" + std::to_string(rec.trial) +
                         ".jsonl";
        std::ofstream trace(outcome.trace_dir / rec.trace_name);
        json meta = {{"run_id", rec.trace_name},
                     {"problem", to_string(config.problem)},
                     {"method", rec.method},
                     {"power_dbw", rec.power_dbw},
                     {"trial", rec.trial}};
        trace << meta.dump() << "\n";
        for (size_t i = 0; i < rec.trace.size(); ++i) {
            json line = {{"iter", i}, {"objective", rec.trace[i]}};
            trace << line.dump() << "\n";
        }
    }

    outcome.results_csv = root / "results.csv";
    outcome.summary_csv = root / "summary.csv";
    {
        std::ofstream os(outcome.results_csv);
        write_results_csv(config, records, os);
    }
    {
        std::ofstream os(outcome.summary_csv);
        write_summary_csv(config, records, os);
    }
    outcome.records = std::move(records);
    return outcome;
}

bool self_check_traces(const ExperimentConfig& config, const ExperimentOutcome& outcome) {
    const bool minimizing = direction_of(config.problem) == Direction::minimize;
    for (const auto& rec : outcome.records) {
        if (!rec.ok) continue;
        std::ifstream in(outcome.trace_dir / rec.trace_name);
        if (!in) return false;
        std::string line;
        std::getline(in, line);  // meta
        double prev = minimizing ? std::numeric_limits<double>::infinity()
                                 : -std::numeric_limits<double>::infinity();
        bool first = true;
        while (std::getline(in, line)) {
            const json j = json::parse(line);
            const double v = j["objective"].get<double>();
            if (!first) {
                if (minimizing && v > prev + 1e-9) return false;
                if (!minimizing && v < prev - 1e-9) return false;
            }
            prev = v;
            first = false;
        }
    }
    return true;
}

}  // namespace fmpkit
