#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "smpath/besov.hpp"
#include "smpath/fourier.hpp"
#include "smpath/integrate.hpp"
#include "smpath/io.hpp"
#include "smpath/model.hpp"
#include "smpath/parallel.hpp"
#include "smpath/sampling.hpp"
#include "smpath/verify.hpp"

namespace smpath::experiment {

using nlohmann::json;

struct run_result {
    int exit_code = 0;
    std::vector<std::string> artifacts; // absolute or out-relative file paths
};

namespace detail {

inline void reject_unknown_keys(const json& obj, const std::vector<std::string>& allowed,
                                const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw std::invalid_argument("unknown key '" + key + "' in " + where);
    }
}

inline sm_model model_from_json(const json& cfg, double default_horizon) {
    if (!cfg.is_object()) throw std::invalid_argument("'model' must be an object");
    reject_unknown_keys(cfg, {"kind", "T", "K", "H"}, "model");
    const std::string kind = cfg.value("kind", "wiener");
    const double T = cfg.value("T", default_horizon);
    if (kind == "lebesgue") return sm_model::lebesgue(T);
    if (kind == "rademacher") return sm_model::rademacher(T, cfg.value("K", sm_model::default_truncation));
    if (kind == "wiener") return sm_model::wiener(T);
    if (kind == "fbm") {
        if (!cfg.contains("H")) throw std::invalid_argument("fbm model needs 'H'");
        return sm_model::fractional(T, cfg.at("H").get<double>());
    }
    if (kind == "sheet2d") return sm_model::sheet2d(T);
    throw std::invalid_argument("unknown model kind '" + kind + "'");
}

inline std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

/// Accumulates artifacts and finishes with a manifest that records the
/// effective config, its hash, and a checksum per artifact. Timestamps live
/// only in the manifest and are not part of any checksum.
class artifact_sink {
public:
    artifact_sink(std::filesystem::path dir, json config)
        : dir_(std::move(dir)), config_(std::move(config)) {
        std::filesystem::create_directories(dir_);
    }

    void write(const std::string& name, const std::string& bytes) {
        const auto path = dir_ / name;
        io::write_file(path.string(), bytes);
        entries_.push_back({{"file", name},
                            {"bytes", bytes.size()},
                            {"fnv1a64", io::fnv1a64_hex(bytes)}});
        files_.push_back(path.string());
    }

    std::vector<std::string> finish() {
        json manifest{{"command", config_.value("command", "")},
                      {"config", config_},
                      {"config_hash", io::fnv1a64_hex(config_.dump())},
                      {"seed", config_.value("seed", std::uint64_t{0})},
                      {"artifacts", entries_},
                      {"created_at", utc_timestamp()}};
        const auto path = dir_ / "manifest.json";
        io::write_file(path.string(), manifest.dump(2) + "\n");
        files_.push_back(path.string());
        return files_;
    }

private:
    std::filesystem::path dir_;
    json config_;
    json entries_ = json::array();
    std::vector<std::string> files_;
};

inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline run_result run_simulate(const json& cfg, artifact_sink& sink) {
    reject_unknown_keys(cfg, {"command", "model", "seed", "out", "threads", "grid",
                              "resolution", "dim"},
                        "simulate config");
    const auto model = model_from_json(cfg.value("model", json::object()), 1.0);
    const rng_stream stream{cfg.value("seed", std::uint64_t{0}), 0};
    const bool has_grid = cfg.contains("grid");
    const bool has_res = cfg.contains("resolution");
    if (has_grid == has_res)
        throw std::invalid_argument("simulate needs exactly one of 'grid' or 'resolution'");
    if (has_grid) {
        const auto path = sample_path(model, stream, cfg.at("grid").get<int>());
        sink.write("path.csv", io::path_csv(path));
    } else {
        const int default_dim = model.kind == sm_kind::brownian_sheet_2d ? 2 : 1;
        const auto field = sample_field(model, stream, cfg.value("dim", default_dim),
                                        cfg.at("resolution").get<int>());
        sink.write("field.csv", io::field_csv(field));
    }
    return {0, sink.finish()};
}

inline run_result run_besov(const json& cfg, artifact_sink& sink) {
    reject_unknown_keys(cfg, {"command", "model", "seed", "out", "threads", "input", "dim",
                              "resolution", "p", "q", "alpha", "levels", "direction"},
                        "besov config");
    field_sample field;
    if (cfg.contains("input")) {
        field = io::field_from_csv(io::read_file(cfg.at("input").get<std::string>()),
                                   cfg.value("dim", 1));
    } else if (cfg.contains("resolution")) {
        const auto model = model_from_json(cfg.value("model", json::object()), 1.0);
        const rng_stream stream{cfg.value("seed", std::uint64_t{0}), 0};
        const int default_dim = model.kind == sm_kind::brownian_sheet_2d ? 2 : 1;
        field = sample_field(model, stream, cfg.value("dim", default_dim),
                             cfg.at("resolution").get<int>());
    } else {
        throw std::invalid_argument("besov needs 'input' or a model 'resolution'");
    }

    besov_params params;
    params.p = cfg.value("p", 2.0);
    params.alpha = cfg.value("alpha", 0.5);
    params.direction = cfg.value("direction", 1);
    if (cfg.contains("levels")) {
        const auto lv = cfg.at("levels");
        if (!lv.is_array() || lv.size() != 2)
            throw std::invalid_argument("'levels' must be [min, max]");
        params.level_min = lv[0].get<int>();
        params.level_max = lv[1].get<int>();
    } else {
        params.level_min = std::min(3, field.depth);
        params.level_max = field.depth;
    }

    const auto sums = dyadic_level_sums(field, params);
    const auto membership = membership_diagnostic(sums);
    json report = io::besov_report_json(sums, membership);
    if (cfg.contains("q")) {
        const double q = cfg.at("q").get<double>();
        report["norm_estimate"] = besov_norm_estimate(field, params.p, q, params.alpha);
        report["norm_q"] = q;
    }
    sink.write("besov.json", report.dump(2) + "\n");
    return {0, sink.finish()};
}

inline run_result run_fourier(const json& cfg, artifact_sink& sink) {
    reject_unknown_keys(cfg, {"command", "model", "seed", "out", "threads", "K", "method",
                              "grid", "n_list", "interior_margin"},
                        "fourier config");
    const auto model = model_from_json(cfg.value("model", json{{"kind", "lebesgue"}}), two_pi);
    const rng_stream stream{cfg.value("seed", std::uint64_t{0}), 0};
    const int K = cfg.value("K", 64);
    const int grid = cfg.value("grid", 1 << 14);
    const std::string method = cfg.value("method", "parts");
    if (method != "parts" && method != "direct" && method != "both")
        throw std::invalid_argument("method must be parts, direct or both");

    const auto path = sample_path(model, stream, grid);
    fourier_coefficients main_coeffs;
    if (method == "direct") {
        main_coeffs = coefficients_direct(path, K);
        sink.write("coefficients.csv", io::coefficients_csv(main_coeffs));
    } else if (model.kind == sm_kind::rademacher_series) {
        // exact series route, tied to the same realization as the path
        const auto r = realize_rademacher(model, stream);
        main_coeffs = coefficients_by_parts(r, K, {}, path.descriptor());
        sink.write("coefficients.csv", io::coefficients_csv(main_coeffs));
    } else {
        main_coeffs = coefficients_by_parts(path, K);
        sink.write("coefficients.csv", io::coefficients_csv(main_coeffs));
    }
    if (method == "both")
        sink.write("coefficients_direct.csv", io::coefficients_csv(coefficients_direct(path, K)));

    if (cfg.contains("n_list")) {
        std::vector<int> orders = cfg.at("n_list").get<std::vector<int>>();
        const double margin = cfg.value("interior_margin", 0.5);
        const auto report = convergence_report(path, main_coeffs, orders, margin);
        sink.write("convergence.json", io::convergence_report_json(report).dump(2) + "\n");
    }
    return {0, sink.finish()};
}

inline run_result run_verify(const json& cfg, artifact_sink& sink) {
    reject_unknown_keys(cfg, {"command", "model", "seed", "out", "threads", "test",
                              "replicates", "grid", "m", "lambdas", "exact", "j_levels", "T1",
                              "epsilons", "k", "lambda", "integrand", "integrand_params"},
                        "verify config");
    if (!cfg.contains("test")) throw std::invalid_argument("verify needs 'test'");
    const std::string test = cfg.at("test").get<std::string>();
    const rng_stream stream{cfg.value("seed", std::uint64_t{0}), 0};
    const int replicates = cfg.value("replicates", default_replicates);
    const int threads = cfg.value("threads", default_thread_count());

    verification_report report;
    if (test == "pz") {
        std::vector<double> lambdas;
        if (cfg.contains("lambdas")) {
            lambdas = cfg.at("lambdas").get<std::vector<double>>();
            if (cfg.contains("m") && cfg.at("m").get<int>() != static_cast<int>(lambdas.size()))
                throw std::invalid_argument("'m' does not match the lambda vector length");
        } else if (cfg.contains("m")) {
            lambdas = random_lambdas(cfg.at("m").get<int>(), stream.substream(~0ull));
        } else {
            throw std::invalid_argument("pz needs 'lambdas' or 'm'");
        }
        if (cfg.value("exact", false) && lambdas.size() > 20)
            throw std::invalid_argument("exact enumeration needs m <= 20");
        report = paley_zygmund_check(lambdas, replicates, stream);
    } else if (test == "sumsq") {
        const auto model =
            model_from_json(cfg.value("model", json{{"kind", "wiener"}}), two_pi);
        const auto j_levels = cfg.value("j_levels", std::vector<int>{64, 1024});
        report = sum_squares_check(model, sine_over_pik_family(), j_levels, replicates, stream,
                                   cfg.value("grid", 1 << 13), threads);
    } else if (test == "cubic") {
        const auto model = model_from_json(cfg.value("model", json{{"kind", "wiener"}}), 1.28);
        const auto eps = cfg.value("epsilons", std::vector<double>{0.04, 0.02, 0.01});
        report = cubic_increment_check(model, cfg.value("T1", 1.0), eps, replicates, stream,
                                       cfg.value("grid", 1 << 11), threads);
    } else if (test == "holder") {
        const auto f = integrands::by_name(cfg.value("integrand", "one"),
                                           cfg.value("integrand_params", std::vector<double>{}));
        report = holder_bound_check(f, cfg.value("k", 1), cfg.value("lambda", 1.0));
    } else if (test == "expconst") {
        const int k = cfg.value("k", 1);
        const double lambda = cfg.value("lambda", 1.0);
        const auto cm = exp_moment_constant(k, lambda);
        const auto sharp = exp_moment_grid_max(k, lambda);
        report.test = "exp_moment_constant";
        report.parameters = {{"k", k}, {"lambda", lambda}};
        report.master_seed = stream.master_seed;
        report.statistics = {{"constant", cm.constant},
                             {"maximizer", cm.maximizer},
                             {"power", cm.power},
                             {"grid_max", sharp.grid_max},
                             {"grid_argmax", sharp.argmax}};
        report.thresholds = {{"sharpness_rel", 1e-9}};
        report.pass = std::abs(sharp.grid_max - cm.constant) <= 1e-9 * cm.constant;
    } else {
        throw std::invalid_argument("unknown verify test '" + test + "'");
    }

    sink.write("report.json", report.to_json().dump(2) + "\n");
    if (!report.replicate_rows.empty())
        sink.write("replicates.csv", io::replicate_csv(report));
    const auto files = sink.finish();
    return {report.pass ? 0 : 2, files};
}

} // namespace detail

/// Runs one configured experiment end to end: validates the config, executes
/// the module entry point, writes the declared artifacts plus a manifest.
/// Exit code 0 on success, 2 when a verification test fails its thresholds.
/// Invalid configs throw std::invalid_argument.
inline run_result run(json config) {
    if (!config.is_object()) throw std::invalid_argument("config must be a JSON object");
    if (!config.contains("command")) throw std::invalid_argument("config needs 'command'");
    const std::string command = config.at("command").get<std::string>();
    detail::artifact_sink sink(config.value("out", std::string{"."}), config);
    if (command == "simulate") return detail::run_simulate(config, sink);
    if (command == "besov") return detail::run_besov(config, sink);
    if (command == "fourier") return detail::run_fourier(config, sink);
    if (command == "verify") return detail::run_verify(config, sink);
    throw std::invalid_argument("unknown command '" + command + "'");
}

/// CLI wrapper: maps config/runtime errors to exit code 1 with a
/// machine-readable JSON error on the given stream.
inline int run_cli(json config, std::ostream& err) {
    try {
        return run(std::move(config)).exit_code;
    } catch (const std::exception& e) {
        err << json{{"error", e.what()}}.dump() << "\n";
        return 1;
    }
}

} // namespace smpath::experiment
