// smpath — sample stochastic-measure paths and fields, integrate against
// them, diagnose Besov regularity, expand paths in Fourier series, and run
// the statistical verification suite. Every invocation is equivalent to a
// JSON config (--config); explicit flags override config values.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "smpath/experiment.hpp"
#include "smpath/parallel.hpp"

namespace {

using nlohmann::json;

struct flag_values {
    std::string config_path;
    std::string model;
    std::uint64_t seed = 0;
    double horizon = 0.0;
    double hurst = 0.0;
    int truncation = 0;
    int grid = 0;
    int resolution = 0;
    int dim = 0;
    std::string out;
    int threads = 0;
    // besov
    std::string input;
    double p = 0.0, q = 0.0, alpha = 0.0;
    std::vector<int> levels;
    int direction = 0;
    // fourier
    int max_k = 0;
    std::string method;
    std::vector<int> n_list;
    double margin = 0.0;
    // verify
    std::string test;
    int replicates = 0;
    int m = 0;
    std::vector<double> lambdas;
    bool exact = false;
    std::vector<int> j_levels;
    double t1 = 0.0;
    std::vector<double> epsilons;
    int small_k = 0;
    double lambda = 0.0;
    std::string integrand;
    std::vector<double> integrand_params;
};

json load_base_config(const std::string& path) {
    if (path.empty()) return json::object();
    json cfg = json::parse(smpath::io::read_file(path));
    if (!cfg.is_object()) throw std::invalid_argument("config file must hold a JSON object");
    return cfg;
}

// Applies a flag to the config only when the user passed it, so config-file
// values survive unless explicitly overridden.
template <class T>
void override_if(json& cfg, const CLI::App& app, const std::string& flag,
                 const std::string& key, const T& value) {
    if (app.count(flag) > 0) cfg[key] = value;
}

template <class T>
void override_model_if(json& cfg, const CLI::App& app, const std::string& flag,
                       const std::string& key, const T& value) {
    if (app.count(flag) > 0) cfg["model"][key] = value;
}

void add_model_flags(CLI::App& cmd, flag_values& v) {
    cmd.add_option("--model", v.model, "model kind: lebesgue|rademacher|wiener|fbm|sheet2d");
    cmd.add_option("--T", v.horizon, "model horizon");
    cmd.add_option("--trunc", v.truncation, "rademacher truncation K");
    cmd.add_option("--H", v.hurst, "fbm Hurst index in (1/2,1)");
}

void add_common_flags(CLI::App& cmd, flag_values& v) {
    cmd.add_option("--config", v.config_path, "JSON config file; flags override its values");
    cmd.add_option("--seed", v.seed, "master seed");
    cmd.add_option("--out", v.out, "output directory");
    cmd.add_option("--threads", v.threads, "worker threads (SMPATH_THREADS overrides default)");
}

void apply_common(json& cfg, const CLI::App& cmd, const flag_values& v) {
    override_if(cfg, cmd, "--seed", "seed", v.seed);
    override_if(cfg, cmd, "--out", "out", v.out);
    override_if(cfg, cmd, "--threads", "threads", v.threads);
    override_model_if(cfg, cmd, "--model", "kind", v.model);
    override_model_if(cfg, cmd, "--T", "T", v.horizon);
    override_model_if(cfg, cmd, "--trunc", "K", v.truncation);
    override_model_if(cfg, cmd, "--H", "H", v.hurst);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"stochastic-measure path toolkit"};
    app.require_subcommand(1);
    flag_values v;

    auto* simulate = app.add_subcommand("simulate", "sample a path or field to CSV");
    add_common_flags(*simulate, v);
    add_model_flags(*simulate, v);
    simulate->add_option("--grid", v.grid, "path grid size (number of steps)");
    simulate->add_option("--resolution", v.resolution, "dyadic field depth");
    simulate->add_option("--dim", v.dim, "field dimension (1 or 2)");

    auto* besov = app.add_subcommand("besov", "dyadic regularity diagnostics to JSON");
    add_common_flags(*besov, v);
    add_model_flags(*besov, v);
    besov->add_option("--input", v.input, "analyze an existing CSV sample");
    besov->add_option("--resolution", v.resolution, "dyadic field depth when sampling");
    besov->add_option("--dim", v.dim, "field dimension (1 or 2)");
    besov->add_option("--p", v.p, "increment exponent p >= 1");
    besov->add_option("--q", v.q, "also estimate the direct norm with this q");
    besov->add_option("--alpha", v.alpha, "smoothness alpha in (0,1)");
    besov->add_option("--levels", v.levels, "level range: min max")->expected(2)->delimiter(',');
    besov->add_option("--direction", v.direction, "increment direction (1-based)");

    auto* fourier = app.add_subcommand("fourier", "Fourier coefficients and partial sums");
    add_common_flags(*fourier, v);
    add_model_flags(*fourier, v);
    fourier->add_option("--K", v.max_k, "maximum frequency");
    fourier->add_option("--method", v.method, "parts|direct|both");
    fourier->add_option("--grid", v.grid, "path grid size");
    fourier->add_option("--n-list", v.n_list, "partial-sum orders for the convergence report")->delimiter(',');
    fourier->add_option("--margin", v.margin, "interior margin for sup errors");

    auto* verify = app.add_subcommand("verify", "statistical verification tests");
    add_common_flags(*verify, v);
    add_model_flags(*verify, v);
    verify->add_option("test", v.test, "pz|sumsq|cubic|holder|expconst");
    verify->add_option("--replicates", v.replicates, "Monte Carlo replicates");
    verify->add_option("--grid", v.grid, "path grid size");
    verify->add_option("--m", v.m, "lambda vector length (pz)");
    verify->add_option("--lambdas", v.lambdas, "explicit lambda vector (pz)")->delimiter(',');
    verify->add_flag("--exact", v.exact, "require exact enumeration (pz, m <= 20)");
    verify->add_option("--j-levels", v.j_levels, "j checkpoints (sumsq)")->delimiter(',');
    verify->add_option("--T1", v.t1, "integration horizon T1 (cubic)");
    verify->add_option("--epsilons", v.epsilons, "epsilon schedule (cubic)")->delimiter(',');
    verify->add_option("--k", v.small_k, "series index k (holder/expconst)");
    verify->add_option("--lambda", v.lambda, "exponent lambda (holder/expconst)");
    verify->add_option("--integrand", v.integrand, "catalogue integrand name (holder)");
    verify->add_option("--iparams", v.integrand_params, "integrand parameters (holder)")->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    try {
        CLI::App* cmd = app.get_subcommands().front();
        json cfg = load_base_config(v.config_path);
        cfg["command"] = cmd->get_name();
        apply_common(cfg, *cmd, v);

        if (cmd == simulate || cmd == besov) {
            override_if(cfg, *cmd, "--grid", "grid", v.grid);
            override_if(cfg, *cmd, "--resolution", "resolution", v.resolution);
            override_if(cfg, *cmd, "--dim", "dim", v.dim);
        }
        if (cmd == besov) {
            override_if(cfg, *cmd, "--input", "input", v.input);
            override_if(cfg, *cmd, "--p", "p", v.p);
            override_if(cfg, *cmd, "--q", "q", v.q);
            override_if(cfg, *cmd, "--alpha", "alpha", v.alpha);
            override_if(cfg, *cmd, "--levels", "levels", v.levels);
            override_if(cfg, *cmd, "--direction", "direction", v.direction);
        }
        if (cmd == fourier) {
            override_if(cfg, *cmd, "--K", "K", v.max_k);
            override_if(cfg, *cmd, "--method", "method", v.method);
            override_if(cfg, *cmd, "--grid", "grid", v.grid);
            override_if(cfg, *cmd, "--n-list", "n_list", v.n_list);
            override_if(cfg, *cmd, "--margin", "interior_margin", v.margin);
        }
        if (cmd == verify) {
            override_if(cfg, *cmd, "test", "test", v.test);
            override_if(cfg, *cmd, "--replicates", "replicates", v.replicates);
            override_if(cfg, *cmd, "--grid", "grid", v.grid);
            override_if(cfg, *cmd, "--m", "m", v.m);
            override_if(cfg, *cmd, "--lambdas", "lambdas", v.lambdas);
            override_if(cfg, *cmd, "--exact", "exact", v.exact);
            override_if(cfg, *cmd, "--j-levels", "j_levels", v.j_levels);
            override_if(cfg, *cmd, "--T1", "T1", v.t1);
            override_if(cfg, *cmd, "--epsilons", "epsilons", v.epsilons);
            override_if(cfg, *cmd, "--k", "k", v.small_k);
            override_if(cfg, *cmd, "--lambda", "lambda", v.lambda);
            override_if(cfg, *cmd, "--integrand", "integrand", v.integrand);
            override_if(cfg, *cmd, "--iparams", "integrand_params", v.integrand_params);
        }

        return smpath::experiment::run_cli(std::move(cfg), std::cerr);
    } catch (const std::exception& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return 1;
    }
}
