// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end for the dadp shared library. Only the C interface
// in dadp.h is used here, so this file doubles as a usage example for
// external callers.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dadp.h"

namespace {

int die(const char* what, dadp_status st) {
    std::fprintf(stderr, "%s failed (%d): %s\n", what, int(st), dadp_last_error());
    return 1;
}

/// Merge a base config file (optional) with command-line overrides into a
/// single effective config. Later lines win during parsing, so appending the
/// override sections is enough.
std::string effective_config(const std::string& base_path,
                             const std::vector<std::string>& experiment_kv,
                             const std::vector<std::string>& stopping_kv) {
    std::ostringstream out;
    if (!base_path.empty()) {
        std::ifstream f(base_path);
        if (!f) throw CLI::ValidationError("--config", "cannot open " + base_path);
        out << f.rdbuf() << '\n';
    }
    if (!experiment_kv.empty()) {
        out << "[experiment]\n";
        for (const auto& kv : experiment_kv) out << kv << '\n';
    }
    if (!stopping_kv.empty()) {
        out << "[stopping]\n";
        for (const auto& kv : stopping_kv) out << kv << '\n';
    }
    return out.str();
}

std::string join(const std::vector<double>& v) {
    std::ostringstream os;
    os.precision(17);
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

std::string join(const std::vector<std::string>& v) {
    std::ostringstream os;
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discretisation-adaptive discrepancy-principle stopping for "
                 "noisy linear inverse problems"};
    app.require_subcommand(1);

    // ---- gen ----------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "Generate a test problem and save it");
    std::string gen_problem = "phillips";
    int gen_dim = 512;
    std::string gen_prefix = "problem";
    gen->add_option("--problem", gen_problem, "phillips|deriv2|gravity|heat");
    gen->add_option("--dim", gen_dim, "discretisation dimension D");
    gen->add_option("--prefix", gen_prefix, "output file prefix");

    // ---- run ----------------------------------------------------------
    auto* run = app.add_subcommand("run", "Run an experiment from a config file");
    std::string run_config, run_out = ".";
    std::string run_problem, run_rules, run_cost_model;
    std::vector<double> run_deltas;
    int run_runs = -1;
    double run_tau = -1.0, run_eta = -1e9;
    long long run_seed = -1;
    bool run_full = false;
    run->add_option("--config", run_config, "base config file");
    run->add_option("--output-dir", run_out, "directory for runs.csv and tables");
    run->add_option("--problem", run_problem, "test problem name");
    run->add_option("--delta", run_deltas, "noise levels (repeatable)");
    run->add_option("--runs", run_runs, "independent runs per noise level");
    run->add_option("--rules", run_rules,
                    "comma list: algorithm1,algorithm2,naive,early_stopping,oracle");
    run->add_option("--tau", run_tau, "discrepancy fudge parameter (> 1)");
    run->add_option("--eta", run_eta, "ratio threshold (<= 0: default)");
    run->add_option("--seed", run_seed, "base seed");
    run->add_option("--cost-model", run_cost_model, "paper|flops");
    run->add_flag("--full", run_full,
                  "full-scale preset: D=4096, 100 runs, three noise levels");

    // ---- tables -------------------------------------------------------
    auto* tab = app.add_subcommand("tables", "Re-aggregate a run log into tables");
    std::string tab_config, tab_log, tab_csv = "tables.csv", tab_txt = "tables.txt";
    tab->add_option("--config", tab_config, "config file")->required();
    tab->add_option("--runlog", tab_log, "runs.csv from a previous run")->required();
    tab->add_option("--csv", tab_csv, "output CSV path");
    tab->add_option("--txt", tab_txt, "output text path");

    // ---- counterexample -----------------------------------------------
    auto* cex = app.add_subcommand(
        "counterexample", "Failure-mode study of the plain k-maximising rule");
    double cex_sigma1 = 0.9, cex_tau = 2.0;
    int cex_N = 2048, cex_trials = 2000;
    std::vector<int> cex_k = {30, 50, 70};
    long long cex_seed = 7;
    std::string cex_out = "counterexample.csv";
    cex->add_option("--sigma1", cex_sigma1, "leading singular value (< 1)");
    cex->add_option("--tau", cex_tau, "fudge parameter (>= 2)");
    cex->add_option("--dim", cex_N, "problem dimension");
    cex->add_option("--k", cex_k, "iteration counts defining the noise levels");
    cex->add_option("--trials", cex_trials, "Monte Carlo trials per k");
    cex->add_option("--seed", cex_seed, "base seed");
    cex->add_option("--out", cex_out, "output CSV path");

    // ---- rates --------------------------------------------------------
    auto* rates = app.add_subcommand(
        "rates", "Convergence-rate study on a diagonal model problem");
    double r_q = 2.0, r_nu = 1.0, r_rho = 1.0, r_tau = 1.5, r_eta = 0.5;
    int r_N = 512, r_runs = 20;
    long long r_seed = 11;
    std::string r_out = "rates.csv";
    rates->add_option("--q", r_q, "polynomial spectrum decay j^-q");
    rates->add_option("--nu", r_nu, "Hoelder smoothness exponent");
    rates->add_option("--rho", r_rho, "source radius");
    rates->add_option("--dim", r_N, "problem dimension");
    rates->add_option("--runs", r_runs, "runs per noise level");
    rates->add_option("--tau", r_tau, "fudge parameter");
    rates->add_option("--eta", r_eta, "ratio threshold");
    rates->add_option("--seed", r_seed, "base seed");
    rates->add_option("--out", r_out, "output CSV path");

    // ---- selftest -----------------------------------------------------
    auto* self = app.add_subcommand("selftest", "Run the built-in property suite");
    bool self_verbose = false;
    self->add_flag("--verbose", self_verbose, "print every check");

    CLI11_PARSE(app, argc, argv);

    if (*gen) {
        dadp_problem* p = nullptr;
        dadp_status st = dadp_problem_create(gen_problem.c_str(), gen_dim, &p);
        if (st != DADP_OK) return die("gen", st);
        st = dadp_problem_save(p, gen_prefix.c_str());
        dadp_problem_free(p);
        if (st != DADP_OK) return die("gen", st);
        std::printf("wrote %s_{A,x,y}.bin (D=%d)\n", gen_prefix.c_str(), gen_dim);
        return 0;
    }

    if (*run) {
        std::vector<std::string> exp_kv, stop_kv;
        if (run_full) exp_kv.push_back("full = true");
        if (!run_problem.empty()) exp_kv.push_back("problem = " + run_problem);
        if (!run_deltas.empty()) exp_kv.push_back("deltas = " + join(run_deltas));
        if (run_runs > 0) exp_kv.push_back("runs = " + std::to_string(run_runs));
        if (!run_rules.empty()) exp_kv.push_back("rules = " + run_rules);
        if (run_seed >= 0) exp_kv.push_back("seed = " + std::to_string(run_seed));
        if (!run_cost_model.empty())
            exp_kv.push_back("cost_model = " + run_cost_model);
        if (run_tau > 0) stop_kv.push_back("tau = " + std::to_string(run_tau));
        if (run_eta > -1e8) stop_kv.push_back("eta = " + std::to_string(run_eta));

        const std::string text = effective_config(run_config, exp_kv, stop_kv);
        const std::string eff_path = run_out + "/effective_config.ini";
        {
            std::ofstream f(eff_path);
            if (!f) {
                std::fprintf(stderr, "cannot write %s\n", eff_path.c_str());
                return 1;
            }
            f << text;
        }
        const dadp_status st =
            dadp_run_experiment(eff_path.c_str(), run_out.c_str());
        if (st != DADP_OK) return die("run", st);
        std::printf("wrote %s/runs.csv, tables.csv, tables.txt\n", run_out.c_str());
        return 0;
    }

    if (*tab) {
        const dadp_status st = dadp_tables(tab_config.c_str(), tab_log.c_str(),
                                           tab_csv.c_str(), tab_txt.c_str());
        if (st != DADP_OK) return die("tables", st);
        std::printf("wrote %s and %s\n", tab_csv.c_str(), tab_txt.c_str());
        return 0;
    }

    if (*cex) {
        const dadp_status st = dadp_counterexample(
            cex_sigma1, cex_tau, cex_N, cex_k.data(), int(cex_k.size()),
            cex_trials, (unsigned long long)cex_seed, cex_out.c_str());
        if (st != DADP_OK) return die("counterexample", st);
        std::printf("wrote %s\n", cex_out.c_str());
        return 0;
    }

    if (*rates) {
        double emp = 0.0, theo = 0.0, ratio = 0.0;
        const dadp_status st = dadp_rate_study(
            r_q, r_nu, r_rho, r_N, r_runs, r_tau, r_eta,
            (unsigned long long)r_seed, r_out.c_str(), &emp, &theo, &ratio);
        if (st != DADP_OK) return die("rates", st);
        std::printf("empirical slope %.4f, theoretical slope %.4f, "
                    "median error/bound %.3f\n",
                    emp, theo, ratio);
        std::printf("wrote %s\n", r_out.c_str());
        return 0;
    }

    if (*self) {
        int failures = 0;
        const dadp_status st = dadp_selftest(self_verbose ? 1 : 0, &failures);
        if (st != DADP_OK) return die("selftest", st);
        std::printf("selftest: %d failure(s)\n", failures);
        return failures == 0 ? 0 : 1;
    }

    return 0;
}
