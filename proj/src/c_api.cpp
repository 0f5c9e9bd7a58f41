// SPDX-License-Identifier: Apache-2.0
#include "dadp.h"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include "dadp/bench.hpp"
#include "dadp/io.hpp"
#include "dadp/noise.hpp"
#include "dadp/regularizers.hpp"
#include "dadp/stopping.hpp"
#include "dadp/testproblems.hpp"

namespace {

thread_local std::string g_last_error;

dadp_status fail(dadp_status code, const std::string& msg) {
    g_last_error = msg;
    return code;
}

/// Run `fn`, translating exceptions into status codes.
template <typename Fn>
dadp_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return DADP_OK;
    } catch (const std::invalid_argument& e) {
        return fail(DADP_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::out_of_range& e) {
        return fail(DADP_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::runtime_error& e) {
        return fail(DADP_ERR_IO, e.what());
    } catch (const std::exception& e) {
        return fail(DADP_ERR_INTERNAL, e.what());
    }
}

std::string fmt_sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6e", x);
    return buf;
}

} // namespace

struct dadp_problem {
    dadp::LinearProblem p;
};

extern "C" {

const char* dadp_last_error(void) { return g_last_error.c_str(); }

dadp_status dadp_problem_create(const char* name, int D, dadp_problem** out) {
    if (!name || !out) return fail(DADP_ERR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&] {
        auto* h = new dadp_problem{dadp::gen_named(name, D)};
        *out = h;
    });
}

dadp_status dadp_problem_dim(const dadp_problem* p, int* dim_out) {
    if (!p || !dim_out) return fail(DADP_ERR_INVALID_ARGUMENT, "null argument");
    *dim_out = p->p.dim();
    g_last_error.clear();
    return DADP_OK;
}

dadp_status dadp_problem_save(const dadp_problem* p, const char* prefix) {
    if (!p || !prefix) return fail(DADP_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        const std::string pre(prefix);
        dadp::save_matrix(pre + "_A.bin", p->p.A);
        dadp::save_vector(pre + "_x.bin", p->p.x_true);
        dadp::save_vector(pre + "_y.bin", p->p.y_true);
    });
}

void dadp_problem_free(dadp_problem* p) { delete p; }

dadp_status dadp_run_rule(const dadp_problem* p, const char* rule, double delta,
                          unsigned long long seed, double tau, double eta,
                          long long cap, dadp_run_result* out) {
    if (!p || !rule || !out) return fail(DADP_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        const std::string r(rule);
        const dadp::LinearProblem& prob = p->p;
        const int D = prob.dim();
        dadp::NoiseModel nm;
        nm.delta = delta;
        nm.seed = seed;
        const Eigen::VectorXd y_delta = dadp::sample_noisy_data(prob, nm);

        dadp::StoppingConfig st;
        st.tau = tau;
        st.eta = eta;
        st.cap = cap;

        dadp::StoppingReport rep;
        if (r == "early_stopping") {
            const dadp::ProjectedProblem full = dadp::project_problem(
                prob, dadp::make_averaging_projection(D, D), y_delta);
            rep = dadp::early_stopping_dp(full, delta, cap);
        } else {
            const dadp::DiscretisationLadder lad =
                dadp::build_ladder(D, dadp::ProjectionKind::Averaging);
            std::vector<dadp::ProjectedProblem> pps;
            for (int m : lad.dims)
                pps.push_back(dadp::project_problem(
                    prob, dadp::make_averaging_projection(D, m), y_delta));
            if (r == "algorithm1")
                rep = dadp::algorithm1_modified_dp(pps, delta, st);
            else if (r == "algorithm2")
                rep = dadp::algorithm2_modified_dp_tikhonov(pps, delta, st);
            else if (r == "naive")
                rep = dadp::naive_max_rule(pps, delta, st);
            else
                throw std::invalid_argument("unknown rule: " + r);
        }
        out->error = (rep.x - prob.x_true).norm();
        out->m = rep.m_dp;
        out->k = rep.k_dp;
        out->alpha = rep.alpha_dp;
        out->cost_paper = rep.cost_paper;
        out->cost_flops = rep.cost_flops;
        out->capped = rep.flag == dadp::TermFlag::CapReached ? 1 : 0;
    });
}

dadp_status dadp_run_experiment(const char* config_path, const char* output_dir) {
    if (!config_path) return fail(DADP_ERR_INVALID_ARGUMENT, "null config path");
    return guarded([&] {
        dadp::Config cfg = dadp::Config::parse_file(config_path);
        dadp::ExperimentConfig ec = dadp::ExperimentConfig::from_config(cfg);
        if (output_dir && output_dir[0]) ec.output_dir = output_dir;
        const dadp::ExperimentReport rep = dadp::run_experiment(ec);
        const std::string dir = ec.output_dir;
        dadp::write_run_log(dir + "/runs.csv", rep);
        dadp::emit_tables(rep, dir + "/tables.csv", dir + "/tables.txt");
    });
}

dadp_status dadp_tables(const char* config_path, const char* runlog_path,
                        const char* csv_path, const char* txt_path) {
    if (!config_path || !runlog_path || !csv_path || !txt_path)
        return fail(DADP_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        dadp::Config cfg = dadp::Config::parse_file(config_path);
        dadp::ExperimentReport rep;
        rep.config = dadp::ExperimentConfig::from_config(cfg);
        std::vector<double> deltas;
        rep.records = dadp::read_run_log(runlog_path, &deltas);
        rep.config.deltas = deltas;  // aggregate exactly what the log holds
        rep.aggregates = dadp::aggregate_records(rep.config, rep.records);
        dadp::emit_tables(rep, csv_path, txt_path);
    });
}

dadp_status dadp_counterexample(double sigma1, double tau, int N,
                                const int* k_values, int n_k, int trials,
                                unsigned long long seed, const char* csv_path) {
    if (!k_values || n_k < 1 || !csv_path)
        return fail(DADP_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        dadp::CounterexampleConfig cc;
        cc.sigma1 = sigma1;
        cc.tau = tau;
        cc.N = N;
        cc.k_values.assign(k_values, k_values + n_k);
        cc.trials = trials;
        cc.base_seed = seed;
        const auto rows = dadp::counterexample_experiment(cc);
        std::ofstream f(csv_path);
        if (!f) throw std::runtime_error(std::string("cannot open ") + csv_path);
        f << "k,delta,naive_p_m1,naive_p_bigerr,alg1_p_m1,alg1_p_bigerr,trials\n";
        for (const auto& r : rows)
            f << r.k << ',' << fmt_sci(r.delta) << ',' << fmt_sci(r.naive_p_m1)
              << ',' << fmt_sci(r.naive_p_bigerr) << ',' << fmt_sci(r.alg1_p_m1)
              << ',' << fmt_sci(r.alg1_p_bigerr) << ',' << r.trials << '\n';
    });
}

dadp_status dadp_rate_study(double q, double nu, double rho, int N, int runs,
                            double tau, double eta, unsigned long long seed,
                            const char* csv_path, double* empirical_slope,
                            double* theoretical_slope, double* median_ratio) {
    return guarded([&] {
        dadp::RateStudyConfig rc;
        rc.q = q;
        rc.nu = nu;
        rc.rho = rho;
        rc.N = N;
        rc.runs = runs;
        rc.tau = tau;
        rc.eta = eta;
        rc.base_seed = seed;
        const dadp::RateStudyResult res = dadp::rate_study(rc);
        if (csv_path && csv_path[0]) {
            std::ofstream f(csv_path);
            if (!f) throw std::runtime_error(std::string("cannot open ") + csv_path);
            f << "delta,median_error,bound,ratio\n";
            for (size_t i = 0; i < res.deltas.size(); ++i)
                f << fmt_sci(res.deltas[i]) << ',' << fmt_sci(res.median_errors[i])
                  << ',' << fmt_sci(res.bounds[i]) << ','
                  << fmt_sci(res.median_errors[i] / res.bounds[i]) << '\n';
        }
        if (empirical_slope) *empirical_slope = res.empirical_slope;
        if (theoretical_slope) *theoretical_slope = res.theoretical_slope;
        if (median_ratio) *median_ratio = res.median_ratio;
    });
}

dadp_status dadp_selftest(int verbose, int* failures) {
    return guarded([&] {
        const int n = dadp::selftest(verbose != 0);
        if (failures) *failures = n;
    });
}

} // extern "C"
