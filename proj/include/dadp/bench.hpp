// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dadp/config.hpp"
#include "dadp/noise.hpp"
#include "dadp/stopping.hpp"
#include "dadp/testproblems.hpp"

namespace dadp {

struct ExperimentConfig {
    std::string problem = "phillips";
    int D = 512;
    std::vector<double> deltas = {1.0, 1e-2};
    int runs = 20;
    std::vector<std::string> rules = {"algorithm1", "early_stopping"};
    ProjectionKind projection = ProjectionKind::Averaging;
    NoiseKind noise = NoiseKind::Gaussian;
    int student_df = 3;
    std::uint64_t base_seed = 1;
    StoppingConfig stopping;       // desk preset caps by default
    long long oracle_k_max = 100000;
    std::string output_dir = ".";
    std::string cost_model = "paper";  // "paper" (k m^2) or "flops" (k 2 m D)

    /// Desk preset: D=512, 20 runs, cap 1e7. Full preset (--full): D=4096,
    /// 100 runs, deltas {1,1e-2,1e-4}, cap 5e8.
    static ExperimentConfig from_config(const Config& cfg);
    void validate() const;
};

struct RunRecord {
    double delta = 0.0;
    int run = 0;
    std::string rule;
    double error = 0.0;
    int m = 0;
    long long k = 0;
    double alpha = 0.0;
    double cost_paper = 0.0;
    double cost_flops = 0.0;
    std::string flag;
    std::uint64_t noise_hash = 0;
    /// per ladder level, k_dp(m_l); used for the paper-style complexity sums
    std::vector<std::pair<int, long long>> ladder_k;
};

struct Aggregate {
    double mean_error = 0.0;
    double median_error = 0.0;
    double mean_cost_paper = 0.0;   // c: sum_l mean(k_dp(m_l)) m_l^2 (or k D^2)
    double median_cost_paper = 0.0;
    double mean_cost_flops = 0.0;
    double median_cost_flops = 0.0;
    double mean_m = 0.0;
    int count = 0;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<RunRecord> records;
    // keyed by (delta index, rule)
    std::map<std::pair<int, std::string>, Aggregate> aggregates;
};

ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// Recompute aggregates from per-run records (used by `tables` and by the
/// integrity tests).
std::map<std::pair<int, std::string>, Aggregate> aggregate_records(
    const ExperimentConfig& cfg, const std::vector<RunRecord>& records);

/// One structured text record per run, CSV with header.
void write_run_log(const std::string& path, const ExperimentReport& rep);
std::vector<RunRecord> read_run_log(const std::string& path,
                                    std::vector<double>* deltas_out);

/// CSV + aligned text with the table column set
/// delta, e_dp, med_e_dp, e_es, med_e_es, c_dp, c_es, med_c_es, m_dp, m_bar.
void emit_tables(const ExperimentReport& rep, const std::string& csv_path,
                 const std::string& txt_path);

struct CounterexampleRow {
    int k = 0;
    double delta = 0.0;
    double naive_p_m1 = 0.0;
    double naive_p_bigerr = 0.0;   // P(error > 1/sqrt(2))
    double alg1_p_m1 = 0.0;
    double alg1_p_bigerr = 0.0;
    int trials = 0;
};

struct CounterexampleConfig {
    double sigma1 = 0.9;
    double tau = 2.0;
    int N = 2048;
    std::vector<int> k_values = {30, 50, 70};
    int trials = 2000;
    std::uint64_t base_seed = 7;
};

std::vector<CounterexampleRow> counterexample_experiment(
    const CounterexampleConfig& cfg);

struct RateStudyResult {
    std::vector<double> deltas;
    std::vector<double> median_errors;
    std::vector<double> bounds;          // rho * phi(Theta^-1(delta^2/rho^2))
    double empirical_slope = 0.0;        // log median error vs log delta
    double theoretical_slope = 0.0;      // log bound vs log delta
    double median_ratio = 0.0;           // error / bound across all runs
};

struct RateStudyConfig {
    double q = 2.0;      // polynomial decay of sigma_j^2
    double nu = 1.0;     // Hoelder exponent
    double rho = 1.0;
    int N = 512;         // profile length / problem dimension
    std::vector<double> deltas;  // default: geometric 1e-1 .. 1e-4, 7 points
    int runs = 20;
    double tau = 1.5;
    double eta = 0.5;
    std::uint64_t base_seed = 11;
};

RateStudyResult rate_study(const RateStudyConfig& cfg);

/// Quick in-process property suite for the `selftest` subcommand;
/// returns the number of failed checks and prints one line per check.
int selftest(bool verbose);

std::uint64_t hash_vector(const Eigen::VectorXd& v);

} // namespace dadp
