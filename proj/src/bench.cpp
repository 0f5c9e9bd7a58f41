// SPDX-License-Identifier: Apache-2.0
#include "dadp/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "dadp/theory.hpp"

namespace dadp {

namespace {

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double mean(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    return std::accumulate(v.begin(), v.end(), 0.0) / double(v.size());
}

std::string fmt_sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1e", x);
    return buf;
}

std::string fmt_full(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

ProjectionKind parse_projection(const std::string& s) {
    if (s == "averaging") return ProjectionKind::Averaging;
    if (s == "svd") return ProjectionKind::Svd;
    throw std::invalid_argument("unknown projection kind: " + s);
}

NoiseKind parse_noise(const std::string& s) {
    if (s == "gaussian") return NoiseKind::Gaussian;
    if (s == "rademacher") return NoiseKind::Rademacher;
    if (s == "student_t") return NoiseKind::StudentT;
    throw std::invalid_argument("unknown noise kind: " + s);
}

bool known_rule(const std::string& r) {
    return r == "algorithm1" || r == "algorithm2" || r == "naive" ||
           r == "early_stopping" || r == "oracle";
}

int delta_index(const std::vector<double>& deltas, double d) {
    for (size_t i = 0; i < deltas.size(); ++i)
        if (deltas[i] == d) return int(i);
    return -1;
}

} // namespace

std::uint64_t hash_vector(const Eigen::VectorXd& v) {
    // FNV-1a over the raw little-endian doubles
    std::uint64_t h = 1469598103934665603ull;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        std::uint64_t bits;
        const double x = v(i);
        std::memcpy(&bits, &x, sizeof(bits));
        for (int b = 0; b < 8; ++b) {
            h ^= (bits >> (8 * b)) & 0xff;
            h *= 1099511628211ull;
        }
    }
    return h;
}

ExperimentConfig ExperimentConfig::from_config(const Config& cfg) {
    ExperimentConfig ec;
    const bool full = cfg.get_bool("experiment.full", false);
    if (full) {
        ec.D = 4096;
        ec.runs = 100;
        ec.deltas = {1.0, 1e-2, 1e-4};
        ec.stopping.cap = 500000000;
    } else {
        ec.stopping.cap = 10000000;
    }
    ec.problem = cfg.get("experiment.problem", ec.problem);
    ec.D = int(cfg.get_int("experiment.D", ec.D));
    ec.deltas = cfg.get_double_list("experiment.deltas", ec.deltas);
    ec.runs = int(cfg.get_int("experiment.runs", ec.runs));
    ec.rules = cfg.get_string_list("experiment.rules", ec.rules);
    ec.projection = parse_projection(cfg.get("experiment.projection", "averaging"));
    ec.noise = parse_noise(cfg.get("experiment.noise", "gaussian"));
    ec.student_df = int(cfg.get_int("experiment.student_df", ec.student_df));
    ec.base_seed = std::uint64_t(cfg.get_int("experiment.seed", 1));
    ec.output_dir = cfg.get("experiment.output_dir", ec.output_dir);
    ec.oracle_k_max = cfg.get_int("experiment.oracle_k_max", ec.oracle_k_max);
    ec.stopping.tau = cfg.get_double("stopping.tau", ec.stopping.tau);
    ec.stopping.eta = cfg.get_double("stopping.eta", ec.stopping.eta);
    ec.stopping.q = cfg.get_double("stopping.q", ec.stopping.q);
    ec.stopping.t = cfg.get_double("stopping.t", ec.stopping.t);
    ec.stopping.cap = cfg.get_int("stopping.cap", ec.stopping.cap);
    ec.cost_model = cfg.get("experiment.cost_model", ec.cost_model);
    return ec;
}

void ExperimentConfig::validate() const {
    if (D < 2) throw std::invalid_argument("D must be at least 2");
    if (runs < 1) throw std::invalid_argument("runs must be at least 1");
    if (deltas.empty()) throw std::invalid_argument("at least one delta required");
    for (double d : deltas)
        if (d < 0.0) throw std::invalid_argument("deltas must be non-negative");
    if (rules.empty()) throw std::invalid_argument("at least one rule required");
    for (const auto& r : rules)
        if (!known_rule(r)) throw std::invalid_argument("unknown rule: " + r);
    if (student_df <= 2) throw std::invalid_argument("student_df must exceed 2");
    if (cost_model != "paper" && cost_model != "flops")
        throw std::invalid_argument("cost_model must be paper or flops");
    stopping.validate();
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    ExperimentReport rep;
    rep.config = cfg;

    const LinearProblem p = gen_named(cfg.problem, cfg.D);
    const DiscretisationLadder ladder = build_ladder(cfg.D, cfg.projection);

    // data-independent operators, built once
    SingularSystem sys;
    std::vector<ProjectedOperator> ops;
    ops.reserve(ladder.dims.size());
    ProjectedOperator full_op;
    if (cfg.projection == ProjectionKind::Averaging) {
        for (int m : ladder.dims)
            ops.push_back(make_projected_operator(p, make_averaging_projection(cfg.D, m)));
        full_op = ops.back();  // ladder tops out at m = D
    } else {
        sys = compute_svd(p.A);
        for (int m : ladder.dims) {
            if (m > sys.rank) break;
            ops.push_back(make_projected_operator_svd(p, sys, m));
        }
        full_op = make_projected_operator_svd(p, sys, sys.rank);
    }
    if (ops.empty()) throw std::runtime_error("empty operator ladder");

    for (size_t di = 0; di < cfg.deltas.size(); ++di) {
        const double delta = cfg.deltas[di];
        for (int run = 0; run < cfg.runs; ++run) {
            const std::uint64_t seed =
                cfg.base_seed + std::uint64_t(di) * std::uint64_t(cfg.runs) +
                std::uint64_t(run);
            const Eigen::VectorXd z =
                sample_white_noise(cfg.noise, cfg.student_df, seed, cfg.D);
            const Eigen::VectorXd y_delta = p.y_true + delta * z;
            const std::uint64_t nh = hash_vector(z);

            // every rule in this run sees the same noisy data (paired design)
            std::vector<ProjectedProblem> pps;
            pps.reserve(ops.size());
            for (const auto& op : ops) pps.push_back(attach_data(op, y_delta));

            for (const auto& rule : cfg.rules) {
                RunRecord rec;
                rec.delta = delta;
                rec.run = run;
                rec.rule = rule;
                rec.noise_hash = nh;
                if (rule == "oracle") {
                    const OracleResult o =
                        empirical_oracle(pps, p.x_true, cfg.oracle_k_max);
                    rec.error = o.error;
                    rec.m = o.m;
                    rec.k = o.k;
                    rec.flag = "converged";
                } else if (rule == "early_stopping") {
                    const ProjectedProblem full_pp = attach_data(full_op, y_delta);
                    const StoppingReport r =
                        early_stopping_dp(full_pp, delta, cfg.stopping.cap);
                    rec.error = (r.x - p.x_true).norm();
                    rec.m = r.m_dp;
                    rec.k = r.k_dp;
                    rec.cost_paper = r.cost_paper;
                    rec.cost_flops = r.cost_flops;
                    rec.flag = to_string(r.flag);
                    rec.ladder_k.push_back({r.m_dp, r.k_dp});
                } else {
                    StoppingReport r;
                    if (rule == "algorithm1")
                        r = algorithm1_modified_dp(pps, delta, cfg.stopping);
                    else if (rule == "naive")
                        r = naive_max_rule(pps, delta, cfg.stopping);
                    else
                        r = algorithm2_modified_dp_tikhonov(pps, delta, cfg.stopping);
                    rec.error = (r.x - p.x_true).norm();
                    rec.m = r.m_dp;
                    rec.k = r.k_dp;
                    rec.alpha = r.alpha_dp;
                    rec.cost_paper = r.cost_paper;
                    rec.cost_flops = r.cost_flops;
                    rec.flag = to_string(r.flag);
                    for (size_t i = 0; i < r.table.size(); ++i)
                        rec.ladder_k.push_back({r.table[i].m, r.table[i].k_dp});
                }
                rep.records.push_back(std::move(rec));
            }
        }
    }
    rep.aggregates = aggregate_records(cfg, rep.records);
    return rep;
}

std::map<std::pair<int, std::string>, Aggregate> aggregate_records(
    const ExperimentConfig& cfg, const std::vector<RunRecord>& records) {
    std::map<std::pair<int, std::string>, Aggregate> out;
    std::map<std::pair<int, std::string>, std::vector<const RunRecord*>> groups;
    for (const auto& rec : records) {
        const int di = delta_index(cfg.deltas, rec.delta);
        if (di < 0) throw std::runtime_error("record delta not in config");
        groups[{di, rec.rule}].push_back(&rec);
    }
    for (const auto& [key, recs] : groups) {
        Aggregate a;
        a.count = int(recs.size());
        std::vector<double> errs, costs, flops, ms;
        for (const auto* r : recs) {
            errs.push_back(r->error);
            costs.push_back(r->cost_paper);
            flops.push_back(r->cost_flops);
            ms.push_back(double(r->m));
        }
        a.mean_error = mean(errs);
        a.median_error = median(errs);
        a.median_cost_paper = median(costs);
        a.mean_cost_flops = mean(flops);
        a.median_cost_flops = median(flops);
        a.mean_m = mean(ms);
        // paper-style complexity: per ladder level, mean of k over the runs,
        // weighted by m^2 (reduces to mean(k) D^2 for the sequential baseline)
        std::map<int, std::pair<double, int>> per_dim;  // m -> (sum k, count)
        for (const auto* r : recs)
            for (const auto& [m, k] : r->ladder_k) {
                per_dim[m].first += double(k);
                per_dim[m].second += 1;
            }
        double c = 0.0;
        for (const auto& [m, sk] : per_dim)
            c += sk.first / double(sk.second) * double(m) * double(m);
        a.mean_cost_paper = c;
        out[key] = a;
    }
    return out;
}

void write_run_log(const std::string& path, const ExperimentReport& rep) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    f << "delta,run,rule,error,m,k,alpha,cost_paper,cost_flops,flag,"
         "noise_hash,ladder_k\n";
    for (const auto& r : rep.records) {
        f << fmt_full(r.delta) << ',' << r.run << ',' << r.rule << ','
          << fmt_full(r.error) << ',' << r.m << ',' << r.k << ','
          << fmt_full(r.alpha) << ',' << fmt_full(r.cost_paper) << ','
          << fmt_full(r.cost_flops) << ',' << r.flag << ',' << r.noise_hash
          << ',';
        for (size_t i = 0; i < r.ladder_k.size(); ++i) {
            if (i) f << ';';
            f << r.ladder_k[i].first << ':' << r.ladder_k[i].second;
        }
        f << '\n';
    }
}

std::vector<RunRecord> read_run_log(const std::string& path,
                                    std::vector<double>* deltas_out) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(f, line)) throw std::runtime_error("empty run log " + path);
    std::vector<RunRecord> out;
    std::vector<double> deltas;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string tok;
        std::vector<std::string> cols;
        while (std::getline(ss, tok, ',')) cols.push_back(tok);
        if (cols.size() < 11) throw std::runtime_error("malformed run log line: " + line);
        RunRecord r;
        r.delta = std::stod(cols[0]);
        r.run = std::stoi(cols[1]);
        r.rule = cols[2];
        r.error = std::stod(cols[3]);
        r.m = std::stoi(cols[4]);
        r.k = std::stoll(cols[5]);
        r.alpha = std::stod(cols[6]);
        r.cost_paper = std::stod(cols[7]);
        r.cost_flops = std::stod(cols[8]);
        r.flag = cols[9];
        r.noise_hash = std::stoull(cols[10]);
        if (cols.size() > 11 && !cols[11].empty()) {
            std::stringstream ls(cols[11]);
            std::string pair;
            while (std::getline(ls, pair, ';')) {
                const size_t colon = pair.find(':');
                if (colon == std::string::npos)
                    throw std::runtime_error("malformed ladder_k entry: " + pair);
                r.ladder_k.push_back({std::stoi(pair.substr(0, colon)),
                                      std::stoll(pair.substr(colon + 1))});
            }
        }
        if (std::find(deltas.begin(), deltas.end(), r.delta) == deltas.end())
            deltas.push_back(r.delta);
        out.push_back(std::move(r));
    }
    if (deltas_out) *deltas_out = deltas;
    return out;
}

void emit_tables(const ExperimentReport& rep, const std::string& csv_path,
                 const std::string& txt_path) {
    const auto& cfg = rep.config;
    // *_bar columns report the no-while-loop (plain k-maximising) variant;
    // e_es_med / c_es_med are medians of the sequential baseline
    const char* header[] = {"delta", "e_dp", "e_dp_bar", "e_es", "e_es_med",
                            "c_dp",  "c_es", "c_es_med", "m_dp", "m_dp_bar"};
    const int ncol = 10;

    std::vector<std::vector<std::string>> rows;
    for (size_t di = 0; di < cfg.deltas.size(); ++di) {
        auto get = [&](const std::string& rule) -> const Aggregate* {
            auto it = rep.aggregates.find({int(di), rule});
            return it == rep.aggregates.end() ? nullptr : &it->second;
        };
        const Aggregate* dp = get("algorithm1");
        const Aggregate* nv = get("naive");
        const Aggregate* es = get("early_stopping");
        const bool flops = cfg.cost_model == "flops";
        std::vector<std::string> row(ncol, "-");
        row[0] = fmt_sci(cfg.deltas[di]);
        if (dp) {
            row[1] = fmt_sci(dp->mean_error);
            row[5] = fmt_sci(flops ? dp->mean_cost_flops : dp->mean_cost_paper);
            row[8] = fmt_sci(dp->mean_m);
        }
        if (nv) {
            row[2] = fmt_sci(nv->mean_error);
            row[9] = fmt_sci(nv->mean_m);
        }
        if (es) {
            row[3] = fmt_sci(es->mean_error);
            row[4] = fmt_sci(es->median_error);
            row[6] = fmt_sci(flops ? es->mean_cost_flops : es->mean_cost_paper);
            row[7] = fmt_sci(flops ? es->median_cost_flops : es->median_cost_paper);
        }
        rows.push_back(std::move(row));
    }

    {
        std::ofstream csv(csv_path);
        if (!csv) throw std::runtime_error("cannot open " + csv_path);
        for (int c = 0; c < ncol; ++c) csv << (c ? "," : "") << header[c];
        csv << '\n';
        for (const auto& row : rows) {
            for (int c = 0; c < ncol; ++c) csv << (c ? "," : "") << row[c];
            csv << '\n';
        }
    }
    {
        std::ofstream txt(txt_path);
        if (!txt) throw std::runtime_error("cannot open " + txt_path);
        std::vector<size_t> width(ncol);
        for (int c = 0; c < ncol; ++c) width[c] = std::strlen(header[c]);
        for (const auto& row : rows)
            for (int c = 0; c < ncol; ++c) width[c] = std::max(width[c], row[c].size());
        auto emit_row = [&](const std::vector<std::string>& cells) {
            for (int c = 0; c < ncol; ++c) {
                txt << cells[c];
                if (c + 1 < ncol)
                    txt << std::string(width[c] - cells[c].size() + 2, ' ');
            }
            txt << '\n';
        };
        std::vector<std::string> hcells(header, header + ncol);
        txt << cfg.problem << "  D=" << cfg.D << "  runs=" << cfg.runs << '\n';
        emit_row(hcells);
        for (const auto& row : rows) emit_row(row);
    }
}

namespace {

/// Ladder of light-weight spectral views of a diagonal problem: level m keeps
/// the first m coordinates, no matrices attached.
std::vector<ProjectedProblem> diagonal_spectral_ladder(
    const Eigen::VectorXd& sigma, const Eigen::VectorXd& y_delta,
    const std::vector<int>& dims) {
    std::vector<ProjectedProblem> pps;
    pps.reserve(dims.size());
    for (int m : dims) {
        ProjectedProblem pp;
        pp.m = m;
        pp.D = int(sigma.size());
        pp.s = sigma.head(m);
        pp.b = y_delta.head(m);
        pp.c = pp.b;
        pp.orth2 = 0.0;
        pps.push_back(std::move(pp));
    }
    return pps;
}

/// ||x_{k,m} - x_true|| for a diagonal problem, computed coordinate-wise.
double diagonal_error(const Eigen::VectorXd& sigma, const Eigen::VectorXd& y_delta,
                      const Eigen::VectorXd& x_true, int m, long long k) {
    double acc = 0.0;
    for (int j = 0; j < m; ++j) {
        const double f = landweber_filter(sigma(j) * sigma(j), k);
        const double est = f * y_delta(j) / sigma(j);
        const double d = est - x_true(j);
        acc += d * d;
    }
    for (int j = m; j < x_true.size(); ++j) acc += x_true(j) * x_true(j);
    return std::sqrt(acc);
}

} // namespace

std::vector<CounterexampleRow> counterexample_experiment(
    const CounterexampleConfig& cfg) {
    std::vector<CounterexampleRow> rows;
    const StoppingConfig base;  // for eta default 1/(2 tau e^4)
    const long long cap = 1000000000000ll;

    for (size_t ki = 0; ki < cfg.k_values.size(); ++ki) {
        const int k = cfg.k_values[ki];
        const CounterexampleProblem ce =
            counterexample_problem(cfg.sigma1, cfg.N, k, cfg.tau);
        const Eigen::VectorXd& sigma = ce.diag.system.sigma;
        const Eigen::VectorXd& x_true = ce.diag.problem.x_true;
        const Eigen::VectorXd& y_true = ce.diag.problem.y_true;

        std::vector<int> dims;
        for (int m = 1; m <= cfg.N; m *= 2) dims.push_back(m);

        StoppingConfig st = base;
        st.tau = cfg.tau;
        const double eta = st.eta_effective();

        CounterexampleRow row;
        row.k = k;
        row.delta = ce.delta;
        row.trials = cfg.trials;
        int n_naive_m1 = 0, n_naive_big = 0, n_alg1_m1 = 0, n_alg1_big = 0;

        for (int trial = 0; trial < cfg.trials; ++trial) {
            const std::uint64_t seed =
                cfg.base_seed + std::uint64_t(ki) * std::uint64_t(cfg.trials) +
                std::uint64_t(trial);
            const Eigen::VectorXd z =
                sample_white_noise(NoiseKind::Gaussian, 3, seed, cfg.N);
            const Eigen::VectorXd y_delta = y_true + ce.delta * z;

            const std::vector<ProjectedProblem> pps =
                diagonal_spectral_ladder(sigma, y_delta, dims);
            std::vector<DimTrace> traces;
            traces.reserve(pps.size());
            for (const auto& pp : pps)
                traces.push_back(discrepancy_index(pp, ce.delta, cfg.tau, cap));

            // both rules see the identical traces (paired design)
            const size_t in = naive_select(traces);
            const LadderSelection sel = algorithm1_select(traces, eta);

            const double err_naive = diagonal_error(sigma, y_delta, x_true,
                                                    dims[in], traces[in].k_dp);
            const double err_alg1 = diagonal_error(
                sigma, y_delta, x_true, dims[sel.index], traces[sel.index].k_dp);
            // the dropped-tail mass alone equals the threshold up to rounding
            // when m = 1, so compare with a relative slack of 1e-9
            const double big = 1.0 / std::sqrt(2.0) * (1.0 - 1e-9);
            if (dims[in] == 1) ++n_naive_m1;
            if (err_naive > big) ++n_naive_big;
            if (dims[sel.index] == 1) ++n_alg1_m1;
            if (err_alg1 > big) ++n_alg1_big;
        }
        row.naive_p_m1 = double(n_naive_m1) / double(cfg.trials);
        row.naive_p_bigerr = double(n_naive_big) / double(cfg.trials);
        row.alg1_p_m1 = double(n_alg1_m1) / double(cfg.trials);
        row.alg1_p_bigerr = double(n_alg1_big) / double(cfg.trials);
        rows.push_back(row);
    }
    return rows;
}

RateStudyResult rate_study(const RateStudyConfig& cfg) {
    std::vector<double> deltas = cfg.deltas;
    if (deltas.empty()) {
        // geometric grid 1e-1 .. 1e-4, 7 points
        for (int i = 0; i < 7; ++i) deltas.push_back(std::pow(10.0, -1.0 - 0.5 * i));
    }
    if (deltas.size() < 4)
        throw std::invalid_argument("rate study needs at least 4 noise levels");

    const IllPosednessProfile prof = polynomial_profile(cfg.q, cfg.N);
    const SourceCondition src = hoelder_source(cfg.nu, cfg.rho);

    Eigen::VectorXd sigma(cfg.N), x_true(cfg.N), y_true(cfg.N);
    {
        // source element xi_j ~ j^{-0.51}, scaled to ||xi|| = rho, and
        // x_true = phi(sigma_j^2) xi_j so the source condition holds exactly
        Eigen::VectorXd xi(cfg.N);
        for (int j = 0; j < cfg.N; ++j) xi(j) = std::pow(double(j + 1), -0.51);
        xi *= cfg.rho / xi.norm();
        for (int j = 0; j < cfg.N; ++j) {
            sigma(j) = std::sqrt(prof.sigma2[j]);
            x_true(j) = src.phi(prof.sigma2[j]) * xi(j);
            y_true(j) = sigma(j) * x_true(j);
        }
    }
    std::vector<int> dims;
    for (int m = 2; m <= cfg.N; m *= 2) dims.push_back(m);

    StoppingConfig st;
    st.tau = cfg.tau;
    st.eta = cfg.eta;
    st.cap = 10000000;

    RateStudyResult out;
    out.deltas = deltas;
    std::vector<double> all_ratios;
    for (size_t di = 0; di < deltas.size(); ++di) {
        const double delta = deltas[di];
        const double bound =
            cfg.rho * src.phi(theta_inverse(prof, src, delta * delta /
                                                        (cfg.rho * cfg.rho)));
        out.bounds.push_back(bound);
        std::vector<double> errs;
        for (int run = 0; run < cfg.runs; ++run) {
            const std::uint64_t seed =
                cfg.base_seed + std::uint64_t(di) * std::uint64_t(cfg.runs) +
                std::uint64_t(run);
            const Eigen::VectorXd z =
                sample_white_noise(NoiseKind::Gaussian, 3, seed, cfg.N);
            const Eigen::VectorXd y_delta = y_true + delta * z;

            const std::vector<ProjectedProblem> pps =
                diagonal_spectral_ladder(sigma, y_delta, dims);
            std::vector<DimTrace> traces;
            for (const auto& pp : pps)
                traces.push_back(discrepancy_index(pp, delta, cfg.tau, st.cap));
            const LadderSelection sel = algorithm1_select(traces, cfg.eta);
            const double err = diagonal_error(sigma, y_delta, x_true,
                                              dims[sel.index],
                                              traces[sel.index].k_dp);
            errs.push_back(err);
            all_ratios.push_back(err / bound);
        }
        out.median_errors.push_back(median(errs));
    }

    // least-squares slope of log y against log delta
    auto slope = [&](const std::vector<double>& ys) {
        const size_t n = deltas.size();
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (size_t i = 0; i < n; ++i) {
            const double x = std::log(deltas[i]);
            const double y = std::log(ys[i]);
            sx += x; sy += y; sxx += x * x; sxy += x * y;
        }
        return (double(n) * sxy - sx * sy) / (double(n) * sxx - sx * sx);
    };
    out.empirical_slope = slope(out.median_errors);
    out.theoretical_slope = slope(out.bounds);
    out.median_ratio = median(all_ratios);
    return out;
}

int selftest(bool verbose) {
    int failed = 0;
    auto check = [&](const char* name, bool ok) {
        if (!ok) ++failed;
        if (verbose || !ok)
            std::printf("%s %s\n", ok ? "ok  " : "FAIL", name);
    };

    // filter bounds (1-l)^{2k} l <= 1/k and (1-(1-l)^k)^2 / l <= k
    {
        bool ok = true;
        for (long long k : {1ll, 7ll, 100ll, 12345ll})
            for (double l : {1e-6, 1e-3, 0.1, 0.5, 0.99}) {
                const double r = landweber_residual_factor(l, k);
                const double f = landweber_filter(l, k);
                if (r * l > 1.0 / double(k) + 1e-12) ok = false;
                if (f * f / l > double(k) + 1e-12) ok = false;
            }
        check("filter_bounds", ok);
    }
    // recursion vs closed form on a small dense problem
    {
        Eigen::MatrixXd A(6, 6);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j)
                A(i, j) = 1.0 / double(1 + i + j);
        Eigen::VectorXd xt = Eigen::VectorXd::LinSpaced(6, -1.0, 1.0);
        const LinearProblem p = make_problem(A, xt);
        const Eigen::VectorXd y = p.y_true;
        const ProjectedProblem pp =
            project_problem(p, make_averaging_projection(6, 3), y);
        LandweberState stt = landweber_init(pp);
        for (int i = 0; i < 25; ++i) stt = landweber_step(pp, stt);
        const Eigen::VectorXd cf = landweber_closed_form(pp, 25);
        check("recursion_matches_closed_form", (stt.x - cf).norm() < 1e-10);
    }
    // averaging rows are orthonormal: P P^T = I
    {
        const AveragingProjection pr = make_averaging_projection(16, 4);
        const Eigen::MatrixXd P = pr.apply_to_matrix(
            Eigen::MatrixXd::Identity(16, 16));
        check("projection_rows_orthonormal",
              (P * P.transpose() - Eigen::MatrixXd::Identity(4, 4)).norm() < 1e-12);
    }
    // Theta inverse round trip
    {
        const IllPosednessProfile prof = polynomial_profile(2.0, 256);
        const SourceCondition src = hoelder_source(1.0);
        const double a = 1e-3;
        const double t = theta(prof, src, a);
        const double back = theta_inverse(prof, src, t);
        check("theta_round_trip", std::abs(back - a) / a < 1e-8);
    }
    // deterministic noise
    {
        const Eigen::VectorXd a = sample_white_noise(NoiseKind::Gaussian, 3, 42, 64);
        const Eigen::VectorXd b = sample_white_noise(NoiseKind::Gaussian, 3, 42, 64);
        check("noise_deterministic", hash_vector(a) == hash_vector(b));
    }
    // config round trip
    {
        Config c = Config::parse_string("[experiment]\nproblem = heat\nruns = 5\n");
        check("config_parse", c.get("experiment.problem", "") == "heat" &&
                                  c.get_int("experiment.runs", 0) == 5);
    }
    return failed;
}

} // namespace dadp
