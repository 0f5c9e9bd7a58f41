// SPDX-License-Identifier: Apache-2.0
#include "dadp/stopping.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dadp {

namespace {
constexpr double kZeroResidual = 1e-300;

double safe_ratio(double num, double den) {
    // a vanished residual means the data is fully explained; the
    // dimension test then passes
    if (den < kZeroResidual) return 1.0;
    return num / den;
}
} // namespace

std::string to_string(TermFlag f) {
    switch (f) {
    case TermFlag::Converged: return "converged";
    case TermFlag::CapReached: return "cap_reached";
    case TermFlag::LadderExhausted: return "ladder_exhausted";
    }
    return "?";
}

double StoppingConfig::eta_effective() const {
    return eta > 0.0 ? eta : 1.0 / (2.0 * tau * std::exp(4.0));
}

double StoppingConfig::t_effective() const {
    return t > 0.0 ? t : 1.0 / (8.0 * tau);
}

void StoppingConfig::validate() const {
    if (tau <= 1.0) throw std::invalid_argument("tau must exceed 1");
    if (eta > 0.0 && eta >= 1.0) throw std::invalid_argument("eta must lie in (0,1)");
    if (q <= 0.0 || q >= 1.0) throw std::invalid_argument("q must lie in (0,1)");
    if (cap < 1) throw std::invalid_argument("cap must be at least 1");
}

DimTrace discrepancy_index(const ProjectedProblem& pp, double delta,
                           double tau, long long cap) {
    if (delta < 0.0) throw std::invalid_argument("discrepancy_index: delta must be non-negative");
    const double thresh = tau * std::sqrt(double(pp.m)) * delta;

    DimTrace tr;
    tr.m = pp.m;

    const double r0 = landweber_residual(pp, 0);
    if (r0 <= thresh) {
        tr.k_dp = 0;
        tr.r_kdp = r0;
        tr.r_2kdp = r0;
        tr.r_kdp_minus1 = r0;
        tr.ratio = safe_ratio(tr.r_2kdp, tr.r_kdp);
        return tr;
    }

    if (cap < 1 || landweber_residual(pp, cap) > thresh) {
        tr.k_dp = std::max<long long>(cap, 0);
        tr.capped = true;
        tr.r_kdp = landweber_residual(pp, tr.k_dp);
        tr.r_kdp_minus1 = tr.k_dp > 0 ? landweber_residual(pp, tr.k_dp - 1) : r0;
        tr.r_2kdp = landweber_residual(pp, 2 * tr.k_dp);
        tr.ratio = safe_ratio(tr.r_2kdp, tr.r_kdp);
        return tr;
    }

    // residual is non-increasing in k, so the first crossing can be located
    // by exponential growth plus bisection; agrees with the stepwise scan
    long long hi = 1;
    while (hi < cap && landweber_residual(pp, hi) > thresh) hi = std::min(cap, 2 * hi);
    long long lo = hi / 2;  // residual(lo) > thresh, residual(hi) <= thresh
    while (hi - lo > 1) {
        long long mid = lo + (hi - lo) / 2;
        if (landweber_residual(pp, mid) > thresh)
            lo = mid;
        else
            hi = mid;
    }
    tr.k_dp = hi;
    tr.r_kdp = landweber_residual(pp, hi);
    tr.r_kdp_minus1 = landweber_residual(pp, hi - 1);
    tr.r_2kdp = landweber_residual(pp, 2 * hi);
    tr.ratio = safe_ratio(tr.r_2kdp, tr.r_kdp);
    return tr;
}

DimTrace discrepancy_index_scan(const ProjectedProblem& pp, double delta,
                                double tau, long long cap) {
    if (delta < 0.0) throw std::invalid_argument("discrepancy_index_scan: delta must be non-negative");
    const double thresh = tau * std::sqrt(double(pp.m)) * delta;

    DimTrace tr;
    tr.m = pp.m;

    LandweberState st = landweber_init(pp);
    double prev = st.residual;
    while (st.residual > thresh && st.k < cap) {
        prev = st.residual;
        st = landweber_step(pp, st);
    }
    tr.k_dp = st.k;
    tr.r_kdp = st.residual;
    tr.r_kdp_minus1 = prev;
    tr.capped = st.residual > thresh;
    const long long target = 2 * st.k;
    while (st.k < target) st = landweber_step(pp, st);
    tr.r_2kdp = st.residual;
    tr.ratio = safe_ratio(tr.r_2kdp, tr.r_kdp);
    return tr;
}

DimTrace tikhonov_discrepancy_alpha(const ProjectedProblem& pp, double delta,
                                    const StoppingConfig& cfg) {
    if (delta < 0.0) throw std::invalid_argument("tikhonov alpha search: delta must be non-negative");
    const double thresh = cfg.tau * std::sqrt(double(pp.m)) * delta;
    const double t = cfg.t_effective();

    DimTrace tr;
    tr.m = pp.m;

    double alpha = 1.0;
    double prev_res = tikhonov_residual(pp, alpha / cfg.q);
    int j = 0;
    double res = tikhonov_residual(pp, alpha);
    while (res > thresh && j < cfg.alpha_grid_depth) {
        ++j;
        alpha *= cfg.q;
        prev_res = res;
        res = tikhonov_residual(pp, alpha);
    }
    tr.alpha_dp = alpha;
    tr.r_kdp = res;
    tr.r_kdp_minus1 = prev_res;  // residual at alpha/q
    tr.capped = res > thresh;
    tr.k_dp = j;
    tr.r_talpha = tikhonov_residual(pp, t * alpha);
    tr.ratio = safe_ratio(tr.r_talpha, tr.r_kdp);
    return tr;
}

namespace {

std::vector<DimTrace> landweber_traces(const std::vector<ProjectedProblem>& ladder,
                                       double delta, const StoppingConfig& cfg,
                                       bool* any_capped) {
    std::vector<DimTrace> traces;
    traces.reserve(ladder.size());
    long long budget = cfg.cap;
    bool capped = false;
    for (const auto& pp : ladder) {
        DimTrace tr = discrepancy_index(pp, delta, cfg.tau, std::max<long long>(budget, 0));
        budget -= tr.k_dp;
        capped = capped || tr.capped;
        traces.push_back(tr);
    }
    if (any_capped) *any_capped = capped;
    return traces;
}

void fill_costs(StoppingReport& rep, const std::vector<ProjectedProblem>& ladder) {
    rep.cost_paper = 0.0;
    rep.cost_flops = 0.0;
    for (size_t i = 0; i < ladder.size(); ++i) {
        const double m = double(ladder[i].m);
        const double k = double(rep.table[i].k_dp);
        rep.cost_paper += k * m * m;
        rep.cost_flops += k * 2.0 * m * double(ladder[i].D);
    }
}

} // namespace

size_t naive_select(const std::vector<DimTrace>& traces) {
    size_t best = 0;
    for (size_t i = 1; i < traces.size(); ++i)
        if (traces[i].k_dp > traces[best].k_dp) best = i;  // ties go to smallest m
    return best;
}

LadderSelection algorithm1_select(const std::vector<DimTrace>& traces, double eta) {
    LadderSelection sel;
    size_t lo = 0;
    while (lo < traces.size()) {
        ++sel.rounds;
        size_t cand = lo;
        for (size_t i = lo; i < traces.size(); ++i)
            if (traces[i].k_dp > traces[cand].k_dp) cand = i;
        sel.index = cand;
        if (traces[cand].ratio >= eta) {
            sel.accepted = true;
            return sel;
        }
        if (cand + 1 >= traces.size()) return sel;  // exhausted
        lo = cand + 1;
    }
    return sel;
}

LadderSelection algorithm2_select(const std::vector<DimTrace>& traces,
                                  double threshold) {
    LadderSelection sel;
    size_t lo = 0;
    while (lo < traces.size()) {
        ++sel.rounds;
        size_t cand = lo;
        for (size_t i = lo; i < traces.size(); ++i)
            if (traces[i].alpha_dp < traces[cand].alpha_dp) cand = i;
        sel.index = cand;
        if (traces[cand].ratio >= threshold) {
            sel.accepted = true;
            return sel;
        }
        if (cand + 1 >= traces.size()) return sel;
        lo = cand + 1;
    }
    return sel;
}

StoppingReport naive_max_rule(const std::vector<ProjectedProblem>& ladder,
                              double delta, const StoppingConfig& cfg) {
    if (ladder.empty()) throw std::invalid_argument("empty ladder");
    cfg.validate();

    StoppingReport rep;
    bool any_capped = false;
    rep.table = landweber_traces(ladder, delta, cfg, &any_capped);

    const size_t best = naive_select(rep.table);
    rep.m_dp = rep.table[best].m;
    rep.k_dp = rep.table[best].k_dp;
    rep.x = landweber_closed_form(ladder[best], rep.k_dp);
    rep.rounds = 0;
    rep.flag = any_capped ? TermFlag::CapReached : TermFlag::Converged;
    fill_costs(rep, ladder);
    return rep;
}

StoppingReport algorithm1_modified_dp(const std::vector<ProjectedProblem>& ladder,
                                      double delta, const StoppingConfig& cfg) {
    if (ladder.empty()) throw std::invalid_argument("empty ladder");
    cfg.validate();
    const double eta = cfg.eta_effective();

    StoppingReport rep;
    bool any_capped = false;
    rep.table = landweber_traces(ladder, delta, cfg, &any_capped);

    // candidates advance strictly through the ladder so the loop terminates
    const LadderSelection sel = algorithm1_select(rep.table, eta);

    rep.m_dp = rep.table[sel.index].m;
    rep.k_dp = rep.table[sel.index].k_dp;
    rep.x = landweber_closed_form(ladder[sel.index], rep.k_dp);
    rep.rounds = sel.rounds;
    if (!sel.accepted)
        rep.flag = TermFlag::LadderExhausted;
    else
        rep.flag = any_capped ? TermFlag::CapReached : TermFlag::Converged;
    fill_costs(rep, ladder);
    return rep;
}

StoppingReport algorithm2_modified_dp_tikhonov(
    const std::vector<ProjectedProblem>& ladder, double delta,
    const StoppingConfig& cfg) {
    if (ladder.empty()) throw std::invalid_argument("empty ladder");
    cfg.validate();
    const double threshold = 1.0 / (8.0 * cfg.tau);

    StoppingReport rep;
    rep.table.reserve(ladder.size());
    bool any_capped = false;
    for (const auto& pp : ladder) {
        DimTrace tr = tikhonov_discrepancy_alpha(pp, delta, cfg);
        any_capped = any_capped || tr.capped;
        rep.table.push_back(tr);
    }

    const LadderSelection sel = algorithm2_select(rep.table, threshold);

    rep.m_dp = rep.table[sel.index].m;
    rep.alpha_dp = rep.table[sel.index].alpha_dp;
    rep.k_dp = rep.table[sel.index].k_dp;  // grid index j
    rep.x = tikhonov_solve(ladder[sel.index], rep.alpha_dp);
    rep.rounds = sel.rounds;
    if (!sel.accepted)
        rep.flag = TermFlag::LadderExhausted;
    else
        rep.flag = any_capped ? TermFlag::CapReached : TermFlag::Converged;
    // cost bookkeeping: one solve per tested grid point, m^2 apiece
    rep.cost_paper = 0.0;
    rep.cost_flops = 0.0;
    for (size_t i = 0; i < ladder.size(); ++i) {
        const double m = double(ladder[i].m);
        const double evals = double(rep.table[i].k_dp + 1);
        rep.cost_paper += evals * m * m;
        rep.cost_flops += evals * 2.0 * m * double(ladder[i].D);
    }
    return rep;
}

StoppingReport early_stopping_dp(const ProjectedProblem& full, double delta,
                                 long long cap) {
    StoppingReport rep;
    DimTrace tr = discrepancy_index(full, delta, 1.0, cap);
    rep.table.push_back(tr);
    rep.m_dp = full.m;
    rep.k_dp = tr.k_dp;
    rep.x = landweber_closed_form(full, tr.k_dp);
    rep.rounds = 0;
    rep.flag = tr.capped ? TermFlag::CapReached : TermFlag::Converged;
    const double D = double(full.D);
    rep.cost_paper = double(tr.k_dp) * D * D;
    rep.cost_flops = double(tr.k_dp) * 2.0 * D * D;
    return rep;
}

std::string StoppingReport::to_record() const {
    std::ostringstream os;
    os.precision(17);
    os << "m_dp=" << m_dp << '\n';
    os << "k_dp=" << k_dp << '\n';
    os << "alpha_dp=" << alpha_dp << '\n';
    os << "rounds=" << rounds << '\n';
    os << "cost_paper=" << cost_paper << '\n';
    os << "cost_flops=" << cost_flops << '\n';
    os << "flag=" << to_string(flag) << '\n';
    for (const auto& tr : table) {
        os << "dim m=" << tr.m << " k_dp=" << tr.k_dp << " r_kdp=" << tr.r_kdp
           << " r_2kdp=" << tr.r_2kdp << " ratio=" << tr.ratio
           << " alpha_dp=" << tr.alpha_dp << " capped=" << (tr.capped ? 1 : 0)
           << '\n';
    }
    return os.str();
}

} // namespace dadp
