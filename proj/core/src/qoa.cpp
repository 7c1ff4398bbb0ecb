#include "coopt/qoa.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "coopt/fault.hpp"
#include "coopt/splitmix64.hpp"

namespace coopt {

namespace {

void check_config(const SolverConfig& cfg) {
    if (!(cfg.hbar > 0.0)) throw ContractFault("hbar must be > 0");
    if (!(cfg.alpha > 0.0)) throw ContractFault("alpha must be > 0");
    if (cfg.max_iterations < 1) throw ContractFault("max_iterations must be >= 1");
}

// In-place unit L2 normalization, scaled by the max entry first so that
// squaring cannot underflow for very small tables.
void normalize_l2(std::vector<double>& table) {
    double peak = 0.0;
    for (double v : table) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) throw NumericFault("cannot normalize an all-zero table");
    double sq = 0.0;
    for (double v : table) {
        const double s = v / peak;
        sq += s * s;
    }
    const double norm = peak * std::sqrt(sq);
    for (double& v : table) v /= norm;
}

void check_table(const std::vector<double>& table, const char* who) {
    bool all_zero = true;
    for (double v : table) {
        if (!std::isfinite(v))
            throw NumericFault(std::string(who) + " produced a non-finite value");
        if (v != 0.0) all_zero = false;
    }
    if (all_zero)
        throw NumericFault(std::string(who) +
                           " underflowed to an all-zero table; increase hbar");
}

int argmax_index(const std::vector<double>& table) {
    int best = 0;
    for (int v = 1; v < static_cast<int>(table.size()); ++v)
        if (table[static_cast<std::size_t>(v)] > table[static_cast<std::size_t>(best)]) best = v;
    return best;
}

// e^{-cost/hbar} tables for every unary and edge table, built once per run.
// The update loops below consume these; update_agent builds a one-variable
// slice so both paths run the identical arithmetic.
struct ExpTables {
    std::vector<std::vector<double>> unary;
    std::vector<std::vector<double>> edge;
};

ExpTables build_exp_tables(const CopInstance& inst, double hbar) {
    ExpTables t;
    t.unary.resize(static_cast<std::size_t>(inst.n));
    t.edge.resize(inst.edges.size());
    for (int i = 0; i < inst.n; ++i) {
        const auto& src = inst.unary[static_cast<std::size_t>(i)];
        auto& dst = t.unary[static_cast<std::size_t>(i)];
        dst.resize(src.size());
        for (std::size_t v = 0; v < src.size(); ++v) dst[v] = std::exp(-src[v] / hbar);
    }
    for (std::size_t k = 0; k < inst.edges.size(); ++k) {
        const auto& src = inst.edges[k].costs;
        auto& dst = t.edge[k];
        dst.resize(src.size());
        for (std::size_t v = 0; v < src.size(); ++v) dst[v] = std::exp(-src[v] / hbar);
    }
    return t;
}

ExpTables build_exp_slice(const CopInstance& inst, double hbar, int i) {
    ExpTables t;
    t.unary.resize(static_cast<std::size_t>(inst.n));
    t.edge.resize(inst.edges.size());
    const auto& src = inst.unary[static_cast<std::size_t>(i)];
    auto& dst = t.unary[static_cast<std::size_t>(i)];
    dst.resize(src.size());
    for (std::size_t v = 0; v < src.size(); ++v) dst[v] = std::exp(-src[v] / hbar);
    for (int k : inst.adjacency[static_cast<std::size_t>(i)]) {
        const auto& esrc = inst.edges[static_cast<std::size_t>(k)].costs;
        auto& edst = t.edge[static_cast<std::size_t>(k)];
        edst.resize(esrc.size());
        for (std::size_t v = 0; v < esrc.size(); ++v) edst[v] = std::exp(-esrc[v] / hbar);
    }
    return t;
}

// Unnormalized factorized update of variable i into out:
//   out[v] = exp_unary[v] * prod over incident edges of
//            sum_w exp_edge(v, w) * p_other(w).
void factorized_update(const CopInstance& inst, const ExpTables& tables,
                       const std::vector<std::vector<double>>& prob, int i,
                       std::vector<double>& out) {
    const auto iu = static_cast<std::size_t>(i);
    const int d = inst.domain_size(i);
    out = tables.unary[iu];
    for (int k : inst.adjacency[iu]) {
        const Edge& e = inst.edges[static_cast<std::size_t>(k)];
        const std::vector<double>& w = tables.edge[static_cast<std::size_t>(k)];
        if (e.i == i) {
            const auto& pj = prob[static_cast<std::size_t>(e.j)];
            const int dj = inst.domain_size(e.j);
            for (int v = 0; v < d; ++v) {
                const double* row = w.data() + static_cast<std::size_t>(v) * dj;
                double s = 0.0;
                for (int x = 0; x < dj; ++x) s += row[x] * pj[static_cast<std::size_t>(x)];
                out[static_cast<std::size_t>(v)] *= s;
            }
        } else {
            const auto& pi = prob[static_cast<std::size_t>(e.i)];
            const int di = inst.domain_size(e.i);
            for (int v = 0; v < d; ++v) {
                const double* col = w.data() + v;
                double s = 0.0;
                for (int x = 0; x < di; ++x) s += col[static_cast<std::size_t>(x) * d] * pi[static_cast<std::size_t>(x)];
                out[static_cast<std::size_t>(v)] *= s;
            }
        }
    }
}

void check_state_shape(const CopInstance& inst, const AgentState& state) {
    if (static_cast<int>(state.psi.size()) != inst.n ||
        static_cast<int>(state.prob.size()) != inst.n)
        throw ContractFault("state shape does not match instance");
    for (int i = 0; i < inst.n; ++i) {
        const auto d = static_cast<std::size_t>(inst.domain_size(i));
        if (state.psi[static_cast<std::size_t>(i)].size() != d ||
            state.prob[static_cast<std::size_t>(i)].size() != d)
            throw ContractFault("state table length mismatch at variable " + std::to_string(i));
    }
}

}  // namespace

std::vector<double> to_probability(const std::vector<double>& psi_table, double alpha) {
    std::vector<double> p(psi_table.size());
    double total = 0.0;
    for (std::size_t v = 0; v < psi_table.size(); ++v) {
        const double x = psi_table[v];
        if (x < 0.0) throw ContractFault("state table entries must be non-negative");
        p[v] = (alpha == 2.0) ? x * x : std::pow(x, alpha);
        total += p[v];
    }
    if (total == 0.0) throw NumericFault("all-zero state table has no probability normalization");
    for (double& v : p) v /= total;
    return p;
}

AgentState init_state(const CopInstance& inst, const SolverConfig& cfg) {
    check_config(cfg);
    SplitMix64 rng(cfg.seed);
    AgentState state;
    state.psi.resize(static_cast<std::size_t>(inst.n));
    state.prob.resize(static_cast<std::size_t>(inst.n));
    for (int i = 0; i < inst.n; ++i) {
        auto& table = state.psi[static_cast<std::size_t>(i)];
        table.resize(static_cast<std::size_t>(inst.domain_size(i)));
        do {
            for (double& v : table) v = rng.next_double();
        } while (std::all_of(table.begin(), table.end(), [](double v) { return v == 0.0; }));
        normalize_l2(table);
        state.prob[static_cast<std::size_t>(i)] = to_probability(table, cfg.alpha);
    }
    return state;
}

std::vector<double> update_agent(const CopInstance& inst, const AgentState& state, int i,
                                 const SolverConfig& cfg) {
    check_config(cfg);
    check_state_shape(inst, state);
    if (i < 0 || i >= inst.n) throw ContractFault("variable index out of range");
    const ExpTables slice = build_exp_slice(inst, cfg.hbar, i);
    std::vector<double> out;
    factorized_update(inst, slice, state.prob, i, out);
    check_table(out, "update_agent");
    normalize_l2(out);
    return out;
}

std::vector<double> naive_update_oracle(const CopInstance& inst, const AgentState& state, int i,
                                        const SolverConfig& cfg, std::uint64_t state_space_cap) {
    check_config(cfg);
    check_state_shape(inst, state);
    if (i < 0 || i >= inst.n) throw ContractFault("variable index out of range");

    std::uint64_t others = 1;
    for (int j = 0; j < inst.n; ++j) {
        if (j == i) continue;
        const auto dj = static_cast<std::uint64_t>(inst.domain_size(j));
        if (others > state_space_cap / dj)
            throw GuardFault("joint space of the other variables exceeds cap " +
                             std::to_string(state_space_cap));
        others *= dj;
    }

    const int d = inst.domain_size(i);
    std::vector<double> out(static_cast<std::size_t>(d), 0.0);
    Assignment a{std::vector<int>(static_cast<std::size_t>(inst.n), 0)};

    // Enumerate joint configurations of every variable except i in
    // lexicographic order; for each, add its weighted utility to every value
    // of x_i.
    while (true) {
        double peer_prob = 1.0;
        for (int j = 0; j < inst.n; ++j) {
            if (j == i) continue;
            peer_prob *= state.prob[static_cast<std::size_t>(j)]
                                   [static_cast<std::size_t>(a.values[static_cast<std::size_t>(j)])];
        }
        for (int v = 0; v < d; ++v) {
            a.values[static_cast<std::size_t>(i)] = v;
            const double energy = local_cost(inst, i, a);
            out[static_cast<std::size_t>(v)] += std::exp(-energy / cfg.hbar) * peer_prob;
        }
        a.values[static_cast<std::size_t>(i)] = 0;

        int pos = inst.n - 1;
        while (pos >= 0) {
            if (pos == i) {
                --pos;
                continue;
            }
            auto& v = a.values[static_cast<std::size_t>(pos)];
            if (++v < inst.domain_size(pos)) break;
            v = 0;
            --pos;
        }
        if (pos < 0) break;
    }

    check_table(out, "naive_update_oracle");
    normalize_l2(out);
    return out;
}

SolverReport run_qoa(const CopInstance& inst, const SolverConfig& cfg,
                     const SweepObserver& observer) {
    check_config(cfg);
    const auto start = std::chrono::steady_clock::now();

    AgentState state = init_state(inst, cfg);
    const ExpTables tables = build_exp_tables(inst, cfg.hbar);

    SolverReport report;
    report.cost_trajectory.reserve(static_cast<std::size_t>(cfg.max_iterations));
    report.residual_trajectory.reserve(static_cast<std::size_t>(cfg.max_iterations));

    std::vector<int> argmax(static_cast<std::size_t>(inst.n), 0);
    std::vector<std::vector<double>> prev_prob = state.prob;
    std::vector<std::vector<double>> snapshot;
    std::vector<double> buf;

    for (int k = 1; k <= cfg.max_iterations; ++k) {
        const bool jacobi = cfg.schedule == Schedule::jacobi;
        if (jacobi) snapshot = state.prob;
        const auto& source = jacobi ? snapshot : state.prob;

        for (int i = 0; i < inst.n; ++i) {
            factorized_update(inst, tables, source, i, buf);
            check_table(buf, "update_agent");
            normalize_l2(buf);
            state.psi[static_cast<std::size_t>(i)] = buf;
            state.prob[static_cast<std::size_t>(i)] = to_probability(buf, cfg.alpha);
            argmax[static_cast<std::size_t>(i)] = argmax_index(buf);
        }
        state.iteration = k;
        report.iterations_run = k;

        const double cost = total_cost(inst, Assignment{argmax});
        report.cost_trajectory.push_back(cost);

        double residual = 0.0;
        for (int i = 0; i < inst.n; ++i) {
            const auto& a = prev_prob[static_cast<std::size_t>(i)];
            const auto& b = state.prob[static_cast<std::size_t>(i)];
            for (std::size_t v = 0; v < a.size(); ++v)
                residual = std::max(residual, std::abs(a[v] - b[v]));
        }
        report.residual_trajectory.push_back(residual);
        prev_prob = state.prob;

        if (cfg.track_best && (!report.best_cost || cost < *report.best_cost)) {
            report.best_cost = cost;
            report.best_solution = Assignment{argmax};
        }

        if (observer) observer(k, state);
        if (cfg.stop_residual > 0.0 && residual <= cfg.stop_residual) break;
    }

    report.solution = Assignment{argmax};
    report.cost = report.cost_trajectory.back();
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

double fixed_point_residual(const AgentState& prev, const AgentState& next) {
    if (prev.prob.size() != next.prob.size())
        throw ContractFault("states have different variable counts");
    double residual = 0.0;
    for (std::size_t i = 0; i < prev.prob.size(); ++i) {
        const auto& a = prev.prob[i];
        const auto& b = next.prob[i];
        if (a.size() != b.size()) throw ContractFault("probability tables have different shapes");
        for (std::size_t v = 0; v < a.size(); ++v)
            residual = std::max(residual, std::abs(a[v] - b[v]));
    }
    return residual;
}

std::vector<double> effective_field(const CopInstance& inst, const AgentState& state, int i) {
    check_state_shape(inst, state);
    if (i < 0 || i >= inst.n) throw ContractFault("variable index out of range");
    const auto iu = static_cast<std::size_t>(i);
    const int d = inst.domain_size(i);
    std::vector<double> h = inst.unary[iu];
    for (int k : inst.adjacency[iu]) {
        const Edge& e = inst.edges[static_cast<std::size_t>(k)];
        if (e.i == i) {
            const auto& psij = state.psi[static_cast<std::size_t>(e.j)];
            const int dj = inst.domain_size(e.j);
            for (int v = 0; v < d; ++v) {
                const double* row = e.costs.data() + static_cast<std::size_t>(v) * dj;
                double s = 0.0;
                for (int x = 0; x < dj; ++x) s += row[x] * psij[static_cast<std::size_t>(x)] * psij[static_cast<std::size_t>(x)];
                h[static_cast<std::size_t>(v)] += s;
            }
        } else {
            const auto& psii = state.psi[static_cast<std::size_t>(e.i)];
            const int di = inst.domain_size(e.i);
            for (int v = 0; v < d; ++v) {
                double s = 0.0;
                for (int x = 0; x < di; ++x)
                    s += e.costs[static_cast<std::size_t>(x) * d + static_cast<std::size_t>(v)] *
                         psii[static_cast<std::size_t>(x)] * psii[static_cast<std::size_t>(x)];
                h[static_cast<std::size_t>(v)] += s;
            }
        }
    }
    return h;
}

AgentState flow_step(const CopInstance& inst, const AgentState& state, double dt,
                     const SolverConfig& cfg) {
    check_config(cfg);
    check_state_shape(inst, state);
    if (!(dt > 0.0)) throw ContractFault("dt must be > 0");

    AgentState next;
    next.psi.resize(state.psi.size());
    next.prob.resize(state.prob.size());
    next.iteration = state.iteration;

    // All fields are read from the input state, so every variable steps
    // simultaneously.
    for (int i = 0; i < inst.n; ++i) {
        const std::vector<double> h = effective_field(inst, state, i);
        const auto& psi = state.psi[static_cast<std::size_t>(i)];
        std::vector<double> stepped(psi.size());
        for (std::size_t v = 0; v < psi.size(); ++v)
            stepped[v] = psi[v] - (dt / cfg.hbar) * h[v] * psi[v];
        for (double v : stepped)
            if (!std::isfinite(v)) throw NumericFault("flow step produced non-finite values; reduce dt");
        bool all_zero = std::all_of(stepped.begin(), stepped.end(), [](double v) { return v == 0.0; });
        if (all_zero) throw NumericFault("flow step annihilated the state table; reduce dt");
        normalize_l2(stepped);
        next.psi[static_cast<std::size_t>(i)] = std::move(stepped);
        next.prob[static_cast<std::size_t>(i)] = to_probability(next.psi[static_cast<std::size_t>(i)], cfg.alpha);
    }
    return next;
}

std::vector<double> closed_form_evolution(const std::vector<double>& h,
                                          const std::vector<double>& psi0, double t, double hbar) {
    if (h.size() != psi0.size()) throw ContractFault("field and state tables differ in length");
    if (!(hbar > 0.0)) throw ContractFault("hbar must be > 0");
    // Shift by min h before exponentiating: a common positive factor that the
    // renormalization removes, but it keeps e^{-h t} representable for large t.
    double hmin = h.empty() ? 0.0 : *std::min_element(h.begin(), h.end());
    std::vector<double> out(psi0.size());
    for (std::size_t v = 0; v < psi0.size(); ++v)
        out[v] = psi0[v] * std::exp(-(h[v] - hmin) * t / hbar);
    check_table(out, "closed_form_evolution");
    normalize_l2(out);
    return out;
}

double stationary_residual(const std::vector<double>& h, const std::vector<double>& psi) {
    if (h.size() != psi.size()) throw ContractFault("field and state tables differ in length");
    double energy = 0.0;
    for (std::size_t v = 0; v < h.size(); ++v) energy += h[v] * psi[v] * psi[v];
    double sq = 0.0;
    for (std::size_t v = 0; v < h.size(); ++v) {
        const double r = h[v] * psi[v] - energy * psi[v];
        sq += r * r;
    }
    return std::sqrt(sq);
}

}  // namespace coopt
