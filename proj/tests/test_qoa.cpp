#include <cmath>
#include <doctest.h>

#include "coopt/cop.hpp"
#include "coopt/fault.hpp"
#include "coopt/generate.hpp"
#include "coopt/qoa.hpp"
#include "coopt/splitmix64.hpp"
#include "helpers.hpp"

using namespace coopt;
using test::make_all_zero;
using test::make_t2;

namespace {

double rel_err(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t v = 0; v < a.size(); ++v) {
        const double scale = std::max({std::abs(a[v]), std::abs(b[v]), 1e-300});
        worst = std::max(worst, std::abs(a[v] - b[v]) / scale);
    }
    return worst;
}

double sum_sq(const std::vector<double>& t) {
    double s = 0.0;
    for (double v : t) s += v * v;
    return s;
}

AgentState uniform_state(const CopInstance& inst) {
    AgentState s;
    for (int i = 0; i < inst.n; ++i) {
        const auto d = static_cast<std::size_t>(inst.domain_size(i));
        s.psi.push_back(std::vector<double>(d, 1.0 / std::sqrt(static_cast<double>(d))));
        s.prob.push_back(std::vector<double>(d, 1.0 / static_cast<double>(d)));
    }
    return s;
}

}  // namespace

TEST_CASE("to_probability implements the alpha-power normalization") {
    CHECK(to_probability({1.0, 1.0}, 2.0) == std::vector<double>{0.5, 0.5});
    const auto p34 = to_probability({3.0, 4.0}, 2.0);
    CHECK(p34[0] == doctest::Approx(0.36).epsilon(1e-15));
    CHECK(p34[1] == doctest::Approx(0.64).epsilon(1e-15));
    // Frozen from direct evaluation of the formula.
    const auto p = to_probability({0.71263, 0.33454}, 2.0);
    CHECK(p[0] == doctest::Approx(0.81941835980721).epsilon(1e-12));
    CHECK(p[1] == doctest::Approx(0.18058164019279002).epsilon(1e-12));

    CHECK_THROWS_AS(to_probability({0.0, 0.0}, 2.0), NumericFault);
    CHECK_THROWS_AS(to_probability({-1.0, 1.0}, 2.0), ContractFault);
}

TEST_CASE("init_state draws a normalized state deterministically") {
    const CopInstance inst = generate_instance({6, 3, 2.0, 99});
    SolverConfig cfg;
    cfg.seed = 31;
    const AgentState a = init_state(inst, cfg);
    const AgentState b = init_state(inst, cfg);
    for (int i = 0; i < inst.n; ++i) {
        CHECK(sum_sq(a.psi[static_cast<std::size_t>(i)]) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(a.psi[static_cast<std::size_t>(i)] == b.psi[static_cast<std::size_t>(i)]);
        CHECK(a.prob[static_cast<std::size_t>(i)] == b.prob[static_cast<std::size_t>(i)]);
    }

    const CopInstance single = make_instance(1, {1}, {{0.4}}, {});
    const AgentState s = init_state(single, cfg);
    CHECK(s.psi[0] == std::vector<double>{1.0});
}

TEST_CASE("update_agent matches the frozen hand computation on T2") {
    const CopInstance t2 = make_t2();
    const AgentState state = uniform_state(t2);
    SolverConfig cfg;

    // Unnormalized [0.7126307063953077, 0.33453682654182215], frozen from an
    // independent evaluation of the update formula with uniform peers.
    const std::vector<double> got = update_agent(t2, state, 0, cfg);
    const double norm = std::sqrt(0.7126307063953077 * 0.7126307063953077 +
                                  0.33453682654182215 * 0.33453682654182215);
    CHECK(got[0] == doctest::Approx(0.7126307063953077 / norm).epsilon(1e-12));
    CHECK(got[1] == doctest::Approx(0.33453682654182215 / norm).epsilon(1e-12));
    CHECK(sum_sq(got) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("update_agent of an isolated variable is the softmin of its unary") {
    const CopInstance iso = make_instance(2, {3, 2}, {{0.5, 0.1, 0.9}, {0.0, 0.0}}, {});
    const AgentState state = uniform_state(iso);
    SolverConfig cfg;
    std::vector<double> expect = {std::exp(-0.5), std::exp(-0.1), std::exp(-0.9)};
    const double n = std::sqrt(sum_sq(expect));
    for (double& v : expect) v /= n;
    const auto got = update_agent(iso, state, 0, cfg);
    CHECK(rel_err(got, expect) < 1e-15);
}

TEST_CASE("update_agent is uniform on an all-zero instance") {
    const CopInstance zero = make_all_zero(3, 4);
    const AgentState state = uniform_state(zero);
    SolverConfig cfg;
    for (int i = 0; i < 3; ++i) {
        const auto got = update_agent(zero, state, i, cfg);
        for (double v : got) CHECK(v == doctest::Approx(0.5).epsilon(1e-15));
    }
}

TEST_CASE("update_agent underflow faults with advice") {
    const CopInstance harsh = make_instance(2, {2, 2}, {{1e6, 1e6}, {0.0, 0.0}},
                                            {Edge{0, 1, {0.0, 0.0, 0.0, 0.0}}});
    const AgentState state = uniform_state(harsh);
    SolverConfig cfg;
    CHECK_THROWS_WITH_AS(update_agent(harsh, state, 0, cfg), doctest::Contains("hbar"),
                         NumericFault);
}

TEST_CASE("naive oracle agrees with the factorized update") {
    const CopInstance t2 = make_t2();
    const AgentState state = uniform_state(t2);
    SolverConfig cfg;
    for (int i = 0; i < 2; ++i)
        CHECK(rel_err(update_agent(t2, state, i, cfg),
                      naive_update_oracle(t2, state, i, cfg, 1 << 20)) < 1e-12);

    // Chain 1-2, 2-3: the far variable must marginalize away exactly.
    const CopInstance chain = make_instance(
        3, {2, 2, 2}, {{0.3, 0.6}, {0.2, 0.9}, {0.8, 0.1}},
        {Edge{0, 1, {0.1, 0.7, 0.4, 0.2}}, Edge{1, 2, {0.5, 0.3, 0.6, 0.9}}});
    SolverConfig seeded;
    seeded.seed = 5;
    const AgentState random_state = init_state(chain, seeded);
    for (int i = 0; i < 3; ++i)
        CHECK(rel_err(update_agent(chain, random_state, i, seeded),
                      naive_update_oracle(chain, random_state, i, seeded, 1 << 20)) < 1e-12);
}

TEST_CASE("naive oracle on a single variable is the softmin of its unary") {
    const CopInstance single = make_instance(1, {3}, {{0.5, 0.1, 0.9}}, {});
    const AgentState state = uniform_state(single);
    SolverConfig cfg;
    CHECK(rel_err(naive_update_oracle(single, state, 0, cfg, 16),
                  update_agent(single, state, 0, cfg)) < 1e-15);
}

TEST_CASE("naive oracle guards its joint space") {
    const CopInstance big = generate_instance({30, 3, 2.0, 8});
    const AgentState state = uniform_state(big);
    SolverConfig cfg;
    CHECK_THROWS_AS(naive_update_oracle(big, state, 0, cfg, 1000), GuardFault);
}

TEST_CASE("one run_qoa sweep is exactly a sequence of update_agent calls") {
    const CopInstance inst = generate_instance({7, 3, 2.5, 42});
    SolverConfig cfg;
    cfg.seed = 17;
    cfg.max_iterations = 1;

    for (const Schedule schedule : {Schedule::gauss_seidel, Schedule::jacobi}) {
        cfg.schedule = schedule;
        AgentState manual = init_state(inst, cfg);
        const AgentState frozen = manual;
        for (int i = 0; i < inst.n; ++i) {
            const auto& source = schedule == Schedule::jacobi ? frozen : manual;
            const std::vector<double> table = update_agent(inst, source, i, cfg);
            manual.psi[static_cast<std::size_t>(i)] = table;
            manual.prob[static_cast<std::size_t>(i)] = to_probability(table, cfg.alpha);
        }

        AgentState observed;
        run_qoa(inst, cfg, [&](int, const AgentState& s) { observed = s; });
        CHECK(observed.psi == manual.psi);
        CHECK(observed.prob == manual.prob);
    }
}

TEST_CASE("run_qoa solves T2 for any seed") {
    const CopInstance t2 = make_t2();
    for (std::uint64_t seed : {0ull, 1ull, 7ull, 424242ull}) {
        SolverConfig cfg;
        cfg.seed = seed;
        const SolverReport report = run_qoa(t2, cfg);
        CHECK(report.solution == Assignment{{0, 1}});
        CHECK(report.cost == 0.2 + 0.1 + 0.3);
        CHECK(report.cost_trajectory.size() == 20);
        CHECK(report.residual_trajectory.size() == 20);
        CHECK(report.iterations_run == 20);
    }
}

TEST_CASE("run_qoa validates its config") {
    const CopInstance t2 = make_t2();
    SolverConfig cfg;
    cfg.max_iterations = 0;
    CHECK_THROWS_AS(run_qoa(t2, cfg), ContractFault);
    cfg.max_iterations = 5;
    cfg.hbar = 0.0;
    CHECK_THROWS_AS(run_qoa(t2, cfg), ContractFault);
    cfg.hbar = 1.0;
    cfg.alpha = -2.0;
    CHECK_THROWS_AS(run_qoa(t2, cfg), ContractFault);
}

TEST_CASE("run_qoa argmax ties break to the smallest value") {
    const CopInstance zero = make_all_zero(4, 3);
    SolverConfig cfg;
    cfg.seed = 3;
    cfg.max_iterations = 2;
    CHECK(run_qoa(zero, cfg).solution == Assignment{{0, 0, 0, 0}});
}

TEST_CASE("track_best records the sweep minimum") {
    const CopInstance inst = generate_instance({15, 6, 3.0, 5});
    SolverConfig cfg;
    cfg.seed = 2;
    cfg.track_best = true;
    const SolverReport report = run_qoa(inst, cfg);
    REQUIRE(report.best_cost.has_value());
    double traj_min = report.cost_trajectory[0];
    for (double c : report.cost_trajectory) traj_min = std::min(traj_min, c);
    CHECK(*report.best_cost == traj_min);
    CHECK(*report.best_cost == total_cost(inst, report.best_solution));
    CHECK(*report.best_cost <= report.cost);
}

TEST_CASE("stop_residual ends a converged run early") {
    const CopInstance inst = generate_instance({10, 4, 2.0, 21});
    SolverConfig cfg;
    cfg.seed = 1;
    cfg.max_iterations = 500;
    cfg.stop_residual = 1e-12;
    const SolverReport report = run_qoa(inst, cfg);
    CHECK(report.iterations_run < 500);
    CHECK(report.residual_trajectory.back() <= 1e-12);
}

TEST_CASE("fixed_point_residual is the max L-infinity probability change") {
    const CopInstance t2 = make_t2();
    const AgentState u = uniform_state(t2);
    CHECK(fixed_point_residual(u, u) == 0.0);

    AgentState flipped = u;
    flipped.prob[0] = {1.0, 0.0};
    flipped.prob[1] = {0.0, 1.0};
    AgentState basis = u;
    basis.prob[0] = {0.0, 1.0};
    basis.prob[1] = {1.0, 0.0};
    CHECK(fixed_point_residual(flipped, basis) == 1.0);

    AgentState concentrated = u;
    concentrated.prob[0] = {0.81941835980721, 0.18058164019279002};
    CHECK(fixed_point_residual(u, concentrated) == doctest::Approx(0.31941835980721).epsilon(1e-12));

    AgentState other = u;
    other.prob.pop_back();
    CHECK_THROWS_AS(fixed_point_residual(u, other), ContractFault);
}

TEST_CASE("effective_field matches the frozen T2 value") {
    const CopInstance t2 = make_t2();
    const AgentState u = uniform_state(t2);
    const std::vector<double> h = effective_field(t2, u, 0);
    CHECK(h[0] == doctest::Approx(0.35).epsilon(1e-15));
    CHECK(h[1] == doctest::Approx(1.1).epsilon(1e-15));

    const CopInstance iso = make_instance(1, {2}, {{0.4, 0.7}}, {});
    const auto hi = effective_field(iso, uniform_state(iso), 0);
    CHECK(hi == std::vector<double>{0.4, 0.7});
}

TEST_CASE("flow_step leaves an all-zero instance unchanged") {
    const CopInstance zero = make_all_zero(3, 2);
    const AgentState u = uniform_state(zero);
    SolverConfig cfg;
    const AgentState next = flow_step(zero, u, 0.1, cfg);
    for (std::size_t i = 0; i < u.psi.size(); ++i)
        CHECK(rel_err(next.psi[i], u.psi[i]) < 1e-14);
}

TEST_CASE("flow_step drift vanishes as dt goes to zero") {
    const CopInstance t2 = make_t2();
    const AgentState u = uniform_state(t2);
    SolverConfig cfg;
    double prev = 1e9;
    for (double dt : {1e-2, 1e-4, 1e-6}) {
        const AgentState next = flow_step(t2, u, dt, cfg);
        double dist = 0.0;
        for (std::size_t i = 0; i < u.psi.size(); ++i)
            for (std::size_t v = 0; v < u.psi[i].size(); ++v)
                dist = std::max(dist, std::abs(next.psi[i][v] - u.psi[i][v]));
        CHECK(dist < prev);
        prev = dist;
    }
    CHECK(prev < 1e-5);
    CHECK_THROWS_AS(flow_step(t2, u, 0.0, cfg), ContractFault);
}

TEST_CASE("closed_form_evolution matches the frozen T2 value") {
    const double r2 = 1.0 / std::sqrt(2.0);
    const std::vector<double> h{0.35, 1.1};
    const auto psi = closed_form_evolution(h, {r2, r2}, 1.0, 1.0);
    CHECK(psi[0] == doctest::Approx(0.9041982504924702).epsilon(1e-12));
    CHECK(psi[1] == doctest::Approx(0.4271130105795846).epsilon(1e-12));

    const auto still = closed_form_evolution(h, {r2, r2}, 0.0, 1.0);
    CHECK(rel_err(still, {r2, r2}) < 1e-15);

    // Large t concentrates on the argmin of h.
    const auto late = closed_form_evolution(h, {r2, r2}, 1e6, 1.0);
    CHECK(late[0] == 1.0);
    CHECK(late[1] == 0.0);
}

TEST_CASE("closed-form mass on the argmin grows monotonically in t") {
    const double r2 = 1.0 / std::sqrt(2.0);
    const std::vector<double> h{0.35, 1.1};
    double prev_mass = 0.5;
    for (double t : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        const auto psi = closed_form_evolution(h, {r2, r2}, t, 1.0);
        const double mass = psi[0] * psi[0];
        CHECK(mass > prev_mass);
        prev_mass = mass;
    }
}

TEST_CASE("stationary_residual identifies eigenvectors") {
    CHECK(stationary_residual({0.35, 1.1}, {1.0, 0.0}) < 1e-12);
    CHECK(stationary_residual({0.35, 1.1}, {0.0, 1.0}) < 1e-12);
    CHECK(stationary_residual({0.7, 0.7, 0.7}, {0.6, 0.64, std::sqrt(1 - 0.36 - 0.4096)}) < 1e-12);

    const double r2 = 1.0 / std::sqrt(2.0);
    CHECK(stationary_residual({0.35, 1.1}, {r2, r2}) == doctest::Approx(0.375).epsilon(1e-9));
    CHECK_THROWS_AS(stationary_residual({1.0}, {r2, r2}), ContractFault);
}

TEST_CASE("adding an isolated variable changes no other update") {
    const CopInstance t2 = make_t2();
    const CopInstance padded =
        make_instance(3, {2, 2, 2}, {{0.2, 0.8}, {0.5, 0.1}, {0.33, 0.44}},
                      {Edge{0, 1, {0.0, 0.3, 0.4, 0.2}}});
    AgentState small = uniform_state(t2);
    AgentState big = uniform_state(padded);
    SolverConfig cfg;
    for (int i = 0; i < 2; ++i)
        CHECK(update_agent(t2, small, i, cfg) == update_agent(padded, big, i, cfg));
}

TEST_CASE("argmax extraction is invariant to positive scaling") {
    const CopInstance inst = generate_instance({5, 4, 2.0, 12});
    SolverConfig cfg;
    cfg.seed = 9;
    const AgentState state = init_state(inst, cfg);
    for (int i = 0; i < inst.n; ++i) {
        std::vector<double> table = update_agent(inst, state, i, cfg);
        const auto argmax = [](const std::vector<double>& t) {
            std::size_t best = 0;
            for (std::size_t v = 1; v < t.size(); ++v)
                if (t[v] > t[best]) best = v;
            return best;
        };
        const std::size_t before = argmax(table);
        for (double& v : table) v *= 37.5;
        double norm = 0.0;
        for (double v : table) norm += v * v;
        for (double& v : table) v /= std::sqrt(norm);
        CHECK(argmax(table) == before);
    }
}

TEST_CASE("normalization holds through a long run") {
    const CopInstance inst = generate_instance({12, 5, 3.0, 321});
    SolverConfig cfg;
    cfg.seed = 4;
    cfg.max_iterations = 30;
    double worst = 0.0;
    run_qoa(inst, cfg, [&](int, const AgentState& s) {
        for (const auto& table : s.psi) worst = std::max(worst, std::abs(sum_sq(table) - 1.0));
        for (const auto& table : s.prob) {
            double total = 0.0;
            for (double p : table) total += p;
            worst = std::max(worst, std::abs(total - 1.0));
        }
    });
    CHECK(worst < 1e-9);
}
