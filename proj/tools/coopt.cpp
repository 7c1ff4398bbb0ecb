#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coopt/bench.hpp"
#include "coopt/cop.hpp"
#include "coopt/cop_io.hpp"
#include "coopt/fault.hpp"
#include "coopt/generate.hpp"
#include "coopt/local_search.hpp"
#include "coopt/qoa.hpp"
#include "coopt/splitmix64.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw coopt::ParseFault("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw coopt::ParseFault("cannot write '" + path + "'");
    out << content;
    if (!out) throw coopt::ParseFault("write failed for '" + path + "'");
}

coopt::CopInstance load_instance(const std::string& path) {
    return coopt::parse_instance(read_file(path));
}

std::string file_stem(const std::string& path) {
    std::size_t slash = path.find_last_of("/\\");
    std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
    std::size_t dot = name.find_last_of('.');
    return dot == std::string::npos || dot == 0 ? name : name.substr(0, dot);
}

std::string fmt_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", s);
    return buf;
}

struct GenerateArgs {
    int vars = 0;
    int vals = 0;
    double avg_degree = 0.0;
    std::uint64_t seed = 0;
    std::string out;
};

struct SolveQoaArgs {
    std::string instance;
    double hbar = 1.0;
    double alpha = 2.0;
    int iters = 20;
    std::uint64_t seed = 0;
    coopt::Schedule schedule = coopt::Schedule::gauss_seidel;
    bool track_best = false;
    std::string out;
};

struct SolveMrlsArgs {
    std::string instance;
    int restarts = 100;
    std::uint64_t seed = 0;
    std::string out;
};

struct ExactArgs {
    std::string instance;
    std::uint64_t cap = 10'000'000;
    std::string out;
};

struct BenchArgs {
    int vars = 0;
    int vals = 0;
    double avg_degree = 0.0;
    int instances = 0;
    std::vector<std::string> inputs;
    int restarts = 100;
    double hbar = 1.0;
    double alpha = 2.0;
    int iters = 20;
    std::uint64_t seed = 0;
    int jobs = 1;
    std::string out;
};

int run_generate(const GenerateArgs& a) {
    coopt::GenSpec spec{a.vars, a.vals, a.avg_degree, a.seed};
    const coopt::CopInstance inst = coopt::generate_instance(spec);
    write_file(a.out, coopt::write_instance(inst));
    std::cout << "edges=" << inst.edges.size() << " out=" << a.out << "\n";
    return 0;
}

int run_solve_qoa(const SolveQoaArgs& a) {
    const coopt::CopInstance inst = load_instance(a.instance);
    coopt::SolverConfig cfg;
    cfg.hbar = a.hbar;
    cfg.alpha = a.alpha;
    cfg.max_iterations = a.iters;
    cfg.seed = a.seed;
    cfg.schedule = a.schedule;
    cfg.track_best = a.track_best;
    const coopt::SolverReport report = coopt::run_qoa(inst, cfg);
    if (!a.out.empty()) write_file(a.out, coopt::write_solution(report.cost, report.solution));
    std::cout << "cost=" << coopt::format_double(report.cost)
              << " seconds=" << fmt_seconds(report.wall_seconds);
    if (report.best_cost) std::cout << " best_cost=" << coopt::format_double(*report.best_cost);
    std::cout << "\n";
    return 0;
}

int run_solve_mrls(const SolveMrlsArgs& a) {
    const coopt::CopInstance inst = load_instance(a.instance);
    const coopt::LsReport report = coopt::mrls_run(inst, a.restarts, a.seed);
    if (!a.out.empty()) write_file(a.out, coopt::write_solution(report.cost, report.solution));
    std::cout << "cost=" << coopt::format_double(report.cost)
              << " seconds=" << fmt_seconds(report.wall_seconds) << "\n";
    return 0;
}

int run_exact(const ExactArgs& a) {
    const coopt::CopInstance inst = load_instance(a.instance);
    const auto t0 = std::chrono::steady_clock::now();
    const auto [solution, cost] = coopt::brute_force_optimum(inst, a.cap);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!a.out.empty()) write_file(a.out, coopt::write_solution(cost, solution));
    std::cout << "cost=" << coopt::format_double(cost) << " seconds=" << fmt_seconds(seconds)
              << "\n";
    return 0;
}

int run_bench(const BenchArgs& a) {
    coopt::SolverConfig cfg;
    cfg.hbar = a.hbar;
    cfg.alpha = a.alpha;
    cfg.max_iterations = a.iters;

    std::vector<coopt::BenchRecord> records;
    if (!a.inputs.empty()) {
        std::vector<coopt::BenchInput> batch;
        batch.reserve(a.inputs.size());
        for (const std::string& path : a.inputs)
            batch.push_back({file_stem(path), load_instance(path)});
        records = coopt::run_comparison(batch, a.restarts, cfg, a.seed, a.jobs);
    } else {
        std::vector<coopt::GenSpec> specs;
        specs.reserve(static_cast<std::size_t>(a.instances));
        for (int k = 0; k < a.instances; ++k)
            specs.push_back({a.vars, a.vals, a.avg_degree,
                             coopt::derive_seed(a.seed, 3 * static_cast<std::uint64_t>(k))});
        records = coopt::run_comparison(specs, a.restarts, cfg, a.seed, a.jobs);
    }

    write_file(a.out, coopt::write_report(records));

    for (std::size_t k = 0; k + 1 < records.size(); k += 2) {
        const auto& mrls = records[k];
        const auto& qoa = records[k + 1];
        std::cout << "instance=" << mrls.instance_id
                  << " mrls_cost=" << coopt::format_double(mrls.cost)
                  << " qoa_cost=" << coopt::format_double(qoa.cost);
        if (qoa.improvement_pct) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.2f", coopt::round_improvement(*qoa.improvement_pct));
            std::cout << " improvement_pct=" << buf;
        }
        std::cout << "\n";
        if (!mrls.error.empty()) std::cerr << "coopt: " << mrls.instance_id << " mrls: " << mrls.error << "\n";
        if (!qoa.error.empty()) std::cerr << "coopt: " << qoa.instance_id << " qoa: " << qoa.error << "\n";
    }
    std::cout << "report=" << a.out << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Constraint-optimization toolkit: soft-decision solver, local-search baseline, "
                 "instance generator, exact oracle, and benchmark harness"};
    app.require_subcommand(1);

    const std::map<std::string, coopt::Schedule> schedule_names{
        {"gauss-seidel", coopt::Schedule::gauss_seidel}, {"jacobi", coopt::Schedule::jacobi}};

    GenerateArgs gen;
    auto* cmd_gen = app.add_subcommand("generate", "Generate a random instance (.cop)");
    cmd_gen->add_option("--vars", gen.vars, "Variable count")->required();
    cmd_gen->add_option("--vals", gen.vals, "Values per variable")->required();
    cmd_gen->add_option("--avg-degree", gen.avg_degree, "Target average node degree")->required();
    cmd_gen->add_option("--seed", gen.seed, "Generator seed");
    cmd_gen->add_option("--out", gen.out, "Output .cop path")->required();

    auto* cmd_solve = app.add_subcommand("solve", "Run a solver on an instance file");
    cmd_solve->require_subcommand(1);

    SolveQoaArgs sq;
    auto* cmd_qoa = cmd_solve->add_subcommand("qoa", "Soft-decision iterative solver, single trial");
    cmd_qoa->add_option("--instance", sq.instance, "Instance .cop path")->required();
    cmd_qoa->add_option("--hbar", sq.hbar, "Smoothing constant (> 0)");
    cmd_qoa->add_option("--alpha", sq.alpha, "Probability exponent (> 0)");
    cmd_qoa->add_option("--iters", sq.iters, "Iteration count");
    cmd_qoa->add_option("--seed", sq.seed, "Init seed");
    cmd_qoa->add_option("--schedule", sq.schedule, "Update schedule")
        ->transform(CLI::CheckedTransformer(schedule_names, CLI::ignore_case));
    cmd_qoa->add_flag("--track-best", sq.track_best, "Also report the best sweep assignment");
    cmd_qoa->add_option("--out", sq.out, "Solution file path");

    SolveMrlsArgs sm;
    auto* cmd_mrls = cmd_solve->add_subcommand("mrls", "Multi-restart local search");
    cmd_mrls->add_option("--instance", sm.instance, "Instance .cop path")->required();
    cmd_mrls->add_option("--restarts", sm.restarts, "Restart count");
    cmd_mrls->add_option("--seed", sm.seed, "Restart seed base");
    cmd_mrls->add_option("--out", sm.out, "Solution file path");

    ExactArgs ex;
    auto* cmd_exact = app.add_subcommand("exact", "Exhaustive optimum (small instances)");
    cmd_exact->add_option("--instance", ex.instance, "Instance .cop path")->required();
    cmd_exact->add_option("--cap", ex.cap, "State-space cap");
    cmd_exact->add_option("--out", ex.out, "Solution file path");

    BenchArgs be;
    auto* cmd_bench = app.add_subcommand("bench", "Compare mrls vs qoa over an instance batch");
    auto* opt_vars = cmd_bench->add_option("--vars", be.vars, "Variable count (generated batch)");
    auto* opt_vals = cmd_bench->add_option("--vals", be.vals, "Values per variable (generated batch)");
    auto* opt_deg = cmd_bench->add_option("--avg-degree", be.avg_degree, "Average degree (generated batch)");
    auto* opt_count = cmd_bench->add_option("--instances", be.instances, "Generated batch size");
    cmd_bench->add_option("--input", be.inputs, "Instance .cop files (instead of generating)")
        ->excludes(opt_vars)
        ->excludes(opt_vals)
        ->excludes(opt_deg)
        ->excludes(opt_count);
    cmd_bench->add_option("--restarts", be.restarts, "mrls restarts per instance");
    cmd_bench->add_option("--hbar", be.hbar, "qoa smoothing constant");
    cmd_bench->add_option("--alpha", be.alpha, "qoa probability exponent");
    cmd_bench->add_option("--iters", be.iters, "qoa iteration count");
    cmd_bench->add_option("--seed", be.seed, "Master seed");
    cmd_bench->add_option("--jobs", be.jobs, "Parallel instance workers (timings overlap when > 1)");
    cmd_bench->add_option("--out", be.out, "Report CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "coopt: " << e.what() << "\n";
        return 1;
    }

    try {
        if (cmd_gen->parsed()) return run_generate(gen);
        if (cmd_qoa->parsed()) return run_solve_qoa(sq);
        if (cmd_mrls->parsed()) return run_solve_mrls(sm);
        if (cmd_exact->parsed()) return run_exact(ex);
        if (cmd_bench->parsed()) {
            if (be.inputs.empty() && be.instances < 1) {
                std::cerr << "coopt: bench needs --input files or --vars/--vals/--avg-degree/--instances\n";
                return 1;
            }
            return run_bench(be);
        }
        std::cerr << "coopt: no subcommand selected\n";
        return 1;
    } catch (const coopt::ParseFault& f) {
        std::cerr << "coopt: " << f.what() << "\n";
        return 2;
    } catch (const coopt::Fault& f) {
        std::cerr << "coopt: " << f.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "coopt: " << e.what() << "\n";
        return 3;
    }
}
