#include "coopt/bench.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <thread>

#include "coopt/cop_io.hpp"
#include "coopt/fault.hpp"
#include "coopt/local_search.hpp"
#include "coopt/splitmix64.hpp"

namespace coopt {

double improvement_pct(double mrls_cost, double qoa_cost) {
    if (!(qoa_cost > 0.0)) throw ContractFault("improvement baseline requires qoa cost > 0");
    return 100.0 * (mrls_cost - qoa_cost) / qoa_cost;
}

double round_improvement(double pct) {
    return std::floor(pct * 100.0 + 0.5) / 100.0;
}

namespace {

// Runs mrls then qoa on one instance and appends the two records.
void compare_one(const CopInstance& inst, const std::string& id, std::size_t index,
                 int mrls_restarts, const SolverConfig& qoa_cfg, std::uint64_t master_seed,
                 std::vector<BenchRecord>& out) {
    BenchRecord mrls_row;
    mrls_row.instance_id = id;
    mrls_row.algorithm = "mrls";
    mrls_row.trials = mrls_restarts;
    try {
        const LsReport ls = mrls_run(inst, mrls_restarts, derive_seed(master_seed, 3 * index + 1));
        mrls_row.cost = ls.cost;
        mrls_row.wall_seconds = ls.wall_seconds;
    } catch (const Fault& f) {
        mrls_row.cost = std::numeric_limits<double>::quiet_NaN();
        mrls_row.error = f.what();
    }

    BenchRecord qoa_row;
    qoa_row.instance_id = id;
    qoa_row.algorithm = "qoa";
    qoa_row.trials = 1;
    try {
        SolverConfig cfg = qoa_cfg;
        cfg.seed = derive_seed(master_seed, 3 * index + 2);
        const SolverReport qr = run_qoa(inst, cfg);
        qoa_row.cost = qr.cost;
        qoa_row.wall_seconds = qr.wall_seconds;
        if (mrls_row.error.empty() && qr.cost > 0.0)
            qoa_row.improvement_pct = improvement_pct(mrls_row.cost, qr.cost);
    } catch (const Fault& f) {
        qoa_row.cost = std::numeric_limits<double>::quiet_NaN();
        qoa_row.error = f.what();
    }

    out[2 * index] = std::move(mrls_row);
    out[2 * index + 1] = std::move(qoa_row);
}

}  // namespace

std::vector<BenchRecord> run_comparison(const std::vector<BenchInput>& batch, int mrls_restarts,
                                        const SolverConfig& qoa_cfg, std::uint64_t master_seed,
                                        int jobs) {
    if (batch.empty()) throw ContractFault("comparison batch must not be empty");
    if (mrls_restarts < 1) throw ContractFault("mrls restarts must be >= 1");
    if (jobs < 1) jobs = 1;

    std::vector<BenchRecord> records(2 * batch.size());
    if (jobs == 1) {
        for (std::size_t k = 0; k < batch.size(); ++k)
            compare_one(batch[k].instance, batch[k].id, k, mrls_restarts, qoa_cfg, master_seed,
                        records);
        return records;
    }

    // Instances are independent; record slots are preassigned so the output
    // order matches the batch order whatever the completion order is.
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    const std::size_t worker_count =
        std::min(static_cast<std::size_t>(jobs), batch.size());
    workers.reserve(worker_count);
    for (std::size_t w = 0; w < worker_count; ++w) {
        workers.emplace_back([&]() {
            for (std::size_t k = next.fetch_add(1); k < batch.size(); k = next.fetch_add(1))
                compare_one(batch[k].instance, batch[k].id, k, mrls_restarts, qoa_cfg,
                            master_seed, records);
        });
    }
    for (auto& t : workers) t.join();
    return records;
}

std::vector<BenchRecord> run_comparison(const std::vector<GenSpec>& specs, int mrls_restarts,
                                        const SolverConfig& qoa_cfg, std::uint64_t master_seed,
                                        int jobs) {
    if (specs.empty()) throw ContractFault("comparison batch must not be empty");
    std::vector<BenchInput> batch;
    batch.reserve(specs.size());
    for (std::size_t k = 0; k < specs.size(); ++k)
        batch.push_back({"g" + std::to_string(k + 1), generate_instance(specs[k])});
    return run_comparison(batch, mrls_restarts, qoa_cfg, master_seed, jobs);
}

std::string write_report(const std::vector<BenchRecord>& records) {
    std::string out = "instance,algorithm,trials,cost,seconds,improvement_pct\n";
    char buf[64];
    for (const BenchRecord& r : records) {
        out += r.instance_id + "," + r.algorithm + "," + std::to_string(r.trials) + ",";
        out += format_double(r.cost);
        std::snprintf(buf, sizeof(buf), ",%.3f,", r.wall_seconds);
        out += buf;
        if (r.improvement_pct) {
            std::snprintf(buf, sizeof(buf), "%.2f", round_improvement(*r.improvement_pct));
            out += buf;
        }
        out += "\n";
    }
    return out;
}

std::vector<BenchRecord> read_report(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "instance,algorithm,trials,cost,seconds,improvement_pct")
        throw ParseFault("missing report header", 1);

    std::vector<BenchRecord> records;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ls(line);
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (line.back() == ',') fields.push_back("");
        if (fields.size() != 6) throw ParseFault("expected 6 fields", line_no);

        BenchRecord r;
        r.instance_id = fields[0];
        r.algorithm = fields[1];
        try {
            r.trials = std::stoll(fields[2]);
            r.cost = std::stod(fields[3]);
            r.wall_seconds = std::stod(fields[4]);
            if (!fields[5].empty()) r.improvement_pct = std::stod(fields[5]);
        } catch (const std::exception&) {
            throw ParseFault("malformed numeric field", line_no);
        }
        records.push_back(std::move(r));
    }
    return records;
}

}  // namespace coopt
