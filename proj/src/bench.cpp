#include "scd/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "scd/errors.hpp"
#include "scd/metrics.hpp"
#include "scd/rng.hpp"

namespace scd {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> known,
                         const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : known)
            if (it.key() == k) { ok = true; break; }
        if (!ok)
            throw InvalidInputError("config: unknown key '" + it.key() + "' in " + where);
    }
}

DatasetEntry parse_entry(const json& obj) {
    if (!obj.is_object())
        throw InvalidInputError("config: each input must be an object");
    reject_unknown_keys(obj,
                        {"id", "kind", "path", "has_header", "labels_last", "n", "dim",
                         "spread", "seed", "clusters"},
                        "input entry");
    DatasetEntry e;
    if (!obj.contains("id") || !obj["id"].is_string())
        throw InvalidInputError("config: input entry needs a string 'id'");
    e.id = obj["id"].get<std::string>();
    std::string kind = obj.value("kind", std::string("features_csv"));
    if (kind == "features_csv") e.kind = DatasetEntry::Kind::features_csv;
    else if (kind == "graph_csv") e.kind = DatasetEntry::Kind::graph_csv;
    else if (kind == "blobs") e.kind = DatasetEntry::Kind::blobs;
    else throw InvalidInputError("config: unknown input kind '" + kind + "'");
    if (!obj.contains("clusters") || !obj["clusters"].is_number_integer())
        throw InvalidInputError("config: input '" + e.id + "' needs integer 'clusters'");
    e.clusters = obj["clusters"].get<int>();
    if (e.kind == DatasetEntry::Kind::blobs) {
        if (!obj.contains("n"))
            throw InvalidInputError("config: blobs input '" + e.id + "' needs 'n'");
        e.n = obj["n"].get<int>();
        e.dim = obj.value("dim", 2);
        e.spread = obj.value("spread", 1.0);
        e.seed = obj.value("seed", std::uint64_t{0});
    } else {
        if (!obj.contains("path") || !obj["path"].is_string())
            throw InvalidInputError("config: csv input '" + e.id + "' needs 'path'");
        e.path = obj["path"].get<std::string>();
        e.has_header = obj.value("has_header", false);
        e.labels_last = obj.value("labels_last", false);
    }
    return e;
}

} // namespace

BenchConfig parse_bench_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::exception& e) {
        throw InvalidInputError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!root.is_object())
        throw InvalidInputError("config: top level must be a JSON object");
    reject_unknown_keys(root,
                        {"inputs", "cuts", "methods", "k_neighbors", "eta_grid", "seeds",
                         "output_dir"},
                        "top level");

    BenchConfig cfg;
    if (!root.contains("inputs") || !root["inputs"].is_array() || root["inputs"].empty())
        throw InvalidInputError("config: 'inputs' must be a non-empty array");
    for (const json& e : root["inputs"]) cfg.inputs.push_back(parse_entry(e));

    if (!root.contains("cuts") || !root["cuts"].is_array() || root["cuts"].empty())
        throw InvalidInputError("config: 'cuts' must be a non-empty array");
    for (const json& e : root["cuts"]) cfg.cuts.push_back(cut_from_name(e.get<std::string>()));

    if (!root.contains("methods") || !root["methods"].is_array() || root["methods"].empty())
        throw InvalidInputError("config: 'methods' must be a non-empty array");
    for (const json& e : root["methods"])
        cfg.methods.push_back(method_from_name(e.get<std::string>()));

    if (root.contains("k_neighbors")) cfg.k_neighbors = root["k_neighbors"].get<int>();
    if (cfg.k_neighbors < 1)
        throw InvalidInputError("config: k_neighbors must be positive");

    if (root.contains("eta_grid")) {
        cfg.eta_grid.clear();
        for (const json& e : root["eta_grid"]) {
            double v = e.get<double>();
            if (v < 0.0) throw InvalidInputError("config: eta values must be nonnegative");
            cfg.eta_grid.push_back(v);
        }
        if (cfg.eta_grid.empty())
            throw InvalidInputError("config: 'eta_grid' must not be empty");
    }

    if (!root.contains("seeds") || !root["seeds"].is_array() || root["seeds"].empty())
        throw InvalidInputError("config: 'seeds' must be a non-empty array");
    for (const json& e : root["seeds"]) cfg.seeds.push_back(e.get<std::uint64_t>());

    cfg.output_dir = root.value("output_dir", std::string(""));
    return cfg;
}

BenchConfig load_bench_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InvalidInputError("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_bench_config(buf.str());
}

namespace {

struct PreparedInput {
    DatasetEntry entry;
    std::vector<int> truth; // empty when unlabeled
    // one per cut, same order as cfg.cuts
    std::vector<Graph> graphs;
    std::vector<RelaxedSolution> relaxed;
};

PreparedInput prepare_input(const DatasetEntry& entry, const BenchConfig& cfg) {
    PreparedInput out;
    out.entry = entry;
    Matrix features;
    Matrix raw_weights;
    bool is_graph = entry.kind == DatasetEntry::Kind::graph_csv;
    switch (entry.kind) {
        case DatasetEntry::Kind::features_csv: {
            DataMatrix dm = load_csv_matrix(entry.path, {entry.has_header, entry.labels_last});
            features = dm.features;
            out.truth = dm.labels;
            break;
        }
        case DatasetEntry::Kind::graph_csv: {
            DataMatrix dm = load_csv_matrix(entry.path, {entry.has_header, false});
            raw_weights = dm.features;
            break;
        }
        case DatasetEntry::Kind::blobs: {
            DataMatrix dm = gen_blobs(entry.n, entry.clusters, entry.dim, entry.spread, entry.seed);
            features = dm.features;
            out.truth = dm.labels;
            break;
        }
    }
    for (Cut cut : cfg.cuts) {
        Graph g = is_graph ? build_graph_from_weights(raw_weights, cut)
                           : build_graph(features, cfg.k_neighbors, cut);
        RelaxedSolution rs = solve_relaxed(g, entry.clusters);
        out.graphs.push_back(std::move(g));
        out.relaxed.push_back(std::move(rs));
    }
    return out;
}

RunReport run_cell(const PreparedInput& input, const BenchConfig& cfg, std::size_t cut_idx,
                   Method method, std::uint64_t master_seed) {
    const Graph& g = input.graphs[cut_idx];
    const RelaxedSolution& rs = input.relaxed[cut_idx];
    Cut cut = cfg.cuts[cut_idx];
    std::uint64_t cell_seed =
        hash_cell(input.entry.id, cut_name(cut), method_name(method), master_seed);

    DiscretizerConfig dc;
    dc.method = method;
    dc.seed = cell_seed;

    RunReport report;
    report.dataset = input.entry.id;
    report.cut = cut;
    report.method = method;
    report.seed = master_seed;
    report.relaxed_lower_bound = rs.lower_bound();

    DiscretizeResult best;
    bool have = false;
    double best_wall = 0.0;
    if (method == Method::first_order) {
        for (double eta : cfg.eta_grid) {
            dc.eta = eta;
            auto t0 = std::chrono::steady_clock::now();
            DiscretizeResult res = discretize(rs, g, dc);
            auto t1 = std::chrono::steady_clock::now();
            double wall = std::chrono::duration<double, std::milli>(t1 - t0).count();
            if (!have || res.report.final_objective < best.report.final_objective) {
                best = std::move(res);
                best_wall = wall;
                report.eta = eta;
                have = true;
            }
        }
    } else {
        auto t0 = std::chrono::steady_clock::now();
        best = discretize(rs, g, dc);
        auto t1 = std::chrono::steady_clock::now();
        best_wall = std::chrono::duration<double, std::milli>(t1 - t0).count();
    }

    report.objective = best.report.final_objective;
    report.iterations = best.report.iterations;
    report.wall_ms = best_wall;
    if (report.objective < report.relaxed_lower_bound - 1e-9)
        throw NumericalError("bench: objective fell below the relaxed lower bound");

    if (!input.truth.empty()) {
        try {
            report.acc = accuracy(input.truth, best.assignment.labels);
        } catch (const InvalidInputError&) {
            // degenerate or over-split prediction: accuracy undefined, skip
        }
        report.nmi = nmi(input.truth, best.assignment.labels);
    }
    return report;
}

} // namespace

BenchOutcome run_bench(const BenchConfig& cfg) {
    if (cfg.inputs.empty() || cfg.cuts.empty() || cfg.methods.empty() || cfg.seeds.empty())
        throw InvalidInputError("bench: inputs, cuts, methods and seeds must be non-empty");

    std::vector<PreparedInput> prepared;
    prepared.reserve(cfg.inputs.size());
    for (const DatasetEntry& e : cfg.inputs) prepared.push_back(prepare_input(e, cfg));

    struct CellKey {
        std::size_t input, cut, seed, method;
    };
    std::vector<CellKey> cells;
    for (std::size_t i = 0; i < cfg.inputs.size(); ++i)
        for (std::size_t cu = 0; cu < cfg.cuts.size(); ++cu)
            for (std::size_t s = 0; s < cfg.seeds.size(); ++s)
                for (std::size_t m = 0; m < cfg.methods.size(); ++m)
                    cells.push_back({i, cu, s, m});

    BenchOutcome outcome;
    outcome.reports.resize(cells.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    unsigned workers = cfg.jobs > 0 ? static_cast<unsigned>(cfg.jobs)
                                    : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(cells.size()));

    auto worker = [&]() {
        while (true) {
            std::size_t k = next.fetch_add(1);
            if (k >= cells.size()) break;
            const CellKey& cell = cells[k];
            try {
                outcome.reports[k] =
                    run_cell(prepared[cell.input], cfg, cell.cut, cfg.methods[cell.method],
                             cfg.seeds[cell.seed]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };

    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    return outcome;
}

namespace {

std::string csv_escape(const std::string& s) {
    // dataset ids are plain tokens; commas would corrupt rows
    if (s.find(',') != std::string::npos || s.find('"') != std::string::npos ||
        s.find('\n') != std::string::npos)
        throw InvalidInputError("report: dataset id contains CSV control characters");
    return s;
}

} // namespace

std::string reports_to_csv(const std::vector<RunReport>& reports) {
    std::ostringstream out;
    out << "dataset,cut,method,seed,eta,objective,relaxed_lower_bound,iterations,acc,nmi\n";
    for (const RunReport& r : reports) {
        out << csv_escape(r.dataset) << ',' << cut_name(r.cut) << ',' << method_name(r.method)
            << ',' << r.seed << ',';
        if (r.eta) out << format_double(*r.eta);
        out << ',' << format_double(r.objective) << ',' << format_double(r.relaxed_lower_bound)
            << ',' << r.iterations << ',';
        if (r.acc) out << format_double(*r.acc);
        out << ',';
        if (r.nmi) out << format_double(*r.nmi);
        out << '\n';
    }
    return out.str();
}

std::string timings_to_csv(const std::vector<RunReport>& reports) {
    std::ostringstream out;
    out << "dataset,cut,method,seed,wall_ms\n";
    for (const RunReport& r : reports)
        out << csv_escape(r.dataset) << ',' << cut_name(r.cut) << ',' << method_name(r.method)
            << ',' << r.seed << ',' << format_double(r.wall_ms) << '\n';
    return out.str();
}

std::string markdown_table(const BenchOutcome& outcome, const BenchConfig& cfg, Cut cut) {
    auto fmt = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.4f", v);
        return std::string(buf);
    };

    std::ostringstream out;
    out << "| dataset | OPT_r |";
    for (Method m : cfg.methods) out << ' ' << method_name(m) << " |";
    out << "\n|---|---:|";
    for (std::size_t i = 0; i < cfg.methods.size(); ++i) out << "---:|";
    out << '\n';

    for (const DatasetEntry& entry : cfg.inputs) {
        double opt_r = 0.0;
        std::vector<double> best(cfg.methods.size(),
                                 std::numeric_limits<double>::infinity());
        for (const RunReport& r : outcome.reports) {
            if (r.dataset != entry.id || r.cut != cut) continue;
            opt_r = r.relaxed_lower_bound;
            for (std::size_t m = 0; m < cfg.methods.size(); ++m)
                if (cfg.methods[m] == r.method)
                    best[m] = std::min(best[m], r.objective);
        }
        double row_min = *std::min_element(best.begin(), best.end());
        out << "| " << entry.id << " | " << fmt(opt_r) << " |";
        for (double v : best) {
            if (v == row_min) out << " **" << fmt(v) << "** |";
            else out << ' ' << fmt(v) << " |";
        }
        out << '\n';
    }
    return out.str();
}

void write_bench_outputs(const BenchConfig& cfg, const BenchOutcome& outcome) {
    if (cfg.output_dir.empty())
        throw InvalidInputError("bench: output_dir is empty");
    std::filesystem::create_directories(cfg.output_dir);
    auto write = [&](const std::string& name, const std::string& content) {
        std::string path = cfg.output_dir + "/" + name;
        std::ofstream out(path);
        if (!out) throw InvalidInputError("bench: cannot write '" + path + "'");
        out << content;
    };
    write("runs.csv", reports_to_csv(outcome.reports));
    write("timings.csv", timings_to_csv(outcome.reports));
    for (Cut cut : cfg.cuts)
        write(std::string("table_") + cut_name(cut) + ".md", markdown_table(outcome, cfg, cut));
}

} // namespace scd
