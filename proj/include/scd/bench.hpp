#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scd/dataset.hpp"
#include "scd/discretize.hpp"
#include "scd/graph.hpp"

namespace scd {

// One benchmark input: either a CSV on disk or a seeded blob generator.
struct DatasetEntry {
    std::string id;
    enum class Kind { features_csv, graph_csv, blobs } kind = Kind::features_csv;
    std::string path;           // csv kinds
    bool has_header = false;    // features_csv
    bool labels_last = false;   // features_csv
    int n = 0, clusters_hint = 0, dim = 2; // blobs
    double spread = 1.0;
    std::uint64_t seed = 0;
    int clusters = 0;           // target cluster count for the run
};

struct BenchConfig {
    std::vector<DatasetEntry> inputs;
    std::vector<Cut> cuts;
    std::vector<Method> methods;
    int k_neighbors = 10;
    std::vector<double> eta_grid = {1e-3, 1e-2, 1e-1, 1.0, 10.0};
    std::vector<std::uint64_t> seeds;
    std::string output_dir;
    int jobs = 0; // worker threads; 0 = hardware concurrency
};

// Strict parse: unknown keys anywhere are rejected, required keys enforced.
BenchConfig parse_bench_config(const std::string& json_text);
BenchConfig load_bench_config(const std::string& path);

struct RunReport {
    std::string dataset;
    Cut cut = Cut::ratio;
    Method method = Method::km;
    std::uint64_t seed = 0;
    std::optional<double> eta; // first_order only: the grid winner
    double objective = 0.0;
    double relaxed_lower_bound = 0.0;
    int iterations = 0;
    double wall_ms = 0.0; // discretizer only; kept out of deterministic files
    std::optional<double> acc;
    std::optional<double> nmi;
};

struct BenchOutcome {
    std::vector<RunReport> reports; // grid order: input, cut, seed, method
};

// Runs the full grid on a bounded worker pool. Each cell's seed derives from
// (dataset id, cut, method, master seed); first_order cells try every eta in
// the grid and keep the lowest objective (ties to the smallest eta).
BenchOutcome run_bench(const BenchConfig& cfg);

// Deterministic serializations (no wall-clock content).
std::string reports_to_csv(const std::vector<RunReport>& reports);
std::string timings_to_csv(const std::vector<RunReport>& reports);
std::string markdown_table(const BenchOutcome& outcome, const BenchConfig& cfg, Cut cut);

// Writes runs.csv, table_<cut>.md per cut, and timings.csv under output_dir.
void write_bench_outputs(const BenchConfig& cfg, const BenchOutcome& outcome);

} // namespace scd
