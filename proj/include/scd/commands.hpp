#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace scd {

// Subcommand entry points. Each returns a process exit code: 0 success,
// 2 invalid input, 3 numerical failure. Diagnostics go to err.

struct DiscretizeArgs {
    std::string input;
    std::string input_kind = "features"; // features | graph
    int clusters = 2;
    std::string cut = "ratio";
    std::string method = "first_order";
    double eta = 1e-3;
    int k = 10;
    std::uint64_t seed = 0;
    std::string output;       // JSON path; empty = stdout
    bool has_header = false;
    std::string labels = "none"; // none | last
};
int cmd_discretize(const DiscretizeArgs& args, std::ostream& out, std::ostream& err);

struct BenchArgs {
    std::string config_path;
    std::string output_dir; // overrides config when nonempty
    int jobs = 0;
};
int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err);

struct SimulateArgs {
    std::vector<int> n_list = {3, 4, 5};
    int trials = 100;
    int clusters = 2;
    std::uint64_t seed = 0;
    std::string output; // CSV path; empty = stdout
};
int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err);

struct TheoryCheckArgs {
    int trials = 200;
    std::uint64_t seed = 0;
    std::string output; // per-instance CSV path; empty = no file
};
int cmd_theory_check(const TheoryCheckArgs& args, std::ostream& out, std::ostream& err);

struct OracleArgs {
    std::string input;
    std::string input_kind = "graph"; // features | graph
    int clusters = 2;
    std::string cut = "ratio";
    int k = 10;
    std::string output; // JSON path; empty = stdout
    bool has_header = false;
};
int cmd_oracle(const OracleArgs& args, std::ostream& out, std::ostream& err);

} // namespace scd
