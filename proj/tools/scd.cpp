#include <iostream>

#include <CLI11.hpp>

#include "scd/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Spectral clustering discretization toolkit"};
    app.require_subcommand(1);

    scd::DiscretizeArgs dargs;
    CLI::App* disc = app.add_subcommand("discretize", "Discretize one dataset and report JSON");
    disc->add_option("--input", dargs.input, "CSV file")->required();
    disc->add_option("--input-kind", dargs.input_kind, "features|graph")
        ->check(CLI::IsMember({"features", "graph"}));
    disc->add_option("--clusters", dargs.clusters, "cluster count")->required();
    disc->add_option("--cut", dargs.cut, "ratio|normalized")
        ->check(CLI::IsMember({"ratio", "normalized"}));
    disc->add_option("--method", dargs.method, "km|km_norm|sr|isr|first_order")->required();
    disc->add_option("--eta", dargs.eta, "gradient weight (first_order)");
    disc->add_option("--k", dargs.k, "neighbor count for feature inputs");
    disc->add_option("--seed", dargs.seed, "RNG seed");
    disc->add_option("--output", dargs.output, "JSON output path (default stdout)");
    disc->add_flag("--has-header", dargs.has_header, "skip the first CSV line");
    disc->add_option("--labels", dargs.labels, "none|last: trailing label column")
        ->check(CLI::IsMember({"none", "last"}));

    scd::BenchArgs bargs;
    CLI::App* bench = app.add_subcommand("bench", "Run a benchmark grid from a JSON config");
    bench->add_option("config", bargs.config_path, "JSON config file")->required();
    bench->add_option("--output-dir", bargs.output_dir, "overrides the config's output_dir");
    bench->add_option("--jobs", bargs.jobs, "worker threads (default: hardware)");

    scd::SimulateArgs sargs;
    CLI::App* sim = app.add_subcommand(
        "simulate", "Measure how often the rotation-closest partition misses the optimum");
    sim->add_option("--n-list", sargs.n_list, "instance sizes")->delimiter(',');
    sim->add_option("--trials", sargs.trials, "graphs per size");
    sim->add_option("--clusters", sargs.clusters, "cluster count");
    sim->add_option("--seed", sargs.seed, "RNG seed");
    sim->add_option("--output", sargs.output, "CSV output path (default stdout)");

    scd::TheoryCheckArgs targs;
    CLI::App* theory = app.add_subcommand("theory-check", "Randomized analysis suites");
    theory->add_option("--trials", targs.trials, "instances per suite");
    theory->add_option("--seed", targs.seed, "RNG seed");
    theory->add_option("--output", targs.output, "per-instance CSV path");

    scd::OracleArgs oargs;
    CLI::App* oracle = app.add_subcommand("oracle", "Exhaustive optimum on a tiny instance");
    oracle->add_option("--input", oargs.input, "CSV file")->required();
    oracle->add_option("--input-kind", oargs.input_kind, "features|graph")
        ->check(CLI::IsMember({"features", "graph"}));
    oracle->add_option("--clusters", oargs.clusters, "cluster count")->required();
    oracle->add_option("--cut", oargs.cut, "ratio|normalized")
        ->check(CLI::IsMember({"ratio", "normalized"}));
    oracle->add_option("--k", oargs.k, "neighbor count for feature inputs");
    oracle->add_option("--output", oargs.output, "JSON output path (default stdout)");
    oracle->add_flag("--has-header", oargs.has_header, "skip the first CSV line");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (disc->parsed()) return scd::cmd_discretize(dargs, std::cout, std::cerr);
    if (bench->parsed()) return scd::cmd_bench(bargs, std::cout, std::cerr);
    if (sim->parsed()) return scd::cmd_simulate(sargs, std::cout, std::cerr);
    if (theory->parsed()) return scd::cmd_theory_check(targs, std::cout, std::cerr);
    if (oracle->parsed()) return scd::cmd_oracle(oargs, std::cout, std::cerr);
    return 2;
}
