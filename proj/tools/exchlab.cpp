#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "exchlab/decomposition.hpp"
#include "exchlab/distribution.hpp"
#include "exchlab/error.hpp"
#include "exchlab/experiment.hpp"
#include "exchlab/graph.hpp"

namespace {

using namespace exchlab;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitUnsatisfiable = 3;
constexpr int kExitIo = 4;

std::ifstream open_input(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open '" + path + "'");
    return in;
}

struct ScenarioArgs {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string format;
};

int run_experiment(const std::optional<std::string>& expected, const ScenarioArgs& a)
{
    auto cfg = load_config(a.config, a.seed);
    if (expected && cfg.scenario != *expected)
        throw ConfigError("config error at 'scenario': file names '" + cfg.scenario + "' but the command is '" +
                          *expected + "'");
    if (!a.out.empty())
        cfg.out_path = a.out;
    if (!a.format.empty())
        cfg.format = a.format;
    const auto format = parse_format(cfg.format);

    const auto start = std::chrono::steady_clock::now();
    const Report report = run_scenario(cfg);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

    if (cfg.out_path.empty() || cfg.out_path == "-")
        emit_report(report, format, std::cout);
    else
        emit_report(report, format, cfg.out_path);
    std::cerr << cfg.scenario << ": " << report.cells.size() << " cells, " << report.failures().size()
              << " failed assertions, " << elapsed.count() << " s\n";
    for (const auto* f : report.failures()) {
        std::cerr << "  FAIL " << f->metric;
        for (const auto& [k, v] : f->keys)
            std::cerr << ' ' << k << '=' << v;
        std::cerr << " value=" << format_double(f->estimate) << '\n';
    }
    return report.all_pass() ? kExitOk : kExitFailure;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Finite exchangeable sequences, their mixture representations, and conditional random graphs"};
    app.require_subcommand(1);

    ScenarioArgs sargs;
    std::optional<std::string> chosen;
    auto add_scenario_options = [&](CLI::App* sub) {
        sub->add_option("--config", sargs.config, "JSON config file")->required();
        sub->add_option("--seed", sargs.seed, "override the config seed");
        sub->add_option("--out", sargs.out, "report path ('-' for stdout)");
        sub->add_option("--format", sargs.format, "report format")->check(CLI::IsMember({"csv", "jsonl"}));
    };
    auto* run = app.add_subcommand("run", "run the scenario named in the config");
    add_scenario_options(run);
    for (const auto& name : scenario_names()) {
        auto* sub = app.add_subcommand(name, "run scenario " + name);
        add_scenario_options(sub);
        sub->callback([&chosen, name] { chosen = name; });
    }

    std::string dist_path;
    auto* decompose = app.add_subcommand("decompose", "order-respecting elementary decomposition of a distribution");
    decompose->add_option("--dist", dist_path, "distribution file")->required();
    auto* signed_cmd = app.add_subcommand("signed", "signed Bernoulli mixture of a binary exchangeable distribution");
    signed_cmd->add_option("--dist", dist_path, "distribution file")->required();

    std::string graph_path;
    auto* metrics = app.add_subcommand("metrics", "degree, diameter and connectivity of a graph");
    metrics->add_option("--graph", graph_path, "graph file")->required();

    std::size_t N = 0, K = 0, k = 0;
    auto* tvbound = app.add_subcommand("tvbound", "exact TV of k urn draws to the i.i.d. witness, against 4k/N");
    tvbound->add_option("--N", N, "urn size")->required();
    tvbound->add_option("--K", K, "ones in the urn")->required();
    tvbound->add_option("--k", k, "draws")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (run->parsed() || chosen)
            return run_experiment(chosen, sargs);
        if (decompose->parsed()) {
            auto in = open_input(dist_path);
            write_decomposition(std::cout, general_decomposition(read_distribution(in)));
        } else if (signed_cmd->parsed()) {
            auto in = open_input(dist_path);
            write_signed_result(std::cout, signed_mixture_solve(read_distribution(in)));
        } else if (metrics->parsed()) {
            auto in = open_input(graph_path);
            const auto m = graph_metrics(read_graph(in));
            std::cout << "min_degree\t" << m.min_degree << "\navg_degree\t" << format_double(m.avg_degree)
                      << "\nconnected\t" << (m.connected ? "true" : "false") << "\ndiameter\t"
                      << (m.diameter ? std::to_string(*m.diameter) : "inf") << "\nkappa\t" << m.kappa
                      << "\nlambda\t" << m.lambda << '\n';
        } else if (tvbound->parsed()) {
            const auto r = df_bound_check(N, K, k);
            std::cout << "tv\t" << format_double(r.tv) << "\ntv_exact\t" << r.tv_exact.value_or("n/a") << "\nbound\t"
                      << format_double(r.bound) << "\npass\t" << (r.pass ? "true" : "false") << '\n';
            return r.pass ? kExitOk : kExitFailure;
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        std::cerr << e.what() << '\n';
        return kExitConfig;
    } catch (const InvalidArgument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ConditionUnsatisfiable& e) {
        std::cerr << "condition unsatisfiable: " << e.what() << '\n';
        return kExitUnsatisfiable;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}
