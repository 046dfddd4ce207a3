// Command-line front end: stochastic rewriting simulation, exact chain
// analysis, rate/average-rewritings sweeps, adversarial worst-case search
// and the brute-force verification checks. CSV for anything plotted, JSON
// for scalar results.
//
// Exit codes: 0 success, 1 usage error, 2 runtime failure (state cap
// exceeded, non-convergence, failed verification, I/O error).

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "flashlab/core.hpp"
#include "flashlab/markov.hpp"
#include "flashlab/simulate.hpp"
#include "flashlab/verify.hpp"

namespace {

using nlohmann::json;

struct CliConfig {
    int n = 0;
    int k = 0;
    int q = 0;
    std::string code = "layered";
    std::string probs = "uniform";
    std::uint64_t erases = 10000;
    std::uint64_t seed = 1;
    std::string out;
    std::string stats_path;
    std::string dump_chain;
    double tol = 1e-12;
    std::size_t max_iter = 1'000'000;
    std::size_t cap = flashlab::kDefaultTransitionCap;
    int depth = 8;
    std::string n_list = "4,6,8,10";
};

unsigned thread_budget() {
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("FLASHLAB_THREADS")) {
        const long parsed = std::strtol(env, nullptr, 10);
        if (parsed >= 1) threads = std::min<unsigned>(threads, static_cast<unsigned>(parsed));
    }
    return threads;
}

flashlab::CodecKind parse_code(const std::string& name) {
    if (name == "ilifc") return flashlab::CodecKind::Ilifc;
    if (name == "layered") return flashlab::CodecKind::Layered;
    throw std::invalid_argument("unknown code '" + name + "' (expected ilifc or layered)");
}

// "uniform" or a comma-separated list of k probabilities summing to 1
// within 1e-9 (normalized before use).
flashlab::FlipDistribution parse_probs(const std::string& text, int k) {
    if (text == "uniform") return flashlab::FlipDistribution::uniform(k);
    std::vector<double> p;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        std::size_t used = 0;
        const double value = std::stod(item, &used);
        if (used != item.size()) throw std::invalid_argument("--p: bad probability '" + item + "'");
        p.push_back(value);
    }
    if (static_cast<int>(p.size()) != k)
        throw std::invalid_argument("--p: expected " + std::to_string(k) + " probabilities, got " + std::to_string(p.size()));
    double sum = 0.0;
    for (double x : p) {
        if (x < 0.0) throw std::invalid_argument("--p: probabilities must be nonnegative");
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("--p: probabilities must sum to 1 (within 1e-9)");
    for (double& x : p) x /= sum;
    return flashlab::FlipDistribution(p);
}

std::vector<int> parse_n_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) out.push_back(std::stoi(item));
    if (out.empty()) throw std::invalid_argument("--n-list: empty");
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
    file << content;
    if (!file) throw std::runtime_error("write to '" + path + "' failed");
}

json config_json(const flashlab::CodeParams& params, const std::string& code, const flashlab::FlipDistribution& dist) {
    return json{{"code", code}, {"n", params.n}, {"k", params.k}, {"q", params.q}, {"m", params.m}, {"p", dist.p}};
}

void emit(const json& doc, const std::string& out_path) {
    const std::string text = doc.dump(2) + "\n";
    std::cout << text;
    if (!out_path.empty()) write_file(out_path, text);
}

int run_simulate(const CliConfig& cli) {
    const flashlab::CodeParams params(cli.n, cli.k, cli.q);
    const auto dist = parse_probs(cli.probs, params.k);
    const flashlab::RunConfig cfg{params, parse_code(cli.code), dist, cli.erases, cli.seed};
    const flashlab::RunStats stats = flashlab::run(cfg);

    if (!cli.out.empty()) {
        std::ostringstream csv;
        flashlab::write_histogram_csv(csv, stats);
        write_file(cli.out, csv.str());
    }
    json doc{{"config", config_json(params, cli.code, dist)},
             {"erases", cli.erases},
             {"seed", cli.seed},
             {"average", stats.average},
             {"erase_rate", stats.erase_rate},
             {"erase_probability", flashlab::erase_probability_sim(stats)},
             {"intervals", stats.intervals.size()},
             {"total_steps", stats.total_steps},
             {"total_writes", stats.total_writes}};
    emit(doc, cli.stats_path);
    return 0;
}

int run_markov(const CliConfig& cli) {
    const flashlab::CodeParams params(cli.n, cli.k, cli.q);
    const auto dist = parse_probs(cli.probs, params.k);
    const auto kind = parse_code(cli.code);
    const flashlab::ChainModel chain = kind == flashlab::CodecKind::Ilifc
                                           ? flashlab::build_chain(flashlab::IlifcCode(params), dist, cli.cap)
                                           : flashlab::build_chain(flashlab::LayeredCode(params), dist, cli.cap);
    if (!cli.dump_chain.empty()) {
        std::ostringstream dump;
        flashlab::write_chain_dump(dump, chain);
        write_file(cli.dump_chain, dump.str());
    }
    const flashlab::StationaryResult result = flashlab::stationary(chain, cli.tol, cli.max_iter);
    json doc{{"config", config_json(params, cli.code, dist)},
             {"states", chain.states.size()},
             {"transitions", chain.transition_count()},
             {"erase_probability", result.erase_probability},
             {"avg_rewritings", result.avg_rewritings},
             {"step_erase_rate", result.step_erase_rate},
             {"residual", result.residual}};
    emit(doc, cli.out);
    return 0;
}

int run_sweep(const CliConfig& cli) {
    const auto n_list = parse_n_list(cli.n_list);
    for (int n : n_list) (void)flashlab::CodeParams(n, cli.k, cli.q); // validate geometry up front
    const auto dist = parse_probs(cli.probs, cli.k);
    const auto rows = flashlab::sweep_tradeoff(cli.k, cli.q, n_list, dist, cli.cap, thread_budget());
    std::ostringstream csv;
    flashlab::write_sweep_csv(csv, rows);
    if (cli.out.empty())
        std::cout << csv.str();
    else
        write_file(cli.out, csv.str());
    return 0;
}

int run_worstcase(const CliConfig& cli) {
    const flashlab::CodeParams params(cli.n, cli.k, cli.q);
    const auto result = flashlab::worst_case(parse_code(cli.code), params, cli.cap);
    json doc{{"config", config_json(params, cli.code, flashlab::FlipDistribution::uniform(params.k))},
             {"min_writes", result.min_writes},
             {"witness", result.witness}};
    emit(doc, cli.out);
    return 0;
}

int run_verify(const CliConfig& cli) {
    const flashlab::CodeParams params(cli.n, cli.k, cli.q);
    json checks = json::array();
    bool all_pass = true;
    auto add_check = [&](const std::string& name, bool pass, json extra) {
        extra["name"] = name;
        extra["pass"] = pass;
        checks.push_back(std::move(extra));
        all_pass = all_pass && pass;
    };

    const flashlab::IlifcCode ilifc(params);
    const flashlab::LayeredCode layered(params);

    const auto consistency_ilifc = flashlab::exhaustive_consistency(ilifc, cli.depth);
    add_check("consistency_ilifc", consistency_ilifc.pass,
              json{{"depth", cli.depth}, {"counterexample", consistency_ilifc.counterexample}, {"detail", consistency_ilifc.detail}});
    const auto consistency_layered = flashlab::exhaustive_consistency(layered, cli.depth);
    add_check("consistency_layered", consistency_layered.pass,
              json{{"depth", cli.depth}, {"counterexample", consistency_layered.counterexample}, {"detail", consistency_layered.detail}});

    const auto decodability_ilifc = flashlab::subblock_decodability(flashlab::CodecKind::Ilifc, params.k, params.q);
    add_check("subblock_decodability_ilifc", decodability_ilifc.pass, json{{"detail", decodability_ilifc.detail}});
    const auto decodability_layered = flashlab::subblock_decodability(flashlab::CodecKind::Layered, params.k, params.q);
    add_check("subblock_decodability_layered", decodability_layered.pass, json{{"detail", decodability_layered.detail}});

    const auto worst_ilifc = flashlab::worst_case(ilifc, flashlab::CodecKind::Ilifc, cli.cap);
    const auto worst_layered = flashlab::worst_case(layered, flashlab::CodecKind::Layered, cli.cap);
    const auto replay_ilifc = flashlab::replay_flips(ilifc, worst_ilifc.witness);
    const auto replay_layered = flashlab::replay_flips(layered, worst_layered.witness);
    const bool equality = worst_ilifc.min_writes == worst_layered.min_writes;
    const bool replays = replay_ilifc.erased && replay_ilifc.writes == worst_ilifc.min_writes && replay_layered.erased &&
                         replay_layered.writes == worst_layered.min_writes;
    add_check("worst_case_equality", equality && replays,
              json{{"ilifc_min_writes", worst_ilifc.min_writes},
                   {"layered_min_writes", worst_layered.min_writes},
                   {"ilifc_witness", worst_ilifc.witness},
                   {"layered_witness", worst_layered.witness}});

    json doc{{"config", config_json(params, "both", flashlab::FlipDistribution::uniform(params.k))},
             {"checks", checks},
             {"pass", all_pass}};
    emit(doc, cli.out);
    return all_pass ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"flash rewriting codes laboratory"};
    app.require_subcommand(1);
    CliConfig cli;

    auto add_geometry = [&cli](CLI::App* cmd) {
        cmd->add_option("--n", cli.n, "cells per erase block")->required();
        cmd->add_option("--k", cli.k, "information bits (even)")->required();
        cmd->add_option("--q", cli.q, "cell levels")->required();
    };

    CLI::App* simulate = app.add_subcommand("simulate", "Monte-Carlo rewriting simulation");
    add_geometry(simulate);
    simulate->add_option("--code", cli.code, "ilifc or layered");
    simulate->add_option("--p", cli.probs, "flip probabilities: uniform or comma list");
    simulate->add_option("--erases", cli.erases, "stop after this many erase operations");
    simulate->add_option("--seed", cli.seed, "RNG seed");
    simulate->add_option("--out", cli.out, "histogram CSV path");
    simulate->add_option("--stats", cli.stats_path, "also write the stats JSON here");

    CLI::App* markov = app.add_subcommand("markov", "exact chain analysis");
    add_geometry(markov);
    markov->add_option("--code", cli.code, "ilifc or layered");
    markov->add_option("--p", cli.probs, "flip probabilities: uniform or comma list");
    markov->add_option("--tol", cli.tol, "stationary residual tolerance");
    markov->add_option("--max-iter", cli.max_iter, "power iteration cap");
    markov->add_option("--cap", cli.cap, "transition count cap");
    markov->add_option("--dump-chain", cli.dump_chain, "write transitions CSV here");
    markov->add_option("--out", cli.out, "also write the result JSON here");

    CLI::App* sweep = app.add_subcommand("sweep", "rate vs average rewritings trade-off");
    sweep->add_option("--k", cli.k, "information bits (even)")->required();
    sweep->add_option("--q", cli.q, "cell levels")->required();
    sweep->add_option("--n-list", cli.n_list, "comma-separated block sizes");
    sweep->add_option("--p", cli.probs, "flip probabilities: uniform or comma list");
    sweep->add_option("--cap", cli.cap, "transition count cap");
    sweep->add_option("--out", cli.out, "sweep CSV path (stdout when omitted)");

    CLI::App* worstcase = app.add_subcommand("worstcase", "adversarial minimum rewrites before erase");
    add_geometry(worstcase);
    worstcase->add_option("--code", cli.code, "ilifc or layered");
    worstcase->add_option("--cap", cli.cap, "search expansion cap");
    worstcase->add_option("--out", cli.out, "also write the result JSON here");

    CLI::App* verify = app.add_subcommand("verify", "brute-force verification report");
    add_geometry(verify);
    verify->add_option("--depth", cli.depth, "exhaustive consistency depth");
    verify->add_option("--cap", cli.cap, "search expansion cap");
    verify->add_option("--out", cli.out, "also write the report JSON here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (simulate->parsed()) return run_simulate(cli);
        if (markov->parsed()) return run_markov(cli);
        if (sweep->parsed()) return run_sweep(cli);
        if (worstcase->parsed()) return run_worstcase(cli);
        if (verify->parsed()) return run_verify(cli);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
