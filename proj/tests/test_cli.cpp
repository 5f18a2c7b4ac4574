#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "permword/cli.hpp"

using namespace permword;
using cli::Json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "permword");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> keys(const Json& j)
{
    std::vector<std::string> out;
    for (const auto& [k, v] : j.items())
        out.push_back(k);
    return out;
}

std::string temp_file(const std::string& name, const std::string& body)
{
    const auto path = std::filesystem::temp_directory_path() / ("permword_test_" + name);
    std::ofstream(path) << body;
    return path.string();
}

const std::vector<std::string> record_keys{"subcommand", "params", "seed", "timestamp", "build_id", "payload", "wall_ms"};

} // namespace

TEST(Cli, RecordSchema)
{
    const std::map<std::string, std::pair<std::vector<std::string>, std::vector<std::string>>> cases{
        {"shrink",
         {{"--n", "20", "--seed", "1"},
          {"n", "seed", "success", "support", "iterations", "expanded_length", "node_count", "trial_counts", "walk_tries",
           "support_trace", "long_cycle_length", "walk_length", "length_budget", "verified", "element", "g", "h"}}},
        {"synth",
         {{"--n", "20", "--seed", "7"},
          {"n", "seed", "target", "target_spec", "success", "verified", "expanded_length", "node_count", "factors",
           "relocation_draws", "used_witness", "length_budget", "within_budget", "long_cycle_length",
           "base_third_label", "g", "h"}}},
        {"schreier-gap",
         {{"--n", "8", "--seed", "1"},
          {"n", "ell", "seed", "vertices", "lambda1", "gap", "residual", "iters_used", "converged", "g", "h"}}},
        {"gap-exact",
         {{"--n", "5"}, {"n", "gap", "gap_value", "second", "attaining", "partitions", "matches_reference"}}},
        {"gap-brute", {{"--n", "4"}, {"n", "brute_spectrum", "char_ratio_spectrum", "max_abs_difference", "match"}}},
        {"mix-exact",
         {{"--n", "4"},
          {"n", "group", "walk", "eps", "cap", "group_order", "generators", "k_vs_distance", "strong_mixing_time",
           "strong_is_minimal", "l2_mixing_time", "linf_mixing_time_eps2", "argu_holds", "max_mass_error"}}},
        {"compare",
         {{"--n", "5", "--seed", "1"},
          {"n", "seed", "group", "oracle", "mode", "A", "gap_reference", "gap_lower_bound", "words_used",
           "max_word_length", "per_generator", "per_symbol_sum", "sample_error", "dense_gap", "transfer_holds", "g",
           "h"}}},
    };
    for (const auto& [sub, c] : cases) {
        auto args = c.first;
        args.insert(args.begin(), sub);
        const auto r = run(args);
        ASSERT_EQ(r.code, 0) << sub << ": " << r.err;
        const auto rec = Json::parse(r.out);
        EXPECT_EQ(keys(rec), record_keys) << sub;
        EXPECT_EQ(rec["subcommand"], sub);
        EXPECT_EQ(keys(rec["payload"]), c.second) << sub;
        EXPECT_TRUE(rec["wall_ms"].is_number());
    }
}

TEST(Cli, GapExact)
{
    const auto r = run({"gap-exact", "--n", "5"});
    ASSERT_EQ(r.code, 0);
    const auto rec = Json::parse(r.out);
    EXPECT_EQ(rec["payload"]["gap"], "3/4");
    EXPECT_TRUE(rec["payload"]["matches_reference"].get<bool>());

    const auto t = run({"gap-exact", "--n", "5", "--table"});
    ASSERT_EQ(t.code, 0);
    EXPECT_EQ(t.out.rfind("partition,eigenvalue\n", 0), 0u);
    EXPECT_NE(t.out.find("\"(4,1)\",1/4"), std::string::npos);
}

TEST(Cli, UsageErrors)
{
    EXPECT_EQ(run({"frobnicate"}).code, cli::exit_usage);
    EXPECT_EQ(run({}).code, cli::exit_usage);
    EXPECT_EQ(run({"shrink"}).code, cli::exit_usage);            // --n is required
    EXPECT_EQ(run({"shrink", "--n", "5"}).code, cli::exit_usage); // n >= 8
    EXPECT_EQ(run({"gap-exact", "--n", "abc"}).code, cli::exit_usage);
    EXPECT_EQ(run({"compare", "--n", "5", "--mode", "bogus"}).code, cli::exit_usage);
    EXPECT_EQ(run({"gap-exact", "--help"}).code, cli::exit_ok);
}

TEST(Cli, RetryExhaustedExitsOne)
{
    // n = 12 seed 2 has no long-cycle element.
    const auto r = run({"synth", "--n", "12", "--seed", "2"});
    ASSERT_EQ(r.code, cli::exit_retry);
    const auto rec = Json::parse(r.out);
    EXPECT_FALSE(rec["payload"]["success"].get<bool>());
    EXPECT_TRUE(rec["payload"]["error"].is_string());
}

TEST(Cli, SynthDeterministic)
{
    const auto a = run({"synth", "--n", "20", "--seed", "7", "--emit-word"});
    const auto b = run({"synth", "--n", "20", "--seed", "7", "--emit-word"});
    ASSERT_EQ(a.code, 0);
    const auto ra = Json::parse(a.out), rb = Json::parse(b.out);
    EXPECT_EQ(ra["payload"], rb["payload"]);
    EXPECT_TRUE(ra["payload"]["verified"].get<bool>());
    const auto w = parse_word(ra["payload"]["word"].get<std::string>());
    const auto g = parse_permutation(ra["payload"]["g"].get<std::string>(), 20);
    const auto h = parse_permutation(ra["payload"]["h"].get<std::string>(), 20);
    const auto target = parse_permutation(ra["payload"]["target"].get<std::string>(), 20);
    EXPECT_EQ(evaluate(w, g, h), target);
}

TEST(Cli, ExecuteNormalizesParams)
{
    const auto o = cli::execute("gap-exact", Json{{"n", 6}});
    ASSERT_EQ(o.code, 0);
    EXPECT_EQ(o.record["params"]["table"], false);
    EXPECT_EQ(o.record["payload"]["gap"], "3/5");
    EXPECT_EQ(cli::execute("gap-exact", Json{{"n", 6}, {"bogus", 1}}).code, cli::exit_usage);
    EXPECT_TRUE(cli::execute("gap-exact", Json{{"bogus", 1}}).record.is_null());
}

TEST(Cli, SweepCsv)
{
    const auto r = cli::run_sweep(Json::parse(R"({"subcommand": "gap-exact", "n": {"from": 5, "to": 8}})"));
    EXPECT_EQ(r.rows, 4u);
    EXPECT_EQ(r.failed, 0u);
    std::istringstream lines(r.csv);
    std::string header, row;
    std::getline(lines, header);
    EXPECT_EQ(header.rfind("subcommand,n,seed,status,exit_code,", 0), 0u);
    EXPECT_EQ(header.substr(header.size() - 6), ",error");
    int count = 0;
    while (std::getline(lines, row)) {
        ++count;
        EXPECT_NE(row.find(",ok,0,"), std::string::npos);
    }
    EXPECT_EQ(count, 4);
    EXPECT_NE(r.csv.find("3/7"), std::string::npos);

    const auto empty = cli::run_sweep(Json::parse(R"({"subcommand": "gap-exact", "n": {"from": 6, "to": 5}})"));
    EXPECT_EQ(empty.rows, 0u);
    EXPECT_EQ(std::count(empty.csv.begin(), empty.csv.end(), '\n'), 1);
}

TEST(Cli, SweepFlagsFailures)
{
    const auto r = cli::run_sweep(Json::parse(R"({"subcommand": "synth", "n": 12, "seeds": [2], "threads": 2})"));
    EXPECT_EQ(r.rows, 1u);
    EXPECT_EQ(r.failed, 1u);
    EXPECT_NE(r.csv.find(",retry_exhausted,1,"), std::string::npos);
}

TEST(Cli, SweepThroughDispatch)
{
    const auto cfg = temp_file("sweep.json", R"({"subcommand": "gap-brute", "n": [4, 5]})");
    const auto r = run({"sweep", "--config", cfg});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("gap-brute,4,"), std::string::npos);
    EXPECT_NE(r.out.find("gap-brute,5,"), std::string::npos);
    EXPECT_EQ(run({"sweep", "--config", "/nonexistent/sweep.json"}).code, cli::exit_usage);
    const auto bad = temp_file("bad.json", "{not json");
    EXPECT_EQ(run({"sweep", "--config", bad}).code, cli::exit_usage);
    const auto unknown = temp_file("unknown.json", R"({"subcommand": "nope", "n": 5})");
    EXPECT_EQ(run({"sweep", "--config", unknown}).code, cli::exit_usage);
}
