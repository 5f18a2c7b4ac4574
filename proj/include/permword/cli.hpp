#pragma once

#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "permword/compare.hpp"
#include "permword/dense.hpp"
#include "permword/errors.hpp"
#include "permword/parallel.hpp"
#include "permword/perm.hpp"
#include "permword/repgap.hpp"
#include "permword/rng.hpp"
#include "permword/schreier.hpp"
#include "permword/shrink.hpp"
#include "permword/synth.hpp"
#include "permword/walk.hpp"
#include "permword/word.hpp"

#ifndef PERMWORD_BUILD_ID
#define PERMWORD_BUILD_ID "unknown"
#endif

namespace permword::cli {

using Json = nlohmann::ordered_json;

inline constexpr int exit_ok = 0;
inline constexpr int exit_retry = 1;
inline constexpr int exit_usage = 2;

/// Default parameters per subcommand. A null default marks a required key.
inline const std::map<std::string, Json>& subcommand_defaults()
{
    static const std::map<std::string, Json> table{
        {"shrink", {{"n", nullptr}, {"seed", 0}, {"budget_c", 3.0}, {"budget", 10.0}, {"walk_c", 40.0}}},
        {"synth",
         {{"n", nullptr}, {"seed", 0}, {"target", "random-even"}, {"emit_word", false}, {"walk_c", 40.0}}},
        {"schreier-gap", {{"n", nullptr}, {"ell", 3}, {"seed", 0}, {"iters", 5000}, {"tol", 1e-8}}},
        {"gap-exact", {{"n", nullptr}, {"table", false}}},
        {"gap-brute", {{"n", nullptr}}},
        {"mix-exact",
         {{"group", "alt"}, {"n", nullptr}, {"walk", "3cycles"}, {"gens", ""}, {"eps", 0.5}, {"cap", 1000}}},
        {"compare",
         {{"n", nullptr}, {"seed", 0}, {"mode", "exact"}, {"per_generator", false}, {"oracle", "auto"}}},
    };
    return table;
}

inline bool is_known_subcommand(const std::string& sub)
{
    return subcommand_defaults().count(sub) > 0;
}

/// Overlays `given` on the defaults; unknown keys and missing required keys are usage errors.
inline Json normalize_params(const std::string& sub, const Json& given)
{
    const auto it = subcommand_defaults().find(sub);
    if (it == subcommand_defaults().end())
        throw std::invalid_argument("unknown subcommand: " + sub);
    if (!given.is_null() && !given.is_object())
        throw std::invalid_argument("params must be an object");
    Json out = it->second;
    if (given.is_object())
        for (const auto& [k, v] : given.items()) {
            if (!out.contains(k))
                throw std::invalid_argument(sub + ": unknown parameter " + k);
            out[k] = v;
        }
    for (const auto& [k, v] : out.items())
        if (v.is_null())
            throw std::invalid_argument(sub + ": missing parameter " + k);
    return out;
}

namespace detail {

inline std::size_t get_size(const Json& p, const char* key, std::size_t lo = 0)
{
    const Json& v = p.at(key);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
        throw std::invalid_argument(std::string(key) + " must be a non-negative integer");
    const auto x = v.get<std::uint64_t>();
    if (x < lo)
        throw std::invalid_argument(std::string(key) + " must be at least " + std::to_string(lo));
    return static_cast<std::size_t>(x);
}

inline double get_double(const Json& p, const char* key)
{
    const Json& v = p.at(key);
    if (!v.is_number())
        throw std::invalid_argument(std::string(key) + " must be a number");
    return v.get<double>();
}

inline std::string get_string(const Json& p, const char* key)
{
    const Json& v = p.at(key);
    if (!v.is_string())
        throw std::invalid_argument(std::string(key) + " must be a string");
    return v.get<std::string>();
}

inline bool get_bool(const Json& p, const char* key)
{
    const Json& v = p.at(key);
    if (!v.is_boolean())
        throw std::invalid_argument(std::string(key) + " must be true or false");
    return v.get<bool>();
}

inline std::uint64_t get_seed(const Json& p)
{
    const Json& v = p.at("seed");
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0))
        throw std::invalid_argument("seed must be a non-negative integer");
    return v.get<std::uint64_t>();
}

inline std::string utc_timestamp()
{
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, sep))
        if (cur.find_first_not_of(" \t") != std::string::npos)
            out.push_back(cur);
    return out;
}

/// Streams 0, 1, 2 of the run seed: generators, algorithm, targets.
struct Streams {
    Rng gens, work, target;
    explicit Streams(std::uint64_t seed) : gens(Rng(seed).split(0)), work(Rng(seed).split(1)), target(Rng(seed).split(2)) {}
};

inline Json perm_json(const Permutation& p) { return to_cycle_string(p); }

} // namespace detail

inline Json run_shrink(const Json& p)
{
    const std::size_t n = detail::get_size(p, "n", 8);
    const std::uint64_t seed = detail::get_seed(p);
    ShrinkConfig cfg;
    cfg.budget = detail::get_double(p, "budget");
    cfg.budget_c = detail::get_double(p, "budget_c");
    cfg.walk_c = detail::get_double(p, "walk_c");
    if (!(cfg.budget > 0.0) || !(cfg.walk_c > 0.0))
        throw std::invalid_argument("budget and walk_c must be positive");
    detail::Streams st(seed);
    const auto pair = random_generators(n, st.gens);
    const auto r = shrink_support(pair.g, pair.h, st.work, cfg);
    const Word& w = r.element.word;
    return Json{{"n", n},
                {"seed", seed},
                {"success", true},
                {"support", r.support()},
                {"iterations", r.iterations},
                {"expanded_length", w.expanded_length()},
                {"node_count", node_count(w)},
                {"trial_counts", r.trial_counts},
                {"walk_tries", r.walk_tries},
                {"support_trace", r.support_trace},
                {"long_cycle_length", r.long_cycle.length},
                {"walk_length", r.walk_length},
                {"length_budget", r.budget},
                {"verified", evaluate(w, pair.g, pair.h) == r.element.perm},
                {"element", detail::perm_json(r.element.perm)},
                {"g", detail::perm_json(pair.g)},
                {"h", detail::perm_json(pair.h)}};
}

/// perm text, random-even, or random-word:L (L uniform letters from g, h, g⁻¹, h⁻¹).
inline Permutation synth_target(const std::string& spec, const Permutation& g, const Permutation& h, Rng& rng)
{
    const std::size_t n = g.degree();
    if (spec == "random-even") {
        for (;;) {
            Permutation p = random_uniform(n, rng);
            if (is_even(p))
                return p;
        }
    }
    if (spec.rfind("random-word:", 0) == 0) {
        std::size_t pos = 0;
        const std::string num = spec.substr(12);
        const auto L = num.empty() ? 0 : std::stoull(num, &pos);
        if (num.empty() || pos != num.size())
            throw std::invalid_argument("bad word length in target: " + spec);
        std::vector<Symbol> letters(L);
        for (auto& s : letters)
            s = static_cast<Symbol>(rng.below(4));
        return evaluate(Word::from_symbols(letters), g, h);
    }
    return parse_permutation(spec, n);
}

inline Json run_synth(const Json& p)
{
    const std::size_t n = detail::get_size(p, "n", 8);
    const std::uint64_t seed = detail::get_seed(p);
    const std::string target_spec = detail::get_string(p, "target");
    SynthConfig cfg;
    cfg.shrink.walk_c = detail::get_double(p, "walk_c");
    if (!(cfg.shrink.walk_c > 0.0))
        throw std::invalid_argument("walk_c must be positive");
    detail::Streams st(seed);
    const auto pair = random_generators(n, st.gens);
    const Permutation target = synth_target(target_spec, pair.g, pair.h, st.target);
    const SynthContext ctx = prepare_context(pair.g, pair.h, st.work, cfg);
    const auto r = synthesize_detailed(ctx, target, st.work, cfg);
    const bool verified = evaluate(r.word, pair.g, pair.h) == target;
    const double budget = synth_length_budget(n);
    Json out{{"n", n},
             {"seed", seed},
             {"target", detail::perm_json(target)},
             {"target_spec", target_spec},
             {"success", verified},
             {"verified", verified},
             {"expanded_length", r.word.expanded_length()},
             {"node_count", node_count(r.word)},
             {"factors", r.factors},
             {"relocation_draws", r.relocation_draws},
             {"used_witness", r.used_witness},
             {"length_budget", budget},
             {"within_budget", static_cast<double>(r.word.expanded_length()) <= budget},
             {"long_cycle_length", ctx.l},
             {"base_third_label", ctx.x},
             {"g", detail::perm_json(pair.g)},
             {"h", detail::perm_json(pair.h)}};
    if (detail::get_bool(p, "emit_word"))
        out["word"] = serialize(r.word);
    return out;
}

inline Json run_schreier_gap(const Json& p)
{
    const std::size_t n = detail::get_size(p, "n", 2);
    const std::size_t ell = detail::get_size(p, "ell", 1);
    const std::uint64_t seed = detail::get_seed(p);
    const std::size_t iters = detail::get_size(p, "iters", 1);
    const double tol = detail::get_double(p, "tol");
    detail::Streams st(seed);
    const auto pair = random_generators(n, st.gens);
    const TupleGraph graph(pair.g, pair.h, ell);
    const auto est = estimate_gap(graph, iters, tol, st.work);
    return Json{{"n", n},
                {"ell", ell},
                {"seed", seed},
                {"vertices", graph.size()},
                {"lambda1", est.lambda1},
                {"gap", est.gap},
                {"residual", est.residual},
                {"iters_used", est.iters_used},
                {"converged", est.converged},
                {"g", detail::perm_json(pair.g)},
                {"h", detail::perm_json(pair.h)}};
}

/// "partition,eigenvalue" rows for every λ ⊢ n.
inline std::string gap_table_csv(const ExactGap& gap)
{
    std::string out = "partition,eigenvalue\n";
    for (const auto& [lambda, ratio] : gap.table)
        out += "\"" + to_string(lambda) + "\"," + to_string(ratio) + "\n";
    return out;
}

inline Json run_gap_exact(const Json& p)
{
    const std::size_t n = detail::get_size(p, "n");
    const auto gap = spectral_gap_exact(n);
    Json attaining = Json::array();
    for (const auto& a : gap.attaining)
        attaining.push_back(to_string(a));
    const auto nn = static_cast<std::int64_t>(n);
    Json out{{"n", n},
             {"gap", to_string(gap.gap)},
             {"gap_value", static_cast<double>(gap.gap)},
             {"second", to_string(gap.second)},
             {"attaining", attaining},
             {"partitions", gap.table.size()},
             {"matches_reference", gap.gap == Rational(3, nn - 1)}};
    if (detail::get_bool(p, "table")) {
        Json rows = Json::array();
        for (const auto& [lambda, ratio] : gap.table)
            rows.push_back({{"partition", to_string(lambda)}, {"eigenvalue", to_string(ratio)}});
        out["table"] = rows;
    }
    return out;
}

inline Json run_gap_brute(const Json& p)
{
    const std::size_t n = detail::get_size(p, "n");
    if (n < 4)
        throw std::invalid_argument("gap-brute needs n >= 4");
    const auto brute = brute_cayley_spectrum(n);
    const auto ratios = char_ratio_spectrum(n);
    double worst = 0.0;
    bool match = brute.size() == ratios.size();
    if (match)
        for (std::size_t i = 0; i < brute.size(); ++i)
            worst = std::max(worst, std::abs(brute[i] - ratios[i]));
    match = match && worst <= 1e-8;
    return Json{{"n", n},
                {"brute_spectrum", brute},
                {"char_ratio_spectrum", ratios},
                {"max_abs_difference", worst},
                {"match", match}};
}

inline GroupKind parse_group(const std::string& s)
{
    if (s == "alt")
        return GroupKind::alt;
    if (s == "sym")
        return GroupKind::sym;
    throw std::invalid_argument("group must be alt or sym");
}

inline std::vector<Permutation> walk_generators(const std::string& walk, std::size_t n, const std::string& gens)
{
    if (walk == "3cycles")
        return all_three_cycles(n);
    if (walk == "adjacent")
        return adjacent_transpositions(n);
    if (walk == "transpositions")
        return all_transpositions(n);
    if (walk == "custom") {
        std::vector<Permutation> list;
        for (const auto& t : detail::split(gens, ';'))
            list.push_back(parse_permutation(t, n));
        if (list.empty())
            throw std::invalid_argument("custom walk needs --gens");
        for (const auto& x : list)
            if (x.degree() != n)
                throw std::invalid_argument("generator degree differs from n");
        return symmetric_generating_set(list);
    }
    throw std::invalid_argument("walk must be 3cycles, adjacent, transpositions or custom");
}

inline Json run_mix_exact(const Json& p)
{
    const std::size_t n = detail::get_size(p, "n", 3);
    if (n > max_dense_degree)
        throw too_large("mix-exact needs n <= " + std::to_string(max_dense_degree));
    const GroupKind kind = parse_group(detail::get_string(p, "group"));
    const std::string walk = detail::get_string(p, "walk");
    const double eps = detail::get_double(p, "eps");
    const std::size_t cap = detail::get_size(p, "cap");
    if (!(eps > 0.0))
        throw std::invalid_argument("eps must be positive");
    const WalkMeasure m = lazy_measure(walk_generators(walk, n, detail::get_string(p, "gens")));
    const auto group = FiniteGroup::make(kind, n);
    Evolver ev(m, group);
    const double order = static_cast<double>(group->size());

    std::optional<std::size_t> strong, l2_time, linf_time;
    std::optional<double> prev_linf;
    bool strong_minimal = true;
    double mass_error = 0.0;
    Json table = Json::array();
    for (std::size_t k = 0;; ++k) {
        const auto& d = ev.current();
        const double l1 = lp_distance(d, Norm::l1), l2 = lp_distance(d, Norm::l2), li = lp_distance(d, Norm::linf);
        mass_error = std::max(mass_error, std::abs(d.total_mass() - 1.0));
        table.push_back({{"k", k}, {"l1", l1}, {"l2", l2}, {"linf", li}});
        if (!strong && li <= 0.5 / order) {
            strong = k;
            strong_minimal = !prev_linf || *prev_linf > 0.5 / order;
        }
        if (!l2_time && l2 <= eps / order)
            l2_time = k;
        if (!linf_time && li <= eps * eps / order)
            linf_time = k;
        prev_linf = li;
        const bool argu_done = linf_time || (l2_time && k >= 2 * *l2_time + 1);
        if ((strong && l2_time && argu_done) || k == cap)
            break;
        ev.step();
    }
    const auto opt = [](const std::optional<std::size_t>& x) { return x ? Json(*x) : Json(nullptr); };
    Json argu = nullptr;
    if (l2_time && (linf_time || table.size() > 2 * *l2_time + 1))
        argu = linf_time && *linf_time <= 2 * *l2_time;
    return Json{{"n", n},
                {"group", to_string(kind)},
                {"walk", walk},
                {"eps", eps},
                {"cap", cap},
                {"group_order", group->size()},
                {"generators", m.support_size() - 1},
                {"k_vs_distance", table},
                {"strong_mixing_time", opt(strong)},
                {"strong_is_minimal", strong ? Json(strong_minimal) : Json(nullptr)},
                {"l2_mixing_time", opt(l2_time)},
                {"linf_mixing_time_eps2", opt(linf_time)},
                {"argu_holds", argu},
                {"max_mass_error", mass_error}};
}

inline Json run_compare(const Json& p)
{
    const std::size_t n = detail::get_size(p, "n", 5);
    const std::uint64_t seed = detail::get_seed(p);
    const AMode mode = AMode::parse(detail::get_string(p, "mode"));
    const bool per_generator = detail::get_bool(p, "per_generator");
    if (mode.exact && n > max_exact_compare_degree)
        throw too_large("exact mode needs n <= " + std::to_string(max_exact_compare_degree));
    detail::Streams st(seed);
    const auto pair = random_generators(n, st.gens);
    const GroupKind kind = is_even(pair.g) && is_even(pair.h) ? GroupKind::alt : GroupKind::sym;
    const WalkMeasure p_prime = reference_measure(pair.g, pair.h);
    const std::size_t threads = thread_limit();

    std::string oracle_name = detail::get_string(p, "oracle");
    if (oracle_name == "auto")
        oracle_name = n <= max_dense_degree ? "conjugate" : "synth";
    ComparisonReport rep;
    if (oracle_name == "synth") {
        const SynthContext ctx = prepare_context(pair.g, pair.h, st.work);
        rep = compute_A(ctx, mode, st.work, per_generator, threads);
    } else if (oracle_name == "conjugate" || oracle_name == "geodesic") {
        if (n > max_dense_degree)
            throw too_large(oracle_name + " oracle needs n <= " + std::to_string(max_dense_degree));
        std::unique_ptr<WordOracle> oracle;
        if (oracle_name == "conjugate")
            oracle = std::make_unique<ConjugateOracle>(pair.g, pair.h);
        else
            oracle = std::make_unique<GeodesicOracle>(pair.g, pair.h);
        rep = compute_A(pair.g, pair.h, *oracle, p_prime, mode, st.work, per_generator, threads);
    } else {
        throw std::invalid_argument("oracle must be auto, synth, conjugate or geodesic");
    }
    Json dense_gap = nullptr, holds = nullptr;
    if (n <= 6) {
        const double d = dense_spectral_gap(lazy_measure(symmetric_generating_set({pair.g, pair.h})), kind);
        dense_gap = d;
        holds = d >= rep.gap_lower_bound - 1e-12;
    }
    return Json{{"n", n},
                {"seed", seed},
                {"group", to_string(kind)},
                {"oracle", oracle_name},
                {"mode", rep.mode},
                {"A", rep.A},
                {"gap_reference", to_string(rep.gap_reference)},
                {"gap_lower_bound", rep.gap_lower_bound},
                {"words_used", rep.words_used},
                {"max_word_length", rep.max_word_length},
                {"per_generator", rep.per_generator},
                {"per_symbol_sum", rep.per_symbol_sum},
                {"sample_error", rep.sample_error ? Json(*rep.sample_error) : Json(nullptr)},
                {"dense_gap", dense_gap},
                {"transfer_holds", holds},
                {"g", detail::perm_json(pair.g)},
                {"h", detail::perm_json(pair.h)}};
}

/// Payload for one run; params must already be normalized.
inline Json run_payload(const std::string& sub, const Json& params)
{
    if (sub == "shrink")
        return run_shrink(params);
    if (sub == "synth")
        return run_synth(params);
    if (sub == "schreier-gap")
        return run_schreier_gap(params);
    if (sub == "gap-exact")
        return run_gap_exact(params);
    if (sub == "gap-brute")
        return run_gap_brute(params);
    if (sub == "mix-exact")
        return run_mix_exact(params);
    if (sub == "compare")
        return run_compare(params);
    throw std::invalid_argument("unknown subcommand: " + sub);
}

struct Outcome {
    int code = exit_ok;
    Json record; ///< null on usage errors
    std::string error;
};

/// Runs one subcommand and wraps the payload in a run record.
inline Outcome execute(const std::string& sub, const Json& given)
{
    Outcome out;
    Json params;
    try {
        params = normalize_params(sub, given);
    } catch (const std::exception& e) {
        out.code = exit_usage;
        out.error = e.what();
        return out;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Json payload;
    try {
        payload = run_payload(sub, params);
    } catch (const retry_exhausted& e) {
        out.code = exit_retry;
        out.error = e.what();
        payload = Json{{"success", false}, {"error", e.what()}};
    } catch (const std::invalid_argument& e) {
        out.code = exit_usage;
        out.error = e.what();
        return out;
    } catch (const std::out_of_range& e) {
        out.code = exit_usage;
        out.error = e.what();
        return out;
    }
    const auto t1 = std::chrono::steady_clock::now();
    out.record = Json{{"subcommand", sub},
                      {"params", params},
                      {"seed", params.contains("seed") ? params["seed"] : Json(nullptr)},
                      {"timestamp", detail::utc_timestamp()},
                      {"build_id", PERMWORD_BUILD_ID},
                      {"payload", payload},
                      {"wall_ms", std::chrono::duration<double, std::milli>(t1 - t0).count()}};
    return out;
}

// ---- sweep ----

namespace detail {

/// int, list of ints, or {"from": a, "to": b} inclusive.
inline std::vector<std::uint64_t> parse_range(const Json& v, const char* what)
{
    std::vector<std::uint64_t> out;
    const auto as_uint = [&](const Json& x) {
        if (!x.is_number_integer() || (!x.is_number_unsigned() && x.get<std::int64_t>() < 0))
            throw std::invalid_argument(std::string(what) + " entries must be non-negative integers");
        return x.get<std::uint64_t>();
    };
    if (v.is_number())
        out.push_back(as_uint(v));
    else if (v.is_array())
        for (const auto& x : v)
            out.push_back(as_uint(x));
    else if (v.is_object()) {
        if (!v.contains("from") || !v.contains("to"))
            throw std::invalid_argument(std::string(what) + " range needs from and to");
        const Json& to = v["to"];
        const auto a = as_uint(v["from"]);
        if (to.is_number_integer() && !to.is_number_unsigned() && to.get<std::int64_t>() < 0)
            return out;
        for (auto x = a, b = as_uint(to); x <= b; ++x)
            out.push_back(x);
    } else
        throw std::invalid_argument(std::string(what) + " must be an integer, a list or a range");
    return out;
}

inline std::string csv_cell(const Json& v)
{
    if (v.is_null())
        return "";
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") != std::string::npos) {
        std::string q = "\"";
        for (char c : s)
            q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    }
    return s;
}

inline std::string status_name(int code)
{
    switch (code) {
    case exit_ok: return "ok";
    case exit_retry: return "retry_exhausted";
    default: return "usage_error";
    }
}

} // namespace detail

struct SweepResult {
    std::string csv;
    std::size_t rows = 0;
    std::size_t failed = 0;
};

/// Config: {"subcommand", "n", optional "seeds", optional "params", optional "threads"}.
/// Rows run n-major, seed-minor; a failing row is flagged in its status column.
inline SweepResult run_sweep(const Json& config)
{
    if (!config.is_object())
        throw std::invalid_argument("sweep config must be a JSON object");
    if (!config.contains("subcommand") || !config["subcommand"].is_string())
        throw std::invalid_argument("sweep config needs a subcommand");
    const std::string sub = config["subcommand"];
    if (!is_known_subcommand(sub))
        throw std::invalid_argument("sweep: unknown subcommand " + sub);
    if (!config.contains("n"))
        throw std::invalid_argument("sweep config needs n");
    const auto ns = detail::parse_range(config["n"], "n");
    const bool seeded = subcommand_defaults().at(sub).contains("seed");
    std::vector<std::optional<std::uint64_t>> seeds;
    if (seeded && config.contains("seeds"))
        for (auto s : detail::parse_range(config["seeds"], "seeds"))
            seeds.emplace_back(s);
    else
        seeds.emplace_back(seeded ? std::optional<std::uint64_t>(0) : std::nullopt);
    const Json base = config.value("params", Json::object());
    if (!base.is_object())
        throw std::invalid_argument("sweep params must be an object");
    std::size_t threads = thread_limit();
    if (config.contains("threads"))
        threads = std::min(threads, detail::parse_range(config["threads"], "threads").at(0));

    struct Job {
        std::uint64_t n;
        std::optional<std::uint64_t> seed;
    };
    std::vector<Job> jobs;
    for (auto n : ns)
        for (const auto& s : seeds)
            jobs.push_back({n, s});
    std::vector<Outcome> results(jobs.size());
    parallel_for(jobs.size(), std::max<std::size_t>(threads, 1), [&](std::size_t i) {
        Json params = base;
        params["n"] = jobs[i].n;
        if (jobs[i].seed)
            params["seed"] = *jobs[i].seed;
        results[i] = execute(sub, params);
    });

    // Scalar payload keys in order of first appearance.
    std::vector<std::string> columns;
    for (const auto& r : results)
        if (!r.record.is_null())
            for (const auto& [k, v] : r.record["payload"].items())
                if (v.is_primitive() && k != "n" && k != "seed" && k != "error" &&
                    std::find(columns.begin(), columns.end(), k) == columns.end())
                    columns.push_back(k);

    SweepResult out;
    std::string& csv = out.csv;
    csv = "subcommand,n,seed,status,exit_code";
    for (const auto& c : columns)
        csv += "," + detail::csv_cell(c);
    csv += ",error\n";
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const auto& r = results[i];
        csv += sub + "," + std::to_string(jobs[i].n) + "," + (jobs[i].seed ? std::to_string(*jobs[i].seed) : "") +
               "," + detail::status_name(r.code) + "," + std::to_string(r.code);
        for (const auto& c : columns) {
            csv += ",";
            if (!r.record.is_null() && r.record["payload"].contains(c))
                csv += detail::csv_cell(r.record["payload"][c]);
        }
        csv += "," + detail::csv_cell(r.error.empty() ? Json(nullptr) : Json(r.error)) + "\n";
        out.failed += r.code != exit_ok;
    }
    out.rows = jobs.size();
    return out;
}

// ---- argv front end ----

namespace detail {

inline void write_text(const std::string& path, const std::string& text, std::ostream& fallback)
{
    if (path.empty()) {
        fallback << text;
        return;
    }
    std::ofstream f(path);
    if (!f)
        throw std::runtime_error("cannot write " + path);
    f << text;
}

template <class T>
void bind(CLI::App* app, Json& into, const std::string& flag, const std::string& key, const std::string& desc)
{
    app->add_option_function<T>(flag, [&into, key](const T& v) { into[key] = v; }, desc);
}

inline void bind_flag(CLI::App* app, Json& into, const std::string& flag, const std::string& key,
                      const std::string& desc)
{
    app->add_flag_function(flag, [&into, key](std::int64_t c) { into[key] = c > 0; }, desc);
}

} // namespace detail

inline int dispatch(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    CLI::App app{"permword: words, supports and spectral gaps for random pairs in Sym(n)"};
    app.require_subcommand(1);
    std::map<std::string, Json> given;
    std::string json_path, csv_path, config_path;

    auto common = [&](CLI::App* s) { s->add_option("--json", json_path, "write the run record here"); };
    {
        auto* s = app.add_subcommand("shrink", "build a word for a 3-cycle or smaller support element");
        Json& j = given["shrink"];
        detail::bind<std::int64_t>(s, j, "--n", "n", "degree (>= 8)");
        detail::bind<std::uint64_t>(s, j, "--seed", "seed", "run seed");
        detail::bind<double>(s, j, "--budget-c", "budget_c", "exponent c in budget·n·(log2 n)^c");
        detail::bind<double>(s, j, "--budget", "budget", "constant in the length budget");
        detail::bind<double>(s, j, "--walk-c", "walk_c", "walk length constant, k = ceil(C ln n)");
        common(s);
    }
    {
        auto* s = app.add_subcommand("synth", "synthesize a word for a target permutation");
        Json& j = given["synth"];
        detail::bind<std::int64_t>(s, j, "--n", "n", "degree (>= 8)");
        detail::bind<std::uint64_t>(s, j, "--seed", "seed", "run seed");
        detail::bind<std::string>(s, j, "--target", "target", "permutation text, random-even or random-word:L");
        detail::bind_flag(s, j, "--emit-word", "emit_word", "include the serialized word");
        detail::bind<double>(s, j, "--walk-c", "walk_c", "walk length constant");
        common(s);
    }
    {
        auto* s = app.add_subcommand("schreier-gap", "estimate the gap of the tuple Schreier graph");
        Json& j = given["schreier-gap"];
        detail::bind<std::int64_t>(s, j, "--n", "n", "degree");
        detail::bind<std::int64_t>(s, j, "--ell", "ell", "tuple length (1..4)");
        detail::bind<std::uint64_t>(s, j, "--seed", "seed", "run seed");
        detail::bind<std::int64_t>(s, j, "--iters", "iters", "power iteration cap");
        detail::bind<double>(s, j, "--tol", "tol", "residual tolerance");
        common(s);
    }
    {
        auto* s = app.add_subcommand("gap-exact", "exact gap of the 3-cycle walk on Alt(n)");
        Json& j = given["gap-exact"];
        detail::bind<std::int64_t>(s, j, "--n", "n", "degree (>= 5)");
        detail::bind_flag(s, j, "--table", "table", "print partition,eigenvalue CSV");
        common(s);
    }
    {
        auto* s = app.add_subcommand("gap-brute", "dense Cayley spectrum against character ratios");
        Json& j = given["gap-brute"];
        detail::bind<std::int64_t>(s, j, "--n", "n", "degree (4..6)");
        common(s);
    }
    {
        auto* s = app.add_subcommand("mix-exact", "exact distribution evolution of a lazy walk");
        Json& j = given["mix-exact"];
        detail::bind<std::string>(s, j, "--group", "group", "alt or sym");
        detail::bind<std::int64_t>(s, j, "--n", "n", "degree (<= 8)");
        detail::bind<std::string>(s, j, "--walk", "walk", "3cycles, adjacent, transpositions or custom");
        detail::bind<std::string>(s, j, "--gens", "gens", "custom generators separated by ';'");
        detail::bind<double>(s, j, "--eps", "eps", "epsilon");
        detail::bind<std::int64_t>(s, j, "--cap", "cap", "largest k evolved");
        common(s);
    }
    {
        auto* s = app.add_subcommand("compare", "comparison constant A and the transferred gap bound");
        Json& j = given["compare"];
        detail::bind<std::int64_t>(s, j, "--n", "n", "degree (>= 5)");
        detail::bind<std::uint64_t>(s, j, "--seed", "seed", "run seed");
        detail::bind<std::string>(s, j, "--mode", "mode", "exact or sample:M");
        detail::bind_flag(s, j, "--per-generator", "per_generator", "use 1/p(s) instead of 1/p(S)");
        detail::bind<std::string>(s, j, "--oracle", "oracle", "auto, synth, conjugate or geodesic");
        common(s);
    }
    {
        auto* s = app.add_subcommand("sweep", "run a subcommand over ranges of n and seed");
        s->add_option("--config", config_path, "sweep config JSON")->required();
        s->add_option("--csv", csv_path, "write the CSV here instead of stdout");
        common(s);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }
    const std::string sub = app.get_subcommands().front()->get_name();

    try {
        if (sub == "sweep") {
            std::ifstream f(config_path);
            if (!f) {
                err << "error: cannot read " << config_path << "\n";
                return exit_usage;
            }
            Json config;
            try {
                config = Json::parse(f);
            } catch (const nlohmann::json::exception& e) {
                err << "error: bad sweep config: " << e.what() << "\n";
                return exit_usage;
            }
            const auto t0 = std::chrono::steady_clock::now();
            SweepResult r;
            try {
                r = run_sweep(config);
            } catch (const std::invalid_argument& e) {
                err << "error: " << e.what() << "\n";
                return exit_usage;
            }
            detail::write_text(csv_path, r.csv, out);
            if (!json_path.empty()) {
                const auto t1 = std::chrono::steady_clock::now();
                Json rec{{"subcommand", "sweep"},
                         {"params", config},
                         {"seed", nullptr},
                         {"timestamp", detail::utc_timestamp()},
                         {"build_id", PERMWORD_BUILD_ID},
                         {"payload", {{"rows", r.rows}, {"failed", r.failed}}},
                         {"wall_ms", std::chrono::duration<double, std::milli>(t1 - t0).count()}};
                detail::write_text(json_path, rec.dump(2) + "\n", out);
            }
            return exit_ok;
        }

        const Outcome o = execute(sub, given[sub]);
        if (o.code == exit_usage) {
            err << "error: " << o.error << "\n";
            return exit_usage;
        }
        if (o.code == exit_retry)
            err << "retry exhausted: " << o.error << "\n";
        const bool table = sub == "gap-exact" && o.record["params"]["table"].get<bool>();
        if (table) {
            const auto gap = spectral_gap_exact(o.record["params"]["n"].get<std::size_t>());
            out << gap_table_csv(gap);
            if (!json_path.empty())
                detail::write_text(json_path, o.record.dump(2) + "\n", out);
        } else {
            detail::write_text(json_path, o.record.dump(2) + "\n", out);
        }
        return o.code;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
}

} // namespace permword::cli
