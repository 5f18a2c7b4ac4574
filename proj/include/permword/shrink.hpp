#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "permword/errors.hpp"
#include "permword/perm.hpp"
#include "permword/rng.hpp"
#include "permword/schreier.hpp"
#include "permword/walk.hpp"
#include "permword/word.hpp"

namespace permword {

/// A word together with the permutation it evaluates to.
struct Element {
    Word word;
    Permutation perm;
};

inline Element symbol_element(const LetterTables& t, Symbol s)
{
    return {Word::symbol(s), Permutation::from_images(t.image[static_cast<std::size_t>(s)])};
}

/// x^m as a word and a permutation, with Pow(Inv x, |m|) for negative m.
inline Element element_power(const Element& x, std::int64_t m)
{
    if (m == 0)
        return {Word::identity(), Permutation(x.perm.degree())};
    if (m == 1)
        return x;
    const std::uint64_t a = m < 0 ? static_cast<std::uint64_t>(-m) : static_cast<std::uint64_t>(m);
    Permutation p = power(x.perm, a);
    return {Word::signed_power(x.word, m), m < 0 ? invert(p) : p};
}

inline Element element_inverse(const Element& x) { return {Word::inverse(x.word), invert(x.perm)}; }

/// r⁻¹ x r.
inline Element element_conjugate(const Element& x, const Element& r)
{
    if (r.word.expanded_length() == 0)
        return x;
    return {conjugate_word(x.word, r.word), conjugate(x.perm, r.perm)};
}

inline Element element_product(const Element& a, const Element& b)
{
    return {Word::concat({a.word, b.word}), a.perm * b.perm};
}

struct ShrinkConfig {
    double walk_c = 40.0;              ///< k = ⌈walk_c · ln n⌉
    std::size_t resample_budget = 256; ///< σ draws per commutator step
    std::size_t max_iterations = 64;
    double budget = 10.0;              ///< length budget · n · (log₂ n)^budget_c
    double budget_c = 3.0;
    std::size_t long_cycle_fallbacks = 3;
};

inline double shrink_length_budget(std::size_t n, const ShrinkConfig& cfg)
{
    const double n_d = static_cast<double>(n);
    return cfg.budget * n_d * std::pow(std::log2(n_d), cfg.budget_c);
}

struct LongCycleElement {
    Element v;
    std::vector<point> cycle; ///< orbit order under v, starting at its minimum point
    std::size_t length = 0;   ///< l
    std::size_t j = 0;        ///< exponent of h
    bool with_g = false;      ///< v = g h^j rather than h^j
    std::size_t fallback = 0; ///< 0, or 1 + index of the random prefix word used
};

namespace detail {

inline std::size_t long_cycle_threshold(std::size_t n) { return (3 * n + 3) / 4; }

/// Scans j = 1..jmax for v = h^j (when `bare`) and v = prefix · h^j.
inline std::optional<LongCycleElement> scan_long_cycle(const Element& prefix, const Element& h, std::size_t jmax,
                                                      bool bare)
{
    const std::size_t n = h.perm.degree();
    const std::size_t need = long_cycle_threshold(n);
    Permutation hj(n);
    for (std::size_t j = 1; j <= jmax; ++j) {
        hj = hj * h.perm;
        for (int use_prefix = bare ? 0 : 1; use_prefix < 2; ++use_prefix) {
            const Permutation v = use_prefix ? prefix.perm * hj : hj;
            auto lc = longest_cycle(v);
            if (lc.length < need || power(v, lc.length).is_identity())
                continue;
            const Word hw = j == 1 ? h.word : Word::power(h.word, j);
            LongCycleElement out;
            out.v = {use_prefix ? Word::concat({prefix.word, hw}) : hw, v};
            out.cycle = std::move(lc.cycle);
            out.length = lc.length;
            out.j = j;
            out.with_g = use_prefix && bare;
            return out;
        }
    }
    return std::nullopt;
}

} // namespace detail

/// Search v = h^j or v = g h^j, j ≤ ⌈10 ln n⌉, for a cycle of length
/// l ≥ ⌈3n/4⌉ with v^l ≠ e. If that fails, v = w h^j is tried for
/// `fallbacks` random walk words w.
inline LongCycleElement find_long_cycle_element(const Permutation& g, const Permutation& h, Rng& rng,
                                                const ShrinkConfig& cfg = {})
{
    const std::size_t n = g.degree();
    if (n < 8)
        throw std::invalid_argument("long-cycle search needs n >= 8");
    const LetterTables t(g, h);
    const Element G = symbol_element(t, Symbol::g);
    const Element H = symbol_element(t, Symbol::h);
    const std::size_t jmax = walk_length(n, 10.0);
    if (auto r = detail::scan_long_cycle(G, H, jmax, true))
        return *r;
    const std::size_t k = walk_length(n, cfg.walk_c);
    for (std::size_t f = 0; f < cfg.long_cycle_fallbacks; ++f) {
        auto w = sample_generator_walk(t, k, rng);
        if (auto r = detail::scan_long_cycle({w.word, w.element}, H, jmax, false)) {
            r->fallback = f + 1;
            return *r;
        }
    }
    throw retry_exhausted("no element with a long cycle and v^l != e found");
}

struct CommutatorStep {
    Element result;
    std::size_t trials = 0;       ///< σ draws until the threshold held
    std::size_t walk_tries = 0;   ///< conditioned-walk trials, summed over σ draws
    std::size_t intersection = 0; ///< |S ∩ S^σ| of the accepted σ
};

/// Accepted σ satisfy |S ∩ S^σ| ≤ 1 + (7/6)|S|²/n.
inline double intersection_threshold(std::size_t support, std::size_t n)
{
    const double s = static_cast<double>(support);
    return 1.0 + 7.0 / 6.0 * s * s / static_cast<double>(n);
}

/// One shrinking step: [s, τ] with τ = σ⁻¹ s σ for a conditioned walk σ.
inline CommutatorStep commutator_step(const Element& s, const LetterTables& letters, std::size_t k, Rng& rng,
                                      const ShrinkConfig& cfg = {})
{
    const std::size_t n = s.perm.degree();
    const auto S = support(s.perm);
    if (S.size() < 4 || S.size() > n - 1)
        throw std::invalid_argument("commutator step needs 4 <= |supp(s)| <= n-1");
    std::vector<bool> in_S(n, false);
    for (point x : S)
        in_S[x] = true;
    std::vector<point> outside;
    outside.reserve(n - S.size());
    for (point x = 0; x < n; ++x)
        if (!in_S[x])
            outside.push_back(x);
    const Permutation s_inv = invert(s.perm);
    const double threshold = intersection_threshold(S.size(), n);
    const std::size_t max_tries = default_max_tries(n, 2);

    CommutatorStep out;
    for (std::size_t trial = 1; trial <= cfg.resample_budget; ++trial) {
        const point y1 = S[rng.below(S.size())];
        const point y1p = S[rng.below(S.size())];
        const point y2 = outside[rng.below(outside.size())];
        const point y2p = s_inv(y1p);
        const PointConstraint c[2] = {{y1, y1p}, {y2, y2p}};
        const auto walk = conditioned_walk(letters, k, c, rng, max_tries);
        out.walk_tries += walk.tries;
        std::size_t meet = 0;
        for (point x : S)
            meet += in_S[walk.sigma(x)];
        if (static_cast<double>(meet) > threshold)
            continue;
        const Element sigma{walk.word, walk.sigma};
        const Element tau = element_conjugate(s, sigma);
        out.result = {commutator_word(s.word, tau.word), invert(s.perm) * invert(tau.perm) * s.perm * tau.perm};
        out.trials = trial;
        out.intersection = meet;
        if (out.result.perm.is_identity())
            throw std::logic_error("commutator step produced the identity");
        if (support_size(out.result.perm) > 3 * meet)
            throw std::logic_error("commutator support exceeds 3 |S cap S^sigma|");
        return out;
    }
    throw retry_exhausted("commutator step: intersection threshold not met in " +
                          std::to_string(cfg.resample_budget) + " draws");
}

struct ShrinkResult {
    Element element;
    std::size_t iterations = 0;
    std::vector<std::size_t> support_trace; ///< |supp| of s_0, s_1, ...
    std::vector<std::size_t> trial_counts;  ///< σ draws per step
    std::vector<std::size_t> walk_tries;    ///< conditioned-walk trials per step
    LongCycleElement long_cycle;
    std::size_t walk_length = 0;
    double budget = 0.0;

    std::size_t support() const { return support_trace.empty() ? 0 : support_trace.back(); }
};

/// Iterates commutator steps from s_0 = v^l until the support is at most 3.
inline ShrinkResult shrink_support(const Permutation& g, const Permutation& h, Rng& rng, const ShrinkConfig& cfg = {})
{
    detail::require_same_degree(g, h);
    const std::size_t n = g.degree();
    if (n < 8)
        throw std::invalid_argument("shrink needs n >= 8");
    ShrinkResult out;
    out.long_cycle = find_long_cycle_element(g, h, rng, cfg);
    out.walk_length = walk_length(n, cfg.walk_c);
    out.budget = shrink_length_budget(n, cfg);

    const auto& lc = out.long_cycle;
    Element s = element_power(lc.v, static_cast<std::int64_t>(lc.length));
    for (point x : lc.cycle)
        if (s.perm(x) != x)
            throw std::logic_error("v^l moves a point of its long cycle");
    out.support_trace.push_back(support_size(s.perm));
    if (out.support_trace.back() > n - lc.length)
        throw std::logic_error("supp(v^l) larger than n - l");

    const LetterTables letters(g, h);
    while (out.support_trace.back() > 3) {
        if (out.iterations == cfg.max_iterations)
            throw retry_exhausted("shrink: support still " + std::to_string(out.support_trace.back()) + " after " +
                                  std::to_string(cfg.max_iterations) + " steps");
        auto step = commutator_step(s, letters, out.walk_length, rng, cfg);
        s = std::move(step.result);
        ++out.iterations;
        out.support_trace.push_back(support_size(s.perm));
        out.trial_counts.push_back(step.trials);
        out.walk_tries.push_back(step.walk_tries);
    }
    if (out.support_trace.back() == 3 && cycle_structure(s.perm).front().size() != 3)
        throw std::logic_error("support-3 element is not a 3-cycle");
    if (static_cast<double>(s.word.expanded_length()) > out.budget)
        throw retry_exhausted("shrink: word length " + std::to_string(s.word.expanded_length()) +
                              " exceeds the configured budget");
    out.element = std::move(s);
    return out;
}

} // namespace permword
