#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "permword/errors.hpp"
#include "permword/parallel.hpp"
#include "permword/perm.hpp"
#include "permword/repgap.hpp"
#include "permword/rng.hpp"
#include "permword/synth.hpp"
#include "permword/walk.hpp"
#include "permword/word.hpp"

namespace permword {

/// Source of the "chosen expression" for each y in the comparison sum.
class WordOracle {
public:
    virtual ~WordOracle() = default;
    virtual Word word_for(const Permutation& y, Rng& rng) const = 0;
};

/// Shortest words by breadth-first search of the Cayley graph, letters tried
/// in the order g, h, g⁻¹, h⁻¹. Needs n ≤ 8.
class GeodesicOracle : public WordOracle {
public:
    GeodesicOracle(const Permutation& g, const Permutation& h)
        : group_(FiniteGroup::make(GroupKind::sym, g.degree())), parent_(group_->size(), unreached)
    {
        detail::require_same_degree(g, h);
        const std::array<Permutation, 4> letters{g, h, invert(g), invert(h)};
        std::array<std::vector<std::uint32_t>, 4> step;
        for (std::size_t s = 0; s < 4; ++s)
            step[s] = group_->right_multiplication(letters[s]);
        const auto root = static_cast<std::uint32_t>(group_->identity_index());
        parent_[root] = root;
        letter_.assign(group_->size(), 0);
        std::vector<std::uint32_t> queue{root};
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const std::uint32_t x = queue[head];
            for (std::uint8_t s = 0; s < 4; ++s) {
                const std::uint32_t y = step[s][x];
                if (parent_[y] != unreached)
                    continue;
                parent_[y] = x;
                letter_[y] = s;
                queue.push_back(y);
            }
        }
        reached_ = queue.size();
        order_ = std::move(queue);
    }

    std::size_t reached() const { return reached_; }
    const FiniteGroup& group() const { return *group_; }
    /// Reached group indices in breadth-first order, so by non-decreasing length.
    const std::vector<std::uint32_t>& bfs_order() const { return order_; }

    Word word_for(const Permutation& y, Rng&) const override
    {
        const auto idx = group_->index_of(y);
        if (!idx || parent_[*idx] == unreached)
            throw std::invalid_argument("element not in the generated group");
        std::vector<Symbol> rev;
        for (std::uint32_t x = static_cast<std::uint32_t>(*idx); parent_[x] != x; x = parent_[x])
            rev.push_back(static_cast<Symbol>(letter_[x]));
        std::reverse(rev.begin(), rev.end());
        return Word::from_symbols(rev);
    }

private:
    static constexpr std::uint32_t unreached = 0xffffffffu;
    std::shared_ptr<const FiniteGroup> group_;
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint8_t> letter_;
    std::size_t reached_ = 0;
    std::vector<std::uint32_t> order_;
};

/// Synthesizer-shaped words for n <= 8, where the long-cycle construction
/// has no room. An odd target gets the odd generator prefixed, the rest is
/// factored into 3-cycles and each factor c is written ρ⁻¹κρ, with κ a
/// shortest word for a fixed 3-cycle and ρ a shortest conjugator taking κ to c.
class ConjugateOracle : public WordOracle {
public:
    ConjugateOracle(const Permutation& g, const Permutation& h) : geo_(g, h), g_(g), h_(h)
    {
        const FiniteGroup& G = geo_.group();
        Rng unused(0);
        // κ: the first 3-cycle reached by the search.
        for (auto idx : geo_.bfs_order()) {
            const Permutation& x = G.element(idx);
            if (support_size(x) == 3) {
                kappa_perm_ = x;
                break;
            }
        }
        if (kappa_perm_.degree() == 0)
            throw std::invalid_argument("generators reach no 3-cycle");
        kappa_ = geo_.word_for(kappa_perm_, unused);
        conjugator_.assign(G.size(), unreached);
        for (auto idx : geo_.bfs_order()) {
            const auto c = *G.index_of(conjugate(kappa_perm_, G.element(idx)));
            if (conjugator_[c] == unreached)
                conjugator_[c] = idx;
        }
        if (!is_even(g))
            witness_ = Symbol::g;
        else if (!is_even(h))
            witness_ = Symbol::h;
    }

    const Word& kappa() const { return kappa_; }

    Word word_for(const Permutation& y, Rng& rng) const override
    {
        std::vector<Word> parts;
        Permutation rest = y;
        if (!is_even(y)) {
            if (!witness_)
                throw std::invalid_argument("odd target but both generators are even");
            parts.push_back(Word::symbol(*witness_));
            rest = invert(*witness_ == Symbol::g ? g_ : h_) * y;
        }
        const FiniteGroup& G = geo_.group();
        for (const auto& c : three_cycle_factorization(rest)) {
            const auto r = conjugator_[*G.index_of(c)];
            if (r == unreached)
                throw std::invalid_argument("3-cycle not conjugate to the base under the group");
            const Word rho = geo_.word_for(G.element(r), rng);
            parts.push_back(Word::concat({Word::inverse(rho), kappa_, rho}));
        }
        return Word::concat(std::move(parts));
    }

private:
    static constexpr std::uint32_t unreached = 0xffffffffu;
    GeodesicOracle geo_;
    Permutation g_, h_;
    Permutation kappa_perm_;
    Word kappa_;
    std::vector<std::uint32_t> conjugator_;
    std::optional<Symbol> witness_;
};

class SynthOracle : public WordOracle {
public:
    SynthOracle(const SynthContext& ctx, SynthConfig cfg = {}) : ctx_(ctx), cfg_(cfg) {}
    Word word_for(const Permutation& y, Rng& rng) const override { return synthesize(ctx_, y, rng, cfg_); }

private:
    const SynthContext& ctx_;
    SynthConfig cfg_;
};

/// p′: uniform on 3-cycles when g and h are even, otherwise the average of
/// the uniform measures on wC and w⁻¹C for the odd generator w (g preferred).
inline WalkMeasure reference_measure(const Permutation& g, const Permutation& h)
{
    const auto C = all_three_cycles(g.degree());
    const double u = 1.0 / static_cast<double>(C.size());
    std::vector<std::pair<Permutation, double>> atoms;
    if (is_even(g) && is_even(h)) {
        for (const auto& c : C)
            atoms.emplace_back(c, u);
    } else {
        const Permutation& w = is_even(g) ? h : g;
        const Permutation wi = invert(w);
        for (const auto& c : C) {
            atoms.emplace_back(w * c, 0.5 * u);
            atoms.emplace_back(wi * c, 0.5 * u);
        }
    }
    return WalkMeasure(atoms);
}

struct AMode {
    bool exact = true;
    std::size_t samples = 0;

    static AMode parse(const std::string& text)
    {
        if (text == "exact")
            return {true, 0};
        if (text.rfind("sample:", 0) == 0) {
            std::size_t pos = 0;
            const auto m = std::stoull(text.substr(7), &pos);
            if (pos != text.size() - 7 || m == 0)
                throw std::invalid_argument("bad sample count in mode: " + text);
            return {false, static_cast<std::size_t>(m)};
        }
        throw std::invalid_argument("mode must be exact or sample:M");
    }

    std::string name() const { return exact ? "exact" : "sampled"; }
};

inline constexpr std::size_t max_exact_compare_degree = 14;

struct ComparisonReport {
    std::size_t n = 0;
    double A = 0.0;
    Rational gap_reference;      ///< δ(p′) lower value 3/(n−1)
    double gap_lower_bound = 0.0; ///< δ(p′)/A
    std::string mode;
    std::size_t words_used = 0;
    std::uint64_t max_word_length = 0;
    bool per_generator = false;
    std::vector<double> per_symbol_sum; ///< Σ_y |y| N(s,y) p′(y) for each distinct s in S
    std::optional<double> sample_error; ///< Hoeffding half-width on A at 95%
};

inline double gap_lower_bound(double A, const Rational& delta_ref)
{
    if (!(A > 0.0))
        throw std::invalid_argument("A must be positive");
    return static_cast<double>(delta_ref) / A;
}

/// A = max_s (1/p(S)) Σ_y |y| N(s,y) p′(y) for the lazy measure p on
/// S = {g, h, g⁻¹, h⁻¹}; with per_generator the factor is 1/p(s).
inline ComparisonReport compute_A(const Permutation& g, const Permutation& h, const WordOracle& oracle,
                                  const WalkMeasure& p_prime, AMode mode, Rng& rng, bool per_generator = false,
                                  std::size_t threads = 1)
{
    detail::require_same_degree(g, h);
    const std::size_t n = g.degree();
    if (mode.exact && n > max_exact_compare_degree)
        throw too_large("exact mode needs n <= " + std::to_string(max_exact_compare_degree));
    const auto S = symmetric_generating_set({g, h});
    if (S.empty())
        throw std::invalid_argument("generators are trivial");
    // Symbols that denote the same element of S are counted together.
    const std::array<Permutation, 4> sym_elem{g, h, invert(g), invert(h)};
    std::array<std::size_t, 4> slot{};
    for (std::size_t s = 0; s < 4; ++s)
        slot[s] = static_cast<std::size_t>(std::lower_bound(S.begin(), S.end(), sym_elem[s]) - S.begin());

    std::vector<std::pair<Permutation, double>> items;
    if (mode.exact) {
        items = p_prime.atoms();
    } else {
        const double w = 1.0 / static_cast<double>(mode.samples);
        for (std::size_t i = 0; i < mode.samples; ++i)
            items.emplace_back(sample_atom(p_prime, rng), w);
    }
    std::vector<Word> words(items.size());
    parallel_for(items.size(), threads, [&](std::size_t i) {
        Rng child = rng.split(i);
        words[i] = oracle.word_for(items[i].first, child);
        if (evaluate(words[i], g, h) != items[i].first)
            throw std::logic_error("oracle word does not evaluate to its target");
    });

    ComparisonReport out;
    out.n = n;
    out.mode = mode.name();
    out.per_generator = per_generator;
    out.words_used = items.size();
    out.per_symbol_sum.assign(S.size(), 0.0);
    for (std::size_t i = 0; i < items.size(); ++i) {
        const Word& y = words[i];
        const auto c = y.counts();
        const double len = static_cast<double>(y.expanded_length());
        out.max_word_length = std::max(out.max_word_length, y.expanded_length());
        const std::array<std::uint64_t, 4> per{c.g, c.h, c.g_inv, c.h_inv};
        for (std::size_t s = 0; s < 4; ++s)
            out.per_symbol_sum[slot[s]] += len * static_cast<double>(per[s]) * items[i].second;
    }
    // Lazy measure: p(S) = 1/2 and p(s) = 1/(2|S|).
    const double inv_p = per_generator ? 2.0 * static_cast<double>(S.size()) : 2.0;
    out.A = inv_p * *std::max_element(out.per_symbol_sum.begin(), out.per_symbol_sum.end());
    if (!(out.A > 0.0))
        throw std::logic_error("comparison quantity is not positive");
    out.gap_reference = Rational(3, static_cast<std::int64_t>(n) - 1);
    out.gap_lower_bound = gap_lower_bound(out.A, out.gap_reference);
    if (!mode.exact) {
        const double L = static_cast<double>(out.max_word_length);
        const double alpha = 0.05;
        out.sample_error = inv_p * L * L *
                           std::sqrt(std::log(2.0 * static_cast<double>(S.size()) / alpha) /
                                     (2.0 * static_cast<double>(mode.samples)));
    }
    return out;
}

/// Synthesized words from a prepared context, p′ from reference_measure.
inline ComparisonReport compute_A(const SynthContext& ctx, AMode mode, Rng& rng, bool per_generator = false,
                                  std::size_t threads = 1)
{
    SynthOracle oracle(ctx);
    return compute_A(ctx.g, ctx.h, oracle, reference_measure(ctx.g, ctx.h), mode, rng, per_generator, threads);
}

/// |G| e^{−k/(2A)} + reference(round(k/(2A)))², with reference giving the
/// ℓ² distance of (p′)^(k′) from uniform.
inline double l2_comparison_bound(std::size_t k, double A, std::size_t group_order,
                                  const std::function<double(std::size_t)>& reference_decay)
{
    if (!(A > 0.0))
        throw std::invalid_argument("A must be positive");
    const double kk = static_cast<double>(k) / (2.0 * A);
    const double ref = reference_decay(static_cast<std::size_t>(std::llround(kk)));
    return static_cast<double>(group_order) * std::exp(-kk) + ref * ref;
}

/// ℓ² distances of m^(k) from uniform for k = 0..kmax.
inline std::vector<double> l2_profile(const WalkMeasure& m, GroupKind kind, std::size_t kmax)
{
    Evolver ev(m, FiniteGroup::make(kind, m.degree()));
    std::vector<double> out{lp_distance(ev.current(), Norm::l2)};
    for (std::size_t k = 1; k <= kmax; ++k) {
        ev.step();
        out.push_back(lp_distance(ev.current(), Norm::l2));
    }
    return out;
}

} // namespace permword
