#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "permword/errors.hpp"
#include "permword/perm.hpp"
#include "permword/rng.hpp"
#include "permword/schreier.hpp"
#include "permword/shrink.hpp"
#include "permword/walk.hpp"
#include "permword/word.hpp"

namespace permword {

struct SynthConfig {
    ShrinkConfig shrink;
    std::size_t shrink_attempts = 4;  ///< fresh shrink runs before giving up
    std::size_t relocation_tries = 0; ///< walks per 3-cycle; 0 means ⌈C ln n⌉
    std::size_t gamma_tries = 0;      ///< γ draws for the base cycle; 0 means ⌈C ln n⌉
    std::size_t plan_options = 6;     ///< φ-offsets kept per label difference
};

inline std::size_t relocation_tries(std::size_t n, const SynthConfig& cfg)
{
    return cfg.relocation_tries ? cfg.relocation_tries : walk_length(n, cfg.shrink.walk_c);
}

/// Labels 1..l name the long cycle of v in orbit order: label i is
/// `cycle[i-1]` and v sends label i to label i+1 (mod l).
class CycleFrame {
public:
    CycleFrame() = default;
    CycleFrame(std::vector<point> cycle, std::size_t n) : cycle_(std::move(cycle)), label_(n, 0)
    {
        for (std::size_t i = 0; i < cycle_.size(); ++i)
            label_[cycle_[i]] = static_cast<std::uint32_t>(i + 1);
    }

    std::size_t length() const { return cycle_.size(); }
    std::size_t degree() const { return label_.size(); }
    const std::vector<point>& points() const { return cycle_; }

    point point_of(std::size_t label) const { return cycle_[(label - 1) % cycle_.size()]; }
    /// 0 for points off the cycle.
    std::uint32_t label_of(point p) const { return label_[p]; }
    bool on_cycle(point p) const { return label_[p] != 0; }

    /// Label arithmetic mod l into 1..l.
    std::size_t wrap(std::int64_t label) const
    {
        const auto l = static_cast<std::int64_t>(cycle_.size());
        return static_cast<std::size_t>(((label - 1) % l + l) % l + 1);
    }

    /// Shifts labels so the current label r becomes 1.
    void rotate_to(std::size_t r)
    {
        std::rotate(cycle_.begin(), cycle_.begin() + static_cast<std::ptrdiff_t>(r - 1), cycle_.end());
        for (std::size_t i = 0; i < cycle_.size(); ++i)
            label_[cycle_[i]] = static_cast<std::uint32_t>(i + 1);
    }

    Permutation label_cycle(std::size_t a, std::size_t b, std::size_t c) const
    {
        return three_cycle(label_.size(), point_of(a), point_of(b), point_of(c));
    }

private:
    std::vector<point> cycle_;
    std::vector<std::uint32_t> label_;
};

/// Minimal-magnitude representative of d mod l, in (-l/2, l/2].
inline std::int64_t signed_residue(std::int64_t d, std::size_t l)
{
    const auto L = static_cast<std::int64_t>(l);
    d = ((d % L) + L) % L;
    return 2 * d > L ? d - L : d;
}

struct Congruence {
    std::size_t r = 0;
    std::size_t s = 0;
    std::optional<std::size_t> third; ///< label of (b+s)^{γ⁻¹}, when b was given
};

/// Smallest 1 ≤ r < l with 1 + s ≡ r^γ and a + s ≡ (r+1)^γ (mod l) for some
/// 0 ≤ s < l, both images on the cycle. With b given, (b+s)^{γ⁻¹} must also
/// lie on the cycle.
inline std::optional<Congruence> solve_congruence(const Permutation& gamma, const CycleFrame& frame, std::size_t a,
                                                  std::optional<std::size_t> b = std::nullopt)
{
    const std::size_t l = frame.length();
    if (a < 1 || a > l)
        throw std::invalid_argument("label a out of range");
    if (gamma.degree() != frame.degree())
        throw std::invalid_argument("gamma degree differs from the frame degree");
    std::optional<Permutation> gamma_inv;
    if (b)
        gamma_inv = invert(gamma);
    for (std::size_t r = 1; r < l; ++r) {
        const std::uint32_t R = frame.label_of(gamma(frame.point_of(r)));
        const std::uint32_t R1 = frame.label_of(gamma(frame.point_of(r + 1)));
        if (R == 0 || R1 == 0)
            continue;
        const std::size_t s = (R + l - 1) % l;
        if ((a + s) % l != R1 % l)
            continue;
        Congruence c{r, s, std::nullopt};
        if (b) {
            const std::uint32_t T = frame.label_of((*gamma_inv)(frame.point_of(frame.wrap(static_cast<std::int64_t>(*b + s)))));
            if (T == 0)
                continue;
            c.third = T;
        }
        return c;
    }
    return std::nullopt;
}

/// Same scan with the cycle taken as points 1..l in order.
inline std::optional<Congruence> solve_congruence(const Permutation& gamma, std::size_t a, std::size_t l)
{
    if (l < 2 || l > gamma.degree())
        throw std::invalid_argument("cycle length out of range");
    std::vector<point> c(l);
    for (std::size_t i = 0; i < l; ++i)
        c[i] = static_cast<point>(i);
    return solve_congruence(gamma, CycleFrame(std::move(c), gamma.degree()), a);
}

/// One way to produce a 3-cycle (f, f+δ, f+δ+o) up to a v-shift: the
/// φ^m-conjugate of the base cycle, possibly inverted, read from point f.
struct PlanOption {
    std::int64_t m = 0;
    bool inverted = false;
    std::size_t first = 1;      ///< label of the leading point before the shift
    std::size_t third_off = 0;  ///< third point minus leading point, mod l
    std::uint64_t cost = 0;     ///< 2|m||φ| + |base|
};

struct SynthContext {
    Permutation g, h;
    std::size_t n = 0;
    ShrinkResult shrink;
    std::size_t walk_length = 0;

    Element v;
    std::size_t l = 0;
    CycleFrame frame;

    Element kappa;              ///< 3-cycle supported on the long cycle
    Element base;               ///< the 3-cycle (1 2 x) in current labels
    std::size_t x = 0;
    std::size_t gamma_draws = 0;
    Element phi;                ///< v (1 2 x)⁻¹
    std::optional<Symbol> witness; ///< an odd generator, g preferred

    /// options[δ] for ordered label differences δ = 1..l-1, cheapest first.
    std::vector<std::vector<PlanOption>> options;

    /// Factor (1, 2^{φ^m}, x^{φ^m}) in labels.
    std::array<std::size_t, 3> factor_labels(std::int64_t m) const
    {
        const auto A = static_cast<std::int64_t>(x - 2);
        const auto B = static_cast<std::int64_t>(l - x + 1);
        const auto p2 = static_cast<std::size_t>(2 + ((m % A) + A) % A);
        const auto px = static_cast<std::size_t>(static_cast<std::int64_t>(x) + ((m % B) + B) % B);
        return {1, p2, px};
    }

    std::uint64_t factor_cost(std::int64_t m) const
    {
        const auto am = static_cast<std::uint64_t>(m < 0 ? -m : m);
        return 2 * am * phi.word.expanded_length() + base.word.expanded_length();
    }

    std::uint64_t shift_cost(std::int64_t d) const
    {
        return 2 * static_cast<std::uint64_t>(d < 0 ? -d : d) * v.word.expanded_length();
    }
};

namespace detail {

inline void build_plan_options(SynthContext& ctx, std::size_t keep)
{
    const std::size_t l = ctx.l;
    ctx.options.assign(l, {});
    std::size_t full = 0;
    auto offer = [&](std::int64_t m, bool inverted, std::size_t a, std::size_t b, std::size_t c) {
        const std::size_t delta = (b + l - a) % l;
        auto& list = ctx.options[delta];
        if (list.size() >= keep)
            return;
        const std::size_t off = (c + l - a) % l;
        for (const auto& o : list)
            if (o.third_off == off)
                return;
        list.push_back({m, inverted, a, off, ctx.factor_cost(m)});
        if (list.size() == keep)
            ++full;
    };
    const auto M = static_cast<std::int64_t>(l);
    for (std::int64_t am = 0; am <= M && full < l - 1; ++am) {
        for (std::int64_t m : {am, -am}) {
            if (am == 0 && m < 0)
                continue;
            const auto [p1, p2, px] = ctx.factor_labels(m);
            offer(m, false, p1, p2, px);
            offer(m, false, p2, px, p1);
            offer(m, false, px, p1, p2);
            offer(m, true, p1, px, p2);
            offer(m, true, px, p2, p1);
            offer(m, true, p2, p1, px);
        }
    }
}

} // namespace detail

/// (r r+1 ?) from γ v^{-s} κ v^{s} γ⁻¹, in the labels where κ = (1 a b).
struct BaseCycle {
    Element element;
    std::size_t r = 0;
    std::size_t s = 0;
    std::size_t third = 0;
    std::size_t draws = 0; ///< γ walks drawn
};

inline BaseCycle build_base_cycle(const SynthContext& ctx, Rng& rng, std::size_t max_draws)
{
    const std::size_t a = ctx.frame.label_of(ctx.kappa.perm(ctx.frame.point_of(1)));
    const std::size_t b = ctx.frame.label_of(ctx.kappa.perm(ctx.frame.point_of(a)));
    if (a == 0 || b == 0 || ctx.kappa.perm(ctx.frame.point_of(b)) != ctx.frame.point_of(1))
        throw std::logic_error("kappa is not (1 a b) in the current labels");
    const LetterTables letters(ctx.g, ctx.h);
    for (std::size_t draw = 1; draw <= max_draws; ++draw) {
        auto gamma = sample_generator_walk(letters, ctx.walk_length, rng);
        auto sol = solve_congruence(gamma.element, ctx.frame, a, b);
        if (!sol)
            continue;
        const Element shift = element_power(ctx.v, signed_residue(static_cast<std::int64_t>(sol->s), ctx.l));
        const Element gamma_inv = element_inverse({gamma.word, gamma.element});
        BaseCycle out;
        out.element = element_conjugate(element_conjugate(ctx.kappa, shift), gamma_inv);
        out.r = sol->r;
        out.s = sol->s;
        out.third = *sol->third;
        out.draws = draw;
        if (out.element.perm != ctx.frame.label_cycle(out.r, out.r + 1, out.third))
            throw std::logic_error("base cycle does not have the predicted form");
        return out;
    }
    throw retry_exhausted("base cycle: no gamma solved the congruence in " + std::to_string(max_draws) + " draws");
}

namespace detail {

/// A 3-cycle whose points all lie on the long cycle, from the shrink output.
inline Element three_cycle_on_cycle(const SynthContext& ctx, const Element& small, Rng& rng, std::size_t tries)
{
    const LetterTables letters(ctx.g, ctx.h);
    std::vector<Symbol> drawn;
    Element kappa = small;
    const auto supp = support(small.perm);
    if (supp.size() == 2) {
        // (p q)(q w): conjugate the transposition until it meets itself in one point.
        const std::size_t budget = 20 * ctx.n;
        bool done = false;
        for (std::size_t t = 0; t < budget && !done; ++t) {
            detail::draw_lazy_letters(ctx.walk_length, rng, drawn);
            point p = supp[0], q = supp[1];
            for (Symbol s : drawn) {
                p = letters.image[static_cast<std::size_t>(s)][p];
                q = letters.image[static_cast<std::size_t>(s)][q];
            }
            const int meet = (p == supp[0] || p == supp[1]) + (q == supp[0] || q == supp[1]);
            if (meet != 1)
                continue;
            const Element rho{Word::from_symbols(drawn), letters.element(drawn)};
            kappa = element_product(small, element_conjugate(small, rho));
            done = true;
        }
        if (!done)
            throw retry_exhausted("no conjugate of the transposition met it in one point");
        if (support_size(kappa.perm) != 3)
            throw std::logic_error("product of transpositions is not a 3-cycle");
    } else if (supp.size() != 3) {
        throw std::invalid_argument("shrink output must have support 2 or 3");
    }
    const auto ks = support(kappa.perm);
    if (std::all_of(ks.begin(), ks.end(), [&](point p) { return ctx.frame.on_cycle(p); }))
        return kappa;
    for (std::size_t t = 0; t < tries; ++t) {
        detail::draw_lazy_letters(ctx.walk_length, rng, drawn);
        std::array<point, 3> pts{ks[0], ks[1], ks[2]};
        for (Symbol s : drawn)
            for (auto& p : pts)
                p = letters.image[static_cast<std::size_t>(s)][p];
        if (std::all_of(pts.begin(), pts.end(), [&](point p) { return ctx.frame.on_cycle(p); }))
            return element_conjugate(kappa, {Word::from_symbols(drawn), letters.element(drawn)});
    }
    throw retry_exhausted("kappa relocation into the long cycle failed");
}

} // namespace detail

/// Runs shrink and prepares everything synthesize needs.
inline SynthContext prepare_context(const Permutation& g, const Permutation& h, Rng& rng, const SynthConfig& cfg = {})
{
    detail::require_same_degree(g, h);
    SynthContext ctx;
    ctx.g = g;
    ctx.h = h;
    ctx.n = g.degree();
    if (ctx.n < 8)
        throw std::invalid_argument("synthesis needs n >= 8");
    if (!is_even(g))
        ctx.witness = Symbol::g;
    else if (!is_even(h))
        ctx.witness = Symbol::h;

    std::optional<ShrinkResult> shrunk;
    for (std::size_t attempt = 0; attempt < cfg.shrink_attempts && !shrunk; ++attempt) {
        try {
            shrunk = shrink_support(g, h, rng, cfg.shrink);
        } catch (const retry_exhausted&) {
            if (attempt + 1 == cfg.shrink_attempts)
                throw;
        }
    }
    if (!shrunk)
        throw retry_exhausted("shrink failed");
    ctx.shrink = std::move(*shrunk);
    ctx.walk_length = ctx.shrink.walk_length;
    ctx.v = ctx.shrink.long_cycle.v;
    ctx.l = ctx.shrink.long_cycle.length;
    ctx.frame = CycleFrame(ctx.shrink.long_cycle.cycle, ctx.n);
    if (ctx.l < 6)
        throw std::invalid_argument("long cycle too short for synthesis");

    ctx.kappa = detail::three_cycle_on_cycle(ctx, ctx.shrink.element, rng, relocation_tries(ctx.n, cfg));
    // Frame κ as (1 a b).
    {
        const auto ks = support(ctx.kappa.perm);
        std::size_t first = ctx.l;
        for (point p : ks)
            first = std::min<std::size_t>(first, ctx.frame.label_of(p));
        ctx.frame.rotate_to(first);
    }

    const std::size_t gamma_tries = cfg.gamma_tries ? cfg.gamma_tries : walk_length(ctx.n, cfg.shrink.walk_c);
    BaseCycle bc = build_base_cycle(ctx, rng, gamma_tries);
    ctx.gamma_draws = bc.draws;
    ctx.base = std::move(bc.element);
    ctx.frame.rotate_to(bc.r);
    ctx.x = ctx.frame.label_of(ctx.base.perm(ctx.frame.point_of(2)));
    if (ctx.base.perm != ctx.frame.label_cycle(1, 2, ctx.x) || ctx.x < 3)
        throw std::logic_error("base cycle is not (1 2 x)");

    ctx.phi = element_product(ctx.v, element_inverse(ctx.base));
    if (ctx.phi.perm(ctx.frame.point_of(1)) != ctx.frame.point_of(1))
        throw std::logic_error("phi does not fix label 1");
    detail::build_plan_options(ctx, std::max<std::size_t>(cfg.plan_options, 3));
    return ctx;
}

/// Checks the stored words against the stored permutations and the frame
/// conditions; returns an empty string when everything holds.
inline std::string context_violation(const SynthContext& ctx)
{
    const auto ok = [&](const Element& e) { return evaluate(e.word, ctx.g, ctx.h) == e.perm; };
    if (!ok(ctx.v))
        return "v word";
    if (!ok(ctx.kappa))
        return "kappa word";
    if (!ok(ctx.base))
        return "base word";
    if (!ok(ctx.phi))
        return "phi word";
    if (ctx.l < (3 * ctx.n + 3) / 4)
        return "long cycle shorter than 3n/4";
    const auto ks = support(ctx.kappa.perm);
    if (ks.size() != 3 || cycle_structure(ctx.kappa.perm).size() != 1)
        return "kappa is not a 3-cycle";
    for (point p : ks)
        if (!ctx.frame.on_cycle(p))
            return "kappa leaves the long cycle";
    for (std::size_t i = 1; i <= ctx.l; ++i)
        if (ctx.v.perm(ctx.frame.point_of(i)) != ctx.frame.point_of(i + 1))
            return "frame is not the orbit order of v";
    if (ctx.phi.perm(ctx.frame.point_of(1)) != ctx.frame.point_of(1))
        return "phi moves label 1";
    if (ctx.base.perm != ctx.frame.label_cycle(1, 2, ctx.x))
        return "base is not (1 2 x)";
    return {};
}

/// How build_3cycle will assemble a given (r s t).
struct ThreeCyclePlan {
    bool direct = false;
    std::size_t r = 0, s = 0, t = 0; ///< rotation used
    PlanOption a, b;                 ///< a alone when direct
    std::int64_t shift_a = 0, shift_b = 0;
    std::uint64_t cost = std::numeric_limits<std::uint64_t>::max();
};

inline std::optional<ThreeCyclePlan> plan_3cycle(const SynthContext& ctx, std::size_t r, std::size_t s, std::size_t t)
{
    const std::size_t l = ctx.l;
    if (r < 1 || s < 1 || t < 1 || r > l || s > l || t > l || r == s || s == t || r == t)
        throw std::invalid_argument("3-cycle labels must be distinct and in 1..l");
    const auto shift_of = [&](std::size_t target, const PlanOption& o) {
        return signed_residue(static_cast<std::int64_t>(target) - static_cast<std::int64_t>(o.first), l);
    };
    std::optional<ThreeCyclePlan> best;
    const std::array<std::array<std::size_t, 3>, 3> rotations{{{r, s, t}, {s, t, r}, {t, r, s}}};
    for (const auto& [p, q, w] : rotations) {
        // Single factor equal to (p q w).
        for (const auto& o : ctx.options[(q + l - p) % l]) {
            if (o.third_off != (w + l - p) % l)
                continue;
            const std::int64_t d = shift_of(p, o);
            const std::uint64_t c = o.cost + ctx.shift_cost(d);
            if (!best || c < best->cost) {
                best = ThreeCyclePlan{true, p, q, w, o, {}, d, 0, c};
            }
        }
        // (p q w) = A⁻¹ B⁻¹ A B with A = (p w ?), B = (p q ?′).
        for (const auto& oa : ctx.options[(w + l - p) % l]) {
            const std::size_t qa = (p - 1 + oa.third_off) % l + 1;
            if (qa == q)
                continue;
            const std::int64_t da = shift_of(p, oa);
            const std::uint64_t ca = oa.cost + ctx.shift_cost(da);
            for (const auto& ob : ctx.options[(q + l - p) % l]) {
                const std::size_t qb = (p - 1 + ob.third_off) % l + 1;
                if (qb == w || qb == qa)
                    continue;
                const std::int64_t db = shift_of(p, ob);
                const std::uint64_t c = 2 * (ca + ob.cost + ctx.shift_cost(db));
                if (!best || c < best->cost)
                    best = ThreeCyclePlan{false, p, q, w, oa, ob, da, db, c};
            }
        }
    }
    return best;
}

namespace detail {

inline Element plan_factor(const SynthContext& ctx, const PlanOption& o, std::int64_t shift)
{
    Word w = ctx.base.word;
    if (o.m != 0)
        w = conjugate_word(w, Word::signed_power(ctx.phi.word, o.m));
    if (o.inverted)
        w = Word::inverse(w);
    if (shift != 0)
        w = conjugate_word(w, Word::signed_power(ctx.v.word, shift));
    const std::size_t a = ctx.frame.wrap(static_cast<std::int64_t>(o.first) + shift);
    const auto lab = ctx.factor_labels(o.m);
    std::size_t second = 0;
    // The point following `first` in the factor's cyclic order.
    const std::array<std::size_t, 3> order = o.inverted ? std::array<std::size_t, 3>{lab[0], lab[2], lab[1]} : lab;
    for (std::size_t i = 0; i < 3; ++i)
        if (order[i] == o.first)
            second = order[(i + 1) % 3];
    const std::size_t b = ctx.frame.wrap(static_cast<std::int64_t>(second) + shift);
    const std::size_t c = ctx.frame.wrap(static_cast<std::int64_t>(o.first + o.third_off) + shift);
    return {std::move(w), ctx.frame.label_cycle(a, b, c)};
}

} // namespace detail

/// Word for the 3-cycle (r s t) on labels of the long cycle.
inline Element build_3cycle(const SynthContext& ctx, std::size_t r, std::size_t s, std::size_t t)
{
    const auto plan = plan_3cycle(ctx, r, s, t);
    if (!plan)
        throw retry_exhausted("no admissible factor pair for the requested 3-cycle");
    const Element a = detail::plan_factor(ctx, plan->a, plan->shift_a);
    if (plan->direct)
        return {a.word, ctx.frame.label_cycle(r, s, t)};
    const Element b = detail::plan_factor(ctx, plan->b, plan->shift_b);
    return {commutator_word(a.word, b.word), ctx.frame.label_cycle(r, s, t)};
}

struct SynthResult {
    Word word;
    std::size_t factors = 0;          ///< 3-cycles in the factorization
    std::size_t relocation_draws = 0; ///< walks drawn across all factors
    bool used_witness = false;
};

/// Word for π in g and h. Odd π needs an odd generator.
inline SynthResult synthesize_detailed(const SynthContext& ctx, const Permutation& pi, Rng& rng,
                                       const SynthConfig& cfg = {})
{
    if (pi.degree() != ctx.n)
        throw std::invalid_argument("target degree differs from the context");
    SynthResult out;
    std::vector<Word> parts;
    Permutation rest = pi;
    if (!is_even(pi)) {
        if (!ctx.witness)
            throw std::invalid_argument("odd target but both generators are even");
        const Permutation& w = *ctx.witness == Symbol::g ? ctx.g : ctx.h;
        parts.push_back(Word::symbol(*ctx.witness));
        rest = invert(w) * pi;
        out.used_witness = true;
    }
    const auto factors = three_cycle_factorization(rest);
    out.factors = factors.size();
    const LetterTables letters(ctx.g, ctx.h);
    const std::size_t tries = relocation_tries(ctx.n, cfg);
    std::vector<Symbol> drawn;
    for (const auto& c : factors) {
        const auto cyc = cycle_structure(c).front();
        struct Candidate {
            std::vector<Symbol> letters;
            std::array<std::size_t, 3> labels;
            std::uint64_t cost;
        };
        std::optional<Candidate> best;
        auto consider = [&](const std::array<point, 3>& pts, const std::vector<Symbol>& word_letters) {
            std::array<std::size_t, 3> lab{};
            for (std::size_t i = 0; i < 3; ++i) {
                lab[i] = ctx.frame.label_of(pts[i]);
                if (lab[i] == 0)
                    return;
            }
            const auto plan = plan_3cycle(ctx, lab[0], lab[1], lab[2]);
            if (!plan)
                return;
            const std::uint64_t cost = plan->cost + 2 * word_letters.size();
            if (!best || cost < best->cost)
                best = Candidate{word_letters, lab, cost};
        };
        consider({cyc[0], cyc[1], cyc[2]}, {});
        for (std::size_t t = 0; t < tries; ++t) {
            detail::draw_lazy_letters(ctx.walk_length, rng, drawn);
            std::array<point, 3> pts{cyc[0], cyc[1], cyc[2]};
            for (Symbol s : drawn)
                for (auto& p : pts)
                    p = letters.image[static_cast<std::size_t>(s)][p];
            consider(pts, drawn);
        }
        out.relocation_draws += tries;
        if (!best)
            throw retry_exhausted("3-cycle relocation into the long cycle failed");
        const Element inner = build_3cycle(ctx, best->labels[0], best->labels[1], best->labels[2]);
        if (best->letters.empty()) {
            parts.push_back(inner.word);
        } else {
            const Word rho = Word::from_symbols(best->letters);
            // ρ (ρ⁻¹ c ρ) ρ⁻¹ = c.
            parts.push_back(Word::concat({rho, inner.word, Word::inverse(rho)}));
        }
    }
    out.word = Word::concat(std::move(parts));
    return out;
}

inline Word synthesize(const SynthContext& ctx, const Permutation& pi, Rng& rng, const SynthConfig& cfg = {})
{
    return synthesize_detailed(ctx, pi, rng, cfg).word;
}

/// ⌈budget · n² · (log₂ n)^c⌉ — the regression guard on synthesized lengths.
inline double synth_length_budget(std::size_t n, double budget = 10.0, double c = 3.0)
{
    const double n_d = static_cast<double>(n);
    return budget * n_d * n_d * std::pow(std::log2(n_d), c);
}

} // namespace permword
