#include <gtest/gtest.h>

#include <map>

#include "permword/synth.hpp"

using namespace permword;

namespace {

GeneratorPair pair_for(std::size_t n, std::uint64_t seed)
{
    Rng rng(seed);
    return random_generators(n, rng);
}

Permutation cyc(std::size_t n, std::vector<std::vector<point>> c) { return Permutation::from_cycles(n, c); }

Permutation commutator(const Permutation& a, const Permutation& b) { return invert(a) * invert(b) * a * b; }

// Contexts are costly; build a few once. Seeds whose pair has no usable
// long cycle are skipped in steps of 1000.
const SynthContext& context_for(std::size_t n, std::uint64_t seed)
{
    static std::map<std::pair<std::size_t, std::uint64_t>, SynthContext> cache;
    auto it = cache.find({n, seed});
    if (it != cache.end())
        return it->second;
    for (std::uint64_t s = seed;; s += 1000) {
        const auto p = pair_for(n, s);
        Rng rng(s * 7 + 1);
        try {
            return cache.emplace(std::make_pair(n, seed), prepare_context(p.g, p.h, rng)).first->second;
        } catch (const retry_exhausted&) {
        }
    }
}

} // namespace

TEST(Synth, SignedResidue)
{
    EXPECT_EQ(signed_residue(0, 10), 0);
    EXPECT_EQ(signed_residue(5, 10), 5);
    EXPECT_EQ(signed_residue(6, 10), -4);
    EXPECT_EQ(signed_residue(-1, 10), -1);
    EXPECT_EQ(signed_residue(23, 10), 3);
    EXPECT_EQ(signed_residue(4, 9), 4);
    EXPECT_EQ(signed_residue(5, 9), -4);
}

TEST(Synth, CycleFrame)
{
    CycleFrame f({4, 2, 7, 0}, 9);
    EXPECT_EQ(f.length(), 4u);
    EXPECT_EQ(f.point_of(1), 4u);
    EXPECT_EQ(f.point_of(5), 4u);
    EXPECT_EQ(f.label_of(7), 3u);
    EXPECT_FALSE(f.on_cycle(1));
    EXPECT_EQ(f.wrap(0), 4u);
    EXPECT_EQ(f.wrap(-3), 1u);
    f.rotate_to(3);
    EXPECT_EQ(f.point_of(1), 7u);
    EXPECT_EQ(f.label_of(4), 3u);
    EXPECT_EQ(f.label_cycle(1, 2, 3), three_cycle(9, 7, 0, 4));
}

TEST(Synth, CongruenceExamples)
{
    // γ = e: 1 + s = r and a + s = r + 1 force a = 2 with r = 1, s = 0.
    const auto e = Permutation(12);
    const auto c = solve_congruence(e, 2, 10);
    ASSERT_TRUE(c);
    EXPECT_EQ(c->r, 1u);
    EXPECT_EQ(c->s, 0u);
    EXPECT_FALSE(solve_congruence(e, 3, 10));
    // The shift x -> x+1 on 1..10 behaves the same way with s = r.
    std::vector<point> ten(10);
    for (point i = 0; i < 10; ++i)
        ten[i] = i + 1;
    const auto shift = cyc(12, {ten});
    const auto d = solve_congruence(shift, 2, 10);
    ASSERT_TRUE(d);
    EXPECT_EQ(d->r, 1u);
    EXPECT_EQ(d->s, 1u);
    // Reversal x -> 11 - x: a + s = (r+1)^γ = r^γ - 1 forces a = 0 mod l, i.e. a = l.
    std::vector<point> rev(12);
    for (point i = 0; i < 12; ++i)
        rev[i] = i < 10 ? 9 - i : i;
    const auto r = solve_congruence(Permutation::from_images(rev), 10, 10);
    ASSERT_TRUE(r);
    EXPECT_EQ(r->r, 1u);
    EXPECT_THROW(solve_congruence(e, 0, 10), std::invalid_argument);
    EXPECT_THROW(solve_congruence(e, 2, 13), std::invalid_argument);
}

TEST(Synth, CongruenceRandomAgainstBruteForce)
{
    const std::size_t n = 20, l = 15;
    Rng rng(13);
    std::vector<point> pts(l);
    for (point i = 0; i < l; ++i)
        pts[i] = i;
    const CycleFrame frame(pts, n);
    int solved = 0;
    for (int t = 0; t < 100; ++t) {
        const auto gamma = random_uniform(n, rng);
        const std::size_t a = 1 + rng.below(l);
        const std::size_t b = 1 + rng.below(l);
        std::optional<Congruence> want;
        for (std::size_t r = 1; r < l && !want; ++r)
            for (std::size_t s = 0; s < l && !want; ++s) {
                const auto R = frame.label_of(gamma(frame.point_of(r)));
                const auto R1 = frame.label_of(gamma(frame.point_of(r + 1)));
                if (R == 0 || R1 == 0 || frame.wrap(1 + s) != R || frame.wrap(a + s) != R1)
                    continue;
                const auto T = frame.label_of(invert(gamma)(frame.point_of(frame.wrap(b + s))));
                if (T != 0)
                    want = Congruence{r, s, T};
            }
        const auto got = solve_congruence(gamma, frame, a, b);
        ASSERT_EQ(got.has_value(), want.has_value()) << "trial " << t;
        if (got) {
            ++solved;
            EXPECT_EQ(got->r, want->r);
            EXPECT_EQ(got->s, want->s);
            EXPECT_EQ(got->third, want->third);
        }
    }
    EXPECT_GT(solved, 0);
}

TEST(Synth, CommutatorIdentityBruteForce)
{
    // (p q w) = A⁻¹ B⁻¹ A B for A = (p w u), B = (p q u') with u != q, u' != w, u != u'.
    const std::size_t n = 7;
    int checked = 0;
    for (point p = 0; p < n; ++p)
        for (point q = 0; q < n; ++q)
            for (point w = 0; w < n; ++w) {
                if (p == q || q == w || p == w)
                    continue;
                for (point u = 0; u < n; ++u)
                    for (point u2 = 0; u2 < n; ++u2) {
                        if (u == p || u == w || u2 == p || u2 == q)
                            continue;
                        const auto A = three_cycle(n, p, w, u), B = three_cycle(n, p, q, u2);
                        const bool admissible = u != q && u2 != w && u != u2;
                        if (admissible) {
                            ++checked;
                            EXPECT_EQ(commutator(A, B), three_cycle(n, p, q, w));
                        }
                    }
            }
    EXPECT_GT(checked, 1000);
    EXPECT_EQ(commutator(cyc(5, {{1, 3, 5}}), cyc(5, {{1, 2, 4}})), cyc(5, {{1, 2, 3}}));
    // Dropping u != u' breaks it.
    EXPECT_NE(commutator(cyc(5, {{1, 3, 4}}), cyc(5, {{1, 2, 4}})), cyc(5, {{1, 2, 3}}));
}

TEST(Synth, ContextInvariants)
{
    const std::size_t n = 50;
    int built = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto p = pair_for(n, seed);
        Rng rng(seed + 500);
        try {
            const auto ctx = prepare_context(p.g, p.h, rng);
            ++built;
            EXPECT_EQ(context_violation(ctx), "") << "seed " << seed;
            EXPECT_GE(ctx.l, 38u);
            EXPECT_GE(ctx.x, 3u);
            EXPECT_LE(ctx.x, ctx.l);
            EXPECT_EQ(ctx.witness.has_value(), !is_even(p.g) || !is_even(p.h));
        } catch (const retry_exhausted&) {
        }
    }
    EXPECT_GE(built, 40);
}

TEST(Synth, BaseCycleWithinTenDraws)
{
    const std::size_t n = 30;
    int quick = 0, total = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto p = pair_for(n, seed);
        Rng rng(seed + 3);
        try {
            const auto ctx = prepare_context(p.g, p.h, rng);
            ++total;
            EXPECT_GE(ctx.gamma_draws, 1u);
            if (ctx.gamma_draws <= 10)
                ++quick;
        } catch (const retry_exhausted&) {
        }
    }
    ASSERT_GT(total, 0);
    EXPECT_GE(quick, total * 3 / 4);
}

TEST(Synth, Build3CycleRandomTriples)
{
    const auto& ctx = context_for(40, 1);
    Rng rng(17);
    for (int t = 0; t < 50; ++t) {
        std::size_t r, s, u;
        do {
            r = 1 + rng.below(ctx.l);
            s = 1 + rng.below(ctx.l);
            u = 1 + rng.below(ctx.l);
        } while (r == s || s == u || r == u);
        const auto e = build_3cycle(ctx, r, s, u);
        EXPECT_EQ(e.perm, ctx.frame.label_cycle(r, s, u));
        EXPECT_EQ(evaluate(e.word, ctx.g, ctx.h), e.perm) << r << " " << s << " " << u;
    }
    EXPECT_THROW(build_3cycle(ctx, 1, 1, 2), std::invalid_argument);
}

TEST(Synth, RandomEvenTargets)
{
    for (std::size_t n : {12, 20, 33}) {
        const auto& ctx = context_for(n, 2);
        Rng rng(n);
        for (int t = 0; t < 5; ++t) {
            Permutation pi = random_uniform(n, rng);
            if (!is_even(pi))
                pi = pi * cyc(n, {{1, 2}});
            const auto r = synthesize_detailed(ctx, pi, rng);
            EXPECT_EQ(evaluate(r.word, ctx.g, ctx.h), pi);
            EXPECT_FALSE(r.used_witness);
            EXPECT_LE(static_cast<double>(r.word.expanded_length()), synth_length_budget(n));
        }
    }
}

TEST(Synth, IdentityAndTransposition)
{
    const auto& ctx = context_for(20, 3);
    Rng rng(5);
    const Permutation e(20);
    const auto we = synthesize(ctx, e, rng);
    EXPECT_TRUE(evaluate(we, ctx.g, ctx.h).is_identity());
    const auto tr = cyc(20, {{3, 11}});
    if (ctx.witness) {
        const auto r = synthesize_detailed(ctx, tr, rng);
        EXPECT_TRUE(r.used_witness);
        EXPECT_EQ(evaluate(r.word, ctx.g, ctx.h), tr);
    } else {
        EXPECT_THROW(synthesize(ctx, tr, rng), std::invalid_argument);
    }
    EXPECT_THROW(synthesize(ctx, Permutation(19), rng), std::invalid_argument);
}

TEST(Synth, OddTargetsWithOddGenerator)
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto& ctx = context_for(16, 10 + seed);
        if (!ctx.witness)
            continue;
        Rng rng(seed);
        Permutation pi = random_uniform(16, rng);
        if (is_even(pi))
            pi = pi * cyc(16, {{1, 2}});
        EXPECT_EQ(evaluate(synthesize(ctx, pi, rng), ctx.g, ctx.h), pi);
        return;
    }
    GTEST_SKIP() << "no pair with an odd generator";
}

TEST(Synth, RandomWordTargets)
{
    const auto& ctx = context_for(24, 4);
    Rng rng(8);
    const LetterTables t(ctx.g, ctx.h);
    for (int i = 0; i < 5; ++i) {
        const auto target = sample_generator_walk(t, 300, rng).element;
        if (!is_even(target) && !ctx.witness)
            continue;
        EXPECT_EQ(evaluate(synthesize(ctx, target, rng), ctx.g, ctx.h), target);
    }
}

TEST(Synth, Deterministic)
{
    const auto p = pair_for(25, 6);
    Rng a(1), b(1);
    const auto c1 = prepare_context(p.g, p.h, a), c2 = prepare_context(p.g, p.h, b);
    Rng ta(9);
    Permutation pi = random_uniform(25, ta);
    if (!is_even(pi))
        pi = pi * cyc(25, {{1, 2}});
    const auto w1 = synthesize(c1, pi, a), w2 = synthesize(c2, pi, b);
    EXPECT_TRUE(structurally_equal(w1, w2));
    EXPECT_EQ(serialize(w1), serialize(w2));
}
