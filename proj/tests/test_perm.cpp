#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "permword/perm.hpp"

using namespace permword;

namespace {

Permutation cyc(std::size_t n, std::vector<std::vector<point>> c) { return Permutation::from_cycles(n, c); }

Permutation product(const std::vector<Permutation>& ps, std::size_t n)
{
    Permutation r(n);
    for (const auto& p : ps)
        r = r * p;
    return r;
}

} // namespace

TEST(Perm, ComposeExamples)
{
    const Permutation e(5);
    const auto p = cyc(5, {{1, 3, 5}, {2, 4}});
    EXPECT_EQ(compose(e, p), p);
    EXPECT_TRUE(compose(cyc(5, {{1, 2}}), cyc(5, {{1, 2}})).is_identity());
    EXPECT_EQ(compose(cyc(3, {{1, 2, 3}}), cyc(3, {{1, 2, 3}})), cyc(3, {{1, 3, 2}}));
    EXPECT_THROW(compose(Permutation(3), Permutation(4)), std::invalid_argument);
}

TEST(Perm, RightAction)
{
    // x^(pq) = (x^p)^q: 1 -> 2 under p, 2 -> 3 under q.
    const auto p = cyc(3, {{1, 2}});
    const auto q = cyc(3, {{2, 3}});
    EXPECT_EQ((p * q)(0), 2u);
}

TEST(Perm, InvertExamples)
{
    EXPECT_TRUE(invert(Permutation(4)).is_identity());
    EXPECT_EQ(invert(cyc(3, {{1, 2, 3}})), cyc(3, {{1, 3, 2}}));
    EXPECT_EQ(invert(cyc(2, {{1, 2}})), cyc(2, {{1, 2}}));
}

TEST(Perm, ConjugateExamples)
{
    const auto p = cyc(4, {{1, 2, 3}});
    EXPECT_EQ(conjugate(p, Permutation(4)), p);
    EXPECT_EQ(conjugate(p, cyc(4, {{3, 4}})), cyc(4, {{1, 2, 4}}));
    Rng rng(11);
    for (int t = 0; t < 50; ++t) {
        const auto a = random_uniform(10, rng), r = random_uniform(10, rng);
        EXPECT_EQ(conjugate(a, r), invert(r) * a * r);
        std::set<point> want;
        for (point x : support(a))
            want.insert(r(x));
        const auto got = support(conjugate(a, r));
        EXPECT_EQ(std::set<point>(got.begin(), got.end()), want);
    }
}

TEST(Perm, SupportExamples)
{
    EXPECT_TRUE(support(Permutation(5)).empty());
    EXPECT_EQ(support(cyc(5, {{1, 2, 3}})), (std::vector<point>{0, 1, 2}));
    EXPECT_EQ(support_size(cyc(6, {{1, 2}, {4, 5, 6}})), 5u);
}

TEST(Perm, CycleStructure)
{
    EXPECT_TRUE(cycle_structure(Permutation(4)).empty());
    const auto cs = cycle_structure(cyc(5, {{1, 2}, {3, 4, 5}}));
    ASSERT_EQ(cs.size(), 2u);
    EXPECT_EQ(cs[0], (std::vector<point>{0, 1}));
    EXPECT_EQ(cs[1], (std::vector<point>{2, 3, 4}));
    EXPECT_EQ(longest_cycle(cyc(5, {{1, 2}, {3, 4, 5}})).length, 3u);
    std::vector<point> all(9);
    for (point i = 0; i < 9; ++i)
        all[i] = i + 1;
    EXPECT_EQ(longest_cycle(cyc(9, {all})).length, 9u);
    // Tie goes to the smallest minimum.
    const auto tie = longest_cycle(cyc(6, {{4, 5, 6}, {1, 2, 3}}));
    EXPECT_EQ(tie.cycle.front(), 0u);
}

TEST(Perm, Parity)
{
    EXPECT_TRUE(is_even(Permutation(3)));
    EXPECT_FALSE(is_even(cyc(3, {{1, 2}})));
    EXPECT_TRUE(is_even(cyc(3, {{1, 2, 3}})));
    Rng rng(3);
    for (int t = 0; t < 100; ++t) {
        const auto p = random_uniform(12, rng), q = random_uniform(12, rng);
        EXPECT_EQ(is_even(p * q), is_even(p) == is_even(q));
    }
}

TEST(Perm, GroupLaws)
{
    Rng rng(5);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 1 + rng.below(50);
        const auto p = random_uniform(n, rng), q = random_uniform(n, rng), r = random_uniform(n, rng);
        EXPECT_TRUE((p * invert(p)).is_identity());
        EXPECT_EQ(invert(invert(p)), p);
        EXPECT_EQ((p * q) * r, p * (q * r));
    }
}

TEST(Perm, PowerAndOrder)
{
    Rng rng(8);
    for (int t = 0; t < 30; ++t) {
        const auto p = random_uniform(15, rng);
        EXPECT_TRUE(power(p, order(p)).is_identity());
        Permutation slow(15);
        for (int i = 0; i < 7; ++i)
            slow = slow * p;
        EXPECT_EQ(power(p, 7), slow);
    }
}

TEST(Perm, RandomUniform)
{
    Rng one(1);
    EXPECT_TRUE(random_uniform(1, one).is_identity());
    Rng a(42), b(42);
    EXPECT_EQ(random_uniform(20, a), random_uniform(20, b));

    Rng rng(2024);
    std::map<Permutation, int> counts;
    const int N = 60000;
    for (int i = 0; i < N; ++i)
        ++counts[random_uniform(3, rng)];
    ASSERT_EQ(counts.size(), 6u);
    const double mean = N / 6.0, sd = std::sqrt(N * (1.0 / 6) * (5.0 / 6));
    for (const auto& [p, c] : counts)
        EXPECT_LT(std::abs(c - mean), 5 * sd);
}

TEST(Perm, ThreeCycleFactorizationExamples)
{
    EXPECT_TRUE(three_cycle_factorization(Permutation(5)).empty());
    const auto c = cyc(5, {{1, 2, 3}});
    const auto f1 = three_cycle_factorization(c);
    ASSERT_EQ(f1.size(), 1u);
    EXPECT_EQ(f1[0], c);
    const auto dt = cyc(4, {{1, 2}, {3, 4}});
    const auto f2 = three_cycle_factorization(dt);
    EXPECT_EQ(f2.size(), 2u);
    EXPECT_EQ(product(f2, 4), dt);
    EXPECT_THROW(three_cycle_factorization(cyc(4, {{1, 2}})), std::invalid_argument);
}

TEST(Perm, ThreeCycleFactorizationExhaustive)
{
    for (std::size_t n = 1; n <= 5; ++n) {
        std::vector<point> img(n);
        for (point i = 0; i < n; ++i)
            img[i] = i;
        do {
            const auto p = Permutation::from_images(img);
            if (!is_even(p))
                continue;
            const auto f = three_cycle_factorization(p);
            EXPECT_LE(f.size(), n);
            for (const auto& c : f)
                EXPECT_EQ(support_size(c), 3u);
            EXPECT_EQ(product(f, n), p);
        } while (std::next_permutation(img.begin(), img.end()));
    }
}

TEST(Perm, ThreeCycleFactorizationRandom)
{
    Rng rng(77);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 3 + rng.below(198);
        Permutation p = random_uniform(n, rng);
        if (!is_even(p))
            p = p * cyc(n, {{1, 2}});
        const auto f = three_cycle_factorization(p);
        EXPECT_LE(f.size(), n);
        EXPECT_EQ(product(f, n), p);
    }
}

TEST(Perm, TextFormats)
{
    const auto p = parse_permutation("(1 2 3)(4 5)");
    EXPECT_EQ(p.degree(), 5u);
    EXPECT_EQ(p, cyc(5, {{1, 2, 3}, {4, 5}}));
    EXPECT_EQ(parse_permutation("5: 2 3 1 5 4"), p);
    EXPECT_EQ(parse_permutation("(1 2)", 6).degree(), 6u);
    EXPECT_EQ(to_cycle_string(p), "(1 2 3)(4 5)");
    EXPECT_EQ(to_cycle_string(Permutation(3)), "()");
    EXPECT_EQ(parse_permutation(to_image_string(p)), p);
    EXPECT_THROW(parse_permutation("3: 1 1 2"), std::invalid_argument);
    EXPECT_THROW(parse_permutation(""), std::invalid_argument);
}
