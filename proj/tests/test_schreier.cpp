#include <gtest/gtest.h>

#include <numeric>

#include "oracles.hpp"
#include "permword/schreier.hpp"

using namespace permword;

namespace {

GeneratorPair pair_for(std::size_t n, std::uint64_t seed)
{
    Rng rng(seed);
    return random_generators(n, rng);
}

} // namespace

TEST(Schreier, MatchesDenseOracle)
{
    const std::pair<std::size_t, std::size_t> cases[] = {{5, 1}, {6, 1}, {6, 3}, {5, 2}};
    for (const auto& [n, ell] : cases)
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            const auto p = pair_for(n, seed);
            const auto dense = oracle::dense_schreier(p.g, p.h, ell);
            ASSERT_TRUE(dense.A.isApprox(dense.A.transpose()));
            const double want = oracle::second_eigenvalue(dense.A);
            const TupleGraph graph(p.g, p.h, ell);
            ASSERT_EQ(graph.size(), dense.tuples.size());
            Rng rng(100 + seed);
            const auto est = estimate_gap(graph, 200000, 1e-10, rng);
            EXPECT_TRUE(est.converged) << "n=" << n << " ell=" << ell;
            EXPECT_NEAR(est.lambda1, want, 1e-6) << "n=" << n << " ell=" << ell << " seed=" << seed;
            EXPECT_NEAR(est.gap, 1.0 - want, 1e-6);
        }
}

TEST(Schreier, AdjacencyMatchesDense)
{
    const auto p = pair_for(6, 4);
    const auto dense = oracle::dense_schreier(p.g, p.h, 2);
    const TupleGraph graph(p.g, p.h, 2);
    Rng rng(2);
    std::vector<double> f(graph.size());
    for (auto& x : f)
        x = rng.uniform01();
    const auto got = graph.apply_adjacency(f);
    // Dense vertex i is the tuple dense.tuples[i]; map it through rank.
    for (std::size_t i = 0; i < dense.tuples.size(); ++i) {
        double acc = 0;
        for (std::size_t j = 0; j < dense.tuples.size(); ++j)
            acc += dense.A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * f[graph.rank(dense.tuples[j])];
        EXPECT_NEAR(got[graph.rank(dense.tuples[i])], acc, 1e-12);
    }
}

TEST(Schreier, ConstantVectorIsFixed)
{
    const auto p = pair_for(9, 1);
    const TupleGraph graph(p.g, p.h, 3);
    const std::vector<double> one(graph.size(), 1.0);
    for (double x : graph.apply_adjacency(one))
        EXPECT_DOUBLE_EQ(x, 1.0);
}

TEST(Schreier, IdentityGeneratorsHaveNoGap)
{
    const Permutation e(6);
    const TupleGraph graph(e, e, 2);
    Rng rng(1);
    const auto est = estimate_gap(graph, 50, 1e-12, rng);
    EXPECT_NEAR(est.lambda1, 1.0, 1e-12);
    EXPECT_NEAR(est.gap, 0.0, 1e-12);
}

TEST(Schreier, RankUnrankRoundTrip)
{
    Rng rng(5);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 4 + rng.below(16);
        const std::size_t ell = 1 + rng.below(4);
        const TupleGraph graph(random_uniform(n, rng), random_uniform(n, rng), ell);
        const auto v = rng.below(graph.size());
        const auto tuple = graph.unrank(v);
        ASSERT_EQ(tuple.size(), ell);
        for (std::size_t i = 0; i < ell; ++i) {
            EXPECT_LT(tuple[i], n);
            for (std::size_t j = 0; j < i; ++j)
                EXPECT_NE(tuple[i], tuple[j]);
        }
        EXPECT_EQ(graph.rank(tuple), v);
    }
    const TupleGraph small(Permutation(5), Permutation(5), 2);
    std::vector<bool> hit(small.size(), false);
    for (point a = 0; a < 5; ++a)
        for (point b = 0; b < 5; ++b)
            if (a != b) {
                const std::vector<point> t{a, b};
                hit[small.rank(t)] = true;
            }
    EXPECT_EQ(std::count(hit.begin(), hit.end(), true), 20);
}

TEST(Schreier, NeighbourIsPointwiseImage)
{
    Rng rng(8);
    const auto g = random_uniform(12, rng), h = random_uniform(12, rng);
    const Permutation gens[4] = {g, h, invert(g), invert(h)};
    const TupleGraph graph(g, h, 3);
    for (int t = 0; t < 100; ++t) {
        const auto v = rng.below(graph.size());
        for (std::size_t s = 0; s < 4; ++s) {
            auto tuple = graph.unrank(v);
            for (auto& x : tuple)
                x = gens[s](x);
            EXPECT_EQ(graph.neighbour(v, s), graph.rank(tuple));
        }
    }
}

TEST(Schreier, BadArity)
{
    const Permutation e(3);
    EXPECT_THROW(TupleGraph(e, e, 0), std::invalid_argument);
    EXPECT_THROW(TupleGraph(e, e, 5), std::invalid_argument);
    EXPECT_THROW(TupleGraph(e, e, 4), std::invalid_argument);
}

TEST(Schreier, ResidualReporting)
{
    const auto p = pair_for(8, 2);
    const TupleGraph graph(p.g, p.h, 2);
    Rng a(3), b(3);
    const auto one = estimate_gap(graph, 1, 1e-14, a);
    EXPECT_FALSE(one.converged);
    EXPECT_EQ(one.iters_used, 1u);
    EXPECT_EQ(one.residual_history.size(), 1u);
    const auto full = estimate_gap(graph, 100000, 1e-9, b);
    ASSERT_TRUE(full.converged);
    EXPECT_LE(full.residual, 1e-9);
    EXPECT_EQ(full.residual_history.size(), full.iters_used);
    EXPECT_DOUBLE_EQ(full.residual_history.back(), full.residual);
    EXPECT_LT(full.residual, full.residual_history.front());
    EXPECT_GT(full.gap, 0.0);
}

TEST(Schreier, ConditionedWalkPostconditions)
{
    Rng rng(21);
    const auto g = random_uniform(15, rng), h = random_uniform(15, rng);
    const LetterTables letters(g, h);
    for (int t = 0; t < 30; ++t) {
        const std::vector<PointConstraint> cons{{static_cast<point>(rng.below(5)), static_cast<point>(rng.below(15))}};
        const auto w = conditioned_walk(g, h, 60, cons, rng);
        EXPECT_EQ(w.sigma(cons[0].from), cons[0].to);
        EXPECT_EQ(evaluate(w.word, g, h), w.sigma);
        EXPECT_LE(w.word.expanded_length(), 60u);
        EXPECT_GE(w.tries, 1u);
    }
    const std::vector<PointConstraint> bad{{0, 1}, {0, 2}};
    EXPECT_THROW(conditioned_walk(g, h, 10, bad, rng), std::invalid_argument);
    const std::vector<PointConstraint> none;
    EXPECT_THROW(conditioned_walk(g, h, 0, none, rng), std::invalid_argument);
    // e fixes every point, so 0 -> 1 is unreachable.
    const Permutation e(15);
    const std::vector<PointConstraint> impossible{{0, 1}};
    EXPECT_THROW(conditioned_walk(e, e, 10, impossible, rng, 50), retry_exhausted);
}

TEST(Schreier, ConditionedWalkTrialRate)
{
    const std::size_t n = 30;
    const auto p = pair_for(n, 9);
    const LetterTables letters(p.g, p.h);
    Rng rng(4);
    const std::size_t k = walk_length(n, 40.0);
    const std::vector<PointConstraint> cons{{0, 7}, {1, 3}};
    const int runs = 200;
    double total = 0;
    for (int i = 0; i < runs; ++i) {
        const auto w = conditioned_walk(letters, k, cons, rng, default_max_tries(n, 2));
        EXPECT_EQ(w.sigma(0), 7u);
        EXPECT_EQ(w.sigma(1), 3u);
        total += static_cast<double>(w.tries);
    }
    const double mean = total / runs, want = static_cast<double>(n * (n - 1));
    EXPECT_GT(mean, want / 3);
    EXPECT_LT(mean, want * 3);
}

TEST(Schreier, WalkLength)
{
    EXPECT_EQ(walk_length(1, 40.0), 1u);
    EXPECT_EQ(walk_length(100, 1.0), 5u);
}
