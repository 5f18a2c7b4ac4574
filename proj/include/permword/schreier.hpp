#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "permword/errors.hpp"
#include "permword/perm.hpp"
#include "permword/rng.hpp"
#include "permword/walk.hpp"
#include "permword/word.hpp"

namespace permword {

/// Schreier graph of <g, h> acting on injective ℓ-tuples of {0, ..., n-1}.
///
/// Vertices are addressed by a mixed-radix rank: digit i is the position of
/// x_i among the points not used by x_0..x_{i-1}, with radix n - i. Edges are
/// generated on demand; a rank table of the four neighbours is cached when it
/// fits in `neighbour_cache_limit` entries.
class TupleGraph {
public:
    static constexpr std::size_t max_arity = 4;
    static constexpr std::size_t neighbour_cache_limit = std::size_t{1} << 26;

    TupleGraph(const Permutation& g, const Permutation& h, std::size_t arity) : letters_(g, h), arity_(arity)
    {
        const std::size_t n = g.degree();
        if (arity < 1 || arity > max_arity)
            throw std::invalid_argument("tuple arity must be in 1..4");
        if (arity > n)
            throw std::invalid_argument("tuple arity exceeds degree");
        size_ = 1;
        for (std::size_t i = 0; i < arity; ++i)
            size_ *= n - i;
        if (4 * size_ <= neighbour_cache_limit) {
            neighbours_.resize(4 * size_);
            std::array<point, max_arity> t{};
            for (std::uint64_t v = 0; v < size_; ++v) {
                unrank(v, t);
                for (std::size_t s = 0; s < 4; ++s)
                    neighbours_[4 * v + s] = static_cast<std::uint32_t>(image_rank(t, s));
            }
        }
    }

    std::size_t degree() const { return letters_.degree(); }
    std::size_t arity() const { return arity_; }
    std::uint64_t size() const { return size_; }

    std::uint64_t rank(std::span<const point> tuple) const
    {
        if (tuple.size() != arity_)
            throw std::invalid_argument("tuple has the wrong arity");
        const std::size_t n = degree();
        std::uint64_t r = 0;
        for (std::size_t i = 0; i < arity_; ++i) {
            if (tuple[i] >= n)
                throw std::invalid_argument("tuple point out of range");
            std::uint64_t digit = tuple[i];
            for (std::size_t j = 0; j < i; ++j) {
                if (tuple[j] == tuple[i])
                    throw std::invalid_argument("tuple is not injective");
                digit -= tuple[j] < tuple[i];
            }
            r = r * (n - i) + digit;
        }
        return r;
    }

    void unrank(std::uint64_t r, std::span<point> out) const
    {
        const std::size_t n = degree();
        std::array<std::uint64_t, max_arity> digit{};
        for (std::size_t i = arity_; i-- > 0;) {
            digit[i] = r % (n - i);
            r /= n - i;
        }
        for (std::size_t i = 0; i < arity_; ++i) {
            // The digit[i]-th unused point, counting in increasing order.
            point x = static_cast<point>(digit[i]);
            for (;;) {
                std::size_t below = 0;
                bool used = false;
                for (std::size_t j = 0; j < i; ++j) {
                    below += out[j] <= x;
                    used = used || out[j] == x;
                }
                const point candidate = static_cast<point>(digit[i] + below);
                if (candidate == x && !used)
                    break;
                x = candidate;
            }
            out[i] = x;
        }
    }

    std::vector<point> unrank(std::uint64_t r) const
    {
        std::vector<point> t(arity_);
        unrank(r, t);
        return t;
    }

    /// Rank of v^s, letter s in Symbol order (g, h, g⁻¹, h⁻¹).
    std::uint64_t neighbour(std::uint64_t v, std::size_t s) const
    {
        if (!neighbours_.empty())
            return neighbours_[4 * v + s];
        std::array<point, max_arity> t{};
        unrank(v, t);
        return image_rank(t, s);
    }

    /// (𝒜 f)(x) = ¼ Σ_s f(x^s).
    std::vector<double> apply_adjacency(std::span<const double> f) const
    {
        if (f.size() != size_)
            throw std::invalid_argument("vector length differs from vertex count");
        std::vector<double> out(size_);
        for (std::uint64_t v = 0; v < size_; ++v) {
            double acc = 0.0;
            for (std::size_t s = 0; s < 4; ++s)
                acc += f[neighbour(v, s)];
            out[v] = 0.25 * acc;
        }
        return out;
    }

private:
    std::uint64_t image_rank(const std::array<point, max_arity>& t, std::size_t s) const
    {
        std::array<point, max_arity> u{};
        const auto& img = letters_.image[s];
        for (std::size_t i = 0; i < arity_; ++i)
            u[i] = img[t[i]];
        return rank(std::span<const point>(u.data(), arity_));
    }

    LetterTables letters_;
    std::size_t arity_;
    std::uint64_t size_ = 0;
    std::vector<std::uint32_t> neighbours_;
};

struct GapEstimate {
    double lambda1 = 1.0;  ///< second-largest eigenvalue of 𝒜
    double gap = 0.0;      ///< 1 - lambda1
    double residual = 0.0; ///< ‖𝒜v - λ₁v‖₂ / ‖v‖₂
    std::size_t iters_used = 0;
    bool converged = false;
    std::vector<double> residual_history; ///< one entry per iteration
};

/// Second eigenvalue of 𝒜 by power iteration on the lazy operator (I + 𝒜)/2.
///
/// The start vector and every iterate are projected onto the complement of
/// the constant vector. The Rayleigh quotient θ of the lazy operator maps back
/// as λ₁ = 2θ - 1. Stops once the residual is at most tol; otherwise returns
/// the last estimate with converged = false.
inline GapEstimate estimate_gap(const TupleGraph& graph, std::size_t iters, double tol, Rng& rng)
{
    const std::size_t N = graph.size();
    GapEstimate out;
    if (N < 2) {
        out.lambda1 = -1.0;
        out.gap = 2.0;
        out.converged = true;
        return out;
    }
    auto deflate_normalize = [](std::vector<double>& v) {
        double mean = 0.0;
        for (double x : v)
            mean += x;
        mean /= static_cast<double>(v.size());
        double norm = 0.0;
        for (double& x : v) {
            x -= mean;
            norm += x * x;
        }
        norm = std::sqrt(norm);
        if (norm > 0.0)
            for (double& x : v)
                x /= norm;
        return norm;
    };
    std::vector<double> v(N);
    for (auto& x : v)
        x = rng.uniform01() - 0.5;
    deflate_normalize(v);

    std::vector<double> w(N);
    for (std::size_t it = 1; it <= iters; ++it) {
        const std::vector<double> av = graph.apply_adjacency(v);
        double theta = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            w[i] = 0.5 * (v[i] + av[i]);
            theta += v[i] * w[i];
        }
        double r2 = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double d = w[i] - theta * v[i];
            r2 += d * d;
        }
        // ‖𝒜v − λv‖ = 2 ‖Lv − θv‖ for L = (I + 𝒜)/2 and λ = 2θ − 1.
        out.lambda1 = 2.0 * theta - 1.0;
        out.gap = 1.0 - out.lambda1;
        out.residual = 2.0 * std::sqrt(r2);
        out.iters_used = it;
        out.residual_history.push_back(out.residual);
        if (out.residual <= tol) {
            out.converged = true;
            break;
        }
        v.swap(w);
        if (deflate_normalize(v) == 0.0)
            break;
    }
    return out;
}

struct PointConstraint {
    point from;
    point to;
};

struct ConditionedWalk {
    Permutation sigma;
    Word word;
    std::size_t tries = 0; ///< trials drawn, the accepted one included
};

/// Default trial budget: 20 n^c for c constraints.
inline std::size_t default_max_tries(std::size_t n, std::size_t constraints)
{
    double v = 20.0;
    for (std::size_t i = 0; i < constraints; ++i)
        v *= static_cast<double>(n);
    return static_cast<std::size_t>(std::min(v, 1e12));
}

/// Lazy walk of length k conditioned on from^σ = to for every constraint, by
/// rejection. A trial only moves the constrained points; the full permutation
/// and word are formed for the accepted trial.
inline ConditionedWalk conditioned_walk(const LetterTables& letters, std::size_t k,
                                        std::span<const PointConstraint> constraints, Rng& rng,
                                        std::size_t max_tries)
{
    const std::size_t n = letters.degree();
    if (k < 1)
        throw std::invalid_argument("walk length must be at least 1");
    for (std::size_t i = 0; i < constraints.size(); ++i) {
        if (constraints[i].from >= n || constraints[i].to >= n)
            throw std::invalid_argument("constraint point out of range");
        for (std::size_t j = 0; j < i; ++j)
            if (constraints[i].from == constraints[j].from || constraints[i].to == constraints[j].to)
                throw std::invalid_argument("constraints must use distinct points and distinct targets");
    }
    std::vector<Symbol> letters_drawn;
    letters_drawn.reserve(k);
    std::vector<point> tracked(constraints.size());
    for (std::size_t trial = 1; trial <= max_tries; ++trial) {
        detail::draw_lazy_letters(k, rng, letters_drawn);
        for (std::size_t i = 0; i < constraints.size(); ++i)
            tracked[i] = constraints[i].from;
        for (Symbol s : letters_drawn) {
            const auto& img = letters.image[static_cast<std::size_t>(s)];
            for (auto& x : tracked)
                x = img[x];
        }
        bool ok = true;
        for (std::size_t i = 0; i < constraints.size() && ok; ++i)
            ok = tracked[i] == constraints[i].to;
        if (ok)
            return {letters.element(letters_drawn), Word::from_symbols(letters_drawn), trial};
    }
    throw retry_exhausted("conditioned walk: no acceptance in " + std::to_string(max_tries) + " trials");
}

inline ConditionedWalk conditioned_walk(const Permutation& g, const Permutation& h, std::size_t k,
                                        std::span<const PointConstraint> constraints, Rng& rng,
                                        std::optional<std::size_t> max_tries = std::nullopt)
{
    return conditioned_walk(LetterTables(g, h), k, constraints, rng,
                            max_tries.value_or(default_max_tries(g.degree(), constraints.size())));
}

/// ⌈C ln n⌉, at least 1.
inline std::size_t walk_length(std::size_t n, double c)
{
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(c * std::log(static_cast<double>(n)))));
}

} // namespace permword
