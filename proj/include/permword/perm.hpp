#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "permword/rng.hpp"

namespace permword {

/// A point of {0, ..., n-1}. Text formats show points 1-based.
using point = std::uint32_t;

/// Bijection of {0, ..., n-1} stored as an image table, acting on the right:
/// x^(pq) = (x^p)^q.
class Permutation {
public:
    Permutation() = default;

    /// Identity of degree n.
    explicit Permutation(std::size_t n) : images_(n)
    {
        std::iota(images_.begin(), images_.end(), point{0});
    }

    /// From a 0-based image table; throws std::invalid_argument unless it is a bijection.
    static Permutation from_images(std::vector<point> images)
    {
        std::vector<bool> seen(images.size(), false);
        for (point y : images) {
            if (y >= images.size() || seen[y])
                throw std::invalid_argument("image table is not a bijection");
            seen[y] = true;
        }
        Permutation p;
        p.images_ = std::move(images);
        return p;
    }

    /// From disjoint cycles given with 1-based points, e.g. {{1, 2, 3}, {4, 5}}.
    static Permutation from_cycles(std::size_t n, const std::vector<std::vector<point>>& cycles)
    {
        Permutation p(n);
        std::vector<bool> used(n, false);
        for (const auto& c : cycles) {
            for (point x : c) {
                if (x < 1 || x > n)
                    throw std::invalid_argument("cycle point out of range");
                if (used[x - 1])
                    throw std::invalid_argument("cycles are not disjoint");
                used[x - 1] = true;
            }
            for (std::size_t i = 0; i < c.size(); ++i)
                p.images_[c[i] - 1] = c[(i + 1) % c.size()] - 1;
        }
        return p;
    }

    std::size_t degree() const { return images_.size(); }

    /// x^p.
    point operator()(point x) const { return images_[x]; }

    std::span<const point> images() const { return images_; }

    bool is_identity() const
    {
        for (std::size_t x = 0; x < images_.size(); ++x)
            if (images_[x] != x)
                return false;
        return true;
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
    std::vector<point> images_;
};

namespace detail {

inline void require_same_degree(const Permutation& p, const Permutation& q)
{
    if (p.degree() != q.degree())
        throw std::invalid_argument("degree mismatch: " + std::to_string(p.degree()) + " vs " +
                                    std::to_string(q.degree()));
}

} // namespace detail

/// x ↦ (x^p)^q.
inline Permutation compose(const Permutation& p, const Permutation& q)
{
    detail::require_same_degree(p, q);
    std::vector<point> r(p.degree());
    for (std::size_t x = 0; x < r.size(); ++x)
        r[x] = q(p(static_cast<point>(x)));
    return Permutation::from_images(std::move(r));
}

inline Permutation operator*(const Permutation& p, const Permutation& q) { return compose(p, q); }

inline Permutation invert(const Permutation& p)
{
    std::vector<point> r(p.degree());
    for (std::size_t x = 0; x < r.size(); ++x)
        r[p(static_cast<point>(x))] = static_cast<point>(x);
    return Permutation::from_images(std::move(r));
}

/// r⁻¹ p r. Maps each cycle (a b ...) of p to (a^r b^r ...).
inline Permutation conjugate(const Permutation& p, const Permutation& r)
{
    detail::require_same_degree(p, r);
    std::vector<point> out(p.degree());
    for (std::size_t x = 0; x < out.size(); ++x)
        out[r(static_cast<point>(x))] = r(p(static_cast<point>(x)));
    return Permutation::from_images(std::move(out));
}

/// p^k by repeated squaring.
inline Permutation power(const Permutation& p, std::uint64_t k)
{
    Permutation result(p.degree());
    Permutation base = p;
    while (k > 0) {
        if (k & 1)
            result = result * base;
        k >>= 1;
        if (k > 0)
            base = base * base;
    }
    return result;
}

/// Points moved by p, ascending.
inline std::vector<point> support(const Permutation& p)
{
    std::vector<point> s;
    for (std::size_t x = 0; x < p.degree(); ++x)
        if (p(static_cast<point>(x)) != x)
            s.push_back(static_cast<point>(x));
    return s;
}

inline std::size_t support_size(const Permutation& p)
{
    std::size_t c = 0;
    for (std::size_t x = 0; x < p.degree(); ++x)
        c += p(static_cast<point>(x)) != x;
    return c;
}

/// Non-trivial cycles, each starting at its smallest point, ordered by that point.
inline std::vector<std::vector<point>> cycle_structure(const Permutation& p)
{
    std::vector<std::vector<point>> cycles;
    std::vector<bool> seen(p.degree(), false);
    for (std::size_t start = 0; start < p.degree(); ++start) {
        if (seen[start] || p(static_cast<point>(start)) == start)
            continue;
        std::vector<point> c;
        for (point x = static_cast<point>(start); !seen[x]; x = p(x)) {
            seen[x] = true;
            c.push_back(x);
        }
        cycles.push_back(std::move(c));
    }
    return cycles;
}

struct LongestCycle {
    std::vector<point> cycle; ///< orbit order starting at the minimum point
    std::size_t length = 0;
};

/// Longest non-trivial cycle; ties go to the cycle with the smallest minimum.
/// The identity yields an empty cycle of length 0.
inline LongestCycle longest_cycle(const Permutation& p)
{
    LongestCycle best;
    for (auto& c : cycle_structure(p))
        if (c.size() > best.length) {
            best.length = c.size();
            best.cycle = std::move(c);
        }
    return best;
}

enum class Parity { even, odd };

inline Parity parity(const Permutation& p)
{
    std::size_t cycles = 0;
    std::vector<bool> seen(p.degree(), false);
    for (std::size_t x = 0; x < p.degree(); ++x) {
        if (seen[x])
            continue;
        ++cycles;
        for (point y = static_cast<point>(x); !seen[y]; y = p(y))
            seen[y] = true;
    }
    return (p.degree() - cycles) % 2 == 0 ? Parity::even : Parity::odd;
}

inline bool is_even(const Permutation& p) { return parity(p) == Parity::even; }

/// Element order (lcm of cycle lengths); throws std::overflow_error past 64 bits.
inline std::uint64_t order(const Permutation& p)
{
    std::uint64_t result = 1;
    for (const auto& c : cycle_structure(p)) {
        const std::uint64_t len = c.size();
        const std::uint64_t g = std::gcd(result, len);
        if (result / g > UINT64_MAX / len)
            throw std::overflow_error("element order exceeds 64 bits");
        result = result / g * len;
    }
    return result;
}

/// Uniform element of Sym(n) by Fisher-Yates.
inline Permutation random_uniform(std::size_t n, Rng& rng)
{
    if (n == 0)
        throw std::invalid_argument("degree must be positive");
    std::vector<point> images(n);
    std::iota(images.begin(), images.end(), point{0});
    for (std::size_t i = n - 1; i > 0; --i)
        std::swap(images[i], images[rng.below(i + 1)]);
    return Permutation::from_images(std::move(images));
}

/// The 3-cycle a -> b -> c -> a (0-based points).
inline Permutation three_cycle(std::size_t n, point a, point b, point c)
{
    if (a == b || b == c || a == c || a >= n || b >= n || c >= n)
        throw std::invalid_argument("3-cycle needs three distinct points in range");
    return Permutation::from_cycles(n, {{a + 1, b + 1, c + 1}});
}

/// Write an even permutation as 3-cycles t_1, ..., t_m with t_1 t_2 ... t_m = p.
///
/// Greedy: each factor sends two points of a cycle home (or, for a pair of
/// transpositions, one point, leaving a 3-cycle), so m <= n/2 + 1.
inline std::vector<Permutation> three_cycle_factorization(const Permutation& p)
{
    if (!is_even(p))
        throw std::invalid_argument("three_cycle_factorization needs an even permutation");
    const std::size_t n = p.degree();
    std::vector<point> q(p.images().begin(), p.images().end());
    std::vector<Permutation> reducers; // q * t_1 * ... * t_k progressively fixes points
    auto apply = [&](point a, point b, point c) {
        // q <- q * (a b c)
        Permutation t = three_cycle(n, a, b, c);
        for (auto& y : q)
            y = t(y);
        reducers.push_back(std::move(t));
    };
    for (point x = 0; x < n; ++x) {
        while (q[x] != x) {
            const point y = q[x];
            const point z = q[y];
            if (z != x) {
                // x -> y -> z: (z y x) fixes x and y.
                apply(z, y, x);
            } else {
                // x <-> y is a transposition; pair it with another moved point w.
                point w = 0;
                while (w < n && (w == x || w == y || q[w] == w))
                    ++w;
                if (w == n)
                    throw std::logic_error("odd remainder in three_cycle_factorization");
                // (y x w) fixes x and turns the rest into cycles handled later.
                apply(y, x, w);
            }
        }
    }
    // q * t_1 ... t_k = e  =>  p = t_k^-1 ... t_1^-1.
    std::vector<Permutation> factors;
    factors.reserve(reducers.size());
    for (auto it = reducers.rbegin(); it != reducers.rend(); ++it)
        factors.push_back(invert(*it));
    return factors;
}

/// Cycle notation with 1-based points, fixed points omitted; identity is "()".
inline std::string to_cycle_string(const Permutation& p)
{
    const auto cycles = cycle_structure(p);
    if (cycles.empty())
        return "()";
    std::string s;
    for (const auto& c : cycles) {
        s += '(';
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i)
                s += ' ';
            s += std::to_string(c[i] + 1);
        }
        s += ')';
    }
    return s;
}

/// Image notation "n: i1 i2 ... in" with 1-based images.
inline std::string to_image_string(const Permutation& p)
{
    std::string s = std::to_string(p.degree()) + ":";
    for (point y : p.images())
        s += ' ' + std::to_string(y + 1);
    return s;
}

namespace detail {

inline std::vector<std::uint64_t> parse_unsigned_list(std::string_view text)
{
    std::vector<std::uint64_t> out;
    std::size_t i = 0;
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',') {
            ++i;
            continue;
        }
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v);
        if (ec != std::errc{} || ptr == text.data() + i)
            throw std::invalid_argument("malformed permutation text near '" + std::string(text.substr(i)) + "'");
        out.push_back(v);
        i = static_cast<std::size_t>(ptr - text.data());
    }
    return out;
}

} // namespace detail

/// Parse image notation "n: i1 ... in" or cycle notation "(1 2 3)(4 5)".
///
/// For cycle notation the degree is `degree` when given, otherwise the largest
/// point mentioned. Cycles need not be disjoint; they are multiplied left to
/// right.
inline Permutation parse_permutation(std::string_view text, std::optional<std::size_t> degree = std::nullopt)
{
    auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        throw std::invalid_argument("empty permutation text");
    text.remove_prefix(first);

    if (auto colon = text.find(':'); colon != std::string_view::npos) {
        const auto head = detail::parse_unsigned_list(text.substr(0, colon));
        if (head.size() != 1 || head[0] == 0)
            throw std::invalid_argument("image notation needs a positive degree before ':'");
        const auto body = detail::parse_unsigned_list(text.substr(colon + 1));
        if (body.size() != head[0])
            throw std::invalid_argument("image notation has the wrong number of images");
        if (degree && *degree != head[0])
            throw std::invalid_argument("image notation degree disagrees with requested degree");
        std::vector<point> images;
        images.reserve(body.size());
        for (auto v : body) {
            if (v < 1 || v > head[0])
                throw std::invalid_argument("image out of range");
            images.push_back(static_cast<point>(v - 1));
        }
        return Permutation::from_images(std::move(images));
    }

    std::vector<std::vector<point>> cycles;
    std::size_t max_point = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c != '(')
            throw std::invalid_argument("expected '(' in cycle notation");
        const auto close = text.find(')', i);
        if (close == std::string_view::npos)
            throw std::invalid_argument("unterminated cycle");
        std::vector<point> cyc;
        for (auto v : detail::parse_unsigned_list(text.substr(i + 1, close - i - 1))) {
            if (v < 1)
                throw std::invalid_argument("points are 1-based");
            max_point = std::max<std::size_t>(max_point, v);
            cyc.push_back(static_cast<point>(v));
        }
        if (!cyc.empty())
            cycles.push_back(std::move(cyc));
        i = close + 1;
    }
    const std::size_t n = degree.value_or(std::max<std::size_t>(max_point, 1));
    if (max_point > n)
        throw std::invalid_argument("cycle point exceeds degree");
    Permutation result(n);
    for (const auto& cyc : cycles) {
        std::vector<point> sorted = cyc;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("repeated point inside a cycle");
        result = result * Permutation::from_cycles(n, {cyc});
    }
    return result;
}

} // namespace permword
