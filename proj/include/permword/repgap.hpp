#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "permword/dense.hpp"
#include "permword/perm.hpp"
#include "permword/walk.hpp"

namespace permword {

using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& q)
{
    return q.str();
}

/// Non-increasing positive parts; rows of the Young diagram.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<std::uint32_t> parts) : parts_(std::move(parts))
    {
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] == 0)
                throw std::invalid_argument("partition parts must be positive");
            if (i > 0 && parts_[i] > parts_[i - 1])
                throw std::invalid_argument("partition parts must be non-increasing");
        }
    }

    const std::vector<std::uint32_t>& parts() const { return parts_; }
    std::size_t length() const { return parts_.size(); }
    std::uint32_t operator[](std::size_t i) const { return parts_[i]; }
    std::size_t n() const
    {
        std::size_t s = 0;
        for (auto p : parts_)
            s += p;
        return s;
    }

    friend bool operator==(const Partition&, const Partition&) = default;
    friend auto operator<=>(const Partition&, const Partition&) = default;

private:
    std::vector<std::uint32_t> parts_;
};

inline std::string to_string(const Partition& p)
{
    std::string s = "(";
    for (std::size_t i = 0; i < p.length(); ++i) {
        if (i)
            s += ',';
        s += std::to_string(p[i]);
    }
    return s + ")";
}

/// All partitions of n in descending lexicographic order, starting at (n).
inline std::vector<Partition> enumerate_partitions(std::size_t n)
{
    if (n < 1)
        throw std::invalid_argument("n must be positive");
    std::vector<Partition> out;
    std::vector<std::uint32_t> cur;
    auto rec = [&](auto& self, std::size_t rest, std::uint32_t cap) -> void {
        if (rest == 0) {
            out.emplace_back(cur);
            return;
        }
        for (std::uint32_t p = static_cast<std::uint32_t>(std::min<std::size_t>(rest, cap)); p >= 1; --p) {
            cur.push_back(p);
            self(self, rest - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, static_cast<std::uint32_t>(n));
    return out;
}

inline Partition conjugate_partition(const Partition& lambda)
{
    std::vector<std::uint32_t> out;
    if (lambda.length() == 0)
        return Partition{};
    for (std::uint32_t c = 1; c <= lambda[0]; ++c) {
        std::uint32_t count = 0;
        for (auto p : lambda.parts())
            count += p >= c;
        out.push_back(count);
    }
    return Partition(std::move(out));
}

/// λ ≥ λ′: k ≤ k′ and the first i parts of λ sum to at least those of λ′, i = 1..k.
inline bool dominance_ge(const Partition& lambda, const Partition& mu)
{
    if (lambda.n() != mu.n())
        throw std::invalid_argument("partitions of different n");
    if (lambda.length() > mu.length())
        return false;
    std::size_t a = 0, b = 0;
    for (std::size_t i = 0; i < lambda.length(); ++i) {
        a += lambda[i];
        b += mu[i];
        if (a < b)
            return false;
    }
    return true;
}

/// M₃ = Σ_j (λ_j − j)(λ_j − j + 1)(2λ_j − 2j + 1) + j(j − 1)(2j − 1).
inline std::int64_t m3(const Partition& lambda)
{
    std::int64_t total = 0;
    for (std::size_t idx = 0; idx < lambda.length(); ++idx) {
        const auto j = static_cast<std::int64_t>(idx + 1);
        const auto L = static_cast<std::int64_t>(lambda[idx]);
        total += (L - j) * (L - j + 1) * (2 * L - 2 * j + 1) + j * (j - 1) * (2 * j - 1);
    }
    return total;
}

/// χ_λ(σ)/d_λ for a 3-cycle σ.
inline Rational char_ratio_3cycle(const Partition& lambda)
{
    const auto n = static_cast<std::int64_t>(lambda.n());
    if (n < 4)
        throw std::invalid_argument("character ratio needs n >= 4");
    return Rational(m3(lambda), 2 * n * (n - 1) * (n - 2)) - Rational(3, 2 * (n - 2));
}

/// λ from λ′ by moving one box from row b up to row a (1-based, a < b), if
/// the result is a partition.
inline std::optional<Partition> apply_switch(const Partition& mu, std::size_t a, std::size_t b)
{
    const std::size_t k = mu.length();
    if (a < 1 || a >= b || b > k)
        return std::nullopt;
    auto p = mu.parts();
    p[a - 1] += 1;
    p[b - 1] -= 1;
    if (p[b - 1] == 0) {
        if (b != k)
            return std::nullopt;
        p.pop_back();
    }
    for (std::size_t i = 1; i < p.size(); ++i)
        if (p[i] > p[i - 1])
            return std::nullopt;
    return Partition(std::move(p));
}

/// 6((λ′_a + 1 − a)² − (λ′_b − b)²), the change in M₃ under the switch.
inline std::int64_t switch_delta(const Partition& mu, std::size_t a, std::size_t b)
{
    if (!apply_switch(mu, a, b))
        throw std::invalid_argument("invalid switch");
    const auto x = static_cast<std::int64_t>(mu[a - 1]) + 1 - static_cast<std::int64_t>(a);
    const auto y = static_cast<std::int64_t>(mu[b - 1]) - static_cast<std::int64_t>(b);
    return 6 * (x * x - y * y);
}

struct ExactGap {
    Rational gap;
    Rational second;
    std::vector<Partition> attaining;
    std::vector<std::pair<Partition, Rational>> table; ///< every λ ⊢ n with its ratio
};

/// 1 − (second largest ratio) over all λ ⊢ n, in exact arithmetic.
inline ExactGap spectral_gap_exact(std::size_t n)
{
    if (n < 5)
        throw std::invalid_argument("exact gap needs n >= 5");
    ExactGap out;
    for (auto& p : enumerate_partitions(n)) {
        Rational r = char_ratio_3cycle(p);
        out.table.emplace_back(std::move(p), std::move(r));
    }
    std::optional<Rational> second;
    for (const auto& [p, r] : out.table)
        if (r < 1 && (!second || r > *second))
            second = r;
    out.second = *second;
    out.gap = 1 - out.second;
    for (const auto& [p, r] : out.table)
        if (r == out.second)
            out.attaining.push_back(p);

    const auto nn = static_cast<std::int64_t>(n);
    if (out.gap != Rational(3, nn - 1))
        throw std::logic_error("exact gap differs from 3/(n-1)");
    std::vector<std::uint32_t> hook(n - 1, 1);
    hook[0] = 2;
    const Partition std_rep({static_cast<std::uint32_t>(n - 1), 1});
    const Partition sign_std(std::move(hook));
    const auto has = [&](const Partition& p) {
        return std::find(out.attaining.begin(), out.attaining.end(), p) != out.attaining.end();
    };
    if (!has(std_rep) || !has(sign_std))
        throw std::logic_error("second eigenvalue not attained at (n-1,1) and (2,1,...,1)");
    return out;
}

/// Distinct eigenvalues of the Cayley operator of Alt(n) for all 3-cycles.
inline std::vector<double> brute_cayley_spectrum(std::size_t n)
{
    if (n < 3 || n > 6)
        throw too_large("brute-force spectrum needs 3 <= n <= 6");
    const auto group = FiniteGroup::make(GroupKind::alt, n);
    const auto C = all_three_cycles(n);
    std::vector<std::pair<Permutation, double>> atoms;
    for (const auto& c : C)
        atoms.emplace_back(c, 1.0 / static_cast<double>(C.size()));
    return distinct_values(symmetric_eigenvalues(dense_operator(WalkMeasure(atoms), *group)));
}

/// Distinct char_ratio values over λ ⊢ n, as doubles, largest first.
inline std::vector<double> char_ratio_spectrum(std::size_t n)
{
    std::vector<double> vals;
    for (const auto& p : enumerate_partitions(n))
        vals.push_back(static_cast<double>(char_ratio_3cycle(p)));
    std::sort(vals.begin(), vals.end(), std::greater<>());
    return distinct_values(vals);
}

struct GarnaCheck {
    double gap_alt = 0.0;       ///< gap of M on Alt(n)
    double gap_sym = 0.0;       ///< gap of M̃ = ½(g + g⁻¹)M on Sym(n)
    double min_eigenvalue = 0.0; ///< smallest eigenvalue of M̃
    bool holds = false;
};

inline GarnaCheck garna_check(std::size_t n, const Permutation& g)
{
    if (n < 4 || n > 5)
        throw too_large("garna check needs n in {4, 5}");
    if (g.degree() != n)
        throw std::invalid_argument("g has the wrong degree");
    if (is_even(g))
        throw std::invalid_argument("g must be odd");
    const auto C = all_three_cycles(n);
    const double w = 1.0 / static_cast<double>(C.size());
    std::vector<std::pair<Permutation, double>> m_atoms, mt_atoms;
    const Permutation gi = invert(g);
    for (const auto& c : C) {
        m_atoms.emplace_back(c, w);
        mt_atoms.emplace_back(g * c, 0.5 * w);
        mt_atoms.emplace_back(gi * c, 0.5 * w);
    }
    GarnaCheck out;
    const auto alt = FiniteGroup::make(GroupKind::alt, n);
    const auto sym = FiniteGroup::make(GroupKind::sym, n);
    const auto ev_alt = symmetric_eigenvalues(dense_operator(WalkMeasure(m_atoms), *alt));
    const auto ev_sym = symmetric_eigenvalues(dense_operator(WalkMeasure(mt_atoms), *sym));
    out.gap_alt = ev_alt[0] - ev_alt[1];
    out.gap_sym = ev_sym[0] - ev_sym[1];
    out.min_eigenvalue = ev_sym.back();
    out.holds = out.gap_sym >= out.gap_alt - 1e-12;
    if (std::abs(out.gap_alt - 3.0 / static_cast<double>(n - 1)) > 1e-9)
        throw std::logic_error("gap of M on Alt(n) differs from 3/(n-1)");
    return out;
}

} // namespace permword
