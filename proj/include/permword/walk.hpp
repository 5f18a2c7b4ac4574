#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "permword/errors.hpp"
#include "permword/perm.hpp"
#include "permword/rng.hpp"
#include "permword/word.hpp"

namespace permword {

enum class GroupKind { sym, alt };

inline std::string to_string(GroupKind k) { return k == GroupKind::sym ? "sym" : "alt"; }

/// Largest degree for which groups are enumerated densely.
inline constexpr std::size_t max_dense_degree = 8;

/// Lehmer-code rank of p in [0, n!).
inline std::uint64_t lehmer_rank(const Permutation& p)
{
    const std::size_t n = p.degree();
    std::uint64_t rank = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t smaller = 0;
        for (std::size_t j = i + 1; j < n; ++j)
            smaller += p(static_cast<point>(j)) < p(static_cast<point>(i));
        rank = rank * (n - i) + smaller;
    }
    return rank;
}

inline Permutation lehmer_unrank(std::size_t n, std::uint64_t rank)
{
    std::vector<std::uint64_t> digits(n);
    for (std::size_t i = n; i-- > 0;) {
        const std::uint64_t radix = n - i;
        digits[i] = rank % radix;
        rank /= radix;
    }
    std::vector<point> remaining(n);
    std::iota(remaining.begin(), remaining.end(), point{0});
    std::vector<point> images(n);
    for (std::size_t i = 0; i < n; ++i) {
        images[i] = remaining[digits[i]];
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(digits[i]));
    }
    return Permutation::from_images(std::move(images));
}

/// Sym(n) or Alt(n) enumerated in Lehmer order, n <= max_dense_degree.
class FiniteGroup {
public:
    static std::shared_ptr<const FiniteGroup> make(GroupKind kind, std::size_t n)
    {
        if (n < 1)
            throw std::invalid_argument("degree must be positive");
        if (n > max_dense_degree)
            throw too_large("dense group tables need n <= " + std::to_string(max_dense_degree));
        return std::shared_ptr<const FiniteGroup>(new FiniteGroup(kind, n));
    }

    GroupKind kind() const { return kind_; }
    std::size_t degree() const { return n_; }
    std::size_t size() const { return elements_.size(); }
    const Permutation& element(std::size_t i) const { return elements_[i]; }
    const std::vector<Permutation>& elements() const { return elements_; }

    std::optional<std::size_t> index_of(const Permutation& p) const
    {
        if (p.degree() != n_)
            return std::nullopt;
        const auto slot = slot_of_rank_[lehmer_rank(p)];
        if (slot < 0)
            return std::nullopt;
        return static_cast<std::size_t>(slot);
    }

    std::size_t identity_index() const { return *index_of(Permutation(n_)); }

    /// table[i] = index of element(i) * s.
    std::vector<std::uint32_t> right_multiplication(const Permutation& s) const
    {
        if (!index_of(s))
            throw std::invalid_argument("element is not in the group");
        std::vector<std::uint32_t> table(size());
        for (std::size_t i = 0; i < size(); ++i)
            table[i] = static_cast<std::uint32_t>(*index_of(elements_[i] * s));
        return table;
    }

private:
    FiniteGroup(GroupKind kind, std::size_t n) : kind_(kind), n_(n)
    {
        std::uint64_t total = 1;
        for (std::size_t i = 2; i <= n; ++i)
            total *= i;
        slot_of_rank_.assign(total, -1);
        for (std::uint64_t r = 0; r < total; ++r) {
            Permutation p = lehmer_unrank(n, r);
            if (kind == GroupKind::alt && !is_even(p))
                continue;
            slot_of_rank_[r] = static_cast<std::int32_t>(elements_.size());
            elements_.push_back(std::move(p));
        }
    }

    GroupKind kind_;
    std::size_t n_;
    std::vector<Permutation> elements_;
    std::vector<std::int32_t> slot_of_rank_;
};

/// Which of Sym(n)/Alt(n) the permutations generate, by closure; nullopt for a
/// proper subgroup other than Alt(n). Requires n <= max_dense_degree.
inline std::optional<GroupKind> generated_group(const std::vector<Permutation>& gens)
{
    if (gens.empty())
        throw std::invalid_argument("need at least one generator");
    const std::size_t n = gens.front().degree();
    auto sym = FiniteGroup::make(GroupKind::sym, n);
    std::vector<bool> seen(sym->size(), false);
    std::vector<std::size_t> frontier{sym->identity_index()};
    seen[frontier[0]] = true;
    std::size_t count = 1;
    bool has_odd = false;
    std::vector<std::vector<std::uint32_t>> tables;
    for (const auto& s : gens)
        tables.push_back(sym->right_multiplication(s));
    while (!frontier.empty()) {
        const auto i = frontier.back();
        frontier.pop_back();
        for (const auto& t : tables) {
            const auto j = t[i];
            if (!seen[j]) {
                seen[j] = true;
                ++count;
                has_odd = has_odd || !is_even(sym->element(j));
                frontier.push_back(j);
            }
        }
    }
    if (count == sym->size())
        return GroupKind::sym;
    if (!has_odd && 2 * count == sym->size())
        return GroupKind::alt;
    if (n == 1 && count == 1)
        return GroupKind::sym;
    return std::nullopt;
}

struct GeneratorPair {
    Permutation g;
    Permutation h;
    std::size_t draws = 1;
};

/// Uniform g, h in Sym(n). For n <= max_dense_degree the pair is redrawn
/// until it generates Alt(n) or Sym(n); larger n are taken as drawn.
inline GeneratorPair random_generators(std::size_t n, Rng& rng, std::size_t max_draws = 1000)
{
    if (n < 3)
        throw std::invalid_argument("need n >= 3");
    for (std::size_t d = 1; d <= max_draws; ++d) {
        Permutation g = random_uniform(n, rng);
        Permutation h = random_uniform(n, rng);
        if (n > max_dense_degree || generated_group({g, h}))
            return {std::move(g), std::move(h), d};
    }
    throw retry_exhausted("no generating pair in " + std::to_string(max_draws) + " draws");
}

/// Finite probability measure on permutations.
class WalkMeasure {
public:
    WalkMeasure() = default;

    /// Merges repeated elements; throws unless masses are positive and sum to 1 within 1e-12.
    explicit WalkMeasure(const std::vector<std::pair<Permutation, double>>& atoms)
    {
        std::map<Permutation, double> merged;
        for (const auto& [p, w] : atoms) {
            if (!(w > 0.0))
                throw std::invalid_argument("measure masses must be positive");
            if (!merged.empty() && merged.begin()->first.degree() != p.degree())
                throw std::invalid_argument("measure elements must share a degree");
            merged[p] += w;
        }
        if (merged.empty())
            throw std::invalid_argument("measure needs at least one atom");
        double total = 0.0;
        for (const auto& [p, w] : merged) {
            total += w;
            atoms_.emplace_back(p, w);
        }
        if (std::abs(total - 1.0) > 1e-12)
            throw std::invalid_argument("measure masses must sum to 1");
    }

    const std::vector<std::pair<Permutation, double>>& atoms() const { return atoms_; }
    std::size_t support_size() const { return atoms_.size(); }
    std::size_t degree() const { return atoms_.front().first.degree(); }

    double mass(const Permutation& p) const
    {
        auto it = std::lower_bound(atoms_.begin(), atoms_.end(), p,
                                   [](const auto& a, const Permutation& q) { return a.first < q; });
        return (it != atoms_.end() && it->first == p) ? it->second : 0.0;
    }

    /// μ(x) = μ(x⁻¹) for every atom, within tol.
    bool is_symmetric(double tol = 1e-12) const
    {
        for (const auto& [p, w] : atoms_)
            if (std::abs(mass(invert(p)) - w) > tol)
                return false;
        return true;
    }

private:
    std::vector<std::pair<Permutation, double>> atoms_; // sorted by element
};

/// ½ on e and ½/|S| on each s in S. S must be inverse-closed, duplicate-free and avoid e.
inline WalkMeasure lazy_measure(const std::vector<Permutation>& S)
{
    if (S.empty())
        throw std::invalid_argument("generating set is empty");
    std::vector<Permutation> sorted = S;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("generating set has repeated elements");
    for (const auto& s : sorted) {
        if (s.is_identity())
            throw std::invalid_argument("generating set contains the identity");
        if (!std::binary_search(sorted.begin(), sorted.end(), invert(s)))
            throw std::invalid_argument("generating set is not closed under inverses");
    }
    std::vector<std::pair<Permutation, double>> atoms{{Permutation(S.front().degree()), 0.5}};
    const double w = 0.5 / static_cast<double>(S.size());
    for (const auto& s : S)
        atoms.emplace_back(s, w);
    return WalkMeasure(atoms);
}

/// {g, h, g⁻¹, h⁻¹} as a set, with the identity and duplicates removed.
inline std::vector<Permutation> symmetric_generating_set(const std::vector<Permutation>& gens)
{
    std::vector<Permutation> S;
    for (const auto& x : gens) {
        if (x.is_identity())
            continue;
        S.push_back(x);
        S.push_back(invert(x));
    }
    std::sort(S.begin(), S.end());
    S.erase(std::unique(S.begin(), S.end()), S.end());
    return S;
}

/// All 3-cycles of Sym(n), n >= 3; n(n-1)(n-2)/3 of them.
inline std::vector<Permutation> all_three_cycles(std::size_t n)
{
    std::vector<Permutation> out;
    for (point a = 0; a < n; ++a)
        for (point b = a + 1; b < n; ++b)
            for (point c = a + 1; c < n; ++c)
                if (c != b)
                    out.push_back(three_cycle(n, a, b, c));
    return out;
}

inline std::vector<Permutation> all_transpositions(std::size_t n)
{
    std::vector<Permutation> out;
    for (point a = 1; a <= n; ++a)
        for (point b = a + 1; b <= n; ++b)
            out.push_back(Permutation::from_cycles(n, {{a, b}}));
    return out;
}

inline std::vector<Permutation> adjacent_transpositions(std::size_t n)
{
    std::vector<Permutation> out;
    for (point a = 1; a < n; ++a)
        out.push_back(Permutation::from_cycles(n, {{a, a + 1}}));
    return out;
}

/// μ'(x) = ½ μ(x) + ½ μ(g⁻¹ x) for odd g: the law of g^ε y, ε fair, y ~ μ.
inline WalkMeasure mu_prime(const WalkMeasure& mu, const Permutation& g)
{
    if (is_even(g))
        throw std::invalid_argument("mu_prime needs an odd permutation");
    std::vector<std::pair<Permutation, double>> atoms;
    for (const auto& [p, w] : mu.atoms()) {
        atoms.emplace_back(p, 0.5 * w);
        atoms.emplace_back(g * p, 0.5 * w);
    }
    return WalkMeasure(atoms);
}

/// Dense probability vector over Sym(n) or Alt(n).
class Distribution {
public:
    Distribution(std::shared_ptr<const FiniteGroup> group, std::vector<double> probs)
        : group_(std::move(group)), probs_(std::move(probs))
    {
        if (probs_.size() != group_->size())
            throw std::invalid_argument("distribution size differs from group order");
    }

    static Distribution point_mass(std::shared_ptr<const FiniteGroup> group)
    {
        std::vector<double> p(group->size(), 0.0);
        p[group->identity_index()] = 1.0;
        return Distribution(std::move(group), std::move(p));
    }

    static Distribution uniform(std::shared_ptr<const FiniteGroup> group)
    {
        const double u = 1.0 / static_cast<double>(group->size());
        std::vector<double> p(group->size(), u);
        return Distribution(std::move(group), std::move(p));
    }

    const FiniteGroup& group() const { return *group_; }
    const std::shared_ptr<const FiniteGroup>& group_ptr() const { return group_; }
    const std::vector<double>& probabilities() const { return probs_; }
    std::vector<double>& probabilities() { return probs_; }
    std::size_t size() const { return probs_.size(); }

    double total_mass() const
    {
        double t = 0.0;
        for (double p : probs_)
            t += p;
        return t;
    }

private:
    std::shared_ptr<const FiniteGroup> group_;
    std::vector<double> probs_;
};

enum class Norm { l1, l2, linf };

inline std::string to_string(Norm p)
{
    switch (p) {
    case Norm::l1: return "l1";
    case Norm::l2: return "l2";
    case Norm::linf: return "linf";
    }
    return "?";
}

/// |d - 1/|G||_p with the normalized norm (1/|G| Σ |f|^p)^{1/p}; p = ∞ is the max.
inline double lp_distance(const Distribution& d, Norm p)
{
    const double u = 1.0 / static_cast<double>(d.size());
    double acc = 0.0;
    for (double x : d.probabilities()) {
        const double diff = std::abs(x - u);
        switch (p) {
        case Norm::l1: acc += diff; break;
        case Norm::l2: acc += diff * diff; break;
        case Norm::linf: acc = std::max(acc, diff); break;
        }
    }
    switch (p) {
    case Norm::l1: return acc * u;
    case Norm::l2: return std::sqrt(acc * u);
    case Norm::linf: return acc;
    }
    return acc;
}

/// Steps μ^(k) -> μ^(k+1) through precomputed right-multiplication tables.
class Evolver {
public:
    Evolver(const WalkMeasure& m, std::shared_ptr<const FiniteGroup> group) : current_(Distribution::point_mass(group))
    {
        if (m.degree() != group->degree())
            throw std::invalid_argument("measure degree differs from group degree");
        for (const auto& [s, w] : m.atoms()) {
            if (!group->index_of(s))
                throw std::invalid_argument("measure is not supported on the group");
            steps_.push_back({group->right_multiplication(s), w});
        }
        scratch_.resize(group->size());
    }

    const Distribution& current() const { return current_; }
    std::size_t steps_taken() const { return k_; }

    void step()
    {
        std::fill(scratch_.begin(), scratch_.end(), 0.0);
        const auto& p = current_.probabilities();
        for (const auto& [table, w] : steps_)
            for (std::size_t i = 0; i < p.size(); ++i)
                scratch_[table[i]] += w * p[i];
        current_.probabilities().swap(scratch_);
        ++k_;
    }

private:
    struct Step {
        std::vector<std::uint32_t> table;
        double weight;
    };
    std::vector<Step> steps_;
    Distribution current_;
    std::vector<double> scratch_;
    std::size_t k_ = 0;
};

/// Exact μ^(k) on Sym(n)/Alt(n), n <= max_dense_degree.
inline Distribution evolve_exact(const WalkMeasure& m, GroupKind kind, std::size_t k)
{
    Evolver ev(m, FiniteGroup::make(kind, m.degree()));
    for (std::size_t i = 0; i < k; ++i)
        ev.step();
    return ev.current();
}

/// Least k <= cap with d(μ^(k), uniform) <= eps, or nullopt.
inline std::optional<std::size_t> mixing_time(const WalkMeasure& m, GroupKind kind, Norm norm, double eps,
                                              std::size_t cap)
{
    Evolver ev(m, FiniteGroup::make(kind, m.degree()));
    for (std::size_t k = 0;; ++k) {
        if (lp_distance(ev.current(), norm) <= eps)
            return k;
        if (k == cap)
            return std::nullopt;
        ev.step();
    }
}

/// Least k with |G| · |μ^(k) - 1/|G||_∞ <= ½, or nullopt past cap.
inline std::optional<std::size_t> strong_mixing_time(const WalkMeasure& m, GroupKind kind, std::size_t cap)
{
    const double order = static_cast<double>(FiniteGroup::make(kind, m.degree())->size());
    return mixing_time(m, kind, Norm::linf, 0.5 / order, cap);
}

struct ArguCheck {
    std::size_t l2_time = 0;   ///< t_mix at ε/|G| in ℓ²
    std::size_t linf_time = 0; ///< t_mix at ε²/|G| in ℓ^∞
    bool holds = false;
};

/// Compares t_{mix, ε²/|G|, ℓ∞} with 2 t_{mix, ε/|G|, ℓ²}.
/// Throws retry_exhausted if the ℓ² time exceeds cap.
inline ArguCheck argu_times(const WalkMeasure& m, GroupKind kind, double eps, std::size_t cap)
{
    const double order = static_cast<double>(FiniteGroup::make(kind, m.degree())->size());
    const auto t2 = mixing_time(m, kind, Norm::l2, eps / order, cap);
    if (!t2)
        throw retry_exhausted("l2 mixing time exceeds cap " + std::to_string(cap));
    ArguCheck out;
    out.l2_time = *t2;
    // Search one step past the claimed bound so a violation is observable.
    const auto tinf = mixing_time(m, kind, Norm::linf, eps * eps / order, 2 * *t2 + 1);
    out.linf_time = tinf.value_or(2 * *t2 + 1);
    out.holds = tinf.has_value() && *tinf <= 2 * *t2;
    return out;
}

inline bool check_argu(const WalkMeasure& m, GroupKind kind, double eps, std::size_t cap)
{
    return argu_times(m, kind, eps, cap).holds;
}

struct BeethStep {
    std::size_t k;
    double sym_distance; ///< ℓ²((μ')^(k), uniform on Sym(n))
    double alt_distance; ///< ℓ²(μ^(k), uniform on Alt(n))
};

/// Both sides of d((μ')^(k), 1/|Sym|) <= d(μ^(k), 1/|Alt|) for d = ℓ², k = 0..kmax,
/// where μ is the lazy 3-cycle measure and μ' its shift by the odd g.
inline std::vector<BeethStep> beeth_profile(std::size_t n, const Permutation& g_odd, std::size_t kmax)
{
    if (n > 6)
        throw too_large("beeth check needs n <= 6");
    if (g_odd.degree() != n)
        throw std::invalid_argument("degree mismatch");
    const WalkMeasure mu = lazy_measure(all_three_cycles(n));
    const WalkMeasure mup = mu_prime(mu, g_odd);
    Evolver alt(mu, FiniteGroup::make(GroupKind::alt, n));
    Evolver sym(mup, FiniteGroup::make(GroupKind::sym, n));
    std::vector<BeethStep> out;
    for (std::size_t k = 0; k <= kmax; ++k) {
        out.push_back({k, lp_distance(sym.current(), Norm::l2), lp_distance(alt.current(), Norm::l2)});
        alt.step();
        sym.step();
    }
    return out;
}

inline bool check_beeth(std::size_t n, const Permutation& g_odd, std::size_t k)
{
    const auto last = beeth_profile(n, g_odd, k).back();
    return last.sym_distance <= last.alt_distance + 1e-15;
}

/// One draw from m by inversion of the cumulative masses.
inline const Permutation& sample_atom(const WalkMeasure& m, Rng& rng)
{
    const double u = rng.uniform01();
    double acc = 0.0;
    for (const auto& [p, w] : m.atoms()) {
        acc += w;
        if (u < acc)
            return p;
    }
    return m.atoms().back().first;
}

/// x_1 x_2 ... x_k for i.i.d. x_i ~ m.
inline Permutation sample_walk(const WalkMeasure& m, std::size_t k, Rng& rng)
{
    Permutation result(m.degree());
    for (std::size_t i = 0; i < k; ++i)
        result = result * sample_atom(m, rng);
    return result;
}

/// Lazy walk on the letters {g, h, g⁻¹, h⁻¹}: each step stays with probability ½
/// or appends a uniformly chosen letter.
struct GeneratorWalk {
    Permutation element;
    Word word;
    std::vector<Symbol> letters;
};

namespace detail {

/// Letters of a length-k lazy walk; 3 random bits per step.
inline void draw_lazy_letters(std::size_t k, Rng& rng, std::vector<Symbol>& out)
{
    out.clear();
    std::uint64_t bits = 0;
    int left = 0;
    for (std::size_t i = 0; i < k; ++i) {
        if (left < 3) {
            bits = rng();
            left = 64;
        }
        const auto b = static_cast<unsigned>(bits & 7u);
        bits >>= 3;
        left -= 3;
        if (b & 1u)
            out.push_back(static_cast<Symbol>(b >> 1));
    }
}

} // namespace detail

/// Images of the four letters, indexed by Symbol.
struct LetterTables {
    std::array<std::vector<point>, 4> image;

    LetterTables(const Permutation& g, const Permutation& h)
    {
        detail::require_same_degree(g, h);
        const Permutation gi = invert(g);
        const Permutation hi = invert(h);
        image[0].assign(g.images().begin(), g.images().end());
        image[1].assign(h.images().begin(), h.images().end());
        image[2].assign(gi.images().begin(), gi.images().end());
        image[3].assign(hi.images().begin(), hi.images().end());
    }

    std::size_t degree() const { return image[0].size(); }

    Permutation element(std::span<const Symbol> letters) const
    {
        std::vector<point> x(degree());
        std::iota(x.begin(), x.end(), point{0});
        for (Symbol s : letters) {
            const auto& t = image[static_cast<std::size_t>(s)];
            for (auto& y : x)
                y = t[y];
        }
        return Permutation::from_images(std::move(x));
    }
};

inline GeneratorWalk sample_generator_walk(const LetterTables& tables, std::size_t k, Rng& rng)
{
    GeneratorWalk out;
    detail::draw_lazy_letters(k, rng, out.letters);
    out.element = tables.element(out.letters);
    out.word = Word::from_symbols(out.letters);
    return out;
}

inline GeneratorWalk sample_generator_walk(const Permutation& g, const Permutation& h, std::size_t k, Rng& rng)
{
    return sample_generator_walk(LetterTables(g, h), k, rng);
}

} // namespace permword
