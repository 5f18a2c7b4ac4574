#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "permword/walk.hpp"

namespace permword {

/// Matrix of f ↦ (x ↦ Σ_y m(y) f(x y)) on the group, indexed by Lehmer order.
inline Eigen::MatrixXd dense_operator(const WalkMeasure& m, const FiniteGroup& group)
{
    const auto N = static_cast<Eigen::Index>(group.size());
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(N, N);
    for (const auto& [y, w] : m.atoms()) {
        if (!group.index_of(y))
            throw std::invalid_argument("measure is not supported on the group");
        const auto table = group.right_multiplication(y);
        for (Eigen::Index i = 0; i < N; ++i)
            T(i, static_cast<Eigen::Index>(table[static_cast<std::size_t>(i)])) += w;
    }
    return T;
}

/// Eigenvalues of a symmetric matrix, largest first.
inline std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& T)
{
    if ((T - T.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("operator is not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigensolver did not converge");
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(ev.begin(), ev.end(), std::greater<>());
    return ev;
}

/// Values of a descending list merged when within tol of the previous kept value.
inline std::vector<double> distinct_values(const std::vector<double>& desc, double tol = 1e-8)
{
    std::vector<double> out;
    for (double x : desc)
        if (out.empty() || std::abs(out.back() - x) > tol)
            out.push_back(x);
    return out;
}

/// λ₀ − λ₁ with multiplicity counted, so a disconnected graph gives 0.
inline double dense_spectral_gap(const WalkMeasure& m, GroupKind kind)
{
    const auto group = FiniteGroup::make(kind, m.degree());
    const auto ev = symmetric_eigenvalues(dense_operator(m, *group));
    return ev.size() < 2 ? 1.0 : ev[0] - ev[1];
}

} // namespace permword
