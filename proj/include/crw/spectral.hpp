#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "crw/errors.hpp"
#include "crw/jacobi.hpp"
#include "crw/matrix.hpp"
#include "crw/model.hpp"

namespace crw {

// Tolerance identifying lambda = -1 and separating eigenvalues of U; shared
// with the linear-dependence criterion so the two can never disagree on a
// clean run.
inline constexpr double kLambdaMinusOneTol = 1e-10;

/// The pair a = sum_x v(x) |x> (x) w2 and b = S a spanned by one eigenvector
/// of B; both unit norm.
struct ABPair {
    StateVector a;
    StateVector b;
    double lambda;
};

inline ABPair make_ab(const PathCRWModel& model, const EigenPairB& eig) {
    StateVector a(model.dim(), 0.0);
    for (std::size_t x = 0; x <= model.n; ++x) {
        a[state_index(x, Side::L)] = eig.v[x] / kSqrt2;
        a[state_index(x, Side::R)] = -eig.v[x] / kSqrt2;
    }
    return {a, apply_shift(model, a), eig.lambda};
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

/// True iff a and b are linearly dependent, which happens exactly at
/// lambda = -1. The inner-product criterion and the eigenvalue criterion
/// must agree; a mismatch means the construction is broken.
inline bool check_linear_dependence(const ABPair& ab) {
    const bool by_inner = std::abs(dot(ab.a, ab.b)) >= 1.0 - kLambdaMinusOneTol;
    const bool by_lambda = std::abs(ab.lambda + 1.0) <= kLambdaMinusOneTol;
    if (by_inner != by_lambda)
        throw InconsistentLemmaError(
            "linear-dependence criteria disagree at lambda = " + std::to_string(ab.lambda) +
            ", |<a,b>| = " + std::to_string(std::abs(dot(ab.a, ab.b))));
    return by_inner;
}

struct MuPair {
    double plus;
    double minus;
};

/// Roots of mu^2 - (1-nu2) lambda mu - nu2 = 0. The larger-magnitude root is
/// computed by the sign-stable formula, the other from the product relation
/// mu_plus * mu_minus = -nu2, so nothing cancels when (1-nu2)^2 lambda^2
/// dominates |4 nu2|.
inline MuPair mu_pair(double lambda, double nu2) {
    const double r = (1.0 - nu2) * lambda;
    const double disc = r * r + 4.0 * nu2;
    if (disc <= 0.0) throw ComplexRootsError(lambda, nu2, disc);
    const double s = std::sqrt(disc);
    if (r > 0.0) {
        const double plus = 0.5 * (r + s);
        return {plus, -nu2 / plus};
    }
    if (r < 0.0) {
        const double minus = 0.5 * (r - s);
        return {-nu2 / minus, minus};
    }
    return {0.5 * s, -0.5 * s};
}

struct Assumption2Item {
    double lambda;
    bool pass;
};

/// Admissibility report for nu2 < 0: every |lambda_m| must exceed
/// sqrt(-4 nu2)/(1 - nu2). Vacuously satisfied when nu2 > 0.
struct Assumption2Report {
    double nu2 = 0.0;
    double threshold = 0.0;
    bool applies = false;
    bool pass = true;
    std::vector<Assumption2Item> items;

    std::vector<double> offending() const {
        std::vector<double> out;
        for (const auto& item : items)
            if (!item.pass) out.push_back(item.lambda);
        return out;
    }
};

inline Assumption2Report check_assumption2(const std::vector<double>& lambdas, double nu2) {
    Assumption2Report report;
    report.nu2 = nu2;
    report.applies = nu2 < 0.0;
    report.threshold = report.applies ? std::sqrt(-4.0 * nu2) / (1.0 - nu2) : 0.0;
    for (double lambda : lambdas) {
        const bool pass = !report.applies || std::abs(lambda) > report.threshold;
        report.items.push_back({lambda, pass});
        report.pass = report.pass && pass;
    }
    return report;
}

enum class PairTag { Stationary, Plus, Minus, Alternating };

inline const char* to_string(PairTag tag) {
    switch (tag) {
    case PairTag::Stationary: return "stationary";
    case PairTag::Plus: return "plus";
    case PairTag::Minus: return "minus";
    case PairTag::Alternating: return "alternating";
    }
    return "?";
}

/// One eigenpair of U. The left projection row q satisfies q U = mu q and
/// q u = 1; it is filled when the pair is assembled into a decomposition
/// (only the stationary pair has a cheap standalone form, the all-ones row).
struct EigenPairU {
    double mu;
    StateVector u;
    std::vector<double> q;
    PairTag tag;
    std::size_t source_index; // paper's m: 0 stationary, 1..n from B, n+1 alternating
};

/// Stationary distribution over vertices by the detailed-balance recurrence
/// v0(x+1) = (1 - p_{x,L})/p_{x+1,R} v0(x), normalized to total 1.
inline std::vector<double> stationary_vertex_weights(const PathCRWModel& model) {
    const std::size_t n = model.n;
    std::vector<double> v(n + 1);
    v[0] = 1.0;
    for (std::size_t x = 0; x < n; ++x) {
        v[x + 1] = v[x] * (1.0 - model.family.coins[x].p_L) / model.family.coins[x + 1].p_R;
        if (!std::isfinite(v[x + 1]))
            throw OverflowError("stationary recurrence left the double range", x + 1);
    }
    double total = 0.0;
    for (double w : v) total += w;
    if (!std::isfinite(total)) throw OverflowError("stationary normalizer overflowed", n);
    for (double& w : v) w /= total;
    return v;
}

/// The mu = 1 eigenpair: u0 = sum_x v0(x) |x> (x) w1_x, entries summing to 1
/// so that marginal(u0) is the limiting distribution directly. Its exact left
/// eigenvector is the all-ones row.
inline EigenPairU stationary_pair(const PathCRWModel& model) {
    const std::vector<double> v0 = stationary_vertex_weights(model);
    const std::vector<CoinSpectralData> data = coin_spectral_data(model.family);
    StateVector u(model.dim());
    for (std::size_t x = 0; x <= model.n; ++x) {
        u[state_index(x, Side::L)] = v0[x] * data[x].w1_L;
        u[state_index(x, Side::R)] = v0[x] * data[x].w1_R;
    }
    const StateVector cu = apply_coin(model, u);
    const StateVector su = apply_shift(model, u);
    for (std::size_t i = 0; i < u.size(); ++i)
        if (std::abs(cu[i] - u[i]) > kStructuralTol || std::abs(su[i] - u[i]) > kStructuralTol)
            throw Error("stationary vector is not fixed by C and S separately");
    return {1.0, u, std::vector<double>(model.dim(), 1.0), PairTag::Stationary, 0};
}

/// The birth-and-death transition matrix supporting the walk: column-
/// stochastic, tridiagonal, with v0 as its stationary vector.
inline Matrix build_Q(const PathCRWModel& model) {
    const std::size_t n = model.n;
    const double scale = 1.0 - model.family.nu2;
    Matrix q(n + 1, n + 1);
    q(0, 0) = model.family.coins[0].p_R / scale;
    q(n, n) = (1.0 - model.family.coins[n].p_L) / scale;
    for (std::size_t x = 0; x < n; ++x) {
        q(x + 1, x) = (1.0 - model.family.coins[x].p_L) / scale;
        q(x, x + 1) = model.family.coins[x + 1].p_R / scale;
    }
    return q;
}

/// The mu = nu2 eigenpair from lambda = -1: alternating signs over vertices,
/// (|L> - |R>)/sqrt(2) internally. Fixed by S.
inline EigenPairU alternating_pair(const PathCRWModel& model) {
    const std::size_t n = model.n;
    StateVector u(model.dim());
    const double c = 1.0 / std::sqrt(2.0 * (n + 1));
    for (std::size_t x = 0; x <= n; ++x) {
        const double sign = (x % 2 == 0) ? 1.0 : -1.0;
        u[state_index(x, Side::L)] = sign * c;
        u[state_index(x, Side::R)] = -sign * c;
    }
    const StateVector moved = apply_U(model, u);
    for (std::size_t i = 0; i < u.size(); ++i)
        if (std::abs(moved[i] - model.family.nu2 * u[i]) > 1e-10)
            throw Error("alternating vector misses its nu2 eigen-residual bound");
    return {model.family.nu2, u, {}, PairTag::Alternating, model.n + 1};
}

/// The 2n eigenpairs u_{+-m} = a_m + mu_{+-m} b_m built from the n
/// eigenvalues of B other than -1, normalized to unit norm. Plus pairs first
/// (m = 1..n), then minus pairs.
inline std::vector<EigenPairU> pairs_from_B(const PathCRWModel& model,
                                            const std::vector<EigenPairB>& eig_b) {
    const double nu2 = model.family.nu2;
    std::vector<EigenPairU> plus, minus;
    for (std::size_t m = 0; m < eig_b.size(); ++m) {
        const ABPair ab = make_ab(model, eig_b[m]);
        if (check_linear_dependence(ab)) continue; // lambda = -1: alternating_pair's job

        // the block relation U[a;b] = [[0,nu2],[1,(1-nu2)lambda]][a;b]
        const StateVector ua = apply_U(model, ab.a);
        const StateVector ub = apply_U(model, ab.b);
        for (std::size_t i = 0; i < ua.size(); ++i) {
            if (std::abs(ua[i] - nu2 * ab.b[i]) > 1e-10 ||
                std::abs(ub[i] - ab.a[i] - (1.0 - nu2) * ab.lambda * ab.b[i]) > 1e-10)
                throw Error("a/b pair violates the two-dimensional action of U");
        }

        const MuPair mu = mu_pair(eig_b[m].lambda, nu2);
        const auto assemble = [&](double mu_val, PairTag tag) {
            StateVector u(model.dim());
            double norm = 0.0;
            for (std::size_t i = 0; i < u.size(); ++i) {
                u[i] = ab.a[i] + mu_val * ab.b[i];
                norm += u[i] * u[i];
            }
            norm = std::sqrt(norm);
            for (double& x : u) x /= norm;
            return EigenPairU{mu_val, std::move(u), {}, tag, m + 1};
        };
        plus.push_back(assemble(mu.plus, PairTag::Plus));
        minus.push_back(assemble(mu.minus, PairTag::Minus));
    }
    std::vector<EigenPairU> out = std::move(plus);
    out.insert(out.end(), std::make_move_iterator(minus.begin()),
               std::make_move_iterator(minus.end()));
    return out;
}

/// The complete spectral decomposition of U: stationary + n plus + n minus +
/// alternating, all eigenvalues simple, with left projection rows from the
/// inverse of the right-eigenvector matrix.
struct SpectralDecomposition {
    std::vector<EigenPairU> pairs;
    double nu2 = 0.0;

    std::size_t dim() const { return pairs.empty() ? 0 : pairs.front().u.size(); }

    std::vector<double> spectrum() const {
        std::vector<double> mus;
        mus.reserve(pairs.size());
        for (const EigenPairU& p : pairs) mus.push_back(p.mu);
        return mus;
    }

    /// Sum_m mu_m^t |u_m><q_m| applied entrywise; t = 1 reconstructs U.
    Matrix reconstruct(std::uint64_t t = 1) const {
        const std::size_t d = dim();
        Matrix acc(d, d);
        for (const EigenPairU& p : pairs) {
            double w = 1.0;
            double base = p.mu;
            for (std::uint64_t k = t; k > 0; k >>= 1, base *= base)
                if (k & 1) w *= base;
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) acc(i, j) += w * p.u[i] * p.q[j];
        }
        return acc;
    }
};

inline SpectralDecomposition full_decomposition(const PathCRWModel& model) {
    const std::vector<EigenPairB> eig_b = eigs_B(model);
    std::vector<double> lambdas;
    for (const EigenPairB& p : eig_b) lambdas.push_back(p.lambda);
    const Assumption2Report report = check_assumption2(lambdas, model.family.nu2);
    if (!report.pass) throw AssumptionViolatedError(report.offending(), report.threshold);

    SpectralDecomposition decomp;
    decomp.nu2 = model.family.nu2;
    decomp.pairs.push_back(stationary_pair(model));
    for (EigenPairU& p : pairs_from_B(model, eig_b)) decomp.pairs.push_back(std::move(p));
    decomp.pairs.push_back(alternating_pair(model));
    if (decomp.pairs.size() != model.dim())
        throw Error("assembled " + std::to_string(decomp.pairs.size()) +
                    " eigenpairs, expected " + std::to_string(model.dim()));

    std::vector<double> sorted = decomp.spectrum();
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
        if (sorted[i + 1] - sorted[i] < kSimplicityTol)
            throw NearDegenerateError(sorted[i], sorted[i + 1]);

    // Left projections: rows of the inverse of the right-eigenvector matrix.
    const std::size_t d = model.dim();
    Matrix v(d, d);
    for (std::size_t c = 0; c < d; ++c)
        for (std::size_t i = 0; i < d; ++i) v(i, c) = decomp.pairs[c].u[i];
    const Matrix vinv = invert(v);
    if ((v * vinv).max_abs_diff(Matrix::identity(d)) > kSpectralTol)
        throw ConvergenceFailureError("eigenvector matrix too ill-conditioned to invert");
    for (std::size_t r = 0; r < d; ++r) {
        decomp.pairs[r].q.resize(d);
        for (std::size_t jj = 0; jj < d; ++jj) decomp.pairs[r].q[jj] = vinv(r, jj);
    }
    return decomp;
}

/// psi_t = sum_m mu_m^t (q_m . phi) u_m.
inline StateVector evolve_spectral(const SpectralDecomposition& decomp, const StateVector& phi,
                                   std::uint64_t t) {
    if (phi.size() != decomp.dim()) throw DimensionMismatchError(phi.size(), decomp.dim());
    StateVector out(phi.size(), 0.0);
    for (const EigenPairU& p : decomp.pairs) {
        double w = dot(p.q, phi);
        double base = p.mu;
        for (std::uint64_t k = t; k > 0; k >>= 1, base *= base)
            if (k & 1) w *= base;
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += w * p.u[i];
    }
    return out;
}

/// Closed-form limiting distribution: geometric products of (1-p_L)/p_R
/// ratios, normalized. Equals marginal(stationary u0) and is independent of
/// the initial state.
inline Distribution limiting_distribution(const PathCRWModel& model) {
    std::vector<double> lambdas;
    for (const EigenPairB& p : eigs_B(model)) lambdas.push_back(p.lambda);
    const Assumption2Report report = check_assumption2(lambdas, model.family.nu2);
    if (!report.pass) throw AssumptionViolatedError(report.offending(), report.threshold);
    return stationary_vertex_weights(model);
}

} // namespace crw
