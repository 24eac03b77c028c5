#pragma once

#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "crw/errors.hpp"
#include "crw/matrix.hpp"

namespace crw {

// Structural identities (column sums, S^2 = I, detailed balance) hold to
// rounding; spectral residuals carry accumulated eigensolver error.
inline constexpr double kStructuralTol = 1e-12;
inline constexpr double kSpectralTol = 1e-8;

enum class Side : std::size_t { L = 0, R = 1 };

/// One 2x2 column-stochastic coin [[p_L, p_R], [1-p_L, 1-p_R]].
struct CoinParams {
    double p_L;
    double p_R;
};

/// Per-vertex coins sharing the second eigenvalue nu2 = p_L - p_R.
struct CoinFamily {
    std::vector<CoinParams> coins;
    double nu2;
};

/// Correlated random walk on the path with vertices 0..n.
struct PathCRWModel {
    std::size_t n;
    CoinFamily family;

    std::size_t vertex_count() const { return n + 1; }
    std::size_t dim() const { return 2 * (n + 1); }
};

/// Length-2(n+1) vector over the basis |x,L>, |x,R>; index(x,J) = 2x + J.
using StateVector = std::vector<double>;

/// Length-(n+1) probability vector over vertices.
using Distribution = std::vector<double>;

inline std::size_t state_index(std::size_t x, Side j) {
    return 2 * x + static_cast<std::size_t>(j);
}

inline StateVector basis_state(const PathCRWModel& model, std::size_t x, Side j) {
    StateVector s(model.dim(), 0.0);
    s[state_index(x, j)] = 1.0;
    return s;
}

/// True when the entries are nonnegative and total 1 within tolerance.
inline bool is_probability_state(const StateVector& s, double tol = kStructuralTol) {
    double sum = 0.0;
    for (double v : s) {
        if (!(v >= -tol)) return false;
        sum += v;
    }
    return std::abs(sum - 1.0) <= tol;
}

/// Builds the model and enforces Assumption 1 plus the strict-interior
/// probability range. nu2 is fixed by vertex 0.
inline PathCRWModel validate_model(const std::vector<CoinParams>& raw_coins, std::size_t n) {
    if (n < 1) throw ValidationError("path must have at least two vertices (n >= 1)");
    if (raw_coins.size() != n + 1)
        throw ValidationError("expected " + std::to_string(n + 1) + " coins, got " +
                              std::to_string(raw_coins.size()));

    const double nu2 = raw_coins[0].p_L - raw_coins[0].p_R;
    for (std::size_t x = 0; x <= n; ++x) {
        const CoinParams& c = raw_coins[x];
        for (double p : {c.p_L, c.p_R})
            if (!(p > 0.0 && p < 1.0)) throw OutOfRangeError(x, p);
        const double diff = c.p_L - c.p_R;
        if (std::abs(diff) <= 0.0 || std::abs(diff) >= 1.0) throw DegenerateCoinError(x, diff);
        if (std::abs(diff - nu2) > kStructuralTol) throw NonIsospectralError(x, diff, nu2);
    }
    return PathCRWModel{n, CoinFamily{raw_coins, nu2}};
}

inline void require_dim(const PathCRWModel& model, const StateVector& s) {
    if (s.size() != model.dim()) throw DimensionMismatchError(s.size(), model.dim());
}

/// C = sum_x |x><x| (x) C_x: each per-vertex (L,R) block is multiplied by the coin.
inline StateVector apply_coin(const PathCRWModel& model, const StateVector& s) {
    require_dim(model, s);
    StateVector out(s.size());
    for (std::size_t x = 0; x <= model.n; ++x) {
        const CoinParams& c = model.family.coins[x];
        const double l = s[state_index(x, Side::L)];
        const double r = s[state_index(x, Side::R)];
        out[state_index(x, Side::L)] = c.p_L * l + c.p_R * r;
        out[state_index(x, Side::R)] = (1.0 - c.p_L) * l + (1.0 - c.p_R) * r;
    }
    return out;
}

/// S permutes amplitudes: (x,R)->(x+1,L) for x<n, (x,L)->(x-1,R) for x>0,
/// and fixes (0,L) and (n,R). Applying it twice is the identity.
inline StateVector apply_shift(const PathCRWModel& model, const StateVector& s) {
    require_dim(model, s);
    const std::size_t n = model.n;
    StateVector out(s.size());
    out[state_index(0, Side::L)] = s[state_index(0, Side::L)];
    out[state_index(n, Side::R)] = s[state_index(n, Side::R)];
    for (std::size_t x = 0; x < n; ++x)
        out[state_index(x + 1, Side::L)] = s[state_index(x, Side::R)];
    for (std::size_t x = 1; x <= n; ++x)
        out[state_index(x - 1, Side::R)] = s[state_index(x, Side::L)];
    return out;
}

/// One step of the walk, U = SC.
inline StateVector apply_U(const PathCRWModel& model, const StateVector& s) {
    return apply_shift(model, apply_coin(model, s));
}

/// Materializes U column by column; column j is the image of basis vector j.
inline Matrix dense_U(const PathCRWModel& model) {
    const std::size_t d = model.dim();
    Matrix u(d, d);
    StateVector e(d, 0.0);
    for (std::size_t j = 0; j < d; ++j) {
        e[j] = 1.0;
        const StateVector col = apply_U(model, e);
        for (std::size_t i = 0; i < d; ++i) u(i, j) = col[i];
        e[j] = 0.0;
    }
    return u;
}

/// Vertex marginal of a probability state: probs[x] = s(x,L) + s(x,R).
inline Distribution marginal(const StateVector& s) {
    if (!is_probability_state(s))
        throw NotAProbabilityStateError(
            "marginal() requires nonnegative entries summing to 1");
    Distribution probs(s.size() / 2);
    for (std::size_t x = 0; x < probs.size(); ++x)
        probs[x] = s[state_index(x, Side::L)] + s[state_index(x, Side::R)];
    return probs;
}

/// Half the l1 distance between two distributions.
inline double total_variation(const Distribution& a, const Distribution& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::abs(a[i] - b[i]);
    return 0.5 * acc;
}

} // namespace crw
