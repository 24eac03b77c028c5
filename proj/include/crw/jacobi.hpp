#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "crw/errors.hpp"
#include "crw/matrix.hpp"
#include "crw/model.hpp"

namespace crw {

inline constexpr double kSqrt2 = 1.4142135623730951;

// Adjacent eigenvalues closer than this break the simplicity guarantee the
// whole construction rests on; treated as an error, not noise.
inline constexpr double kSimplicityTol = 1e-10;

/// nu2-eigendata of one coin: left eigenvector components (q_L, q_R) with
/// q_L - q_R = sqrt(2), and the right 1-eigenvector w1 (entries sum to 1).
/// The right nu2-eigenvector w2 = (1,-1)/sqrt(2) is shared by every coin.
struct CoinSpectralData {
    double q_L;
    double q_R;
    double w1_L;
    double w1_R;
};

inline std::vector<CoinSpectralData> coin_spectral_data(const CoinFamily& family) {
    std::vector<CoinSpectralData> out;
    out.reserve(family.coins.size());
    const double scale = 1.0 - family.nu2;
    for (const CoinParams& c : family.coins)
        out.push_back({kSqrt2 * (1.0 - c.p_L) / scale, -kSqrt2 * c.p_R / scale,
                       c.p_R / scale, (1.0 - c.p_L) / scale});
    return out;
}

/// The (n+1)x(n+1) Jacobi matrix built from the coins' left nu2-eigenvectors:
///   B(x, x-1) = q_x(L)/sqrt(2)      (sub[x-1], positive)
///   B(x, x+1) = -q_x(R)/sqrt(2)     (sup[x], positive)
///   B(0, 0)   = -q_0(L)/sqrt(2)     B(n, n) = q_n(R)/sqrt(2)   (both negative)
/// Interior rows sum to 1; the boundary rows leak.
struct TridiagonalB {
    std::vector<double> diag; // n+1
    std::vector<double> sub;  // n
    std::vector<double> sup;  // n

    std::size_t size() const { return diag.size(); }

    Matrix dense() const {
        const std::size_t m = size();
        Matrix b(m, m);
        for (std::size_t i = 0; i < m; ++i) b(i, i) = diag[i];
        for (std::size_t i = 0; i + 1 < m; ++i) {
            b(i + 1, i) = sub[i];
            b(i, i + 1) = sup[i];
        }
        return b;
    }
};

inline TridiagonalB build_B(const PathCRWModel& model) {
    const std::vector<CoinSpectralData> q = coin_spectral_data(model.family);
    const std::size_t n = model.n;
    TridiagonalB b{std::vector<double>(n + 1, 0.0), std::vector<double>(n),
                   std::vector<double>(n)};
    b.diag[0] = -q[0].q_L / kSqrt2;
    b.diag[n] = q[n].q_R / kSqrt2;
    for (std::size_t x = 1; x <= n; ++x) b.sub[x - 1] = q[x].q_L / kSqrt2;
    for (std::size_t x = 0; x < n; ++x) b.sup[x] = -q[x].q_R / kSqrt2;
    return b;
}

/// Strictly positive vector with pi(x)/pi(x-1) = B(x,x-1)/B(x-1,x), normalized
/// to total 1; conjugating B by diag(sqrt(pi)) symmetrizes it.
struct PiVector {
    std::vector<double> pi;
    double c_pi;
};

inline PiVector build_pi(const TridiagonalB& b) {
    const std::size_t m = b.size();
    std::vector<double> raw(m);
    raw[0] = 1.0;
    for (std::size_t x = 1; x < m; ++x) {
        raw[x] = raw[x - 1] * b.sub[x - 1] / b.sup[x - 1];
        if (!std::isfinite(raw[x]))
            throw OverflowError("pi recurrence left the double range", x);
    }
    double total = 0.0;
    for (double v : raw) total += v;
    if (!std::isfinite(total)) throw OverflowError("pi normalizer overflowed", m - 1);
    const double c_pi = 1.0 / total;
    for (double& v : raw) v *= c_pi;
    return {std::move(raw), c_pi};
}

/// The symmetric conjugation J = D^{-1} B D with D = diag(sqrt(pi)).
struct SymTridiagonalJ {
    std::vector<double> diag;    // n+1
    std::vector<double> offdiag; // n, strictly positive

    std::size_t size() const { return diag.size(); }

    Matrix dense() const {
        const std::size_t m = size();
        Matrix j(m, m);
        for (std::size_t i = 0; i < m; ++i) j(i, i) = diag[i];
        for (std::size_t i = 0; i + 1 < m; ++i) {
            j(i + 1, i) = offdiag[i];
            j(i, i + 1) = offdiag[i];
        }
        return j;
    }
};

inline SymTridiagonalJ build_J(const TridiagonalB& b, const PiVector& pi) {
    const std::size_t m = b.size();
    SymTridiagonalJ j{b.diag, std::vector<double>(m - 1)};
    for (std::size_t x = 0; x + 1 < m; ++x) {
        j.offdiag[x] = std::sqrt(b.sup[x] * b.sub[x]);
        if (!(j.offdiag[x] > 0.0))
            throw Error("off-diagonal of J must be strictly positive");
    }
    (void)pi; // J's entries close over B alone; pi fixes the conjugation used in eigs_B
    return j;
}

/// All eigenpairs of a symmetric tridiagonal matrix, eigenvalues strictly
/// descending, eigenvectors unit-norm and mutually orthogonal.
///
/// Implicit-shift QL with accumulated rotations (the classic EISPACK tql2
/// scheme). Positive off-diagonals make every eigenvalue simple, so no
/// cluster handling is needed.
inline std::vector<std::pair<double, std::vector<double>>>
eigs_symmetric_tridiagonal(const SymTridiagonalJ& j, std::size_t max_sweeps = 50) {
    const std::size_t n = j.size();
    std::vector<double> d = j.diag;
    std::vector<double> e(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) e[i] = j.offdiag[i];
    Matrix z = Matrix::identity(n);

    for (std::size_t l = 0; l < n; ++l) {
        std::size_t iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
            }
            if (m != l) {
                if (iter++ == max_sweeps)
                    throw ConvergenceFailureError(
                        "QL sweep cap exceeded in eigs_symmetric_tridiagonal");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (std::size_t i = m; i-- > l;) {
                    double f = s * e[i];
                    const double bb = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * bb;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - bb;
                    for (std::size_t k = 0; k < n; ++k) {
                        f = z(k, i + 1);
                        z(k, i + 1) = s * z(k, i) + c * f;
                        z(k, i) = c * z(k, i) - s * f;
                    }
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }

    std::vector<std::pair<double, std::vector<double>>> pairs(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<double> w(n);
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            w[i] = z(i, k);
            norm += w[i] * w[i];
        }
        norm = std::sqrt(norm);
        for (double& v : w) v /= norm;
        pairs[k] = {d[k], std::move(w)};
    }
    std::sort(pairs.begin(), pairs.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    return pairs;
}

/// Eigenpair of B: unit-norm eigenvector, sign fixed so v(0) > 0.
struct EigenPairB {
    double lambda;
    std::vector<double> v;
};

/// Eigenpairs of B, eigenvalues strictly descending in [-1, 1], obtained by
/// lifting the J-eigenvectors through v = diag(sqrt(pi)) w.
inline std::vector<EigenPairB> eigs_B(const PathCRWModel& model) {
    const TridiagonalB b = build_B(model);
    const PiVector pi = build_pi(b);
    const SymTridiagonalJ j = build_J(b, pi);
    const auto jpairs = eigs_symmetric_tridiagonal(j);
    const std::size_t m = b.size();

    std::vector<EigenPairB> out;
    out.reserve(m);
    for (const auto& [lambda, w] : jpairs) {
        std::vector<double> v(m);
        double norm = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            v[i] = std::sqrt(pi.pi[i]) * w[i];
            norm += v[i] * v[i];
        }
        norm = std::sqrt(norm);
        const double sign = v[0] > 0.0 ? 1.0 : -1.0;
        for (double& x : v) x *= sign / norm;
        out.push_back({lambda, std::move(v)});
    }

    const double residual_tol = 1e-9 * static_cast<double>(m);
    const Matrix bd = b.dense();
    for (const EigenPairB& p : out) {
        const std::vector<double> bv = bd * p.v;
        for (std::size_t i = 0; i < m; ++i)
            if (std::abs(bv[i] - p.lambda * p.v[i]) > residual_tol)
                throw ConvergenceFailureError("eigenpair of B fails its residual bound");
        if (std::abs(p.lambda) > 1.0 + 1e-9)
            throw Error("eigenvalue of B outside [-1, 1]: " + std::to_string(p.lambda));
    }
    for (std::size_t i = 0; i + 1 < m; ++i)
        if (out[i].lambda - out[i + 1].lambda < kSimplicityTol)
            throw NearDegenerateError(out[i].lambda, out[i + 1].lambda);
    return out;
}

} // namespace crw
