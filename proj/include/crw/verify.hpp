#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "crw/jacobi.hpp"
#include "crw/matrix.hpp"
#include "crw/model.hpp"
#include "crw/simulate.hpp"
#include "crw/spectral.hpp"

namespace crw {

struct CheckResult {
    std::string name;
    bool pass = true;
    std::string detail;
};

namespace detail {

class Check {
public:
    explicit Check(std::string name) : result_{std::move(name), true, ""} {}

    /// Records the worst observed |value| against a bound.
    void bound(const char* what, double value, double tol) {
        if (std::abs(value) > worst_) {
            worst_ = std::abs(value);
            worst_what_ = what;
        }
        if (!(std::abs(value) <= tol)) fail(std::string(what) + " = " + fmt(value) +
                                            " exceeds " + fmt(tol));
    }

    void require(bool ok, const std::string& why) {
        if (!ok) fail(why);
    }

    CheckResult finish() {
        if (result_.pass && !worst_what_.empty()) {
            result_.detail = "max |" + worst_what_ + "| = " + fmt(worst_);
        }
        return result_;
    }

    static std::string fmt(double v) {
        std::ostringstream os;
        os.precision(3);
        os << std::scientific << v;
        return os.str();
    }

private:
    void fail(const std::string& why) {
        if (result_.pass) {
            result_.pass = false;
            result_.detail = why;
        }
    }

    CheckResult result_;
    double worst_ = 0.0;
    std::string worst_what_;
};

inline Matrix dense_coin(const CoinParams& c) {
    Matrix m(2, 2);
    m(0, 0) = c.p_L;
    m(0, 1) = c.p_R;
    m(1, 0) = 1.0 - c.p_L;
    m(1, 1) = 1.0 - c.p_R;
    return m;
}

} // namespace detail

inline PathCRWModel homogeneous_model(double p_L, double p_R, std::size_t n) {
    return validate_model(std::vector<CoinParams>(n + 1, CoinParams{p_L, p_R}), n);
}

// ---------------------------------------------------------------------------
// Random admissible models (the cmd_verify sweep recipe).
// ---------------------------------------------------------------------------

/// Draws one strictly valid model: nu2 uniform in +-(0.05, 0.95), per-vertex
/// p_R uniform inside its admissible interval with 0.02 padding, p_L = nu2 + p_R.
/// sign: +1 forces nu2 > 0, -1 forces nu2 < 0, 0 flips a fair coin.
inline PathCRWModel random_model_attempt(std::mt19937_64& rng, std::size_t n_max, int sign) {
    std::uniform_int_distribution<std::size_t> n_dist(1, n_max);
    std::uniform_real_distribution<double> mag(0.05, 0.95);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::size_t n = n_dist(rng);
    double nu2 = mag(rng);
    const int s = sign != 0 ? sign : (unit(rng) < 0.5 ? -1 : 1);
    if (s < 0) nu2 = -nu2;
    const double lo = std::max(0.0, -nu2) + 0.02;
    const double hi = std::min(1.0, 1.0 - nu2) - 0.02;
    std::uniform_real_distribution<double> p_r(lo, hi);
    std::vector<CoinParams> coins(n + 1);
    for (CoinParams& c : coins) {
        c.p_R = p_r(rng);
        c.p_L = nu2 + c.p_R;
    }
    return validate_model(coins, n);
}

/// Regenerates until the draw also satisfies the negative-nu2 admissibility
/// bound (vacuous for nu2 > 0). `skipped`, when given, counts the rejected
/// draws.
inline PathCRWModel random_admissible_model(std::mt19937_64& rng, std::size_t n_max, int sign,
                                            std::size_t* skipped = nullptr,
                                            std::size_t max_attempts = 5000) {
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        PathCRWModel model = random_model_attempt(rng, n_max, sign);
        try {
            std::vector<double> lambdas;
            for (const EigenPairB& p : eigs_B(model)) lambdas.push_back(p.lambda);
            if (check_assumption2(lambdas, model.family.nu2).pass) return model;
        } catch (const NearDegenerateError&) {
        } catch (const ConvergenceFailureError&) {
        }
        if (skipped) ++*skipped;
    }
    throw Error("no admissible nu2 < 0 model found in " + std::to_string(max_attempts) +
                " attempts");
}

// ---------------------------------------------------------------------------
// Itemized invariant checks. Each returns an independent pass/fail record and
// only relies on routes that differ from the construction it is checking.
// ---------------------------------------------------------------------------

/// Per-coin eigensystem: q_L - q_R = sqrt(2), q is a left nu2-eigenvector,
/// w1 a fixed point, and (1-nu2)|w2><-q2| + I reproduces the coin entrywise.
inline CheckResult check_coin_eigensystem(const PathCRWModel& model) {
    detail::Check chk("coin_eigensystem");
    const auto data = coin_spectral_data(model.family);
    const double nu2 = model.family.nu2;
    for (std::size_t x = 0; x <= model.n; ++x) {
        const Matrix c = detail::dense_coin(model.family.coins[x]);
        const CoinSpectralData& d = data[x];
        chk.bound("q_L - q_R - sqrt(2)", d.q_L - d.q_R - kSqrt2, kStructuralTol);
        chk.bound("qC - nu2 q (L)", d.q_L * c(0, 0) + d.q_R * c(1, 0) - nu2 * d.q_L,
                  kStructuralTol);
        chk.bound("qC - nu2 q (R)", d.q_L * c(0, 1) + d.q_R * c(1, 1) - nu2 * d.q_R,
                  kStructuralTol);
        chk.bound("C w1 - w1 (L)", c(0, 0) * d.w1_L + c(0, 1) * d.w1_R - d.w1_L,
                  kStructuralTol);
        chk.bound("C w1 - w1 (R)", c(1, 0) * d.w1_L + c(1, 1) * d.w1_R - d.w1_R,
                  kStructuralTol);
        chk.bound("<q2|w2> - 1", (d.q_L - d.q_R) / kSqrt2 - 1.0, kStructuralTol);
        chk.bound("<q2|w1>", d.q_L * d.w1_L + d.q_R * d.w1_R, kStructuralTol);
        // C = (1 - nu2) |w2><-q2| + I, entrywise
        const double w2[2] = {1.0 / kSqrt2, -1.0 / kSqrt2};
        const double q[2] = {d.q_L, d.q_R};
        for (int i = 0; i < 2; ++i)
            for (int jj = 0; jj < 2; ++jj) {
                const double recon =
                    (1.0 - nu2) * w2[i] * (-q[jj]) + (i == jj ? 1.0 : 0.0);
                chk.bound("coin reconstruction", recon - c(i, jj), kStructuralTol);
            }
    }
    return chk.finish();
}

/// S is an involution, exactly, on every basis vector.
inline CheckResult check_shift_involution(const PathCRWModel& model) {
    detail::Check chk("shift_involution");
    for (std::size_t i = 0; i < model.dim(); ++i) {
        StateVector e(model.dim(), 0.0);
        e[i] = 1.0;
        const StateVector back = apply_shift(model, apply_shift(model, e));
        chk.require(back == e, "S^2 moved basis vector " + std::to_string(i));
    }
    return chk.finish();
}

/// dense_U is column-stochastic with entries in [0,1], its columns are the
/// apply_U images exactly, and apply_U preserves entrywise sums.
inline CheckResult check_stochasticity(const PathCRWModel& model, std::mt19937_64& rng) {
    detail::Check chk("stochasticity");
    const Matrix u = dense_U(model);
    const std::size_t d = model.dim();
    for (std::size_t j = 0; j < d; ++j) {
        double sum = 0.0;
        StateVector e(d, 0.0);
        e[j] = 1.0;
        const StateVector col = apply_U(model, e);
        for (std::size_t i = 0; i < d; ++i) {
            sum += u(i, j);
            chk.require(u(i, j) >= 0.0 && u(i, j) <= 1.0, "entry of U outside [0,1]");
            chk.require(u(i, j) == col[i], "dense_U disagrees with apply_U");
        }
        chk.bound("column sum - 1", sum - 1.0, kStructuralTol);
    }
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    for (int trial = 0; trial < 4; ++trial) {
        StateVector v(d);
        double before = 0.0;
        for (double& x : v) {
            x = coord(rng);
            before += x;
        }
        double after = 0.0;
        for (double x : apply_U(model, v)) after += x;
        chk.bound("sum drift", after - before, kStructuralTol * 10);
    }
    return chk.finish();
}

/// B's interior rows sum to 1 and the four <-q2| inner-product identities
/// against dense U reproduce nu2 * B entrywise.
inline CheckResult check_b_structure(const PathCRWModel& model) {
    detail::Check chk("b_structure");
    const TridiagonalB b = build_B(model);
    const std::size_t n = model.n;
    for (std::size_t x = 1; x < n; ++x)
        chk.bound("interior row sum - 1", b.sub[x - 1] + b.diag[x] + b.sup[x] - 1.0,
                  kStructuralTol);
    chk.require(b.diag[0] < 0.0 && b.diag[n] < 0.0, "boundary diagonal must be negative");
    for (std::size_t x = 0; x < n; ++x)
        chk.require(b.sub[x] > 0.0 && b.sup[x] > 0.0, "off-diagonals must be positive");

    const Matrix u = dense_U(model);
    const auto data = coin_spectral_data(model.family);
    const Matrix bd = b.dense();
    const auto identity_at = [&](std::size_t y, std::size_t x) {
        // <y (x) -q_{2,y}| U |x (x) w_2>
        StateVector c(model.dim(), 0.0);
        c[state_index(x, Side::L)] = 1.0 / kSqrt2;
        c[state_index(x, Side::R)] = -1.0 / kSqrt2;
        const std::vector<double> uc = u * c;
        return -data[y].q_L * uc[state_index(y, Side::L)] -
               data[y].q_R * uc[state_index(y, Side::R)];
    };
    const double nu2 = model.family.nu2;
    for (std::size_t x = 0; x <= n; ++x) {
        if (x >= 1)
            chk.bound("inner product (sup)", identity_at(x - 1, x) - nu2 * bd(x - 1, x),
                      kStructuralTol);
        if (x + 1 <= n)
            chk.bound("inner product (sub)", identity_at(x + 1, x) - nu2 * bd(x + 1, x),
                      kStructuralTol);
    }
    chk.bound("inner product (0,0)", identity_at(0, 0) - nu2 * bd(0, 0), kStructuralTol);
    chk.bound("inner product (n,n)", identity_at(n, n) - nu2 * bd(n, n), kStructuralTol);
    return chk.finish();
}

/// pi is strictly positive with total 1, the conjugation D^{-1} B D is
/// symmetric entrywise, and it equals J.
inline CheckResult check_pi_conjugation(const PathCRWModel& model) {
    detail::Check chk("pi_conjugation");
    const TridiagonalB b = build_B(model);
    const PiVector pi = build_pi(b);
    double total = 0.0;
    for (double p : pi.pi) {
        chk.require(p > 0.0, "pi must be strictly positive");
        total += p;
    }
    chk.bound("pi total - 1", total - 1.0, kStructuralTol);
    for (std::size_t x = 1; x < pi.pi.size(); ++x)
        chk.bound("pi ratio", pi.pi[x] / pi.pi[x - 1] - b.sub[x - 1] / b.sup[x - 1],
                  kStructuralTol * pi.pi[x] / pi.pi[x - 1] + kStructuralTol);

    const std::size_t m = b.size();
    Matrix conj(m, m);
    const Matrix bd = b.dense();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t jj = 0; jj < m; ++jj)
            conj(i, jj) = bd(i, jj) * std::sqrt(pi.pi[jj] / pi.pi[i]);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t jj = i + 1; jj < m; ++jj)
            chk.bound("conjugation asymmetry", conj(i, jj) - conj(jj, i), kStructuralTol);
    chk.bound("J vs conjugation", conj.max_abs_diff(build_J(b, pi).dense()), kStructuralTol);
    return chk.finish();
}

/// Isospectrality and simplicity, verified by residuals: every eigenvalue of
/// J carries a J-eigenvector and its lift is a B-eigenvector, n+1 of them,
/// strictly descending in [-1, 1] with -1 present.
inline CheckResult check_spectrum_b(const PathCRWModel& model) {
    detail::Check chk("spectrum_b");
    const TridiagonalB b = build_B(model);
    const PiVector pi = build_pi(b);
    const SymTridiagonalJ j = build_J(b, pi);
    const auto jpairs = eigs_symmetric_tridiagonal(j);
    const auto bpairs = eigs_B(model);
    const std::size_t m = b.size();
    chk.require(jpairs.size() == m && bpairs.size() == m, "wrong eigenpair count");

    const Matrix jd = j.dense();
    const Matrix bd = b.dense();
    const double residual_tol = 1e-10 * static_cast<double>(m);
    for (std::size_t k = 0; k < m; ++k) {
        const auto& [lam, w] = jpairs[k];
        const std::vector<double> jw = jd * w;
        for (std::size_t i = 0; i < m; ++i)
            chk.bound("J residual", jw[i] - lam * w[i], residual_tol);
        chk.bound("Spec(J) vs Spec(B)", lam - bpairs[k].lambda, 1e-9);
        const std::vector<double> bv = bd * bpairs[k].v;
        for (std::size_t i = 0; i < m; ++i)
            chk.bound("B residual", bv[i] - bpairs[k].lambda * bpairs[k].v[i],
                      1e-9 * static_cast<double>(m));
        double norm = 0.0;
        for (double x : bpairs[k].v) norm += x * x;
        chk.bound("eigenvector norm - 1", std::sqrt(norm) - 1.0, 1e-9);
        chk.require(bpairs[k].v[0] > 0.0, "sign convention v(0) > 0 violated");
        chk.require(std::abs(bpairs[k].lambda) <= 1.0 + 1e-9, "lambda outside [-1,1]");
    }
    for (std::size_t k = 0; k + 1 < m; ++k)
        chk.require(bpairs[k].lambda - bpairs[k + 1].lambda > kSimplicityTol,
                    "eigenvalues of B not simple");

    // lambda_{n+1} = -1 with the alternating eigenvector, directly against B.
    chk.bound("lambda_min + 1", bpairs.back().lambda + 1.0, kLambdaMinusOneTol);
    std::vector<double> alt(m);
    for (std::size_t x = 0; x < m; ++x)
        alt[x] = (x % 2 == 0 ? 1.0 : -1.0) / std::sqrt(static_cast<double>(m));
    const std::vector<double> balt = bd * alt;
    for (std::size_t i = 0; i < m; ++i)
        chk.bound("B alt + alt", balt[i] + alt[i], kStructuralTol);
    return chk.finish();
}

/// The a/b pairs: unit norms, the linear-dependence dichotomy, and the block
/// relation U[a;b] = [[0,nu2],[1,(1-nu2)lambda]][a;b].
inline CheckResult check_ab_pairs(const PathCRWModel& model) {
    detail::Check chk("ab_pairs");
    const double nu2 = model.family.nu2;
    for (const EigenPairB& eig : eigs_B(model)) {
        const ABPair ab = make_ab(model, eig);
        chk.bound("|a| - 1", std::sqrt(dot(ab.a, ab.a)) - 1.0, kStructuralTol);
        chk.bound("|b| - 1", std::sqrt(dot(ab.b, ab.b)) - 1.0, kStructuralTol);
        double marginal_a = 0.0;
        for (double x : ab.a) marginal_a += x;
        chk.bound("sum of a entries", marginal_a, kStructuralTol);

        const bool minus_one = std::abs(eig.lambda + 1.0) <= kLambdaMinusOneTol;
        const double inner = std::abs(dot(ab.a, ab.b));
        chk.require(check_linear_dependence(ab) == minus_one,
                    "linear-dependence dichotomy broken");
        if (minus_one) {
            for (std::size_t i = 0; i < ab.a.size(); ++i)
                chk.bound("b - a at lambda = -1", ab.b[i] - ab.a[i], kStructuralTol);
        } else {
            chk.require(inner < 1.0 - 1e-6, "inner product suspiciously close to 1");
        }

        const StateVector ua = apply_U(model, ab.a);
        const StateVector ub = apply_U(model, ab.b);
        for (std::size_t i = 0; i < ua.size(); ++i) {
            chk.bound("U a - nu2 b", ua[i] - nu2 * ab.b[i], 1e-10);
            chk.bound("U b - a - (1-nu2) lambda b",
                      ub[i] - ab.a[i] - (1.0 - nu2) * eig.lambda * ab.b[i], 1e-10);
        }
    }
    return chk.finish();
}

/// The quadratic identity and root-coefficient relations for every lambda
/// mapped through mu_pair, plus mu != -1 and, for nu2 > 0, the strict
/// monotonicity of both mu sequences along descending lambda.
inline CheckResult check_mu_map(const PathCRWModel& model) {
    detail::Check chk("mu_map");
    const double nu2 = model.family.nu2;
    std::vector<double> plus_seq, minus_seq;
    for (const EigenPairB& eig : eigs_B(model)) {
        if (std::abs(eig.lambda + 1.0) <= kLambdaMinusOneTol) continue;
        const MuPair mu = mu_pair(eig.lambda, nu2);
        for (double m : {mu.plus, mu.minus})
            chk.bound("quadratic identity", m * m - (1.0 - nu2) * eig.lambda * m - nu2,
                      kStructuralTol);
        chk.bound("Vieta sum", mu.plus + mu.minus - (1.0 - nu2) * eig.lambda, kStructuralTol);
        chk.bound("Vieta product", mu.plus * mu.minus + nu2, kStructuralTol);
        chk.require(std::abs(mu.plus + 1.0) > kLambdaMinusOneTol &&
                        std::abs(mu.minus + 1.0) > kLambdaMinusOneTol,
                    "mu = -1 reached from lambda != -1");
        if (nu2 > 0.0) {
            chk.require(mu.plus > -nu2 && mu.plus < 1.0, "mu_plus outside (-nu2, 1)");
            chk.require(mu.minus > -1.0 && mu.minus < nu2, "mu_minus outside (-1, nu2)");
        }
        plus_seq.push_back(mu.plus);
        minus_seq.push_back(mu.minus);
    }
    if (nu2 > 0.0) {
        for (std::size_t i = 0; i + 1 < plus_seq.size(); ++i) {
            chk.require(plus_seq[i] > plus_seq[i + 1], "mu_plus not strictly decreasing");
            chk.require(minus_seq[i] > minus_seq[i + 1], "mu_minus not strictly decreasing");
        }
    }
    return chk.finish();
}

/// The stationary eigenpair is fixed by C and S separately, satisfies
/// detailed balance, sums to 1, and is stationary for Q.
inline CheckResult check_stationary(const PathCRWModel& model) {
    detail::Check chk("stationary");
    const EigenPairU st = stationary_pair(model);
    const StateVector cu = apply_coin(model, st.u);
    const StateVector su = apply_shift(model, st.u);
    double total = 0.0;
    for (std::size_t i = 0; i < st.u.size(); ++i) {
        chk.bound("C u0 - u0", cu[i] - st.u[i], kStructuralTol);
        chk.bound("S u0 - u0", su[i] - st.u[i], kStructuralTol);
        total += st.u[i];
    }
    chk.bound("sum of u0 entries - 1", total - 1.0, kStructuralTol);

    const std::vector<double> v0 = stationary_vertex_weights(model);
    for (std::size_t x = 0; x < model.n; ++x)
        chk.bound("detailed balance",
                  v0[x] * (1.0 - model.family.coins[x].p_L) -
                      v0[x + 1] * model.family.coins[x + 1].p_R,
                  kStructuralTol);

    const Matrix q = build_Q(model);
    for (std::size_t c = 0; c < q.cols(); ++c) {
        double sum = 0.0;
        for (std::size_t r = 0; r < q.rows(); ++r) sum += q(r, c);
        chk.bound("Q column sum - 1", sum - 1.0, kStructuralTol);
    }
    const std::vector<double> qv = q * v0;
    for (std::size_t x = 0; x <= model.n; ++x)
        chk.bound("Q v0 - v0", qv[x] - v0[x], kStructuralTol);
    return chk.finish();
}

/// The decomposition as a whole: pair census, simplicity, annihilation of
/// non-stationary entry sums, biorthogonality, residuals of every right and
/// left eigenpair, and the entrywise reconstruction of U.
inline CheckResult check_decomposition(const PathCRWModel& model,
                                       const SpectralDecomposition& decomp) {
    detail::Check chk("decomposition");
    const std::size_t d = model.dim();
    chk.require(decomp.pairs.size() == d, "pair count is not 2(n+1)");

    std::size_t stationary = 0, alternating = 0, plus = 0, minus = 0;
    for (const EigenPairU& p : decomp.pairs) {
        switch (p.tag) {
        case PairTag::Stationary: ++stationary; break;
        case PairTag::Alternating: ++alternating; break;
        case PairTag::Plus: ++plus; break;
        case PairTag::Minus: ++minus; break;
        }
        chk.require(std::abs(p.mu) <= 1.0 + 1e-12, "|mu| > 1");
        if (p.tag != PairTag::Stationary) {
            chk.require(p.mu < 1.0, "mu = 1 outside the stationary pair");
            double total = 0.0;
            for (double x : p.u) total += x;
            chk.bound("non-stationary entry sum", total, 1e-10);
        }
    }
    chk.require(stationary == 1 && alternating == 1 && plus == model.n && minus == model.n,
                "tag census is off");

    std::vector<double> mus = decomp.spectrum();
    std::sort(mus.begin(), mus.end());
    for (std::size_t i = 0; i + 1 < mus.size(); ++i)
        chk.require(mus[i + 1] - mus[i] > kSimplicityTol, "Spec(U) not simple");

    const Matrix u = dense_U(model);
    for (const EigenPairU& p : decomp.pairs) {
        const std::vector<double> uu = u * p.u;
        for (std::size_t i = 0; i < d; ++i)
            chk.bound("right residual", uu[i] - p.mu * p.u[i], kSpectralTol);
        for (std::size_t jj = 0; jj < d; ++jj) {
            double qu = 0.0;
            for (std::size_t i = 0; i < d; ++i) qu += p.q[i] * u(i, jj);
            chk.bound("left residual", qu - p.mu * p.q[jj], kSpectralTol);
        }
    }
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t jj = 0; jj < d; ++jj)
            chk.bound("biorthogonality",
                      dot(decomp.pairs[i].q, decomp.pairs[jj].u) - (i == jj ? 1.0 : 0.0),
                      kSpectralTol);
    chk.bound("reconstruction", decomp.reconstruct().max_abs_diff(u), kSpectralTol);
    return chk.finish();
}

/// Spectral evolution against the repeated-application oracle, and the
/// stationary coefficient alpha_0 = 1 for probability states.
inline CheckResult check_evolution(const PathCRWModel& model,
                                   const SpectralDecomposition& decomp,
                                   std::mt19937_64& rng) {
    detail::Check chk("evolution");
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 3; ++trial) {
        StateVector phi(model.dim());
        double total = 0.0;
        for (double& x : phi) {
            x = unit(rng);
            total += x;
        }
        for (double& x : phi) x /= total;

        const StateVector at0 = evolve_spectral(decomp, phi, 0);
        for (std::size_t i = 0; i < phi.size(); ++i)
            chk.bound("t=0 identity", at0[i] - phi[i], 1e-10);
        const StateVector at1 = evolve_spectral(decomp, phi, 1);
        const StateVector one = apply_U(model, phi);
        for (std::size_t i = 0; i < phi.size(); ++i)
            chk.bound("t=1 vs apply_U", at1[i] - one[i], 1e-9);
        const StateVector spectral = evolve_spectral(decomp, phi, 50);
        const StateVector dense = evolve_dense(model, phi, 50);
        for (std::size_t i = 0; i < phi.size(); ++i)
            chk.bound("t=50 vs dense", spectral[i] - dense[i], kSpectralTol);
        for (const EigenPairU& p : decomp.pairs)
            if (p.tag == PairTag::Stationary)
                chk.bound("alpha_0 - 1", dot(p.q, phi) - 1.0, 1e-10);
    }
    return chk.finish();
}

/// The closed-form limit equals marginal(u0) to rounding, dense evolution
/// reaches it, and the start state does not matter.
inline CheckResult check_limiting(const PathCRWModel& model,
                                  const SpectralDecomposition& decomp) {
    detail::Check chk("limiting");
    const Distribution closed = limiting_distribution(model);
    const Distribution from_u0 = marginal(stationary_pair(model).u);
    for (std::size_t x = 0; x < closed.size(); ++x)
        chk.bound("closed form vs marginal(u0)", closed[x] - from_u0[x], kStructuralTol);

    for (std::size_t start : {std::size_t{0}, model.n}) {
        const StateVector phi = basis_state(model, start, start == 0 ? Side::L : Side::R);
        const Distribution dense = marginal(evolve_dense(model, phi, 10000));
        for (std::size_t x = 0; x < closed.size(); ++x)
            chk.bound("dense t=1e4 vs closed form", dense[x] - closed[x], kSpectralTol);
        const StateVector far = evolve_spectral(decomp, phi, 1000000);
        for (std::size_t x = 0; x < closed.size(); ++x)
            chk.bound("spectral t=1e6 vs closed form",
                      far[state_index(x, Side::L)] + far[state_index(x, Side::R)] - closed[x],
                      1e-9);
    }
    return chk.finish();
}

/// Every itemized invariant check on one model, in a stable order.
inline std::vector<CheckResult> verify_model(const PathCRWModel& model,
                                             std::uint64_t seed = 12345) {
    std::mt19937_64 rng(seed);
    std::vector<CheckResult> results;
    results.push_back(check_coin_eigensystem(model));
    results.push_back(check_shift_involution(model));
    results.push_back(check_stochasticity(model, rng));
    results.push_back(check_b_structure(model));
    results.push_back(check_pi_conjugation(model));
    results.push_back(check_spectrum_b(model));
    results.push_back(check_ab_pairs(model));
    results.push_back(check_mu_map(model));
    results.push_back(check_stationary(model));
    const SpectralDecomposition decomp = full_decomposition(model);
    results.push_back(check_decomposition(model, decomp));
    results.push_back(check_evolution(model, decomp, rng));
    results.push_back(check_limiting(model, decomp));
    return results;
}

} // namespace crw
