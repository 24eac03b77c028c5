// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Every tolerance is pinned here, and the spectra are cross-checked
// against a brute-force eigensolver that never touches the library's own
// decomposition path.

#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "crw/crw.hpp"

#include "oracle.hpp"

using namespace crw;

namespace {

struct Harness {
    int failures = 0;

    void criterion(int id, const std::string& name, const std::function<void()>& body) {
        std::string detail;
        bool pass = true;
        try {
            body();
        } catch (const std::exception& e) {
            pass = false;
            detail = e.what();
        }
        std::printf("[%s] criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                    detail.empty() ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
        if (!pass) ++failures;
    }
};

void require(bool ok, const std::string& why) {
    if (!ok) throw std::runtime_error(why);
}

} // namespace

int main() {
    Harness harness;

    // Frozen model sets: 20 admissible models per sign of nu2, n <= 8.
    std::mt19937_64 rng(0x5eed2024ULL);
    std::vector<PathCRWModel> models;
    std::size_t skipped = 0;
    for (int i = 0; i < 20; ++i) models.push_back(random_admissible_model(rng, 8, 1, &skipped));
    for (int i = 0; i < 20; ++i) models.push_back(random_admissible_model(rng, 8, -1, &skipped));
    std::printf("model set: 20 per sign of nu2, n <= 8, %zu inadmissible draws regenerated\n",
                skipped);

    harness.criterion(1, "oracle spectrum equivalence and simplicity", [&] {
        for (const PathCRWModel& model : models) {
            const SpectralDecomposition decomp = full_decomposition(model);
            require(decomp.pairs.size() == model.dim(), "wrong eigenpair count");
            std::vector<double> ours = decomp.spectrum();
            std::sort(ours.begin(), ours.end(), std::greater<>());
            const std::vector<double> reference = oracle::brute_force_spectrum(dense_U(model));
            for (std::size_t k = 0; k < ours.size(); ++k)
                require(std::abs(ours[k] - reference[k]) <= 1e-8,
                        "Spec(U) disagrees with brute force");
            for (std::size_t k = 0; k + 1 < ours.size(); ++k)
                require(ours[k] - ours[k + 1] > 1e-10, "Spec(U) not simple");
        }
        // an assumption-violating model is rejected, never silently computed
        const PathCRWModel failing = homogeneous_model(0.1, 0.35, 1);
        try {
            full_decomposition(failing);
            require(false, "assumption-violating model was computed");
        } catch (const AssumptionViolatedError&) {
        }
    });

    harness.criterion(2, "fixed fixture spectrum and limit", [&] {
        const PathCRWModel fixture = homogeneous_model(0.7, 0.2, 1);
        std::vector<double> mus = full_decomposition(fixture).spectrum();
        std::sort(mus.begin(), mus.end(), std::greater<>());
        const double expected[4] = {1.0, std::sqrt(0.5), 0.5, -std::sqrt(0.5)};
        for (int k = 0; k < 4; ++k)
            require(std::abs(mus[k] - expected[k]) <= 1e-10, "fixture spectrum off");
        const Distribution p_inf = limiting_distribution(fixture);
        require(std::abs(p_inf[0] - 0.4) <= 1e-12 && std::abs(p_inf[1] - 0.6) <= 1e-12,
                "fixture p_inf off");
    });

    harness.criterion(3, "isospectrality, simplicity, and the -1 eigenpair", [&] {
        for (const PathCRWModel& model : models) {
            const TridiagonalB b = build_B(model);
            const PiVector pi = build_pi(b);
            const auto jpairs = eigs_symmetric_tridiagonal(build_J(b, pi));
            const std::vector<double> bspec = oracle::brute_force_spectrum(b.dense(), 1e-9);
            require(jpairs.size() == bspec.size(), "Spec(J) count off");
            for (std::size_t k = 0; k < bspec.size(); ++k) {
                require(std::abs(jpairs[k].first - bspec[k]) <= 1e-9,
                        "Spec(B) != Spec(J) beyond 1e-9");
                require(std::abs(jpairs[k].first) <= 1.0 + 1e-9, "lambda outside [-1,1]");
            }
            for (std::size_t k = 0; k + 1 < jpairs.size(); ++k)
                require(jpairs[k].first - jpairs[k + 1].first > 1e-10, "Spec(B) not simple");
            require(std::abs(jpairs.back().first + 1.0) <= 1e-10, "lambda_min != -1");

            const std::size_t m = b.size();
            std::vector<double> alt(m);
            for (std::size_t x = 0; x < m; ++x)
                alt[x] = (x % 2 == 0 ? 1.0 : -1.0) / std::sqrt(static_cast<double>(m));
            const std::vector<double> balt = b.dense() * alt;
            for (std::size_t x = 0; x < m; ++x)
                require(std::abs(balt[x] + alt[x]) <= 1e-12,
                        "alternating eigenvector residual beyond 1e-12");
        }
    });

    harness.criterion(4, "spectral reconstruction of U", [&] {
        for (const PathCRWModel& model : models) {
            const SpectralDecomposition decomp = full_decomposition(model);
            require(decomp.reconstruct().max_abs_diff(dense_U(model)) <= 1e-8,
                    "sum of mu u q misses dense U beyond 1e-8");
        }
    });

    harness.criterion(5, "limiting distribution triple agreement", [&] {
        // Closed-form legs on the fixture panel, whose mixing makes the
        // stated horizons sufficient.
        const std::vector<PathCRWModel> fixtures{
            homogeneous_model(0.7, 0.2, 1), homogeneous_model(0.7, 0.2, 2),
            validate_model({{0.7, 0.2}, {0.6, 0.1}, {0.8, 0.3}}, 2)};
        for (const PathCRWModel& model : fixtures) {
            const Distribution closed = limiting_distribution(model);
            const Distribution dense =
                marginal(evolve_dense(model, basis_state(model, 0, Side::L), 10000));
            for (std::size_t x = 0; x < closed.size(); ++x)
                require(std::abs(closed[x] - dense[x]) <= 1e-8,
                        "dense evolution at t=1e4 misses the closed form");
            SimConfig cfg;
            cfg.walkers = 100000;
            cfg.t = 1000;
            cfg.seed = 0xc01dULL;
            cfg.initial = {0, Side::L};
            const Distribution hist = empirical_distribution(model, cfg);
            require(total_variation(hist, closed) <= 0.015,
                    "Monte Carlo TV to the closed form beyond 0.015");
        }
        // Random panel at matched horizons: exact routes agree everywhere,
        // Monte Carlo agrees on the first three models per sign.
        for (std::size_t i = 0; i < models.size(); ++i) {
            const PathCRWModel& model = models[i];
            const std::uint64_t t = 1000;
            const StateVector phi = basis_state(model, 0, Side::L);
            const StateVector dense = evolve_dense(model, phi, t);
            const StateVector spectral =
                evolve_spectral(full_decomposition(model), phi, t);
            for (std::size_t k = 0; k < dense.size(); ++k)
                require(std::abs(dense[k] - spectral[k]) <= 1e-8,
                        "dense and spectral evolution disagree at t=1e3");
            if (i % 20 >= 3) continue;
            SimConfig cfg;
            cfg.walkers = 100000;
            cfg.t = t;
            cfg.seed = 0xc01dULL;
            cfg.initial = {0, Side::L};
            const Distribution hist = empirical_distribution(model, cfg);
            require(total_variation(hist, marginal(dense)) <= 0.015,
                    "Monte Carlo TV to the exact marginal beyond 0.015");
        }
    });

    harness.criterion(6, "structural identities", [&] {
        for (const PathCRWModel& model : models) {
            const std::size_t d = model.dim();
            for (std::size_t i = 0; i < d; ++i) {
                StateVector e(d, 0.0);
                e[i] = 1.0;
                require(apply_shift(model, apply_shift(model, e)) == e, "S^2 != I exactly");
            }
            const Matrix u = dense_U(model);
            const Matrix q = build_Q(model);
            for (std::size_t j = 0; j < d; ++j) {
                double sum = 0.0;
                for (std::size_t i = 0; i < d; ++i) sum += u(i, j);
                require(std::abs(sum - 1.0) <= 1e-12, "U column sum beyond 1e-12");
            }
            for (std::size_t j = 0; j < q.cols(); ++j) {
                double sum = 0.0;
                for (std::size_t i = 0; i < q.rows(); ++i) sum += q(i, j);
                require(std::abs(sum - 1.0) <= 1e-12, "Q column sum beyond 1e-12");
            }

            const std::vector<double> v0 = stationary_vertex_weights(model);
            for (std::size_t x = 0; x < model.n; ++x)
                require(std::abs(v0[x] * (1.0 - model.family.coins[x].p_L) -
                                 v0[x + 1] * model.family.coins[x + 1].p_R) <= 1e-12,
                        "detailed balance beyond 1e-12");

            const SpectralDecomposition decomp = full_decomposition(model);
            for (const EigenPairU& p : decomp.pairs) {
                if (p.tag == PairTag::Stationary) continue;
                double total = 0.0;
                for (double x : p.u) total += x;
                require(std::abs(total) <= 1e-10,
                        "non-stationary entry sum beyond 1e-10");
            }
            const double nu2 = model.family.nu2;
            for (const EigenPairB& eig : eigs_B(model)) {
                if (std::abs(eig.lambda + 1.0) <= 1e-10) continue;
                const MuPair mu = mu_pair(eig.lambda, nu2);
                for (double m : {mu.plus, mu.minus})
                    require(std::abs(m * m - (1.0 - nu2) * eig.lambda * m - nu2) <= 1e-12,
                            "quadratic identity beyond 1e-12");
                require(std::abs(mu.plus + mu.minus - (1.0 - nu2) * eig.lambda) <= 1e-12 &&
                            std::abs(mu.plus * mu.minus + nu2) <= 1e-12,
                        "root-coefficient identity beyond 1e-12");
            }
        }
    });

    harness.criterion(7, "linear-dependence dichotomy", [&] {
        for (const PathCRWModel& model : models) {
            for (const EigenPairB& eig : eigs_B(model)) {
                const ABPair ab = make_ab(model, eig);
                const double inner = std::abs(dot(ab.a, ab.b));
                if (std::abs(eig.lambda + 1.0) <= 1e-10)
                    require(inner >= 1.0 - 1e-10, "dependent pair with |<a,b>| < 1 - 1e-10");
                else
                    require(inner < 1.0 - 1e-6, "independent pair too close to dependence");
            }
        }
    });

    harness.criterion(8, "monotone mu sequences for nu2 > 0", [&] {
        for (const PathCRWModel& model : models) {
            if (model.family.nu2 < 0.0) continue;
            std::vector<double> plus_seq, minus_seq;
            for (const EigenPairB& eig : eigs_B(model)) {
                if (std::abs(eig.lambda + 1.0) <= 1e-10) continue;
                const MuPair mu = mu_pair(eig.lambda, model.family.nu2);
                plus_seq.push_back(mu.plus);
                minus_seq.push_back(mu.minus);
            }
            for (std::size_t i = 0; i + 1 < plus_seq.size(); ++i) {
                require(plus_seq[i] > plus_seq[i + 1], "mu_plus not strictly decreasing");
                require(minus_seq[i] > minus_seq[i + 1], "mu_minus not strictly decreasing");
            }
        }
    });

    if (harness.failures == 0)
        std::printf("acceptance: all 8 criteria pass\n");
    else
        std::printf("acceptance: %d criterion(s) FAILED\n", harness.failures);
    return harness.failures == 0 ? 0 : 1;
}
