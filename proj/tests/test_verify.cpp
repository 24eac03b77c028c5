#include <catch2/catch_amalgamated.hpp>

#include "crw/verify.hpp"

using namespace crw;

TEST_CASE("verify_model holds on fixed and random models") {
    for (const PathCRWModel& model :
         {homogeneous_model(0.7, 0.2, 1),
          validate_model({{0.7, 0.2}, {0.6, 0.1}, {0.8, 0.3}}, 2)}) {
        for (const CheckResult& r : verify_model(model)) {
            INFO(r.name << ": " << r.detail);
            CHECK(r.pass);
        }
    }
    std::mt19937_64 rng(61);
    for (int i = 0; i < 4; ++i) {
        const PathCRWModel model = random_admissible_model(rng, 8, i % 2 ? -1 : 1);
        for (const CheckResult& r : verify_model(model)) {
            INFO("n=" << model.n << " nu2=" << model.family.nu2 << " " << r.name << ": "
                      << r.detail);
            CHECK(r.pass);
        }
    }
}

TEST_CASE("random_model_attempt honours the sign and stays valid") {
    std::mt19937_64 rng(62);
    for (int i = 0; i < 50; ++i) {
        const PathCRWModel pos = random_model_attempt(rng, 8, 1);
        CHECK(pos.family.nu2 > 0.0);
        CHECK(pos.n >= 1);
        CHECK(pos.n <= 8);
        const PathCRWModel neg = random_model_attempt(rng, 8, -1);
        CHECK(neg.family.nu2 < 0.0);
        for (const CoinParams& c : neg.family.coins) {
            CHECK(c.p_L > 0.0);
            CHECK(c.p_L < 1.0);
            CHECK(c.p_R > 0.0);
            CHECK(c.p_R < 1.0);
        }
    }
}

TEST_CASE("random_admissible_model only returns assumption-passing draws") {
    std::mt19937_64 rng(63);
    std::size_t skipped = 0;
    for (int i = 0; i < 10; ++i) {
        const PathCRWModel model = random_admissible_model(rng, 8, -1, &skipped);
        std::vector<double> lambdas;
        for (const EigenPairB& p : eigs_B(model)) lambdas.push_back(p.lambda);
        CHECK(check_assumption2(lambdas, model.family.nu2).pass);
    }
    // negative-nu2 draws are frequently inadmissible; the count must be reported
    CHECK(skipped > 0);
}

TEST_CASE("negative control: corrupted decompositions are caught") {
    const PathCRWModel model = homogeneous_model(0.7, 0.2, 2);

    SpectralDecomposition bad_mu = full_decomposition(model);
    bad_mu.pairs[1].mu += 1e-3;
    CHECK_FALSE(check_decomposition(model, bad_mu).pass);

    SpectralDecomposition bad_u = full_decomposition(model);
    bad_u.pairs[2].u[0] += 1e-3;
    CHECK_FALSE(check_decomposition(model, bad_u).pass);

    // a corrupted B breaks the inner-product identities against U
    const PathCRWModel other = homogeneous_model(0.6, 0.1, 2);
    const SpectralDecomposition mismatched = full_decomposition(other);
    CHECK_FALSE(check_decomposition(model, mismatched).pass);
}
