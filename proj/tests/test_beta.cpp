#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "torbit/beta.hpp"

using namespace torbit;

TEST_SUITE("beta") {

TEST_CASE("k = 1 is pinned to zero") {
    BetaSolution s = solve_beta(1);
    CHECK(s.k == 1);
    CHECK(s.beta == 0.0);
    CHECK(s.residual == 0.0);
    CHECK(s.method == BetaMethod::pinned);
}

TEST_CASE("reference values") {
    struct Ref {
        int k;
        double beta;
    };
    const Ref refs[] = {
        {2, 0.373364617701697},  {3, 0.913728427323094}, {4, 1.529614278408602},
        {5, 2.192515694271350},  {10, 5.875396132727875},
    };
    for (const Ref& r : refs) {
        CAPTURE(r.k);
        BetaSolution s = solve_beta(r.k);
        CHECK(std::abs(s.beta - r.beta) < 1e-12);
        CHECK(std::abs(s.beta - beta_lambert(r.k)) < 1e-10);
    }
}

TEST_CASE("solution satisfies the defining equation") {
    for (int k = 2; k <= 60; ++k) {
        CAPTURE(k);
        BetaSolution s = solve_beta(k);
        CHECK(std::abs(f_k(k, s.beta)) < 1e-10);
        CHECK(s.residual < 1e-10);
        CHECK(s.method == BetaMethod::bisection);
        // The root lies strictly inside (0, k-1].
        CHECK(s.beta > 0.0);
        CHECK(s.beta <= double(k - 1));
    }
}

TEST_CASE("beta_k is strictly increasing in k") {
    double prev = solve_beta(1).beta;
    for (int k = 2; k <= 40; ++k) {
        double cur = solve_beta(k).beta;
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("f_k domain and shape") {
    CHECK_THROWS_AS(f_k(2, 0.0), std::domain_error);
    CHECK_THROWS_AS(f_k(2, -1.0), std::domain_error);
    CHECK_THROWS_AS(f_k(2, 2.0 + 1e-9), std::domain_error);
    CHECK_THROWS_AS(f_k(0, 0.5), std::domain_error);
    // f_k(t) -> -(k-1) as t -> 0+ and f_k(k) = 1 > 0: sign change inside.
    CHECK(f_k(2, 1e-12) < 0.0);
    CHECK(f_k(2, 1.0) > 0.0);
    CHECK(f_k(5, 1e-12) < 0.0);
    CHECK(f_k(5, 4.0) > 0.0);
}

TEST_CASE("solve_beta rejects k < 1") {
    CHECK_THROWS_AS(solve_beta(0), std::domain_error);
    CHECK_THROWS_AS(solve_beta(-3), std::domain_error);
    CHECK_THROWS_AS(beta_lambert(1), std::domain_error);
}

TEST_CASE("lambert_w_lower reference point") {
    // W_{-1}(-1/(2e)) frozen reference.
    double w = lambert_w_lower(-1.0 / (2.0 * std::exp(1.0)));
    CHECK(std::abs(w - (-2.678346990016661)) < 1e-12);
}

TEST_CASE("lambert_w_lower inverts w e^w") {
    // For x in (-1/e, 0), w = W_{-1}(x) satisfies w e^w = x and w <= -1.
    const double xs[] = {-0.3678, -0.3, -0.2, -0.1, -0.05, -0.01, -1e-4, -1e-8};
    for (double x : xs) {
        CAPTURE(x);
        double w = lambert_w_lower(x);
        CHECK(w <= -1.0);
        CHECK(std::abs(w * std::exp(w) - x) < 1e-12 * std::max(1.0, std::abs(w)));
    }
    CHECK_THROWS_AS(lambert_w_lower(0.0), std::domain_error);
    CHECK_THROWS_AS(lambert_w_lower(-1.0), std::domain_error);
    CHECK_THROWS_AS(lambert_w_lower(0.5), std::domain_error);
}

TEST_CASE("beta grows like k - sqrt-ish gap: sanity bracket") {
    // beta_k < k - 1 strictly for k >= 3 and beta_k > (k-1)/e.
    for (int k = 3; k <= 30; ++k) {
        double b = solve_beta(k).beta;
        CHECK(b < double(k - 1));
        CHECK(b > double(k - 1) / std::exp(1.0));
    }
}

}  // TEST_SUITE
