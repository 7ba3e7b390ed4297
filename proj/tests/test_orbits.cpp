#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "torbit/orbits.hpp"

#include "oracles.hpp"

using namespace torbit;

namespace {

Mat2Q m(long a, long b, long c, long d) {
    return Mat2Q{mpq_class(a), mpq_class(b), mpq_class(c), mpq_class(d)};
}

}  // namespace

TEST_SUITE("orbits") {

TEST_CASE("Mat2Q arithmetic is exact") {
    Mat2Q a = m(1, 2, 3, 4);
    Mat2Q b = m(5, 6, 7, 8);
    Mat2Q ab = a * b;
    CHECK(ab == m(19, 22, 43, 50));
    CHECK(a.det() == -2);
    CHECK(a.trace() == 5);
    CHECK(Mat2Q::identity() * a == a);
    CHECK(a * Mat2Q::identity() == a);
    Mat2Q inv = a.inverse();
    CHECK(a * inv == Mat2Q::identity());
    CHECK(inv * a == Mat2Q::identity());
    CHECK_THROWS_AS(m(1, 2, 2, 4).inverse(), std::domain_error);
    // Rational entries round-trip exactly.
    Mat2Q h{mpq_class(1, 2), mpq_class(3, 2), mpq_class(1, 2), mpq_class(1, 2)};
    CHECK((h * h.inverse()) == Mat2Q::identity());
}

TEST_CASE("is_hyperbolic on canonical examples") {
    CHECK(is_hyperbolic(m(2, 1, 1, 1)));       // trace^2 - 4 det = 5
    CHECK_FALSE(is_hyperbolic(m(0, -1, 1, 0)));  // rotation: -4
    CHECK_FALSE(is_hyperbolic(m(1, 1, 0, 1)));   // shear: 0
    CHECK(is_hyperbolic(m(3, 4, 2, 3)));       // trace^2 - 4 det = 32
}

TEST_CASE("make_orbit_spec validation") {
    CHECK_THROWS_AS(make_orbit_spec(m(2, 1, 1, 1), 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_orbit_spec(m(1, 2, 2, 4), 1, 1), std::invalid_argument);  // singular
    CHECK_THROWS_AS(make_orbit_spec(m(0, -1, 1, 0), 1, 1), std::invalid_argument);  // elliptic
    CHECK_NOTHROW(make_orbit_spec(m(0, -1, 1, 0), 1, 1, "", true));  // explicit override
    // Non-integral walk: halves that do not stay on the orbit lattice.
    Mat2Q half{mpq_class(1, 2), mpq_class(0), mpq_class(0), mpq_class(2)};
    CHECK_THROWS_AS(make_orbit_spec(half, 1, 1), std::runtime_error);
    // The named fibonacci_lucas matrix has half-integer entries yet is
    // integral on its own orbit.
    CHECK_NOTHROW(named_orbit("fibonacci_lucas"));
}

TEST_CASE("named orbit catalogue") {
    const std::vector<std::string>& labels = named_orbit_labels();
    REQUIRE(labels.size() == 5);
    for (const std::string& l : labels) {
        CAPTURE(l);
        OrbitSpec spec = named_orbit(l);
        CHECK(spec.label == l);
        CHECK(is_hyperbolic(spec.gamma));
    }
    CHECK_THROWS_AS(named_orbit("no_such_orbit"), std::invalid_argument);
}

TEST_CASE("named orbits match the recurrence oracles") {
    const uint64_t N = 40;
    auto series = [&](const char* label) { return iterate_orbit(named_orbit(label), N); };

    OrbitSeries fl = series("fibonacci_lucas");
    REQUIRE(fl.points.size() == N + 1);
    for (uint64_t n = 0; n <= N; ++n) {
        CAPTURE(n);
        CHECK(fl.points[n].x == oracle::fib(n + 1));
        CHECK(fl.points[n].y == oracle::lucas(n + 1));
        CHECK(fl.points[n].f_value == fl.points[n].x * fl.points[n].y);
    }

    OrbitSeries cf = series("consecutive_fibonacci");
    for (uint64_t n = 0; n <= N; ++n) {
        CAPTURE(n);
        CHECK(cf.points[n].x == oracle::fib(n + 1));
        CHECK(cf.points[n].y == oracle::fib(n));
    }
    CHECK(cf.points[0].skipped);  // F_0 = 0 annihilates the product
    CHECK(cf.zero_skipped == 1);

    OrbitSeries cl = series("consecutive_lucas");
    for (uint64_t n = 0; n <= N; ++n) {
        CAPTURE(n);
        CHECK(cl.points[n].x == oracle::lucas(n + 1));
        CHECK(cl.points[n].y == oracle::lucas(n));
    }

    OrbitSeries ef = series("even_fibonacci");
    for (uint64_t n = 0; n <= N; ++n) {
        CAPTURE(n);
        CHECK(ef.points[n].x == oracle::fib(2 * n + 2));
        CHECK(ef.points[n].y == -oracle::fib(2 * n));
    }

    OrbitSeries cm = series("consecutive_mersenne");
    for (uint64_t n = 0; n <= N; ++n) {
        CAPTURE(n);
        CHECK(cm.points[n].x == oracle::mersenne(n + 1));
        CHECK(cm.points[n].y == oracle::mersenne(n));
    }
}

TEST_CASE("iterate_orbit omega, ratio, and running_min") {
    OrbitSeries fl = iterate_orbit(named_orbit("fibonacci_lucas"), 30);
    double running = std::numeric_limits<double>::infinity();
    for (const OrbitPoint& pt : fl.points) {
        CAPTURE(pt.n);
        REQUIRE_FALSE(pt.skipped);
        mpz_class av = abs(pt.f_value);
        // Exact omega against trial division (values here are < 2^64).
        CHECK(av.fits_ulong_p());
        CHECK(pt.omega.value == oracle::omega(av.get_ui()));
        CHECK(pt.omega.exact);
        double la = std::log(av.get_d());
        if (la > 0 && std::log(la) > 0) {
            REQUIRE(pt.ratio.has_value());
            CHECK(pt.ratio.value() ==
                  doctest::Approx(pt.omega.value / std::log(la)).epsilon(1e-9));
        }
        if (pt.ratio) {
            running = std::min(running, pt.ratio.value());
            REQUIRE(pt.running_min.has_value());
            CHECK(pt.running_min.value() == doctest::Approx(running).epsilon(1e-12));
        }
    }
    CHECK(fl.unresolved_points == 0);
    CHECK(fl.unresolved_composites == 0);
}

TEST_CASE("iterate_orbit censors under a starved budget") {
    // n = 120: F_121 and L_121 are 25-26 digit numbers whose factorizations
    // include primes far beyond trial division; budget 16 cannot finish them.
    OrbitSeries fl = iterate_orbit(named_orbit("fibonacci_lucas"), 120, /*omega_budget=*/16);
    CHECK(fl.unresolved_points > 0);
    CHECK(fl.unresolved_composites >= fl.unresolved_points);
    bool censored_seen = false;
    for (const OrbitPoint& pt : fl.points)
        if (!pt.omega.exact) {
            censored_seen = true;
            CHECK(pt.omega.unresolved > 0);
        }
    CHECK(censored_seen);
}

TEST_CASE("anonymous spec walks exactly") {
    // gamma = [[2,1],[1,1]], v0 = (1,0): x_n, y_n follow the Fibonacci shift.
    OrbitSpec spec = make_orbit_spec(m(2, 1, 1, 1), 1, 0, "pell_like");
    OrbitSeries s = iterate_orbit(spec, 20);
    mpz_class x = 1, y = 0;
    for (uint64_t n = 0; n <= 20; ++n) {
        CAPTURE(n);
        CHECK(s.points[n].x == x);
        CHECK(s.points[n].y == y);
        mpz_class nx = 2 * x + y, ny = x + y;
        x = nx;
        y = ny;
    }
}

TEST_CASE("verify_identities counts and succeeds") {
    IdentityReport r = verify_identities(300);
    CHECK(r.n_max == 300);
    CHECK(r.checks == 3 * 301);
    CHECK_THROWS_AS(verify_identities(0), std::domain_error);
}

TEST_CASE("identity inputs cross-check the oracles themselves") {
    for (uint64_t n = 0; n <= 60; ++n) {
        CAPTURE(n);
        CHECK(oracle::fib(2 * n) == oracle::fib(n) * oracle::lucas(n));
        mpz_class lhs = oracle::lucas(n) * oracle::lucas(n) -
                        5 * oracle::fib(n) * oracle::fib(n);
        CHECK(lhs == ((n % 2 == 0) ? 4 : -4));
        CHECK(oracle::mersenne(2 * n) ==
              oracle::mersenne(n) * (oracle::mersenne(n) + 2));
    }
}

}  // TEST_SUITE
