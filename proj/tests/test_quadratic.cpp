#include <catch2/catch_amalgamated.hpp>

#include "valinf/quadratic.hpp"

using namespace valinf;

namespace {

Recurrence rec_of(std::initializer_list<long long> cs) {
    Recurrence r;
    r.coeffs.assign(cs.begin(), cs.end());
    r.order = static_cast<int>(r.coeffs.size());
    return r;
}

} // namespace

TEST_CASE("QuadExpr arithmetic and exact signs") {
    const QuadExpr phi(Rational(1, 2), Rational(1, 2), 5);
    CHECK(phi * phi == phi + QuadExpr(Rational(1))); // phi^2 = phi + 1
    CHECK(phi.sign() == 1);
    CHECK(phi.conjugate().sign() == -1);

    // 3 - 2 sqrt(2) > 0 but 3 - 3 sqrt(2) < 0
    CHECK(QuadExpr(Rational(3), Rational(-2), 2).sign() == 1);
    CHECK(QuadExpr(Rational(3), Rational(-3), 2).sign() == -1);
    CHECK(QuadExpr(Rational(2), Rational(-1), 4).sign() == 0);

    const QuadExpr a(Rational(1), Rational(1), 2);
    CHECK(a / a == QuadExpr(Rational(1)));
    CHECK(a.pow(2) == QuadExpr(Rational(3), Rational(2), 2));
}

TEST_CASE("dominant_quadratic reads order-2 recurrences directly") {
    const QuadraticInteger q = dominant_quadratic(rec_of({4, 1}));
    CHECK(q.t == 4);
    CHECK(q.n == 1);
    CHECK(q.disc() == 20);
    // 2 + sqrt(5) in lowest-radicand form
    CHECK(q.matches(QuadExpr(Rational(2), Rational(1), 5)));
    CHECK(q.poly_string() == "x^2 - 4*x - 1");
}

TEST_CASE("dominant_quadratic encodes order 1 as n = 0") {
    const QuadraticInteger q = dominant_quadratic(rec_of({2}));
    CHECK(q.t == 2);
    CHECK(q.n == 0);
    CHECK(q.disc() == 4);
    CHECK(q.is_rational_root());
    CHECK(q.matches(QuadExpr(Rational(2))));
}

TEST_CASE("dominant_quadratic finds the golden ratio") {
    const QuadraticInteger q = dominant_quadratic(rec_of({1, 1}));
    CHECK(q.t == 1);
    CHECK(q.n == 1);
    CHECK(q.matches(QuadExpr(Rational(1, 2), Rational(1, 2), 5)));
}

TEST_CASE("dominant_quadratic requires integer coefficients") {
    Recurrence r;
    r.order = 1;
    r.coeffs = {Rational(1, 2)};
    CHECK_THROWS_AS(dominant_quadratic(r), std::invalid_argument);
}

TEST_CASE("dominant_quadratic normalizes sign-alternating growth") {
    // a_n = -4 a_{n-1} + a_{n-2}: dominant root -(2 + sqrt 5), growth 2 + sqrt 5
    const QuadraticInteger q = dominant_quadratic(rec_of({-4, 1}));
    CHECK(q.t == 4);
    CHECK(q.n == 1);
}

TEST_CASE("dominant_quadratic rejects complex spectra") {
    // x^2 + 1
    CHECK_THROWS_AS(dominant_quadratic(rec_of({0, -1})), NotQuadratic);
}

TEST_CASE("dominant_quadratic divides out a zero root at order 3") {
    // char poly x^3 - 4x^2 - x = x (x^2 - 4x - 1)
    const QuadraticInteger q = dominant_quadratic(rec_of({4, 1, 0}));
    CHECK(q.t == 4);
    CHECK(q.n == 1);
}

TEST_CASE("dominant_quadratic handles a dominated rational cofactor") {
    // (x - 1)(x^2 - 4x - 1) = x^3 - 5x^2 + 3x + 1: recurrence (5, -3, -1)
    const QuadraticInteger q = dominant_quadratic(rec_of({5, -3, -1}));
    CHECK(q.t == 4);
    CHECK(q.n == 1);
    CHECK(q.matches(QuadExpr(Rational(2), Rational(1), 5)));
}

TEST_CASE("dominant_quadratic refuses a dominant linear factor") {
    // (x - 3)(x^2 - x - 1): the dominant root 3 lies in no quadratic divisor
    CHECK_THROWS_AS(dominant_quadratic(rec_of({4, -2, -3})), NotQuadratic);
}

TEST_CASE("dominant quadratic of a parabolic double root") {
    // (x - 1)^2: linear degree growth, lambda = 1
    const QuadraticInteger q = dominant_quadratic(rec_of({2, -1}));
    CHECK(q.t == 2);
    CHECK(q.n == -1);
    CHECK(q.disc() == 0);
    CHECK(q.matches(QuadExpr(Rational(1))));
    CHECK_FALSE(q.value() > QuadExpr(Rational(1)));
}

TEST_CASE("quadratic value satisfies its polynomial exactly") {
    for (long long t = -3; t <= 5; ++t)
        for (long long n = -2; n <= 5; ++n) {
            const QuadraticInteger q{BigInt(t), BigInt(n)};
            if (q.disc() < 0)
                continue;
            const QuadExpr v = q.value();
            CHECK((v * v - QuadExpr(Rational(t)) * v - QuadExpr(Rational(n))).sign() == 0);
        }
}
