#pragma once

#include <string>
#include <utility>
#include <vector>

#include "valinf/quadratic.hpp"
#include "valinf/rational.hpp"

namespace valinf {

// Monomial self-map of the 2-torus, written with row exponents:
// f(x, y) = (x^a y^b, x^c y^d). Composition multiplies the matrices, and an
// endomorphism is an automorphism exactly when |det| = 1.
struct MonomialMap {
    BigInt a, b, c, d;

    MonomialMap(BigInt a_, BigInt b_, BigInt c_, BigInt d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
        if (det() == 0)
            throw SingularMatrix("monomial map must have nonzero determinant");
    }

    BigInt det() const { return a * d - b * c; }
    BigInt trace() const { return a + d; }
    BigInt char_disc() const { return trace() * trace() - 4 * det(); }
    bool is_automorphism() const { return det() == 1 || det() == -1; }

    MonomialMap compose(const MonomialMap& g) const {
        // exponent matrix of f o g is M_f * M_g
        return MonomialMap(a * g.a + b * g.c, a * g.b + b * g.d, c * g.a + d * g.c,
                           c * g.b + d * g.d);
    }

    MonomialMap pow(unsigned e) const {
        MonomialMap acc(1, 0, 0, 1);
        MonomialMap base = *this;
        while (e) {
            if (e & 1u)
                acc = acc.compose(base);
            base = base.compose(base);
            e >>= 1u;
        }
        return acc;
    }

    std::string str() const {
        return "[[" + a.str() + "," + b.str() + "],[" + c.str() + "," + d.str() + "]]";
    }
};

// Monomial valuation at infinity, v(x^i y^j) = i w1 + j w2. The circle at
// infinity of the torus is exactly the set of rays of these weights.
struct TorusValuation {
    Rational w1, w2;

    TorusValuation(Rational a, Rational b) : w1(std::move(a)), w2(std::move(b)) {
        if (w1 == 0 && w2 == 0)
            throw std::invalid_argument("torus valuation weight must be nonzero");
    }

    bool same_ray(const TorusValuation& o) const {
        // parallel and pointing the same way
        if (w1 * o.w2 != w2 * o.w1)
            return false;
        return sign(w1) == sign(o.w1) && sign(w2) == sign(o.w2);
    }
};

// f_* v(P) = v(f^* P): the weight transforms by the exponent matrix.
inline TorusValuation pushforward(const MonomialMap& f, const TorusValuation& v) {
    return TorusValuation(Rational(f.a) * v.w1 + Rational(f.b) * v.w2,
                          Rational(f.c) * v.w1 + Rational(f.d) * v.w2);
}

// Spectral radius of the exponent matrix as a quadratic integer. Real
// spectrum: the modulus of the dominant root of x^2 - tr x + det, which is
// the dominant root of x^2 - |tr| x + det. Complex spectrum: sqrt(|det|).
inline QuadraticInteger dynamical_degree(const MonomialMap& f) {
    if (f.char_disc() >= 0) {
        BigInt t = f.trace();
        if (t < 0)
            t = -t;
        return QuadraticInteger{t, -f.det()};
    }
    return QuadraticInteger{BigInt(0), boost::multiprecision::abs(f.det())};
}

// Loxodromic: real eigenvalues of distinct absolute value and spectral
// radius > 1.
inline bool is_loxodromic(const MonomialMap& f) {
    const BigInt disc = f.char_disc();
    if (disc <= 0 || f.trace() == 0)
        return false;
    BigInt t = f.trace();
    if (t < 0)
        t = -t;
    // (|t| + sqrt(disc))/2 > 1  <=>  sqrt(disc) > 2 - |t|
    if (t >= 2)
        return true;
    const BigInt gap = 2 - t;
    return disc > gap * gap;
}

// Fixed rays of f on the circle with their exact eigenvalues. lambda carries
// the dynamical degree; the signed eigenvalues make M v = mu v checkable
// symbolically in Q(sqrt(disc)).
struct EigenData {
    QuadraticInteger lambda;
    BigInt field_disc;
    QuadExpr eigenvalue_plus;  // eigenvalue on the attracting line
    QuadExpr eigenvalue_minus; // eigenvalue on the repelling line
    std::pair<QuadExpr, QuadExpr> ray_plus;
    std::pair<QuadExpr, QuadExpr> ray_minus;
};

namespace detail {

// Eigenvector of [[a,b],[c,d]] for eigenvalue mu, normalized to second
// coordinate 1 when possible, else (1, 0).
inline std::pair<QuadExpr, QuadExpr> eigenray(const MonomialMap& f, const QuadExpr& mu) {
    const QuadExpr one(Rational(1));
    if (f.b != 0) {
        // (b, mu - a) scaled by 1/(mu - a) unless that vanishes
        QuadExpr second = mu - QuadExpr(Rational(f.a));
        if (second.sign() == 0)
            return {one, QuadExpr(Rational(0))};
        return {QuadExpr(Rational(f.b)) / second, one};
    }
    // lower triangular: eigenvalues a and d are rational and distinct here
    if ((mu - QuadExpr(Rational(f.d))).sign() == 0)
        return {QuadExpr(Rational(0)), one};
    // mu = a, eigenvector (a - d, c)
    if (f.c == 0)
        return {one, QuadExpr(Rational(0))};
    return {QuadExpr(Rational(f.a - f.d)) / QuadExpr(Rational(f.c)), one};
}

} // namespace detail

inline EigenData eigenvaluations(const MonomialMap& f) {
    if (!is_loxodromic(f))
        throw NotLoxodromic("map " + f.str() + " is not loxodromic");
    const BigInt disc = f.char_disc();
    const QuadExpr half(Rational(1, 2));
    const QuadExpr root(Rational(0), Rational(1), disc);
    const QuadExpr tr{Rational(f.trace())};
    QuadExpr mu_plus = (tr + root) * half;
    QuadExpr mu_minus = (tr - root) * half;
    if (mu_plus.abs() < mu_minus.abs())
        std::swap(mu_plus, mu_minus);
    EigenData out{dynamical_degree(f), disc,          mu_plus,
                  mu_minus,            detail::eigenray(f, mu_plus), detail::eigenray(f, mu_minus)};
    return out;
}

// One step of the attraction report: the exact distance ratio between the
// pushforward ray and the attracting eigenray.
struct AttractionStep {
    Rational weight1, weight2; // current integer-matrix pushforward of v0
    QuadExpr ratio;            // |w ^ v_plus| / (|w1| + |w2|)
};

struct AttractionReport {
    bool monotone = false;  // ratios strictly decrease
    bool at_attractor = false; // v0 already on the attracting ray
    std::vector<AttractionStep> steps;
};

// Iterates f_* on v0 and reports the exact cross-product distance to the
// attracting ray, which must decrease strictly at the rate of the eigenvalue
// ratio. v0 on the repelling line is rejected.
inline AttractionReport attraction_check(const MonomialMap& f, const TorusValuation& v0, int n) {
    const EigenData eig = eigenvaluations(f);
    const QuadExpr w1{v0.w1}, w2{v0.w2};
    const QuadExpr cross_minus = w1 * eig.ray_minus.second - w2 * eig.ray_minus.first;
    if (cross_minus.sign() == 0)
        throw StartsAtRepeller("start valuation lies on the repelling eigenray");

    AttractionReport report;
    Rational a = v0.w1, b = v0.w2;
    for (int k = 0; k <= n; ++k) {
        const QuadExpr cross =
            QuadExpr(a) * eig.ray_plus.second - QuadExpr(b) * eig.ray_plus.first;
        const QuadExpr norm{valinf::abs(a) + valinf::abs(b)};
        report.steps.push_back({a, b, cross.abs() / norm});
        const Rational na = Rational(f.a) * a + Rational(f.b) * b;
        const Rational nb = Rational(f.c) * a + Rational(f.d) * b;
        a = na;
        b = nb;
    }
    report.at_attractor = report.steps.front().ratio.sign() == 0;
    report.monotone = true;
    if (report.at_attractor)
        return report; // distance is identically zero
    for (size_t i = 1; i < report.steps.size(); ++i)
        if (!(report.steps[i].ratio < report.steps[i - 1].ratio)) {
            report.monotone = false;
            break;
        }
    return report;
}

// Pushforward bookkeeping for the four coordinate rays of the standard fan
// completion. A monomial endomorphism is proper, so each boundary valuation
// must land on a (possibly new) divisorial boundary ray, with the expected
// multiplicity and compatible with scaling.
struct RayImage {
    std::pair<BigInt, BigInt> ray;       // primitive source ray
    std::pair<BigInt, BigInt> image;     // primitive image ray
    BigInt multiplicity;                 // content of the raw image vector
};

struct ProperPushforwardReport {
    bool ok = false;
    std::vector<RayImage> images;
};

inline ProperPushforwardReport proper_pushforward_check(const MonomialMap& f) {
    ProperPushforwardReport report;
    report.ok = true;
    const std::pair<BigInt, BigInt> rays[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (const auto& r : rays) {
        const BigInt iw1 = f.a * r.first + f.b * r.second;
        const BigInt iw2 = f.c * r.first + f.d * r.second;
        if (iw1 == 0 && iw2 == 0) {
            report.ok = false;
            continue;
        }
        const BigInt g = boost::multiprecision::gcd(boost::multiprecision::abs(iw1),
                                                    boost::multiprecision::abs(iw2));
        RayImage img{r, {iw1 / g, iw2 / g}, g};
        // scaling compatibility: pushforward of 2*ray is 2*(pushforward)
        const TorusValuation two(Rational(2 * r.first), Rational(2 * r.second));
        const TorusValuation moved = pushforward(f, two);
        if (moved.w1 != Rational(2 * iw1) || moved.w2 != Rational(2 * iw2))
            report.ok = false;
        report.images.push_back(std::move(img));
    }
    return report;
}

} // namespace valinf
