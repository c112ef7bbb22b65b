#pragma once

#include <optional>
#include <string>
#include <vector>

#include "valinf/rational.hpp"
#include "valinf/recurrence.hpp"

namespace valinf {

// Element a + b*sqrt(d) of a real quadratic field, d >= 0 a fixed integer.
// All arithmetic and sign decisions are exact; no floating point anywhere.
class QuadExpr {
public:
    QuadExpr() : a_(0), b_(0), d_(0) {}
    explicit QuadExpr(Rational a) : a_(std::move(a)), b_(0), d_(0) {}
    QuadExpr(Rational a, Rational b, BigInt d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
        if (d_ < 0)
            throw std::invalid_argument("QuadExpr: negative radicand");
        if (d_ == 0)
            b_ = 0;
    }

    const Rational& rational_part() const { return a_; }
    const Rational& radical_part() const { return b_; }
    const BigInt& radicand() const { return d_; }
    bool is_rational() const { return b_ == 0; }

    QuadExpr operator-() const { return QuadExpr(-a_, -b_, d_); }

    QuadExpr operator+(const QuadExpr& o) const {
        const BigInt d = merged(o);
        return QuadExpr(a_ + o.a_, b_ + o.b_, d);
    }
    QuadExpr operator-(const QuadExpr& o) const { return *this + (-o); }
    QuadExpr operator*(const QuadExpr& o) const {
        const BigInt d = merged(o);
        return QuadExpr(a_ * o.a_ + b_ * o.b_ * Rational(d), a_ * o.b_ + b_ * o.a_, d);
    }
    QuadExpr operator/(const QuadExpr& o) const {
        const BigInt d = merged(o);
        const Rational norm = o.a_ * o.a_ - o.b_ * o.b_ * Rational(d);
        if (norm == 0)
            throw std::invalid_argument("QuadExpr: division by zero");
        QuadExpr conj(o.a_, -o.b_, d);
        QuadExpr num = *this * conj;
        return QuadExpr(num.a_ / norm, num.b_ / norm, d);
    }

    QuadExpr conjugate() const { return QuadExpr(a_, -b_, d_); }

    // Exact sign of a + b*sqrt(d): compare a^2 against b^2 d when the two
    // halves disagree in sign.
    int sign() const {
        if (b_ == 0 || d_ == 0)
            return valinf::sign(a_);
        if (a_ == 0)
            return valinf::sign(b_);
        const int sa = valinf::sign(a_);
        const int sb = valinf::sign(b_);
        if (sa == sb)
            return sa;
        const Rational lhs = a_ * a_;
        const Rational rhs = b_ * b_ * Rational(d_);
        if (lhs == rhs)
            return 0;
        return lhs > rhs ? sa : sb;
    }

    bool operator==(const QuadExpr& o) const { return (*this - o).sign() == 0; }
    bool operator<(const QuadExpr& o) const { return (*this - o).sign() < 0; }
    bool operator<=(const QuadExpr& o) const { return (*this - o).sign() <= 0; }
    bool operator>(const QuadExpr& o) const { return (*this - o).sign() > 0; }
    bool operator>=(const QuadExpr& o) const { return (*this - o).sign() >= 0; }

    QuadExpr abs() const { return sign() >= 0 ? *this : -*this; }

    QuadExpr pow(unsigned e) const {
        QuadExpr acc(Rational(1), Rational(0), d_);
        QuadExpr base = *this;
        while (e) {
            if (e & 1u)
                acc = acc * base;
            base = base * base;
            e >>= 1u;
        }
        return acc;
    }

    std::string str() const {
        if (b_ == 0)
            return to_string(a_);
        std::string out = to_string(a_);
        out += (b_ > 0) ? " + " : " - ";
        const Rational ab = valinf::abs(b_);
        if (ab != 1)
            out += to_string(ab) + "*";
        out += "sqrt(" + d_.str() + ")";
        return out;
    }

private:
    BigInt merged(const QuadExpr& o) const {
        if (b_ == 0)
            return o.d_;
        if (o.b_ == 0)
            return d_;
        if (d_ != o.d_)
            throw std::invalid_argument("QuadExpr: mixing distinct radicands");
        return d_;
    }

    Rational a_, b_;
    BigInt d_;
};

inline BigInt isqrt_floor(const BigInt& n) { return boost::multiprecision::sqrt(n); }

inline bool is_perfect_square(const BigInt& n) {
    if (n < 0)
        return false;
    const BigInt r = isqrt_floor(n);
    return r * r == n;
}

// The dominant root of x^2 - t x - n, kept symbolically as (t, n) with
// discriminant t^2 + 4n >= 0. This is the shape every dynamical degree in the
// cycle case takes.
struct QuadraticInteger {
    BigInt t;
    BigInt n;

    BigInt disc() const { return t * t + 4 * n; }
    bool is_rational_root() const { return is_perfect_square(disc()); }

    QuadExpr value() const {
        return QuadExpr(Rational(t, 2), Rational(1, 2), disc());
    }

    // True when mu equals this dominant root: it satisfies the defining
    // polynomial and is the larger of the two roots. mu may live in any
    // presentation of the field (e.g. sqrt(20) vs 2*sqrt(5)).
    bool matches(const QuadExpr& mu) const {
        QuadExpr poly = mu * mu - QuadExpr(Rational(t)) * mu - QuadExpr(Rational(n));
        if (poly.sign() != 0)
            return false;
        QuadExpr twice = mu + mu;
        return (twice - QuadExpr(Rational(t))).sign() >= 0;
    }

    std::string poly_string() const {
        std::string out = "x^2";
        if (t != 0)
            out += (t > 0 ? " - " : " + ") + boost::multiprecision::abs(t).str() + "*x";
        if (n != 0)
            out += (n > 0 ? " - " : " + ") + boost::multiprecision::abs(n).str();
        return out;
    }

    bool operator==(const QuadraticInteger&) const = default;
};

namespace detail {

// Is (u + sqrt(du))/2 <= (v + sqrt(dv))/2 ? All quantities exact integers,
// du, dv >= 0. Equivalent to sqrt(du) <= (v - u) + sqrt(dv).
inline bool half_surd_leq(const BigInt& u, const BigInt& du, const BigInt& v, const BigInt& dv) {
    const BigInt delta = v - u;
    if (delta >= 0) {
        // sqrt(du) <= delta + sqrt(dv), RHS >= 0.
        const BigInt lhs = du - delta * delta - dv;
        if (lhs <= 0)
            return true;
        if (delta == 0)
            return false;
        return lhs * lhs <= 4 * delta * delta * dv;
    }
    // sqrt(du) + |delta| <= sqrt(dv).
    const BigInt rhs = dv - du - delta * delta;
    if (rhs < 0)
        return false;
    return 4 * delta * delta * du <= rhs * rhs;
}

inline std::vector<BigInt> divisors_of(const BigInt& n_in) {
    BigInt n = boost::multiprecision::abs(n_in);
    std::vector<BigInt> divs;
    for (BigInt d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            divs.push_back(d);
            if (d * d != n)
                divs.push_back(n / d);
        }
    }
    return divs;
}

// Exact division of a monic integer polynomial (ascending coefficients,
// p.back() == 1) by x^2 - t x - n. Returns the monic quotient or nullopt.
inline std::optional<std::vector<BigInt>> divide_quadratic(std::vector<BigInt> p, const BigInt& t,
                                                           const BigInt& n) {
    const int deg = static_cast<int>(p.size()) - 1;
    if (deg < 2)
        return std::nullopt;
    std::vector<BigInt> q(deg - 1, BigInt(0));
    for (int i = deg; i >= 2; --i) {
        const BigInt coef = p[i];
        if (coef == 0)
            continue;
        q[i - 2] = coef;
        p[i] = 0;
        p[i - 1] += t * coef;
        p[i - 2] += n * coef;
    }
    if (p[0] != 0 || p[1] != 0)
        return std::nullopt;
    return q;
}

// All roots of the monic integer polynomial q (ascending) have modulus <= the
// dominant root lambda of x^2 - t x - n (disc = t^2+4n). Splits q into integer
// linear/quadratic factors; an irreducible factor of degree >= 3 cannot be
// certified and raises NotQuadratic.
inline bool roots_dominated(std::vector<BigInt> q, const BigInt& t, const BigInt& n) {
    const BigInt disc = t * t + 4 * n;
    while (true) {
        while (q.size() > 1 && q.back() == 0)
            q.pop_back();
        const int deg = static_cast<int>(q.size()) - 1;
        if (deg <= 0)
            return true;
        if (deg == 1) {
            // root -q[0]
            const BigInt r = boost::multiprecision::abs(q[0]);
            // |r| <= (t + sqrt(disc))/2  <=>  (2r + sqrt 0)/2 <= (t+sqrt(disc))/2
            return half_surd_leq(2 * r, BigInt(0), t, disc);
        }
        if (deg == 2) {
            // x^2 + u x + v
            const BigInt u = q[1], v = q[0];
            const BigInt d2 = u * u - 4 * v;
            if (d2 >= 0) {
                const BigInt au = boost::multiprecision::abs(u);
                return half_surd_leq(au, d2, t, disc);
            }
            // complex pair of modulus sqrt(v):  v <= lambda^2 = t*lambda + n.
            QuadraticInteger lam{t, n};
            QuadExpr l = lam.value();
            QuadExpr bound = QuadExpr(Rational(t)) * l + QuadExpr(Rational(n)) - QuadExpr(Rational(v));
            return bound.sign() >= 0;
        }
        // Split off an integer linear or quadratic factor and recurse.
        bool split = false;
        if (q[0] == 0) {
            q.erase(q.begin()); // factor x, root 0, always dominated
            continue;
        }
        for (const BigInt& d0 : divisors_of(q[0])) {
            for (int s = 0; s < 2 && !split; ++s) {
                const BigInt r = s ? -d0 : d0; // candidate root of (x - r)
                std::vector<BigInt> p = q, quo(q.size() - 1);
                bool ok = true;
                BigInt carry(0);
                for (int i = deg; i >= 1; --i) {
                    quo[i - 1] = p[i] + carry;
                    carry = quo[i - 1] * r;
                }
                ok = (p[0] + carry == 0);
                if (ok) {
                    if (!half_surd_leq(2 * boost::multiprecision::abs(r), BigInt(0), t, disc))
                        return false;
                    q = quo;
                    split = true;
                }
            }
            if (split)
                break;
        }
        if (split)
            continue;
        // quadratic factors x^2 - t2 x - n2 with n2 | q[0]
        BigInt cauchy(1);
        for (size_t i = 0; i + 1 < q.size(); ++i)
            cauchy = std::max(cauchy, boost::multiprecision::abs(q[i]) + 1);
        for (const BigInt& d0 : divisors_of(q[0])) {
            for (int s = 0; s < 2 && !split; ++s) {
                const BigInt n2 = s ? -d0 : d0;
                for (BigInt t2 = -2 * cauchy; t2 <= 2 * cauchy && !split; ++t2) {
                    auto quo = divide_quadratic(q, t2, n2);
                    if (!quo)
                        continue;
                    std::vector<BigInt> factor{-n2, -t2, BigInt(1)};
                    if (!roots_dominated(factor, t, n))
                        return false;
                    q = *quo;
                    split = true;
                }
            }
            if (split)
                break;
        }
        if (!split)
            throw NotQuadratic("cofactor has an irreducible factor of degree >= 3");
    }
}

} // namespace detail

// Extracts the dominant root of the recurrence's characteristic polynomial as
// a quadratic integer. Order <= 2 reads the answer off directly; larger orders
// search monic integer quadratic divisors whose dominant root dominates every
// other root of the polynomial. Requires integer recurrence coefficients.
inline QuadraticInteger dominant_quadratic(const Recurrence& rec) {
    if (!rec.has_integer_coeffs())
        throw std::invalid_argument("dominant_quadratic: recurrence coefficients must be integers");
    auto check_value_geq_one = [](const QuadraticInteger& qi) {
        // (t + sqrt(disc))/2 >= 1  <=>  (2 + sqrt 0)/2 <= value
        return detail::half_surd_leq(BigInt(2), BigInt(0), qi.t, qi.disc());
    };
    if (rec.order == 1) {
        const BigInt c = boost::multiprecision::abs(numerator(rec.coeffs[0]));
        QuadraticInteger qi{c, BigInt(0)};
        if (!check_value_geq_one(qi))
            throw NotQuadratic("dominant root is below 1");
        return qi;
    }
    if (rec.order == 2) {
        BigInt t = numerator(rec.coeffs[0]);
        const BigInt n = numerator(rec.coeffs[1]);
        if (t * t + 4 * n < 0)
            throw NotQuadratic("characteristic roots are complex");
        if (t < 0)
            t = -t; // growth rate is the modulus of the dominant root
        QuadraticInteger qi{t, n};
        if (!check_value_geq_one(qi))
            throw NotQuadratic("dominant root is below 1");
        return qi;
    }

    // char poly x^k - c1 x^{k-1} - ... - ck, ascending coefficients.
    const int k = rec.order;
    std::vector<BigInt> p(k + 1, BigInt(0));
    p[k] = 1;
    for (int i = 1; i <= k; ++i)
        p[k - i] = -numerator(rec.coeffs[i - 1]);

    BigInt cauchy(1);
    for (int i = 0; i < k; ++i)
        cauchy = std::max(cauchy, boost::multiprecision::abs(p[i]) + 1);
    if (cauchy > 1000)
        throw NotQuadratic("coefficient bound too large for quadratic divisor search");

    // Candidate constant terms: divisors of the lowest nonzero coefficient,
    // plus 0 when x divides the polynomial.
    int low = 0;
    while (low <= k && p[low] == 0)
        ++low;
    std::vector<BigInt> n_candidates;
    if (low > 0)
        n_candidates.push_back(BigInt(0));
    if (low <= k) {
        for (const BigInt& d : detail::divisors_of(p[low])) {
            n_candidates.push_back(d);
            n_candidates.push_back(-d);
        }
    }

    std::optional<QuadraticInteger> best;
    for (const BigInt& n : n_candidates) {
        for (BigInt t0 = -2 * cauchy; t0 <= 2 * cauchy; ++t0) {
            auto quo = detail::divide_quadratic(p, t0, n);
            if (!quo)
                continue;
            const BigInt t = t0 < 0 ? BigInt(-t0) : t0;
            QuadraticInteger qi{t, n};
            if (qi.disc() < 0)
                continue;
            if (!check_value_geq_one(qi))
                continue;
            if (!detail::roots_dominated(*quo, t, n))
                continue;
            if (!best) {
                best = qi;
                continue;
            }
            // prefer larger dominant root, then larger (t, n)
            const bool le = detail::half_surd_leq(qi.t, qi.disc(), best->t, best->disc());
            const bool ge = detail::half_surd_leq(best->t, best->disc(), qi.t, qi.disc());
            if (!le)
                best = qi; // strictly larger value
            else if (ge && (qi.t > best->t || (qi.t == best->t && qi.n > best->n)))
                best = qi;
        }
    }
    if (!best)
        throw NotQuadratic("no dominant monic integer quadratic divisor found");
    return *best;
}

} // namespace valinf
