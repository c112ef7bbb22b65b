#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "valinf/poly3.hpp"
#include "valinf/quadratic.hpp"
#include "valinf/rational.hpp"
#include "valinf/recurrence.hpp"

namespace valinf {

using Point3 = std::array<Rational, 3>;

// Member of the cubic family x^2 + y^2 + z^2 = xyz + Ax + By + Cz + D.
// The projective closure meets the plane at infinity in the triangle xyz = 0,
// and the Cayley surface is (0, 0, 0, 4).
struct MarkovSurface {
    Rational A, B, C, D;

    // equation left minus right; constant along every Vieta orbit
    Rational residual(const Point3& p) const {
        const auto& [x, y, z] = p;
        return x * x + y * y + z * z - x * y * z - A * x - B * y - C * z - D;
    }
};

enum class Letter { X, Y, Z };

inline char letter_char(Letter l) { return l == Letter::X ? 'x' : l == Letter::Y ? 'y' : 'z'; }

// A word in the three Vieta involutions; the rightmost letter acts first.
struct VietaWord {
    std::vector<Letter> letters;

    static VietaWord parse(std::string_view text) {
        VietaWord w;
        for (char c : text) {
            switch (c) {
            case 'x': w.letters.push_back(Letter::X); break;
            case 'y': w.letters.push_back(Letter::Y); break;
            case 'z': w.letters.push_back(Letter::Z); break;
            default: throw ParseError(std::string("word letter must be x, y or z, got '") + c + "'");
            }
        }
        if (w.letters.empty())
            throw ParseError("empty word");
        return w;
    }

    bool is_reduced() const {
        for (size_t i = 1; i < letters.size(); ++i)
            if (letters[i] == letters[i - 1])
                return false;
        return true;
    }

    bool is_cyclically_reduced() const {
        return is_reduced() && letters.size() >= 2 && letters.front() != letters.back();
    }

    // Deletes adjacent equal pairs until none remain.
    VietaWord reduced() const {
        std::vector<Letter> stack;
        for (Letter l : letters) {
            if (!stack.empty() && stack.back() == l)
                stack.pop_back();
            else
                stack.push_back(l);
        }
        VietaWord w;
        w.letters = std::move(stack);
        return w;
    }

    std::string str() const {
        std::string out;
        for (Letter l : letters)
            out += letter_char(l);
        return out;
    }

    bool operator==(const VietaWord&) const = default;
};

// The Vieta involution swapping the two roots of the surface equation seen as
// a quadratic in one coordinate: sigma_x(x, y, z) = (yz + A - x, y, z).
inline Point3 vieta(Letter l, const MarkovSurface& s, const Point3& p) {
    const auto& [x, y, z] = p;
    switch (l) {
    case Letter::X: return {y * z + s.A - x, y, z};
    case Letter::Y: return {x, x * z + s.B - y, z};
    case Letter::Z: return {x, y, x * y + s.C - z};
    }
    throw std::logic_error("unreachable");
}

inline Point3 apply_word(const VietaWord& w, const MarkovSurface& s, Point3 p) {
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
        p = vieta(*it, s, p);
    return p;
}

struct OrbitPoint {
    Point3 p;
    Rational residual;
};

// n successive applications of the word, starting point included as step 0.
// The residual is recorded at every step; it is exactly invariant.
inline std::vector<OrbitPoint> orbit(const MarkovSurface& s, const VietaWord& w, const Point3& start,
                                     int steps) {
    std::vector<OrbitPoint> out;
    Point3 p = start;
    out.push_back({p, s.residual(p)});
    for (int i = 0; i < steps; ++i) {
        p = apply_word(w, s, p);
        out.push_back({p, s.residual(p)});
    }
    return out;
}

// Max-plus degree triple: sigma_x sends d_x to max(d_x, d_y + d_z) and fixes
// the others. Tropicalization of the ambient degree growth.
struct DegreeState {
    BigInt dx, dy, dz;

    BigInt max() const { return std::max(dx, std::max(dy, dz)); }
    bool operator==(const DegreeState&) const = default;
};

// States after each full application of the word to (1,1,1). The letters are
// taken literally; reduction is the caller's business (lambda_of_word reduces,
// the composition-oracle comparison deliberately does not).
inline std::vector<DegreeState> maxplus_degrees(const VietaWord& w, int applications) {
    std::vector<DegreeState> out;
    DegreeState st{1, 1, 1};
    for (int n = 0; n < applications; ++n) {
        for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
            switch (*it) {
            case Letter::X: st.dx = std::max(st.dx, st.dy + st.dz); break;
            case Letter::Y: st.dy = std::max(st.dy, st.dx + st.dz); break;
            case Letter::Z: st.dz = std::max(st.dz, st.dx + st.dy); break;
            }
        }
        out.push_back(st);
    }
    return out;
}

struct LambdaReport {
    QuadraticInteger lambda;
    Recurrence recurrence;
    std::vector<Rational> degree_sequence; // 1, then the max after each application
    VietaWord word_used;
    bool was_reduced = false; // true when the input word needed reduction
};

// Dynamical degree of a word: fit the minimal recurrence of the max-plus
// degree sequence and certify its dominant root as a quadratic integer.
// The word is reduced first; after reduction it must be cyclically reduced
// (first letter different from the last) and of length >= 2.
inline LambdaReport lambda_of_word(const VietaWord& word, int depth) {
    LambdaReport report;
    report.word_used = word.reduced();
    report.was_reduced = !(report.word_used == word);
    if (report.word_used.letters.size() < 2 || !report.word_used.is_cyclically_reduced())
        throw std::invalid_argument(
            "lambda_of_word: word must reduce to a cyclically reduced word of length >= 2");
    const int k = std::max(depth, 6);
    report.degree_sequence.push_back(Rational(1));
    for (const auto& st : maxplus_degrees(report.word_used, k))
        report.degree_sequence.push_back(Rational(st.max()));
    report.recurrence = fit_recurrence(report.degree_sequence);
    report.lambda = dominant_quadratic(report.recurrence);
    return report;
}

struct OracleResult {
    std::vector<std::array<long long, 3>> degrees; // after each completed application
    int completed = 0;
    bool overflowed = false;
};

// Exact composition oracle: composes the three coordinate polynomials of the
// word map and records their total degrees after each application. Default
// parameters (1,2,3,5) are generic enough to dodge accidental cancellation.
// The budget caps the total degree; exceeding it throws DegreeOverflow unless
// allow_partial, in which case completed applications are returned.
inline OracleResult composition_oracle(const MarkovSurface& s, const VietaWord& w, int applications,
                                       long long budget = 100, bool allow_partial = false) {
    OracleResult out;
    Poly3 px = Poly3::variable(0), py = Poly3::variable(1), pz = Poly3::variable(2);
    for (int n = 0; n < applications; ++n) {
        Poly3 nx = px, ny = py, nz = pz;
        bool over = false;
        for (auto it = w.letters.rbegin(); it != w.letters.rend() && !over; ++it) {
            switch (*it) {
            case Letter::X:
                if (ny.total_degree() + nz.total_degree() > budget) { over = true; break; }
                nx = ny * nz + Poly3::constant(s.A) - nx;
                break;
            case Letter::Y:
                if (nx.total_degree() + nz.total_degree() > budget) { over = true; break; }
                ny = nx * nz + Poly3::constant(s.B) - ny;
                break;
            case Letter::Z:
                if (nx.total_degree() + ny.total_degree() > budget) { over = true; break; }
                nz = nx * ny + Poly3::constant(s.C) - nz;
                break;
            }
        }
        if (over) {
            out.overflowed = true;
            if (allow_partial)
                return out;
            throw DegreeOverflow("composition degree budget " + std::to_string(budget) +
                                 " exceeded at application " + std::to_string(n + 1));
        }
        px = std::move(nx);
        py = std::move(ny);
        pz = std::move(nz);
        out.degrees.push_back({px.total_degree(), py.total_degree(), pz.total_degree()});
        out.completed = n + 1;
    }
    return out;
}

enum class SmoothVerdict { SmoothAffine, Singular, Unknown };

inline std::string to_string(SmoothVerdict v) {
    switch (v) {
    case SmoothVerdict::SmoothAffine: return "SmoothAffine";
    case SmoothVerdict::Singular: return "SingularAt";
    case SmoothVerdict::Unknown: return "Unknown";
    }
    return "?";
}

struct SmoothReport {
    SmoothVerdict verdict = SmoothVerdict::Unknown;
    std::vector<Point3> points; // rational singular points, sorted
    std::string note;
};

namespace detail {

// Rational roots of an integer polynomial (ascending coefficients) by the
// rational root theorem. Degenerate data (zero polynomial, coefficients too
// large to factor by trial division) returns nullopt.
inline std::optional<std::vector<Rational>> rational_roots(std::vector<BigInt> p) {
    while (!p.empty() && p.back() == 0)
        p.pop_back();
    if (p.empty())
        return std::nullopt;
    std::vector<Rational> roots;
    size_t low = 0;
    while (low < p.size() && p[low] == 0)
        ++low;
    if (low > 0) {
        roots.push_back(Rational(0));
        p.erase(p.begin(), p.begin() + low);
    }
    if (p.size() == 1)
        return roots;
    const BigInt bound("1000000000000");
    if (boost::multiprecision::abs(p.front()) > bound || boost::multiprecision::abs(p.back()) > bound)
        return std::nullopt;
    auto evaluate = [&](const Rational& x) {
        Rational acc(0);
        for (size_t i = p.size(); i-- > 0;)
            acc = acc * x + Rational(p[i]);
        return acc;
    };
    for (const BigInt& u : divisors_of(p.front()))
        for (const BigInt& v : divisors_of(p.back()))
            for (int s = 0; s < 2; ++s) {
                const Rational cand = s ? Rational(-u, v) : Rational(u, v);
                if (evaluate(cand) == 0)
                    roots.push_back(cand);
            }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

} // namespace detail

// Screens the surface for rational singular points by exact elimination of
// the gradient system { 2x = yz + A, 2y = xz + B, 2z = xy + C } together with
// the equation. SmoothAffine means no rational singular point was found; it
// is a screen, not a smoothness certificate.
inline SmoothReport smoothness_screen(const MarkovSurface& s) {
    SmoothReport report;
    std::vector<Point3> found;

    auto is_singular = [&](const Point3& p) {
        const auto& [x, y, z] = p;
        return s.residual(p) == 0 && 2 * x == y * z + s.A && 2 * y == x * z + s.B &&
               2 * z == x * y + s.C;
    };
    auto push = [&](const Point3& p) {
        if (is_singular(p))
            found.push_back(p);
    };

    // Substituting z = (xy + C)/2 into the gradient equations leaves
    //   x (y^2 - 4) = -(C y + 2A)                           (i)
    //   x^2 y + C x - 4 y + 2B = 0                          (ii)
    // Away from y = +-2, x is determined by (i) and (ii) becomes a quintic.
    {
        // (Cy + 2A)^2 y - C (Cy + 2A)(y^2 - 4) - (4y - 2B)(y^2 - 4)^2 = 0
        // expanded in ascending powers of y with rational coefficients,
        // then cleared to integers.
        const Rational C = s.C, A = s.A, B = s.B;
        Vec q(6, Rational(0));
        // (Cy + 2A)^2 y = C^2 y^3 + 4AC y^2 + 4A^2 y
        q[3] += C * C;
        q[2] += 4 * A * C;
        q[1] += 4 * A * A;
        // - C (Cy + 2A)(y^2 - 4) = -C^2 y^3 - 2AC y^2 + 4C^2 y + 8AC
        q[3] -= C * C;
        q[2] -= 2 * A * C;
        q[1] += 4 * C * C;
        q[0] += 8 * A * C;
        // - (4y - 2B)(y^4 - 8y^2 + 16)
        q[5] -= 4;
        q[4] += 2 * B;
        q[3] += 32;
        q[2] -= 16 * B;
        q[1] -= 64;
        q[0] += 32 * B;
        BigInt common(1);
        for (const auto& c : q)
            common = boost::multiprecision::lcm(common, denominator(c));
        std::vector<BigInt> qi;
        for (const auto& c : q)
            qi.push_back(numerator(c * Rational(common)));
        auto roots = detail::rational_roots(std::move(qi));
        if (!roots) {
            report.verdict = SmoothVerdict::Unknown;
            report.note = "root search on the elimination polynomial degenerated";
            return report;
        }
        for (const Rational& y : *roots) {
            if (y * y == 4)
                continue;
            const Rational x = -(C * y + 2 * A) / (y * y - 4);
            const Rational z = (x * y + C) / 2;
            push({x, y, z});
        }
    }

    // Branches y = 2 and y = -2: (i) forces a parameter relation, and (ii)
    // becomes a quadratic in x with z determined.
    for (int branch = 0; branch < 2; ++branch) {
        const Rational y = branch == 0 ? Rational(2) : Rational(-2);
        if (s.C * y + 2 * s.A != 0)
            continue; // (i) unsatisfiable on this branch
        // (ii): y x^2 + C x + (2B - 4y) = 0
        const Rational qa = y, qb = s.C, qc = 2 * s.B - 4 * y;
        const Rational disc = qb * qb - 4 * qa * qc;
        if (disc < 0)
            continue;
        // exact rational square root, if any
        const BigInt dn = numerator(disc), dd = denominator(disc);
        if (!is_perfect_square(dn) || !is_perfect_square(dd))
            continue;
        const Rational root(isqrt_floor(dn), isqrt_floor(dd));
        for (int sgn = -1; sgn <= 1; sgn += 2) {
            const Rational x = (-qb + sgn * root) / (2 * qa);
            const Rational z = (x * y + s.C) / 2;
            push({x, y, z});
            if (root == 0)
                break;
        }
    }

    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    report.points = std::move(found);
    report.verdict = report.points.empty() ? SmoothVerdict::SmoothAffine : SmoothVerdict::Singular;
    return report;
}

// The Cayley surface is the quotient of the torus by simultaneous inversion:
// (u, v) -> (u + 1/u, v + 1/v, uv + 1/(uv)) lands on x^2+y^2+z^2 = xyz + 4
// and identifies (u, v) with (1/u, 1/v). Verified exactly per sample.
inline bool cayley_quotient_check(const std::vector<std::pair<Rational, Rational>>& samples) {
    const MarkovSurface cayley{Rational(0), Rational(0), Rational(0), Rational(4)};
    for (const auto& [u, v] : samples) {
        if (u == 0 || v == 0)
            throw std::invalid_argument("cayley_quotient_check: u, v must be nonzero");
        auto image = [&](const Rational& a, const Rational& b) -> Point3 {
            return {a + 1 / a, b + 1 / b, a * b + 1 / (a * b)};
        };
        const Point3 p = image(u, v);
        if (cayley.residual(p) != 0)
            return false;
        const Point3 q = image(1 / u, 1 / v);
        if (p != q)
            return false;
    }
    return true;
}

} // namespace valinf
