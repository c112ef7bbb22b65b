#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "valinf/rational.hpp"

namespace valinf {

using Mat = std::vector<Vec>;

// Symmetric bilinear form with exact rational entries. Immutable after
// construction; symmetry is validated once.
class SymForm {
public:
    explicit SymForm(Mat entries) : entries_(std::move(entries)) {
        const size_t n = entries_.size();
        for (const auto& row : entries_)
            if (row.size() != n)
                throw std::invalid_argument("SymForm: matrix is not square");
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j)
                if (entries_[i][j] != entries_[j][i])
                    throw std::invalid_argument("SymForm: matrix is not symmetric");
    }

    static SymForm from_int(const std::vector<std::vector<long long>>& m) {
        Mat e(m.size());
        for (size_t i = 0; i < m.size(); ++i)
            e[i] = Vec(m[i].begin(), m[i].end());
        return SymForm(std::move(e));
    }

    int size() const { return static_cast<int>(entries_.size()); }
    const Rational& at(int i, int j) const { return entries_[i][j]; }
    const Mat& entries() const { return entries_; }

    Vec apply(const Vec& x) const {
        const size_t n = entries_.size();
        Vec y(n, Rational(0));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                y[i] += entries_[i][j] * x[j];
        return y;
    }

    Rational pair(const Vec& x, const Vec& y) const {
        Vec my = apply(y);
        Rational acc(0);
        for (size_t i = 0; i < my.size(); ++i)
            acc += x[i] * my[i];
        return acc;
    }

private:
    Mat entries_;
};

struct Inertia {
    int plus = 0;
    int minus = 0;
    int zero = 0;
    bool operator==(const Inertia&) const = default;
};

inline std::string to_string(const Inertia& s) {
    return "(" + std::to_string(s.plus) + "," + std::to_string(s.minus) + "," +
           std::to_string(s.zero) + ")";
}

// Exact inertia by rational congruence diagonalization. Pivot selection is
// deterministic: smallest diagonal index first, then the lexicographically
// smallest off-diagonal pair when the whole remaining diagonal vanishes.
inline Inertia inertia(const SymForm& form) {
    const int n = form.size();
    Mat m = form.entries();
    Inertia result;
    int k = 0;
    while (k < n) {
        int pivot = -1;
        for (int i = k; i < n; ++i) {
            if (m[i][i] != 0) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) {
            // All remaining diagonal entries vanish. If some off-diagonal
            // entry survives, fold its row/column in to create a pivot.
            int pi = -1, pj = -1;
            for (int i = k; i < n && pi < 0; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (m[i][j] != 0) {
                        pi = i;
                        pj = j;
                        break;
                    }
            if (pi < 0)
                break; // remaining block is zero
            for (int c = 0; c < n; ++c)
                m[pi][c] += m[pj][c];
            for (int r = 0; r < n; ++r)
                m[r][pi] += m[r][pj];
            pivot = pi;
        }
        if (pivot != k) {
            std::swap(m[pivot], m[k]);
            for (int r = 0; r < n; ++r)
                std::swap(m[r][pivot], m[r][k]);
        }
        const Rational d = m[k][k];
        if (d > 0)
            ++result.plus;
        else
            ++result.minus;
        for (int r = k + 1; r < n; ++r) {
            if (m[r][k] == 0)
                continue;
            const Rational f = m[r][k] / d;
            for (int c = 0; c < n; ++c)
                m[r][c] -= f * m[k][c];
            for (int c = 0; c < n; ++c)
                m[c][r] -= f * m[c][k];
        }
        ++k;
    }
    result.zero = n - result.plus - result.minus;
    return result;
}

namespace detail {

// Gauss-Jordan solve of M X = B, returning X or nullopt when M is singular.
inline std::optional<Mat> solve_exact(Mat m, Mat b) {
    const int n = static_cast<int>(m.size());
    const int w = b.empty() ? 0 : static_cast<int>(b[0].size());
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (m[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0)
            return std::nullopt;
        std::swap(m[pivot], m[col]);
        std::swap(b[pivot], b[col]);
        const Rational d = m[col][col];
        for (int c = 0; c < n; ++c)
            m[col][c] /= d;
        for (int c = 0; c < w; ++c)
            b[col][c] /= d;
        for (int r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0)
                continue;
            const Rational f = m[r][col];
            for (int c = 0; c < n; ++c)
                m[r][c] -= f * m[col][c];
            for (int c = 0; c < w; ++c)
                b[r][c] -= f * b[col][c];
        }
    }
    return b;
}

} // namespace detail

inline bool is_nondegenerate(const SymForm& form) {
    return inertia(form).zero == 0;
}

// Dual basis with respect to the form: vectors D_i with form * D_i = e_i.
// For a boundary intersection form D_i is the coefficient vector of the dual
// class of the i-th curve. Throws DegenerateForm when the form has a kernel.
inline std::vector<Vec> dual_basis(const SymForm& form) {
    const int n = form.size();
    Mat id(n, Vec(n, Rational(0)));
    for (int i = 0; i < n; ++i)
        id[i][i] = 1;
    auto inv = detail::solve_exact(form.entries(), id);
    if (!inv)
        throw DegenerateForm("intersection form is degenerate: no dual basis");
    // Columns of the inverse; the inverse of a symmetric matrix is symmetric,
    // so rows serve as well.
    std::vector<Vec> dual(n, Vec(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            dual[i][j] = (*inv)[j][i];
    return dual;
}

namespace detail {

// One linear constraint  sum coeffs[j] x_j >= rhs.
struct LinIneq {
    Vec coeffs;
    Rational rhs;
};

inline void normalize(LinIneq& q) {
    for (const auto& c : q.coeffs) {
        if (c != 0) {
            const Rational f = valinf::abs(c);
            for (auto& x : q.coeffs)
                x /= f;
            q.rhs /= f;
            return;
        }
    }
}

// Exact Fourier-Motzkin elimination for systems of non-strict inequalities.
// Returns a witness or nullopt. Sized for boundary graphs (n <= 12).
inline std::optional<Vec> fourier_motzkin(std::vector<LinIneq> sys, int n) {
    std::vector<std::vector<LinIneq>> layers;
    for (int var = n - 1; var >= 0; --var) {
        layers.push_back(sys);
        std::vector<LinIneq> pos, neg, rest;
        for (auto& q : sys) {
            if (q.coeffs[var] > 0)
                pos.push_back(std::move(q));
            else if (q.coeffs[var] < 0)
                neg.push_back(std::move(q));
            else
                rest.push_back(std::move(q));
        }
        for (const auto& p : pos)
            for (const auto& m : neg) {
                // p: a x_var + ... >= b with a > 0;  m: -c x_var + ... >= d with c > 0.
                LinIneq combo;
                combo.coeffs.assign(n, Rational(0));
                const Rational a = p.coeffs[var];
                const Rational c = -m.coeffs[var];
                for (int j = 0; j < n; ++j)
                    combo.coeffs[j] = c * p.coeffs[j] + a * m.coeffs[j];
                combo.rhs = c * p.rhs + a * m.rhs;
                combo.coeffs[var] = 0;
                normalize(combo);
                rest.push_back(std::move(combo));
            }
        std::sort(rest.begin(), rest.end(), [](const LinIneq& x, const LinIneq& y) {
            if (x.coeffs != y.coeffs)
                return x.coeffs < y.coeffs;
            return x.rhs < y.rhs;
        });
        rest.erase(std::unique(rest.begin(), rest.end(),
                               [](const LinIneq& x, const LinIneq& y) {
                                   return x.coeffs == y.coeffs && x.rhs == y.rhs;
                               }),
                   rest.end());
        sys = std::move(rest);
    }
    for (const auto& q : sys)
        if (q.rhs > 0)
            return std::nullopt; // 0 >= positive
    // Feasible: back-substitute in variable order 0, 1, ..., n-1 using the
    // saved layers (layers[n-1-var] still mentions variable var).
    Vec x(n, Rational(0));
    for (int var = 0; var < n; ++var) {
        const auto& layer = layers[n - 1 - var];
        bool has_lo = false, has_hi = false;
        Rational lo(0), hi(0);
        for (const auto& q : layer) {
            Rational residual = q.rhs;
            bool later = false;
            for (int j = 0; j < n; ++j) {
                if (j == var)
                    continue;
                if (q.coeffs[j] != 0) {
                    if (j > var) {
                        later = true;
                        break;
                    }
                    residual -= q.coeffs[j] * x[j];
                }
            }
            if (later || q.coeffs[var] == 0)
                continue;
            const Rational bound = residual / q.coeffs[var];
            if (q.coeffs[var] > 0) {
                if (!has_lo || bound > lo) {
                    lo = bound;
                    has_lo = true;
                }
            } else {
                if (!has_hi || bound < hi) {
                    hi = bound;
                    has_hi = true;
                }
            }
        }
        if (has_lo && has_hi)
            x[var] = (lo + hi) / 2;
        else if (has_lo)
            x[var] = lo;
        else if (has_hi)
            x[var] = hi;
    }
    // Variables only appearing together with later ones were skipped above;
    // eliminating back-to-front guarantees each layer constrains its own
    // variable by earlier ones only, so x now satisfies every constraint.
    return x;
}

} // namespace detail

// Searches for H with every coordinate > 0 and (form * H)_i > 0 for every i.
// This is Goodman-style feasibility: an effective divisor supported on the
// whole boundary with positive intersection against each component.
//
// The strict cone {x > 0, Mx > 0} is nonempty iff {x >= 1, Mx >= 1} is
// (scale a strict witness up). A small integer search runs first, then exact
// Fourier-Motzkin elimination settles the general case.
inline std::optional<Vec> feasible_positive(const SymForm& form) {
    const int n = form.size();
    if (n == 0)
        return Vec{};
    auto strict_ok = [&](const Vec& x) {
        for (const auto& c : x)
            if (c <= 0)
                return false;
        Vec y = form.apply(x);
        for (const auto& c : y)
            if (c <= 0)
                return false;
        return true;
    };
    Vec ones(n, Rational(1));
    if (strict_ok(ones))
        return ones;
    if (n <= 4) {
        // Exhaustive small search with entries 1..8.
        Vec x(n, Rational(1));
        const long long height = 8;
        while (true) {
            if (strict_ok(x))
                return x;
            int i = 0;
            while (i < n && x[i] == height) {
                x[i] = 1;
                ++i;
            }
            if (i == n)
                break;
            x[i] += 1;
        }
    }
    std::vector<detail::LinIneq> sys;
    for (int i = 0; i < n; ++i) {
        detail::LinIneq q;
        q.coeffs.assign(n, Rational(0));
        q.coeffs[i] = 1;
        q.rhs = 1;
        sys.push_back(std::move(q));
    }
    for (int i = 0; i < n; ++i) {
        detail::LinIneq q;
        q.coeffs.assign(n, Rational(0));
        for (int j = 0; j < n; ++j)
            q.coeffs[j] = form.at(i, j);
        q.rhs = 1;
        sys.push_back(std::move(q));
    }
    auto witness = detail::fourier_motzkin(std::move(sys), n);
    if (!witness)
        return std::nullopt;
    return *witness;
}

} // namespace valinf
