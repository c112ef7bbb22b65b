#pragma once

#include <vector>

#include "valinf/rational.hpp"

namespace valinf {

// Minimal linear recurrence a_n = sum_{i=1..order} coeffs[i-1] * a_{n-i}.
struct Recurrence {
    int order = 0;
    std::vector<Rational> coeffs;

    bool has_integer_coeffs() const {
        for (const auto& c : coeffs)
            if (!is_integer(c))
                return false;
        return true;
    }
};

inline bool reproduces(const Recurrence& rec, const std::vector<Rational>& seq) {
    for (size_t n = rec.order; n < seq.size(); ++n) {
        Rational acc(0);
        for (int i = 1; i <= rec.order; ++i)
            acc += rec.coeffs[i - 1] * seq[n - i];
        if (acc != seq[n])
            return false;
    }
    return true;
}

// Berlekamp-Massey over the rationals: the shortest LFSR generating seq.
// The result is the unique minimal recurrence when its order is at most
// seq.size()/2; otherwise the data does not pin a recurrence down and
// NoRecurrence is thrown.
inline Recurrence fit_recurrence(const std::vector<Rational>& seq) {
    if (seq.size() < 4)
        throw std::invalid_argument("fit_recurrence: need at least 4 terms");
    const int n = static_cast<int>(seq.size());

    // Connection polynomial C(x) = 1 + c_1 x + ... + c_L x^L with
    // a_k + sum_i c_i a_{k-i} = 0 for all processed k.
    std::vector<Rational> c{Rational(1)}, b{Rational(1)};
    int length = 0, m = 1;
    Rational bd(1);
    for (int k = 0; k < n; ++k) {
        Rational d = seq[k];
        for (int i = 1; i <= length; ++i)
            d += c[i] * seq[k - i];
        if (d == 0) {
            ++m;
            continue;
        }
        if (2 * length <= k) {
            std::vector<Rational> t = c;
            const Rational f = d / bd;
            if (c.size() < b.size() + m)
                c.resize(b.size() + m, Rational(0));
            for (size_t i = 0; i < b.size(); ++i)
                c[i + m] -= f * b[i];
            length = k + 1 - length;
            b = std::move(t);
            bd = d;
            m = 1;
        } else {
            const Rational f = d / bd;
            if (c.size() < b.size() + m)
                c.resize(b.size() + m, Rational(0));
            for (size_t i = 0; i < b.size(); ++i)
                c[i + m] -= f * b[i];
            ++m;
        }
    }

    Recurrence rec;
    if (length == 0) {
        // Only the all-zero sequence reaches here; a_n = a_{n-1} fits it.
        rec.order = 1;
        rec.coeffs = {Rational(1)};
    } else {
        rec.order = length;
        rec.coeffs.resize(length, Rational(0));
        for (int i = 1; i <= length; ++i)
            rec.coeffs[i - 1] = -c[i];
    }
    if (2 * rec.order > n)
        throw NoRecurrence("no recurrence of order <= length/2 fits the sequence");
    if (!reproduces(rec, seq))
        throw NoRecurrence("fitted recurrence fails to reproduce the sequence");
    return rec;
}

} // namespace valinf
