#pragma once

#include <array>
#include <cstdint>
#include <unordered_map>
#include <utility>

#include "valinf/rational.hpp"

namespace valinf {

// Sparse polynomial in three variables with exact rational coefficients.
// Exponents are packed 20 bits apiece, plenty for the composition budgets
// used here.
class Poly3 {
public:
    using Key = std::uint64_t;

    static Key pack(unsigned ex, unsigned ey, unsigned ez) {
        return (Key(ex) << 40) | (Key(ey) << 20) | Key(ez);
    }
    static std::array<unsigned, 3> unpack(Key k) {
        return {unsigned(k >> 40), unsigned((k >> 20) & 0xfffff), unsigned(k & 0xfffff)};
    }

    static Poly3 constant(Rational c) {
        Poly3 p;
        if (c != 0)
            p.terms_.emplace(pack(0, 0, 0), std::move(c));
        return p;
    }

    static Poly3 variable(int i) {
        Poly3 p;
        p.terms_.emplace(pack(i == 0, i == 1, i == 2), Rational(1));
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    long long total_degree() const {
        long long deg = -1;
        for (const auto& [k, c] : terms_) {
            const auto e = unpack(k);
            deg = std::max<long long>(deg, (long long)e[0] + e[1] + e[2]);
        }
        return deg;
    }

    Poly3 operator+(const Poly3& o) const {
        Poly3 out = *this;
        for (const auto& [k, c] : o.terms_)
            out.accumulate(k, c);
        return out;
    }

    Poly3 operator-(const Poly3& o) const {
        Poly3 out = *this;
        for (const auto& [k, c] : o.terms_)
            out.accumulate(k, -c);
        return out;
    }

    Poly3 operator*(const Poly3& o) const {
        Poly3 out;
        out.terms_.reserve(terms_.size() + o.terms_.size());
        for (const auto& [k1, c1] : terms_)
            for (const auto& [k2, c2] : o.terms_)
                out.accumulate(k1 + k2, c1 * c2);
        return out;
    }

    Rational evaluate(const Rational& x, const Rational& y, const Rational& z) const {
        Rational acc(0);
        for (const auto& [k, c] : terms_) {
            const auto e = unpack(k);
            Rational term = c;
            for (unsigned i = 0; i < e[0]; ++i)
                term *= x;
            for (unsigned i = 0; i < e[1]; ++i)
                term *= y;
            for (unsigned i = 0; i < e[2]; ++i)
                term *= z;
            acc += term;
        }
        return acc;
    }

private:
    void accumulate(Key k, const Rational& c) {
        if (c == 0)
            return;
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(k, c);
            return;
        }
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }

    std::unordered_map<Key, Rational> terms_;
};

} // namespace valinf
