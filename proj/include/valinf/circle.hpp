#pragma once

#include <string>
#include <utility>
#include <vector>

#include "valinf/boundary.hpp"
#include "valinf/linalg.hpp"

namespace valinf {

// A point of the circle at infinity of a cyclic boundary: the divisorial
// valuation of a boundary curve, or the monomial valuation v_{1,s} at the
// intersection point of an ordered edge (E, F), with v(x) = 1 on E's local
// equation and v(y) = s on F's. Vertex(E) is the s -> 0 limit, and reversing
// the edge inverts the weight projectively.
struct CirclePoint {
    enum class Kind { Vertex, Edge };
    Kind kind;
    std::string a, b;
    Rational s;

    static CirclePoint vertex(std::string id) {
        return CirclePoint{Kind::Vertex, std::move(id), {}, Rational(0)};
    }
    static CirclePoint edge_point(std::string e, std::string f, Rational weight) {
        if (weight <= 0)
            throw std::invalid_argument("edge point weight must be > 0");
        return CirclePoint{Kind::Edge, std::move(e), std::move(f), std::move(weight)};
    }
};

// The incarnation of Z_v in the given completion, as the coefficient vector
// over the boundary curves (indexed like g.ids()).
struct ZClass {
    std::vector<std::string> ids;
    Vec coeffs;
};

namespace detail {

inline void check_point(const BoundaryGraph& g, const CirclePoint& v) {
    if (v.kind == CirclePoint::Kind::Vertex) {
        if (!g.has_curve(v.a))
            throw InvalidPoint("no curve '" + v.a + "'");
    } else {
        if (g.meet_mult(v.a, v.b) < 1)
            throw InvalidPoint("no edge between '" + v.a + "' and '" + v.b + "'");
    }
}

} // namespace detail

// Z_v over the boundary of g: the dual class Ehat for a vertex, Ehat + s Fhat
// for an edge point. Requires a nondegenerate intersection form; degenerate
// boundaries (the torus-like case) have no dual classes.
inline ZClass z_class(const BoundaryGraph& g, const CirclePoint& v) {
    detail::check_point(g, v);
    const auto dual = dual_basis(g.intersection_form());
    ZClass z;
    z.ids = g.ids();
    if (v.kind == CirclePoint::Kind::Vertex) {
        z.coeffs = dual[g.index_of(v.a)];
        return z;
    }
    const int ia = g.index_of(v.a);
    const int ib = g.index_of(v.b);
    z.coeffs = dual[ia];
    for (size_t j = 0; j < z.coeffs.size(); ++j)
        z.coeffs[j] += v.s * dual[ib][j];
    return z;
}

// (Z_v . E_i)_i. By duality this must be the local-equation order of each
// curve at the center of v: 1 on E, s on F, 0 elsewhere for an edge point.
inline Vec z_pairing_check(const BoundaryGraph& g, const CirclePoint& v) {
    const ZClass z = z_class(g, v);
    return g.intersection_form().apply(z.coeffs);
}

// Z_v^2: for a monomial point the finite incarnation overshoots by the
// skewness s, so Z^2 = (Ehat + s Fhat)^2 - s.
inline Rational z_self_intersection(const BoundaryGraph& g, const CirclePoint& v) {
    const ZClass z = z_class(g, v);
    Rational q = g.intersection_form().pair(z.coeffs, z.coeffs);
    if (v.kind == CirclePoint::Kind::Edge)
        q -= v.s;
    return q;
}

// Z_v . (K + Delta), paired through the adjunction vector.
inline Rational z_kdelta(const BoundaryGraph& g, const CirclePoint& v) {
    const ZClass z = z_class(g, v);
    const Vec kd = k_delta_pairing(g);
    Rational acc(0);
    for (size_t i = 0; i < kd.size(); ++i)
        acc += z.coeffs[i] * kd[i];
    return acc;
}

// Transport of a circle point through the satellite blow-up of the edge
// (E, F) with exceptional curve G. The returned scale relates the valuation
// normalizations: v_old = scale * v_new. Points elsewhere are untouched.
//
// On the blown-up edge the weight moves by s -> s/(1-s) onto (E, G) when
// s < 1 (scale 1-s), to the vertex G when s = 1, and by s -> s-1 onto (G, F)
// when s > 1. If the edge had multiplicity >= 2 the data cannot tell the
// blown-up point from the surviving ones, and the point stays on the
// residual edge.
struct TransportedPoint {
    CirclePoint point;
    Rational scale;
};

inline TransportedPoint transport_through_blow_up(const BoundaryGraph& base, const CirclePoint& v,
                                                  const std::string& edge_a, const std::string& edge_b,
                                                  const std::string& new_id) {
    if (v.kind == CirclePoint::Kind::Vertex)
        return {v, Rational(1)};
    const bool forward = (v.a == edge_a && v.b == edge_b);
    const bool backward = (v.a == edge_b && v.b == edge_a);
    if (!forward && !backward)
        return {v, Rational(1)};
    if (base.meet_mult(edge_a, edge_b) >= 2)
        return {v, Rational(1)};
    // Reversed orientation: v_{(F,E),s} = s * v_{(E,F),1/s}.
    Rational s = forward ? v.s : Rational(1) / v.s;
    Rational pre = forward ? Rational(1) : v.s;
    if (s == 1)
        return {CirclePoint::vertex(new_id), pre};
    if (s < 1)
        return {CirclePoint::edge_point(edge_a, new_id, s / (1 - s)), pre * (1 - s)};
    return {CirclePoint::edge_point(new_id, edge_b, s - 1), pre};
}

// Finite-level nef test: every coefficient of Z_v is >= 0 in g and in one
// satellite refinement of each edge. Sound on the tested class by the
// equivalence of nefness with Z^2 >= 0.
inline bool is_nef_at_level(const BoundaryGraph& g, const CirclePoint& v) {
    const ZClass z = z_class(g, v);
    for (const auto& c : z.coeffs)
        if (c < 0)
            return false;
    for (const auto& [edge, mult] : g.meets()) {
        const std::string nid = g.fresh_id();
        const BoundaryGraph refined =
            blow_up(g, BoundaryPoint::satellite(edge.first, edge.second), nid);
        const TransportedPoint tv =
            transport_through_blow_up(g, v, edge.first, edge.second, nid);
        const ZClass zr = z_class(refined, tv.point);
        for (const auto& c : zr.coeffs)
            if (c < 0)
                return false;
    }
    return true;
}

// Cross-level consistency of the divisorial point v_{1,1} on the edge (a, b):
// its class computed downstairs must pair with every curve of g exactly as
// the dual class of the exceptional curve upstairs pairs with the pullbacks.
inline bool refine_consistency(const BoundaryGraph& g, const std::string& a, const std::string& b,
                               const Rational& s) {
    if (s != 1)
        throw InvalidWeight("refine_consistency is defined at weight s = 1 only");
    if (classify_shape(g) != Shape::Cycle)
        throw NotACycle("refine_consistency requires a cyclic boundary");
    const CirclePoint v = CirclePoint::edge_point(a, b, Rational(1));
    const Vec down = z_pairing_check(g, v);

    const std::string nid = g.fresh_id();
    const BoundaryPoint center = BoundaryPoint::satellite(a, b);
    const BoundaryGraph refined = blow_up(g, center, nid);
    const ZClass up = z_class(refined, CirclePoint::vertex(nid));
    const SymForm form_up = refined.intersection_form();
    const Vec pair_up = form_up.apply(up.coeffs);

    for (int i = 0; i < g.size(); ++i) {
        // pullback of curve i is its strict transform plus the exceptional
        // curve when the curve passes through the blown-up point
        Vec e(g.size(), Rational(0));
        e[i] = 1;
        const Vec pulled = pullback_through_blow_up(g, refined, center, nid, e);
        Rational rhs(0);
        for (int j = 0; j < refined.size(); ++j)
            rhs += pair_up[j] * pulled[j];
        if (rhs != down[i])
            return false;
    }
    return true;
}

} // namespace valinf
