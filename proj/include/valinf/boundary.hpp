#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "valinf/linalg.hpp"
#include "valinf/rational.hpp"

namespace valinf {

// One boundary curve. genus is the geometric genus of the normalization and
// nodes the number of nodal self-intersections, so p_a = genus + nodes. A
// node counts as a self-loop of the dual graph.
struct Curve {
    std::string id;
    long long self = 0;
    long long genus = 0;
    long long nodes = 0;
};

// Weighted dual multigraph of a boundary divisor: one vertex per curve,
// edge multiplicities for pairwise intersections, loops for nodes.
// Curves are kept sorted by id; every operation is deterministic in that order.
class BoundaryGraph {
public:
    void add_curve(Curve c) {
        if (find(c.id))
            throw std::invalid_argument("duplicate curve id '" + c.id + "'");
        if (c.genus < 0 || c.nodes < 0)
            throw std::invalid_argument("curve '" + c.id + "': genus and nodes must be >= 0");
        curves_.push_back(std::move(c));
        std::sort(curves_.begin(), curves_.end(),
                  [](const Curve& a, const Curve& b) { return a.id < b.id; });
    }

    void add_meet(const std::string& a, const std::string& b, long long mult = 1) {
        if (a == b)
            throw std::invalid_argument("self-meet '" + a + "': use the nodes field");
        if (!find(a) || !find(b))
            throw std::invalid_argument("meet references unknown curve");
        if (mult < 1)
            throw std::invalid_argument("meet multiplicity must be >= 1");
        meets_[key(a, b)] += mult;
    }

    int size() const { return static_cast<int>(curves_.size()); }
    const std::vector<Curve>& curves() const { return curves_; }
    const std::map<std::pair<std::string, std::string>, long long>& meets() const { return meets_; }

    bool has_curve(const std::string& id) const { return find(id) != nullptr; }

    const Curve& curve(const std::string& id) const {
        const Curve* c = find(id);
        if (!c)
            throw std::invalid_argument("unknown curve '" + id + "'");
        return *c;
    }

    int index_of(const std::string& id) const {
        for (size_t i = 0; i < curves_.size(); ++i)
            if (curves_[i].id == id)
                return static_cast<int>(i);
        throw std::invalid_argument("unknown curve '" + id + "'");
    }

    std::vector<std::string> ids() const {
        std::vector<std::string> out;
        for (const auto& c : curves_)
            out.push_back(c.id);
        return out;
    }

    long long meet_mult(const std::string& a, const std::string& b) const {
        auto it = meets_.find(key(a, b));
        return it == meets_.end() ? 0 : it->second;
    }

    // Pairwise intersections plus loops; loops count once here (an edge of
    // the dual graph) and twice in vertex degrees.
    long long total_edge_multiplicity() const {
        long long total = 0;
        for (const auto& [k, m] : meets_)
            total += m;
        for (const auto& c : curves_)
            total += c.nodes;
        return total;
    }

    long long degree(const std::string& id) const {
        long long deg = 0;
        for (const auto& [k, m] : meets_)
            if (k.first == id || k.second == id)
                deg += m;
        return deg + 2 * curve(id).nodes;
    }

    std::vector<std::pair<std::string, long long>> neighbors(const std::string& id) const {
        std::vector<std::pair<std::string, long long>> out;
        for (const auto& [k, m] : meets_) {
            if (k.first == id)
                out.emplace_back(k.second, m);
            else if (k.second == id)
                out.emplace_back(k.first, m);
        }
        return out;
    }

    bool is_connected() const {
        if (curves_.empty())
            return false;
        std::set<std::string> seen{curves_[0].id};
        std::vector<std::string> stack{curves_[0].id};
        while (!stack.empty()) {
            std::string cur = stack.back();
            stack.pop_back();
            for (const auto& [other, m] : neighbors(cur))
                if (seen.insert(other).second)
                    stack.push_back(other);
        }
        return seen.size() == curves_.size();
    }

    // Intersection matrix restricted to the boundary span: self-intersections
    // on the diagonal, meeting multiplicities off it.
    SymForm intersection_form() const {
        const int n = size();
        Mat m(n, Vec(n, Rational(0)));
        for (int i = 0; i < n; ++i)
            m[i][i] = curves_[i].self;
        for (const auto& [k, mult] : meets_) {
            const int i = index_of(k.first);
            const int j = index_of(k.second);
            m[i][j] = mult;
            m[j][i] = mult;
        }
        return SymForm(std::move(m));
    }

    // First unused id of the form G1, G2, ...
    std::string fresh_id() const {
        for (int i = 1;; ++i) {
            std::string id = "G" + std::to_string(i);
            if (!find(id))
                return id;
        }
    }

    bool operator==(const BoundaryGraph& o) const {
        if (meets_ != o.meets_ || curves_.size() != o.curves_.size())
            return false;
        for (size_t i = 0; i < curves_.size(); ++i) {
            const Curve &a = curves_[i], &b = o.curves_[i];
            if (a.id != b.id || a.self != b.self || a.genus != b.genus || a.nodes != b.nodes)
                return false;
        }
        return true;
    }

private:
    static std::pair<std::string, std::string> key(const std::string& a, const std::string& b) {
        return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    }

    const Curve* find(const std::string& id) const {
        for (const auto& c : curves_)
            if (c.id == id)
                return &c;
        return nullptr;
    }

    Curve* find(const std::string& id) {
        for (auto& c : curves_)
            if (c.id == id)
                return &c;
        return nullptr;
    }

    friend BoundaryGraph blow_up(const BoundaryGraph&, const struct BoundaryPoint&, const std::string&);
    friend BoundaryGraph contract(const BoundaryGraph&, const std::string&);

    std::vector<Curve> curves_;
    std::map<std::pair<std::string, std::string>, long long> meets_;
};

// A point of the boundary: on exactly two components (satellite) or on one
// (free).
struct BoundaryPoint {
    enum class Kind { Satellite, Free };
    Kind kind;
    std::string a, b; // satellite: the edge (a, b); free: a is the curve

    static BoundaryPoint satellite(std::string e, std::string f) {
        return BoundaryPoint{Kind::Satellite, std::move(e), std::move(f)};
    }
    static BoundaryPoint free_point(std::string e) {
        return BoundaryPoint{Kind::Free, std::move(e), {}};
    }
};

// e(Gamma) = 1 - #vertices + #edges (loops included). Nonnegative on
// connected graphs, zero exactly on trees.
inline long long euler_invariant(const BoundaryGraph& g) {
    if (!g.is_connected())
        throw Disconnected("boundary graph is not connected");
    return 1 - g.size() + g.total_edge_multiplicity();
}

// h^0(K_X + Delta_X) = sum of curve genera + e(Gamma). With p_a = genus +
// nodes and nodes counted as loops of e(Gamma), this is the adjunction count
// of independent log 2-forms.
inline long long h0_log_canonical(const BoundaryGraph& g) {
    long long total = euler_invariant(g);
    for (const auto& c : g.curves())
        total += c.genus;
    return total;
}

enum class Shape { Cycle, Tree, Zigzag, Other };

inline std::string to_string(Shape s) {
    switch (s) {
    case Shape::Cycle: return "Cycle";
    case Shape::Tree: return "Tree";
    case Shape::Zigzag: return "Zigzag";
    case Shape::Other: return "Other";
    }
    return "?";
}

// Single rational curve with one node: the degenerate cyclic boundary.
inline bool is_nodal_cycle(const BoundaryGraph& g) {
    return g.size() == 1 && g.curves()[0].nodes == 1 && g.curves()[0].genus == 0 &&
           g.meets().empty();
}

// Cycle: one simple closed chain of rational curves (the 2-curve double edge
// and the 1-curve nodal case included). Tree: e = 0. Zigzag: a tree that is a
// chain. Anything with positive genus or stray nodes is Other.
inline Shape classify_shape(const BoundaryGraph& g) {
    if (!g.is_connected())
        throw Disconnected("boundary graph is not connected");
    for (const auto& c : g.curves())
        if (c.genus > 0)
            return Shape::Other;
    if (is_nodal_cycle(g))
        return Shape::Cycle;
    for (const auto& c : g.curves())
        if (c.nodes > 0)
            return Shape::Other;
    const long long e = euler_invariant(g);
    long long maxdeg = 0;
    bool all_two = g.size() >= 2;
    for (const auto& c : g.curves()) {
        const long long d = g.degree(c.id);
        maxdeg = std::max(maxdeg, d);
        if (d != 2)
            all_two = false;
    }
    if (all_two && e == 1)
        return Shape::Cycle;
    if (e == 0)
        return maxdeg <= 2 ? Shape::Zigzag : Shape::Tree;
    return Shape::Other;
}

// Blow-up of a boundary point. Satellite at the edge (E, F): the new (-1)
// curve G replaces one intersection of E and F, and E^2, F^2 each drop by 1.
// Free on E: a (-1) tail attached to E, E^2 drops by 1.
inline BoundaryGraph blow_up(const BoundaryGraph& g, const BoundaryPoint& p,
                             const std::string& new_id_hint = "") {
    BoundaryGraph out = g;
    const std::string nid = new_id_hint.empty() ? g.fresh_id() : new_id_hint;
    if (out.find(nid))
        throw std::invalid_argument("blow_up: id '" + nid + "' already in use");
    if (p.kind == BoundaryPoint::Kind::Satellite) {
        if (g.meet_mult(p.a, p.b) < 1)
            throw InvalidPoint("no intersection point of '" + p.a + "' and '" + p.b + "'");
        out.find(p.a)->self -= 1;
        out.find(p.b)->self -= 1;
        auto k = out.key(p.a, p.b);
        if (--out.meets_[k] == 0)
            out.meets_.erase(k);
        out.add_curve(Curve{nid, -1, 0, 0});
        out.add_meet(p.a, nid);
        out.add_meet(nid, p.b);
    } else {
        if (!g.has_curve(p.a))
            throw InvalidPoint("no curve '" + p.a + "'");
        out.find(p.a)->self -= 1;
        out.add_curve(Curve{nid, -1, 0, 0});
        out.add_meet(p.a, nid);
    }
    return out;
}

// Contraction of a (-1) rational boundary curve meeting the rest in at most
// two points: the exact inverse of blow_up. A curve meeting one neighbor
// twice contracts to a node on that neighbor (+4 on its self-intersection).
inline BoundaryGraph contract(const BoundaryGraph& g, const std::string& id) {
    const Curve& c = g.curve(id);
    if (c.self != -1 || c.genus != 0 || c.nodes != 0)
        throw NotContractible("curve '" + id + "' is not a smooth rational (-1)-curve");
    auto nbrs = g.neighbors(id);
    long long total = 0;
    for (const auto& [other, m] : nbrs)
        total += m;
    if (total > 2)
        throw NotContractible("curve '" + id + "' meets the boundary in more than two points");
    if (g.size() == 1)
        throw NotContractible("cannot contract the last boundary curve");

    BoundaryGraph out;
    for (const auto& cv : g.curves())
        if (cv.id != id)
            out.add_curve(cv);
    for (const auto& [k, m] : g.meets())
        if (k.first != id && k.second != id)
            out.meets_[k] = m;

    if (nbrs.size() == 2) {
        // two neighbors, multiplicity 1 each
        out.find(nbrs[0].first)->self += 1;
        out.find(nbrs[1].first)->self += 1;
        out.meets_[out.key(nbrs[0].first, nbrs[1].first)] += 1;
    } else if (nbrs.size() == 1 && nbrs[0].second == 1) {
        out.find(nbrs[0].first)->self += 1;
    } else if (nbrs.size() == 1 && nbrs[0].second == 2) {
        out.find(nbrs[0].first)->self += 4;
        out.find(nbrs[0].first)->nodes += 1;
    } else {
        throw NotContractible("curve '" + id + "' is isolated");
    }
    return out;
}

// ((K + Delta) . E_i)_i by adjunction: -2 + 2 genus + 2 nodes + sum of
// meeting multiplicities with the other components. Indexed like ids().
inline Vec k_delta_pairing(const BoundaryGraph& g) {
    Vec out;
    for (const auto& c : g.curves()) {
        long long v = -2 + 2 * c.genus + 2 * c.nodes;
        for (const auto& [other, m] : g.neighbors(c.id))
            v += m;
        out.push_back(Rational(v));
    }
    return out;
}

// Contract (-1)-curves (lowest id first) while the boundary stays a cycle of
// rational curves or a nodal rational curve. Stops at three curves when the
// 3-curve intersection form is nondegenerate; the triangle of (-1)-curves is
// the fixed point of that policy.
inline BoundaryGraph minimize_cycle(const BoundaryGraph& g) {
    if (classify_shape(g) != Shape::Cycle)
        throw NotACycle("minimize_cycle requires a cyclic boundary");
    BoundaryGraph cur = g;
    while (true) {
        if (cur.size() == 3 && is_nondegenerate(cur.intersection_form()))
            break;
        bool contracted = false;
        for (const auto& c : cur.curves()) {
            if (c.self != -1 || c.genus != 0 || c.nodes != 0)
                continue;
            BoundaryGraph next;
            try {
                next = contract(cur, c.id);
            } catch (const NotContractible&) {
                continue;
            }
            if (classify_shape(next) != Shape::Cycle)
                continue;
            cur = std::move(next);
            contracted = true;
            break;
        }
        if (!contracted)
            break;
    }
    return cur;
}

enum class SurfaceClass { MarkovType, TorusLike, TreeCase, Inconclusive };

inline std::string to_string(SurfaceClass v) {
    switch (v) {
    case SurfaceClass::MarkovType: return "MarkovType";
    case SurfaceClass::TorusLike: return "TorusLike";
    case SurfaceClass::TreeCase: return "TreeCase";
    case SurfaceClass::Inconclusive: return "Inconclusive";
    }
    return "?";
}

struct SurfaceVerdict {
    SurfaceClass verdict;
    std::string detail; // the failed invariant when Inconclusive
};

// The boundary-shape dichotomy: trees are the integer-degree case; cycles
// split into the torus (degenerate boundary form, nonconstant units) and the
// Markov cubic model (Minkowski form, trivial K+Delta, isotropic dual classes
// pairing positively).
inline SurfaceVerdict classify_surface(const BoundaryGraph& g) {
    if (!g.is_connected())
        return {SurfaceClass::Inconclusive, "boundary graph is not connected"};
    const Shape shape = classify_shape(g);
    if (shape == Shape::Tree || shape == Shape::Zigzag)
        return {SurfaceClass::TreeCase, ""};
    if (shape == Shape::Other)
        return {SurfaceClass::Inconclusive, "boundary is neither a cycle nor a tree"};

    const SymForm form = g.intersection_form();
    const Inertia sig = inertia(form);
    if (sig.zero > 0)
        return {SurfaceClass::TorusLike, "degenerate intersection form, nullity " +
                                             std::to_string(sig.zero)};
    if (!(sig.plus == 1 && sig.minus == g.size() - 1))
        return {SurfaceClass::Inconclusive,
                "intersection form is not of Minkowski type: inertia " + to_string(sig)};

    const BoundaryGraph minimized = minimize_cycle(g);
    for (const auto& v : k_delta_pairing(minimized))
        if (v != 0)
            return {SurfaceClass::Inconclusive, "K+Delta pairing nonzero on the minimized cycle"};

    const auto dual = dual_basis(form);
    const int n = g.size();
    for (int i = 0; i < n; ++i) {
        // dual[i][j] = Ehat_i . Ehat_j
        if (dual[i][i] != 0)
            return {SurfaceClass::Inconclusive,
                    "dual class of '" + g.curves()[i].id + "' has nonzero self-intersection " +
                        to_string(dual[i][i])};
        for (int j = 0; j < n; ++j)
            if (j != i && dual[i][j] <= 0)
                return {SurfaceClass::Inconclusive,
                        "dual classes of '" + g.curves()[i].id + "' and '" + g.curves()[j].id +
                            "' do not pair positively"};
    }
    return {SurfaceClass::MarkovType, ""};
}

// Pullback of a divisor supported on the boundary through the blow-up that
// created new_id: the new curve picks up the sum of the coefficients at the
// blown-up point. Vectors are indexed like ids() of their graphs.
inline Vec pullback_through_blow_up(const BoundaryGraph& base, const BoundaryGraph& blown,
                                    const BoundaryPoint& p, const std::string& new_id,
                                    const Vec& coeffs) {
    Vec out(blown.size(), Rational(0));
    for (int i = 0; i < base.size(); ++i)
        out[blown.index_of(base.curves()[i].id)] = coeffs[i];
    Rational at_center(0);
    if (p.kind == BoundaryPoint::Kind::Satellite)
        at_center = coeffs[base.index_of(p.a)] + coeffs[base.index_of(p.b)];
    else
        at_center = coeffs[base.index_of(p.a)];
    out[blown.index_of(new_id)] = at_center;
    return out;
}

} // namespace valinf
