#include <catch2/catch_amalgamated.hpp>

#include <functional>

#include "fixtures.hpp"
#include "valinf/boundary.hpp"
#include "valinf/boundary_io.hpp"

using namespace valinf;

namespace {

// Exhaustive connected multigraphs on <= max_vertices labeled vertices with
// total edge multiplicity <= max_edges (loops allowed). Independent of the
// BoundaryGraph machinery except for building the graphs themselves.
void for_each_connected_multigraph(int max_vertices, int max_edges,
                                   const std::function<void(const BoundaryGraph&)>& fn) {
    for (int r = 1; r <= max_vertices; ++r) {
        // slots: loops per vertex, then unordered pairs
        std::vector<std::pair<int, int>> slots;
        for (int i = 0; i < r; ++i)
            slots.emplace_back(i, i);
        for (int i = 0; i < r; ++i)
            for (int j = i + 1; j < r; ++j)
                slots.emplace_back(i, j);
        std::vector<int> mult(slots.size(), 0);
        std::function<void(size_t, int)> rec = [&](size_t idx, int used) {
            if (idx == slots.size()) {
                BoundaryGraph g;
                for (int i = 0; i < r; ++i) {
                    long long loops = 0;
                    for (size_t s = 0; s < slots.size(); ++s)
                        if (slots[s].first == i && slots[s].second == i)
                            loops = mult[s];
                    g.add_curve(Curve{"V" + std::to_string(i), -2, 0, loops});
                }
                for (size_t s = 0; s < slots.size(); ++s)
                    if (mult[s] > 0 && slots[s].first != slots[s].second)
                        g.add_meet("V" + std::to_string(slots[s].first),
                                   "V" + std::to_string(slots[s].second), mult[s]);
                if (g.is_connected())
                    fn(g);
                return;
            }
            for (int m = 0; m + used <= max_edges; ++m) {
                mult[idx] = m;
                rec(idx + 1, used + m);
            }
            mult[idx] = 0;
        };
        rec(0, 0);
    }
}

// Tree test independent of e(Gamma): connected (checked by caller), no loops,
// and edge count (with multiplicity) equal to vertices - 1 computed directly.
bool is_tree_directly(const BoundaryGraph& g) {
    long long edges = 0;
    for (const auto& [k, m] : g.meets()) {
        if (m > 1)
            return false; // a double edge is a cycle
        edges += m;
    }
    for (const auto& c : g.curves())
        if (c.nodes > 0)
            return false;
    return edges == g.size() - 1;
}

} // namespace

TEST_CASE("euler invariant on the named boundaries") {
    CHECK(euler_invariant(fixtures::triangle()) == 1);
    CHECK(euler_invariant(fixtures::chain(4)) == 0);
    CHECK(euler_invariant(fixtures::nodal_cubic()) == 1);
}

TEST_CASE("euler invariant requires connectivity") {
    BoundaryGraph g;
    g.add_curve(Curve{"A", -1, 0, 0});
    g.add_curve(Curve{"B", -1, 0, 0});
    CHECK_THROWS_AS(euler_invariant(g), Disconnected);
}

TEST_CASE("graph lemma: e >= 0 with equality exactly on trees") {
    int seen = 0;
    for_each_connected_multigraph(4, 5, [&](const BoundaryGraph& g) {
        ++seen;
        const long long e = euler_invariant(g);
        REQUIRE(e >= 0);
        REQUIRE((e == 0) == is_tree_directly(g));
    });
    CHECK(seen > 100);
}

TEST_CASE("h0 of the log canonical divisor") {
    CHECK(h0_log_canonical(fixtures::triangle()) == 1);
    CHECK(h0_log_canonical(fixtures::chain(2)) == 0);
    CHECK(h0_log_canonical(fixtures::chain(5)) == 0);
    CHECK(h0_log_canonical(fixtures::nodal_cubic()) == 1);

    BoundaryGraph elliptic;
    elliptic.add_curve(Curve{"E", 0, 1, 0});
    CHECK(h0_log_canonical(elliptic) == 1);

    BoundaryGraph nodal;
    nodal.add_curve(Curve{"E", 9, 0, 1});
    CHECK(h0_log_canonical(nodal) == 1);
}

TEST_CASE("shape classification") {
    CHECK(classify_shape(fixtures::triangle()) == Shape::Cycle);
    CHECK(classify_shape(fixtures::square_of_zeros()) == Shape::Cycle);
    CHECK(classify_shape(fixtures::nodal_cubic()) == Shape::Cycle);
    CHECK(classify_shape(fixtures::chain(3)) == Shape::Zigzag);
    CHECK(classify_shape(fixtures::chain(1)) == Shape::Zigzag);

    BoundaryGraph star;
    star.add_curve(Curve{"C", -1, 0, 0});
    for (int i = 0; i < 3; ++i) {
        star.add_curve(Curve{"L" + std::to_string(i), -1, 0, 0});
        star.add_meet("C", "L" + std::to_string(i));
    }
    CHECK(classify_shape(star) == Shape::Tree);

    BoundaryGraph nodal;
    nodal.add_curve(Curve{"E", 0, 0, 1});
    CHECK(classify_shape(nodal) == Shape::Cycle);
    CHECK(is_nodal_cycle(nodal));

    BoundaryGraph genus;
    genus.add_curve(Curve{"E", 0, 1, 0});
    CHECK(classify_shape(genus) == Shape::Other);
}

TEST_CASE("satellite blow-up of the triangle gives the (-2,-2,-1,-1) square") {
    const BoundaryGraph g = blow_up(fixtures::triangle(), BoundaryPoint::satellite("E1", "E2"));
    REQUIRE(g.size() == 4);
    CHECK(g.curve("E1").self == -2);
    CHECK(g.curve("E2").self == -2);
    CHECK(g.curve("E3").self == -1);
    CHECK(g.curve("G1").self == -1);
    CHECK(g.meet_mult("E1", "E2") == 0);
    CHECK(g.meet_mult("E1", "G1") == 1);
    CHECK(g.meet_mult("G1", "E2") == 1);
    CHECK(classify_shape(g) == Shape::Cycle);
    CHECK(euler_invariant(g) == 1);
}

TEST_CASE("free blow-up of the triangle leaves the cycle and grows a tail") {
    const BoundaryGraph g = blow_up(fixtures::triangle(), BoundaryPoint::free_point("E1"));
    REQUIRE(g.size() == 4);
    CHECK(g.curve("E1").self == -2);
    CHECK(g.curve("G1").self == -1);
    CHECK(g.meet_mult("E1", "G1") == 1);
    CHECK(classify_shape(g) == Shape::Other);
    CHECK(euler_invariant(g) == 1);
}

TEST_CASE("satellite blow-up inside a chain preserves e = 0") {
    const BoundaryGraph g = blow_up(fixtures::chain(3), BoundaryPoint::satellite("E2", "E3"));
    CHECK(euler_invariant(g) == 0);
    CHECK(classify_shape(g) == Shape::Zigzag);
}

TEST_CASE("blow-up preserves the euler invariant in general") {
    const auto cycles = fixtures::nondegenerate_cycles(6, 2);
    for (const auto& g : cycles) {
        const long long e = euler_invariant(g);
        for (const auto& [edge, mult] : g.meets())
            CHECK(euler_invariant(blow_up(g, BoundaryPoint::satellite(edge.first, edge.second))) ==
                  e);
        CHECK(euler_invariant(blow_up(g, BoundaryPoint::free_point(g.ids().front()))) == e);
    }
}

TEST_CASE("blow-up rejects invalid centers") {
    CHECK_THROWS_AS(blow_up(fixtures::chain(3), BoundaryPoint::satellite("E1", "E3")),
                    InvalidPoint);
    CHECK_THROWS_AS(blow_up(fixtures::chain(3), BoundaryPoint::free_point("Q")), InvalidPoint);
}

TEST_CASE("contract is the exact inverse of blow_up") {
    const auto graphs = {fixtures::triangle(), fixtures::square_of_zeros(), fixtures::chain(4)};
    for (const auto& g : graphs) {
        for (const auto& [edge, mult] : g.meets()) {
            const BoundaryGraph up = blow_up(g, BoundaryPoint::satellite(edge.first, edge.second));
            CHECK(contract(up, "G1") == g);
        }
        const BoundaryGraph up = blow_up(g, BoundaryPoint::free_point(g.ids().front()));
        CHECK(contract(up, "G1") == g);
    }
}

TEST_CASE("contracting a square (-1)-curve yields a triangle") {
    const BoundaryGraph square = blow_up(fixtures::triangle(), BoundaryPoint::satellite("E1", "E2"));
    // E3 is a (-1)-curve of the square; contracting it bumps its neighbors
    const BoundaryGraph t = contract(square, "E3");
    REQUIRE(t.size() == 3);
    CHECK(t.curve("E1").self == -1);
    CHECK(t.curve("E2").self == -1);
    CHECK(t.curve("G1").self == -1);
    CHECK(classify_shape(t) == Shape::Cycle);
}

TEST_CASE("contract rejects non-(-1)-curves and crowded curves") {
    CHECK_THROWS_AS(contract(fixtures::chain(3), "E1"), NotContractible); // self -2
    BoundaryGraph star;
    star.add_curve(Curve{"C", -1, 0, 0});
    for (int i = 0; i < 3; ++i) {
        star.add_curve(Curve{"L" + std::to_string(i), 0, 0, 0});
        star.add_meet("C", "L" + std::to_string(i));
    }
    CHECK_THROWS_AS(contract(star, "C"), NotContractible); // meets three points
}

TEST_CASE("contracting a (-1)-curve on a double edge makes a node") {
    BoundaryGraph g;
    g.add_curve(Curve{"E1", 5, 0, 0});
    g.add_curve(Curve{"E2", -1, 0, 0});
    g.add_meet("E1", "E2", 2);
    const BoundaryGraph c = contract(g, "E2");
    REQUIRE(c.size() == 1);
    CHECK(c.curve("E1").self == 9);
    CHECK(c.curve("E1").nodes == 1);
    CHECK(is_nodal_cycle(c));
}

TEST_CASE("k_delta pairing by adjunction") {
    CHECK(k_delta_pairing(fixtures::triangle()) == Vec{0, 0, 0});
    CHECK(k_delta_pairing(fixtures::square_of_zeros()) == Vec{0, 0, 0, 0});

    const BoundaryGraph tail = blow_up(fixtures::triangle(), BoundaryPoint::free_point("E1"));
    // ids in order E1, E2, E3, G1
    CHECK(k_delta_pairing(tail) == Vec{1, 0, 0, -1});

    BoundaryGraph nodal;
    nodal.add_curve(Curve{"E", 9, 0, 1});
    CHECK(k_delta_pairing(nodal) == Vec{0});
}

TEST_CASE("satellite blow-up preserves a vanishing K+Delta pairing") {
    const auto zero = [](const BoundaryGraph& g) {
        for (const auto& v : k_delta_pairing(g))
            if (v != 0)
                return false;
        return true;
    };
    BoundaryGraph g = fixtures::triangle();
    REQUIRE(zero(g));
    for (int i = 0; i < 3; ++i) {
        const auto edge = g.meets().begin()->first;
        g = blow_up(g, BoundaryPoint::satellite(edge.first, edge.second));
        REQUIRE(zero(g));
    }
}

TEST_CASE("shape of blow-ups of a cycle") {
    for (const auto& g : fixtures::nondegenerate_cycles(6, 2)) {
        const auto edge = g.meets().begin()->first;
        CHECK(classify_shape(blow_up(g, BoundaryPoint::satellite(edge.first, edge.second))) ==
              Shape::Cycle);
        CHECK(classify_shape(blow_up(g, BoundaryPoint::free_point(g.ids().front()))) ==
              Shape::Other);
    }
}

TEST_CASE("minimize_cycle contracts the square back to the (-1)-triangle") {
    const BoundaryGraph square = blow_up(fixtures::triangle(), BoundaryPoint::satellite("E1", "E2"));
    const BoundaryGraph m = minimize_cycle(square);
    REQUIRE(m.size() == 3);
    for (const auto& c : m.curves())
        CHECK(c.self == -1);
}

TEST_CASE("minimize_cycle fixes the (-1)-triangle and the flat square") {
    CHECK(minimize_cycle(fixtures::triangle()) == fixtures::triangle());
    CHECK(minimize_cycle(fixtures::square_of_zeros()) == fixtures::square_of_zeros());
}

TEST_CASE("minimize_cycle reduces iterated satellite refinements") {
    BoundaryGraph g = fixtures::triangle();
    for (int i = 0; i < 3; ++i) {
        const auto edge = g.meets().begin()->first;
        g = blow_up(g, BoundaryPoint::satellite(edge.first, edge.second));
    }
    const BoundaryGraph m = minimize_cycle(g);
    REQUIRE(m.size() == 3);
    for (const auto& c : m.curves())
        CHECK(c.self == -1);
}

TEST_CASE("minimize_cycle requires a cycle") {
    CHECK_THROWS_AS(minimize_cycle(fixtures::chain(3)), NotACycle);
}

TEST_CASE("classify_surface on the named boundaries") {
    CHECK(classify_surface(fixtures::triangle()).verdict == SurfaceClass::MarkovType);
    CHECK(classify_surface(fixtures::square_of_zeros()).verdict == SurfaceClass::TorusLike);
    CHECK(classify_surface(fixtures::chain(4)).verdict == SurfaceClass::TreeCase);
    const SurfaceVerdict nodal = classify_surface(fixtures::nodal_cubic());
    CHECK(nodal.verdict == SurfaceClass::Inconclusive);
    CHECK(nodal.detail.find("self-intersection") != std::string::npos);
}

TEST_CASE("classify_surface is invariant under satellite blow-up") {
    const auto bases = {fixtures::triangle(), fixtures::square_of_zeros()};
    for (const auto& base : bases) {
        const SurfaceClass expected = classify_surface(base).verdict;
        std::vector<BoundaryGraph> level{base};
        for (int depth = 0; depth < 2; ++depth) {
            std::vector<BoundaryGraph> next;
            for (const auto& g : level)
                for (const auto& [edge, mult] : g.meets()) {
                    BoundaryGraph up = blow_up(g, BoundaryPoint::satellite(edge.first, edge.second));
                    CHECK(classify_surface(up).verdict == expected);
                    next.push_back(std::move(up));
                }
            level = std::move(next);
        }
    }
}

TEST_CASE("boundary file parsing round-trips") {
    const std::string text = "# the (-1)-triangle\n"
                             "curve E1 self=-1\n"
                             "curve E2 self=-1\n"
                             "curve E3 self=-1\n"
                             "meet E1 E2\n"
                             "meet E2 E3\n"
                             "meet E3 E1\n";
    const BoundaryGraph g = parse_boundary(text);
    CHECK(g == fixtures::triangle());
    CHECK(parse_boundary(format_boundary(g)) == g);

    BoundaryGraph nodal;
    nodal.add_curve(Curve{"E", 9, 0, 1});
    CHECK(parse_boundary(format_boundary(nodal)) == nodal);
    CHECK(parse_boundary(format_boundary(fixtures::nodal_cubic())) == fixtures::nodal_cubic());
}

TEST_CASE("boundary parser reports line numbers and rejects unknown keys") {
    try {
        parse_boundary("curve E1 self=-1\ncurve E2 self=-1 width=3\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(std::string(e.what()).find("width") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_boundary("curve E1 self=1.5\n"), ParseError);
    CHECK_THROWS_AS(parse_boundary("curve E1\n"), ParseError);
    CHECK_THROWS_AS(parse_boundary("meet E1 E2\n"), ParseError);
    CHECK_THROWS_AS(parse_boundary("squiggle E1\n"), ParseError);
    CHECK_THROWS_AS(parse_boundary(""), ParseError);
}
