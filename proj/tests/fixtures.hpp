#pragma once

#include <random>
#include <string>
#include <vector>

#include "valinf/boundary.hpp"

namespace fixtures {

using valinf::BoundaryGraph;
using valinf::Curve;

// Cycle E1 - E2 - ... - En - E1 with the given self-intersections.
inline BoundaryGraph cycle(const std::vector<long long>& selfints) {
    BoundaryGraph g;
    const int n = static_cast<int>(selfints.size());
    for (int i = 0; i < n; ++i)
        g.add_curve(Curve{"E" + std::to_string(i + 1), selfints[i], 0, 0});
    for (int i = 0; i < n; ++i)
        g.add_meet("E" + std::to_string(i + 1), "E" + std::to_string((i + 1) % n + 1));
    return g;
}

// The triangle of (-1)-curves, the minimal Markov-type boundary.
inline BoundaryGraph triangle() { return cycle({-1, -1, -1}); }

// Square of self-intersection-0 curves: the standard torus boundary.
inline BoundaryGraph square_of_zeros() { return cycle({0, 0, 0, 0}); }

// Chain E1 > E2 > ... > En (a zigzag).
inline BoundaryGraph chain(int n, long long self = -2) {
    BoundaryGraph g;
    for (int i = 0; i < n; ++i)
        g.add_curve(Curve{"E" + std::to_string(i + 1), self, 0, 0});
    for (int i = 0; i + 1 < n; ++i)
        g.add_meet("E" + std::to_string(i + 1), "E" + std::to_string(i + 2));
    return g;
}

// Two rational curves meeting at two points (blown-up nodal cubic):
// self-intersections 5 and -1.
inline BoundaryGraph nodal_cubic() {
    BoundaryGraph g;
    g.add_curve(Curve{"E1", 5, 0, 0});
    g.add_curve(Curve{"E2", -1, 0, 0});
    g.add_meet("E1", "E2", 2);
    return g;
}

// Deterministic sample of cycles with nondegenerate intersection form,
// sizes 3..max_size.
inline std::vector<BoundaryGraph> nondegenerate_cycles(int max_size, int per_size,
                                                       unsigned seed = 20240817) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<long long> self(-4, -1);
    std::vector<BoundaryGraph> out;
    for (int n = 3; n <= max_size; ++n) {
        int kept = 0;
        while (kept < per_size) {
            std::vector<long long> selfs;
            for (int i = 0; i < n; ++i)
                selfs.push_back(self(rng));
            BoundaryGraph g = cycle(selfs);
            if (valinf::is_nondegenerate(g.intersection_form())) {
                out.push_back(std::move(g));
                ++kept;
            }
        }
    }
    return out;
}

} // namespace fixtures
