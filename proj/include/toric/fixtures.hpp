#ifndef TORIC_FIXTURES_HPP
#define TORIC_FIXTURES_HPP

#include "toric/fan.hpp"

namespace toric::fixtures {

// Named complete fans used throughout the tests and the sample data.

inline Fan p1() { return make_fan({1, {{1}, {-1}}, {{0}, {1}}}); }

inline Fan p2() { return make_fan({2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {2, 0}}}); }

/// Rays +e1, -e1, +e2, -e2 with the four quadrants.
inline Fan p1xp1() {
    return make_fan({2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, {{0, 2}, {2, 1}, {1, 3}, {3, 0}}});
}

/// Blow-up of P2 at one fixed point; the exceptional ray (1,1) is listed last.
inline Fan f1() {
    return make_fan({2, {{1, 0}, {0, 1}, {-1, -1}, {1, 1}}, {{0, 3}, {3, 1}, {1, 2}, {2, 0}}});
}

/// Blow-up of P2 at two fixed points.
inline Fan bl2_p2() {
    return make_fan({2, {{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}});
}

/// Blow-up of P2 at the three fixed points (the hexagon fan).
inline Fan bl3_p2() {
    return make_fan({2,
                     {{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}},
                     {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}}});
}

/// Weighted projective plane P(1,1,2); the cone over (0,1),(-1,-2) has multiplicity 2.
inline Fan p112() { return make_fan({2, {{1, 0}, {0, 1}, {-1, -2}}, {{0, 1}, {1, 2}, {2, 0}}}); }

/// P1 x P1 x P1: the octahedral fan with rays +-e_i.
inline Fan p1_cubed() {
    RawFan raw{3, {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}}, {}};
    for (std::size_t a : {0, 1})
        for (std::size_t b : {2, 3})
            for (std::size_t c : {4, 5}) raw.cones.push_back({a, b, c});
    return make_fan(raw);
}

/// P3.
inline Fan p3() {
    return make_fan({3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}},
                     {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}});
}

/// Fan over the faces of the cube [-1,1]^3: complete but not simplicial.
inline Fan cube_faces() {
    RawFan raw{3, {}, {}};
    for (int x : {-1, 1})
        for (int y : {-1, 1})
            for (int z : {-1, 1}) raw.rays.push_back({x, y, z});
    // ray index = 4*(x>0) + 2*(y>0) + (z>0)
    for (int axis = 0; axis < 3; ++axis) {
        for (int side = 0; side < 2; ++side) {
            std::vector<std::size_t> cone;
            for (std::size_t i = 0; i < 8; ++i)
                if (((i >> (2 - axis)) & 1U) == static_cast<unsigned>(side)) cone.push_back(i);
            raw.cones.push_back(cone);
        }
    }
    return make_fan(raw);
}

}  // namespace toric::fixtures

#endif
