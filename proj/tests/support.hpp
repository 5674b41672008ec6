#ifndef TORIC_TESTS_SUPPORT_HPP
#define TORIC_TESTS_SUPPORT_HPP

#include "toric/fixtures.hpp"
#include "toric/toric.hpp"

#include <random>
#include <string>
#include <utility>
#include <vector>

namespace toric::testkit {

struct NamedFan {
    std::string name;
    Fan fan;
};

inline std::vector<NamedFan> two_dim_fixtures() {
    return {{"P2", fixtures::p2()},         {"P1xP1", fixtures::p1xp1()}, {"F1", fixtures::f1()},
            {"Bl2P2", fixtures::bl2_p2()},  {"Bl3P2", fixtures::bl3_p2()}, {"P112", fixtures::p112()}};
}

inline std::vector<NamedFan> all_fixtures() {
    auto out = two_dim_fixtures();
    out.insert(out.begin(), {"P1", fixtures::p1()});
    out.push_back({"P1^3", fixtures::p1_cubed()});
    out.push_back({"P3", fixtures::p3()});
    out.push_back({"CubeFaces", fixtures::cube_faces()});
    return out;
}

class Random {
public:
    explicit Random(std::uint64_t seed) : gen_(seed) {}

    std::int64_t integer(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(gen_);
    }
    Rational rational(std::int64_t lo, std::int64_t hi, std::int64_t max_den) {
        auto q = integer(1, max_den);
        return Rational(integer(lo * q, hi * q), q);
    }
    Divisor int_divisor(std::size_t rays, std::int64_t lo, std::int64_t hi) {
        Divisor d;
        for (std::size_t i = 0; i < rays; ++i) d.coeffs.push_back(integer(lo, hi));
        return d;
    }
    Divisor rat_divisor(std::size_t rays, std::int64_t lo, std::int64_t hi, std::int64_t max_den) {
        Divisor d;
        for (std::size_t i = 0; i < rays; ++i) d.coeffs.push_back(rational(lo, hi, max_den));
        return d;
    }
    // 2(-K) plus a perturbation in [-1,1]: ample about half the time on the
    // del Pezzo fixtures, where uniform draws rarely are
    Divisor near_anticanonical(std::size_t rays, std::int64_t max_den) {
        Divisor d;
        for (std::size_t i = 0; i < rays; ++i) d.coeffs.push_back(2 + rational(-1, 1, max_den));
        return d;
    }
    IntVector int_point(std::size_t n, std::int64_t lo, std::int64_t hi) {
        IntVector u;
        for (std::size_t i = 0; i < n; ++i) u.push_back(integer(lo, hi));
        return u;
    }

private:
    std::mt19937_64 gen_;
};

// Brute-force lattice points of the mixed system in a fixed box, without
// using closure vertices.
inline std::vector<IntVector> brute_lattice_points(const Fan& fan, const Divisor& d, RayMask subset,
                                                   std::int64_t box) {
    const auto n = static_cast<std::size_t>(fan.dim());
    std::vector<IntVector> out;
    IntVector u(n, -box);
    for (;;) {
        bool ok = true;
        for (std::size_t r = 0; r < fan.ray_count() && ok; ++r) {
            bool ge = dot(u, fan.rays()[r]) >= -d[r];
            ok = ge == contains(subset, r);
        }
        if (ok) out.push_back(u);
        std::size_t i = 0;
        while (i < n && u[i] == box) {
            u[i] = -box;
            ++i;
        }
        if (i == n) break;
        ++u[i];
    }
    return out;
}

// Twice the area of a convex polygon (any vertex order) by sorting around the
// centroid and applying the shoelace formula.
inline Rational polygon_normalized_area(std::vector<Vector> pts) {
    if (pts.size() < 3) return 0;
    Rational cx = 0, cy = 0;
    for (const auto& p : pts) {
        cx += p[0];
        cy += p[1];
    }
    cx /= static_cast<long>(pts.size());
    cy /= static_cast<long>(pts.size());
    auto half = [&](const Vector& p) {
        Rational x = p[0] - cx, y = p[1] - cy;
        return (y < 0 || (y == 0 && x < 0)) ? 1 : 0;
    };
    std::sort(pts.begin(), pts.end(), [&](const Vector& a, const Vector& b) {
        int ha = half(a), hb = half(b);
        if (ha != hb) return ha < hb;
        Rational cross = (a[0] - cx) * (b[1] - cy) - (a[1] - cy) * (b[0] - cx);
        return cross > 0;
    });
    Rational twice = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& a = pts[i];
        const auto& b = pts[(i + 1) % pts.size()];
        twice += a[0] * b[1] - a[1] * b[0];
    }
    return twice < 0 ? Rational(-twice) : twice;
}

// Independent cone count: every subset of a maximal cone's rays that a
// separating-functional LP certifies as a face.
inline std::vector<std::size_t> cone_counts_by_subsets(const Fan& fan) {
    std::set<RayMask> faces{0};
    for (auto c : fan.max_cones())
        for (RayMask s = c;; s = (s - 1) & c) {
            if (s != 0 && detail::is_exact_face(fan.rays(), fan.dim(), c, s)) faces.insert(s);
            if (s == 0) break;
        }
    std::vector<std::size_t> counts(static_cast<std::size_t>(fan.dim()) + 1, 0);
    for (auto f : faces) ++counts[detail::rank_of(fan.rays(), f)];
    return counts;
}

inline Rational alternating(const std::vector<Rational>& v) {
    Rational s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i % 2 == 0) ? v[i] : Rational(-v[i]);
    return s;
}

inline Integer alternating(const std::vector<Integer>& v) {
    Integer s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i % 2 == 0) ? v[i] : Integer(-v[i]);
    return s;
}

}  // namespace toric::testkit

#endif
