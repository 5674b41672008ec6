#ifndef TORIC_POLYHEDRA_HPP
#define TORIC_POLYHEDRA_HPP

#include "toric/divisor.hpp"
#include "toric/fan.hpp"
#include "toric/linalg.hpp"
#include "toric/lp.hpp"

#include <mutex>
#include <set>
#include <shared_mutex>
#include <vector>

namespace toric {

inline constexpr std::size_t kDefaultSubsetCap = 20;
inline constexpr int kMaxProbeMultiple = 50;

/// The mixed system <u, v_rho> >= -d_rho for rho in `weak`, < -d_rho otherwise.
struct HalfOpenRegion {
    int dim = 0;
    std::vector<IntVector> normals;
    Vector levels;
    RayMask weak = 0;

    template <class Point>
    bool contains(const Point& u) const {
        for (std::size_t r = 0; r < normals.size(); ++r) {
            Rational value = dot(u, normals[r]);
            bool ge = value >= levels[r];
            if (ge != toric::contains(weak, r)) return false;
        }
        return true;
    }
};

/// Closed polytope {u : normals[k] . u >= bounds[k]} with its vertex list.
struct RationalPolytope {
    int dim = 0;
    std::vector<Vector> normals;
    Vector bounds;
    std::vector<Vector> vertices;
};

inline HalfOpenRegion region(const Fan& fan, const Divisor& d, RayMask subset) {
    check_divisor(fan, d);
    HalfOpenRegion r;
    r.dim = fan.dim();
    r.normals = fan.rays();
    for (const auto& c : d.coeffs) r.levels.push_back(-c);
    r.weak = subset;
    return r;
}

namespace detail {

// Recession cone {y : <y,v> >= 0 on weak rows, <= 0 on strict rows} is {0}?
inline bool recession_is_trivial(const std::vector<IntVector>& normals, RayMask weak, int dim) {
    std::vector<lp::Constraint> cons;
    for (std::size_t r = 0; r < normals.size(); ++r)
        cons.push_back({to_rational(normals[r]), contains(weak, r) ? lp::Relation::GreaterEq : lp::Relation::LessEq, 0});
    const auto n = static_cast<std::size_t>(dim);
    for (std::size_t i = 0; i < n; ++i) {
        for (int sign : {1, -1}) {
            Vector obj(n, Rational(0));
            obj[i] = sign;
            if (lp::maximize(obj, cons, n).status != lp::Status::Optimal) return false;
        }
    }
    return true;
}

inline std::size_t affine_rank(const std::vector<Vector>& pts, const std::vector<std::size_t>& idx) {
    if (idx.size() <= 1) return 0;
    Matrix m;
    for (std::size_t k = 1; k < idx.size(); ++k) {
        Vector row = pts[idx[k]];
        for (std::size_t j = 0; j < row.size(); ++j) row[j] -= pts[idx[0]][j];
        m.push_back(std::move(row));
    }
    return rank(std::move(m));
}

// Pulling triangulation from the first vertex of each face, recursing into the
// facets that avoid it. Emits vertex-index simplices of the given dimension.
inline void pull_triangulate(const RationalPolytope& p, const std::vector<std::size_t>& face, std::size_t k,
                             std::vector<std::size_t>& prefix, std::vector<std::vector<std::size_t>>& out) {
    if (k == 0) {
        prefix.push_back(face.front());
        out.push_back(prefix);
        prefix.pop_back();
        return;
    }
    const std::size_t apex = face.front();
    std::set<std::vector<std::size_t>> seen;
    for (std::size_t c = 0; c < p.normals.size(); ++c) {
        std::vector<std::size_t> tight;
        for (auto v : face)
            if (dot(p.normals[c], p.vertices[v]) == p.bounds[c]) tight.push_back(v);
        if (tight.empty() || std::find(tight.begin(), tight.end(), apex) != tight.end()) continue;
        if (affine_rank(p.vertices, tight) + 1 != k) continue;
        if (!seen.insert(tight).second) continue;
        prefix.push_back(apex);
        pull_triangulate(p, tight, k - 1, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace detail

/// Whether P_{D,I} is bounded; depends only on the fan and I.
inline bool is_bounded_subset(const Fan& fan, RayMask subset) {
    return detail::recession_is_trivial(fan.rays(), subset, fan.dim());
}

/// Every I with P_{D,I} bounded, in increasing mask order. Memoized per fan.
inline std::vector<RayMask> bounded_subsets(const Fan& fan, std::size_t cap = kDefaultSubsetCap) {
    if (fan.ray_count() > cap)
        throw ResourceError("fan has " + std::to_string(fan.ray_count()) + " rays; subset sweep is capped at " +
                            std::to_string(cap));
    auto& cache = fan.cache();
    {
        std::shared_lock lock(cache.mutex);
        if (cache.bounded_subsets) return *cache.bounded_subsets;
    }
    std::vector<RayMask> out;
    const RayMask all = fan.all_rays();
    for (RayMask s = 0;; ++s) {
        if (is_bounded_subset(fan, s)) out.push_back(s);
        if (s == all) break;
    }
    std::unique_lock lock(cache.mutex);
    if (!cache.bounded_subsets) cache.bounded_subsets = out;
    return *cache.bounded_subsets;
}

/// Vertices of the weak closure of a region (strict rows relaxed to <=).
inline RationalPolytope closure_vertices(const HalfOpenRegion& reg) {
    if (!detail::recession_is_trivial(reg.normals, reg.weak, reg.dim))
        throw PreconditionError("region closure is unbounded");
    RationalPolytope p;
    p.dim = reg.dim;
    for (std::size_t r = 0; r < reg.normals.size(); ++r) {
        Rational sign = contains(reg.weak, r) ? 1 : -1;
        Vector a = to_rational(reg.normals[r]);
        for (auto& x : a) x *= sign;
        p.normals.push_back(std::move(a));
        p.bounds.push_back(sign * reg.levels[r]);
    }
    const auto n = static_cast<std::size_t>(reg.dim);
    const std::size_t m = p.normals.size();
    std::set<Vector> found;
    if (m >= n) {
        std::vector<std::size_t> pick(n);
        for (std::size_t i = 0; i < n; ++i) pick[i] = i;
        for (;;) {
            Matrix a;
            Vector b;
            for (auto i : pick) {
                a.push_back(p.normals[i]);
                b.push_back(p.bounds[i]);
            }
            if (auto x = solve_unique(a, b, n)) {
                bool inside = true;
                for (std::size_t k = 0; k < m && inside; ++k) inside = dot(p.normals[k], *x) >= p.bounds[k];
                if (inside) found.insert(*x);
            }
            std::size_t i = n;
            while (i > 0 && pick[i - 1] == m - n + (i - 1)) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (std::size_t j = i; j < n; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    p.vertices.assign(found.begin(), found.end());
    return p;
}

/// n! times the Euclidean volume of a polytope given by its vertices and facets.
inline Rational normalized_volume(const RationalPolytope& p) {
    const auto n = static_cast<std::size_t>(p.dim);
    if (p.vertices.empty()) return 0;
    std::vector<std::size_t> all(p.vertices.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    if (detail::affine_rank(p.vertices, all) < n) return 0;
    std::vector<std::vector<std::size_t>> simplices;
    std::vector<std::size_t> prefix;
    detail::pull_triangulate(p, all, n, prefix, simplices);
    Rational vol = 0;
    for (const auto& s : simplices) {
        Matrix m;
        for (std::size_t k = 1; k < s.size(); ++k) {
            Vector row = p.vertices[s[k]];
            for (std::size_t j = 0; j < n; ++j) row[j] -= p.vertices[s[0]][j];
            m.push_back(std::move(row));
        }
        Rational det = determinant(std::move(m));
        vol += det < 0 ? Rational(-det) : det;
    }
    return vol;
}

inline Rational normalized_volume(const HalfOpenRegion& reg) { return normalized_volume(closure_vertices(reg)); }

/// Lattice points of the half-open region, tested exactly against the mixed system.
inline std::vector<IntVector> lattice_points(const HalfOpenRegion& reg) {
    auto poly = closure_vertices(reg);
    std::vector<IntVector> out;
    if (poly.vertices.empty()) return out;
    const auto n = static_cast<std::size_t>(reg.dim);
    std::vector<std::int64_t> lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rational mn = poly.vertices[0][i], mx = poly.vertices[0][i];
        for (const auto& v : poly.vertices) {
            if (v[i] < mn) mn = v[i];
            if (v[i] > mx) mx = v[i];
        }
        lo[i] = ceil(mn).convert_to<std::int64_t>();
        hi[i] = floor(mx).convert_to<std::int64_t>();
        if (lo[i] > hi[i]) return out;
    }
    IntVector u = lo;
    for (;;) {
        if (reg.contains(u)) out.push_back(u);
        std::size_t i = 0;
        while (i < n && u[i] == hi[i]) {
            u[i] = lo[i];
            ++i;
        }
        if (i == n) break;
        ++u[i];
    }
    return out;
}

struct ProbeRow {
    int m = 0;
    Integer count;
    Rational scaled;  // count * n! / m^n
};

/// Lattice counts of the dilated regions P_{mD,I} for m = 1..m_max.
inline std::vector<ProbeRow> ehrhart_probe(const Fan& fan, const Divisor& d, RayMask subset, int m_max) {
    if (m_max < 1 || m_max > kMaxProbeMultiple)
        throw ResourceError("m_max must lie in [1, " + std::to_string(kMaxProbeMultiple) + "]");
    if (!is_bounded_subset(fan, subset)) throw PreconditionError("probe requires a bounded region");
    const auto n = static_cast<unsigned>(fan.dim());
    std::vector<ProbeRow> rows;
    for (int m = 1; m <= m_max; ++m) {
        auto pts = lattice_points(region(fan, Rational(m) * d, subset));
        ProbeRow row;
        row.m = m;
        row.count = static_cast<long long>(pts.size());
        row.scaled = Rational(row.count) * Rational(factorial(n)) / pow(Rational(m), n);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace toric

#endif
