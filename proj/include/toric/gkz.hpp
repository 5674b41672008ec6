#ifndef TORIC_GKZ_HPP
#define TORIC_GKZ_HPP

#include "toric/asymptotics.hpp"
#include "toric/divisor.hpp"
#include "toric/fan.hpp"
#include "toric/linalg.hpp"
#include "toric/lp.hpp"
#include "toric/polyhedra.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace toric {

// ---------------------------------------------------------------------------
// Xi_D and I_D

/// Xi_D(v) = min over u in P_D of <u, v>, stored through the vertices of P_D.
struct XiFunction {
    std::vector<Vector> vertices;
    Vector ray_values;  // Xi_D(v_rho) for every ray

    template <class V>
    Rational operator()(const V& v) const {
        Rational best = dot(vertices.front(), v);
        for (const auto& w : vertices) {
            Rational x = dot(w, v);
            if (x < best) best = x;
        }
        return best;
    }
};

struct XiData {
    XiFunction xi;
    RayMask strict_rays = 0;  // I_D: rays with Xi_D(v_rho) > -d_rho
};

inline std::vector<Vector> polytope_vertices(const Fan& fan, const Divisor& d) {
    return closure_vertices(region(fan, d, fan.all_rays())).vertices;
}

inline XiData xi_and_ID(const Fan& fan, const Divisor& d) {
    detail::require_complete(fan, "xi_and_ID");
    check_divisor(fan, d);
    XiData out;
    out.xi.vertices = polytope_vertices(fan, d);
    if (out.xi.vertices.empty()) throw PreconditionError("P_D is empty: class not effective");
    for (std::size_t r = 0; r < fan.ray_count(); ++r) {
        Rational value = out.xi(fan.rays()[r]);
        out.xi.ray_values.push_back(value);
        if (value > -d[r]) out.strict_rays |= ray_bit(r);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Possibly degenerate fans

/// Complete fan whose cones may share a common linear subspace L. Cones are
/// given by generating rays of the ambient fan; L is a basis of vectors in N_Q.
struct PossiblyDegenerateFan {
    int dim = 0;
    std::vector<RayMask> max_cones;
    std::vector<Vector> lineality;

    bool degenerate() const { return !lineality.empty(); }
    RayMask ray_set() const {
        RayMask m = 0;
        for (auto c : max_cones) m |= c;
        return m;
    }
    friend bool operator==(const PossiblyDegenerateFan& a, const PossiblyDegenerateFan& b) {
        return a.dim == b.dim && a.max_cones == b.max_cones && a.lineality.size() == b.lineality.size();
    }
};

inline PossiblyDegenerateFan as_degenerate_fan(const Fan& fan) {
    PossiblyDegenerateFan f;
    f.dim = fan.dim();
    f.max_cones = fan.max_cones();
    std::sort(f.max_cones.begin(), f.max_cones.end());
    return f;
}

namespace detail {

// Drop generators lying in the cone of the remaining ones (in index order).
inline RayMask irredundant_generators(const Fan& fan, RayMask gens) {
    for (auto r : indices_of(gens)) {
        RayMask rest = gens & ~ray_bit(r);
        if (rest != 0 && cone_contains(fan.rays(), rest, to_rational(fan.rays()[r]))) gens = rest;
    }
    return gens;
}

}  // namespace detail

/// Normal fan of P_D: one maximal cone per vertex, generated by the rays whose
/// hyperplanes pass through it, together with the lineality space.
inline PossiblyDegenerateFan normal_fan(const Fan& fan, const Divisor& d) {
    auto verts = polytope_vertices(fan, d);
    if (verts.empty()) throw PreconditionError("P_D is empty: class not effective");
    PossiblyDegenerateFan out;
    out.dim = fan.dim();
    std::set<RayMask> cones;
    for (const auto& w : verts) {
        RayMask tight = 0;
        for (std::size_t r = 0; r < fan.ray_count(); ++r)
            if (dot(w, fan.rays()[r]) == -d[r]) tight |= ray_bit(r);
        cones.insert(detail::irredundant_generators(fan, tight));
    }
    out.max_cones.assign(cones.begin(), cones.end());
    Matrix directions;
    for (std::size_t k = 1; k < verts.size(); ++k) {
        Vector row = verts[k];
        for (std::size_t j = 0; j < row.size(); ++j) row[j] -= verts[0][j];
        directions.push_back(std::move(row));
    }
    if (directions.empty()) directions.push_back(Vector(static_cast<std::size_t>(fan.dim()), Rational(0)));
    out.lineality = nullspace(directions, static_cast<std::size_t>(fan.dim()));
    return out;
}

// ---------------------------------------------------------------------------
// GKZ cones

/// coeffs . d == 0 (equality) or coeffs . d >= 0.
struct LinearCondition {
    Vector coeffs;
    bool equality = false;

    Rational evaluate(const Divisor& d) const { return dot(coeffs, d.coeffs); }
    bool holds(const Divisor& d) const {
        Rational v = evaluate(d);
        return equality ? v == 0 : v >= 0;
    }
    friend bool operator<(const LinearCondition& a, const LinearCondition& b) {
        if (a.equality != b.equality) return a.equality < b.equality;
        return a.coeffs < b.coeffs;
    }
};

struct GkzCone {
    PossiblyDegenerateFan sigma;
    RayMask outside = 0;  // I
    std::vector<LinearCondition> conditions;
};

/// Builds the explicit equality/inequality system cutting out gamma_{Sigma,I}.
inline GkzCone make_gkz_cone(const Fan& fan, PossiblyDegenerateFan sigma, RayMask outside) {
    const auto n = static_cast<std::size_t>(fan.dim());
    std::set<LinearCondition> conds;
    for (auto cone : sigma.max_cones) {
        // rays of the ambient fan lying in this cone (cone includes the lineality space)
        RayMask inside = 0;
        for (std::size_t r = 0; r < fan.ray_count(); ++r) {
            if (contains(cone, r)) {
                inside |= ray_bit(r);
                continue;
            }
            auto v = to_rational(fan.rays()[r]);
            std::vector<lp::Constraint> cons;
            const auto gens = indices_of(cone);
            const std::size_t vars = gens.size() + 2 * sigma.lineality.size();
            for (std::size_t i = 0; i < n; ++i) {
                Vector row(vars, Rational(0));
                for (std::size_t j = 0; j < gens.size(); ++j) row[j] = fan.rays()[gens[j]][i];
                for (std::size_t l = 0; l < sigma.lineality.size(); ++l) {
                    row[gens.size() + 2 * l] = sigma.lineality[l][i];
                    row[gens.size() + 2 * l + 1] = -sigma.lineality[l][i];
                }
                cons.push_back({std::move(row), lp::Relation::Equal, v[i]});
            }
            for (std::size_t j = 0; j < vars; ++j) {
                Vector row(vars, Rational(0));
                row[j] = 1;
                cons.push_back({std::move(row), lp::Relation::GreaterEq, 0});
            }
            if (lp::feasible(cons, vars)) inside |= ray_bit(r);
        }
        const auto basis_pool = indices_of(inside & ~outside);
        if (basis_pool.size() < n) continue;
        std::vector<std::size_t> pick(n);
        for (std::size_t i = 0; i < n; ++i) pick[i] = i;
        for (;;) {
            std::vector<IntVector> basis;
            for (auto p : pick) basis.push_back(fan.rays()[basis_pool[p]]);
            if (rank_of_vectors(basis) == n) {
                for (std::size_t r = 0; r < fan.ray_count(); ++r) {
                    auto a = express_in(basis, fan.rays()[r]);
                    LinearCondition c;
                    c.coeffs.assign(fan.ray_count(), Rational(0));
                    c.coeffs[r] += 1;
                    for (std::size_t i = 0; i < n; ++i) c.coeffs[basis_pool[pick[i]]] -= (*a)[i];
                    if (std::all_of(c.coeffs.begin(), c.coeffs.end(), [](const Rational& x) { return x == 0; }))
                        continue;
                    c.equality = contains(inside, r) && !contains(outside, r);
                    conds.insert(std::move(c));
                }
            }
            std::size_t i = n;
            while (i > 0 && pick[i - 1] == basis_pool.size() - n + (i - 1)) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (std::size_t j = i; j < n; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    GkzCone g;
    g.sigma = std::move(sigma);
    g.outside = outside;
    g.conditions.assign(conds.begin(), conds.end());
    return g;
}

inline bool gkz_membership(const Fan& fan, const GkzCone& cone, const Divisor& d) {
    check_divisor(fan, d);
    return std::all_of(cone.conditions.begin(), cone.conditions.end(),
                       [&](const LinearCondition& c) { return c.holds(d); });
}

/// Dimension of the cone of coefficient vectors satisfying the system (in the
/// divisor space, so it includes the n-dimensional linear-equivalence directions).
inline std::size_t gkz_cone_dimension(const Fan& fan, const GkzCone& cone) {
    const std::size_t k = fan.ray_count();
    // affine hull: equalities plus inequalities tight on the whole cone
    std::vector<lp::Constraint> base;
    for (const auto& c : cone.conditions)
        base.push_back({c.coeffs, c.equality ? lp::Relation::Equal : lp::Relation::GreaterEq, 0});
    Matrix implicit;
    for (const auto& c : cone.conditions) {
        if (c.equality) {
            implicit.push_back(c.coeffs);
            continue;
        }
        auto cons = base;
        cons.push_back({c.coeffs, lp::Relation::GreaterEq, 1});
        if (!lp::feasible(cons, k)) implicit.push_back(c.coeffs);
    }
    return implicit.empty() ? k : k - rank(implicit);
}

// ---------------------------------------------------------------------------
// Chamber location and enumeration

struct ChamberLocation {
    PossiblyDegenerateFan sigma;
    RayMask strict_rays = 0;  // I_D
    bool interior = false;
};

inline ChamberLocation locate_chamber(const Fan& fan, const Divisor& d) {
    ChamberLocation loc;
    auto xi = xi_and_ID(fan, d);  // throws outside the effective cone
    loc.sigma = normal_fan(fan, d);
    loc.strict_rays = xi.strict_rays;
    const auto n = static_cast<std::size_t>(fan.dim());
    bool simplicial = std::all_of(loc.sigma.max_cones.begin(), loc.sigma.max_cones.end(), [&](RayMask c) {
        return static_cast<std::size_t>(popcount(c)) == n && detail::rank_of(fan.rays(), c) == n;
    });
    loc.interior = !loc.sigma.degenerate() && simplicial &&
                   popcount(loc.strict_rays) == static_cast<int>(fan.ray_count()) - popcount(loc.sigma.ray_set());
    return loc;
}

namespace detail {

// Strict convexity of some PL function on the simplicial fan (rays, cones),
// decided by an LP with a unit gap on every off-cone ray.
inline bool is_projective_simplicial(const std::vector<IntVector>& rays, const std::vector<RayMask>& cones) {
    RayMask support = 0;
    for (auto c : cones) support |= c;
    const auto used = indices_of(support);
    std::map<std::size_t, std::size_t> var;
    for (std::size_t i = 0; i < used.size(); ++i) var[used[i]] = i;
    std::vector<lp::Constraint> cons;
    for (auto c : cones) {
        std::vector<IntVector> basis;
        const auto gens = indices_of(c);
        for (auto g : gens) basis.push_back(rays[g]);
        for (auto r : used) {
            if (contains(c, r)) continue;
            auto a = express_in(basis, rays[r]);
            Vector row(used.size(), Rational(0));
            for (std::size_t i = 0; i < gens.size(); ++i) row[var[gens[i]]] += (*a)[i];
            row[var[r]] -= 1;
            cons.push_back({std::move(row), lp::Relation::GreaterEq, 1});
        }
    }
    return lp::feasible(cons, used.size());
}

// Exact angular order in the plane, starting from the positive x-axis.
inline bool angle_less(const IntVector& a, const IntVector& b) {
    auto half = [](const IntVector& v) { return (v[1] < 0 || (v[1] == 0 && v[0] < 0)) ? 1 : 0; };
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    return Rational(a[0]) * b[1] - Rational(a[1]) * b[0] > 0;
}

inline std::vector<std::vector<RayMask>> complete_simplicial_fans_2d(const Fan& fan) {
    std::vector<std::size_t> order(fan.ray_count());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return angle_less(fan.rays()[a], fan.rays()[b]); });
    std::vector<std::vector<RayMask>> out;
    const RayMask all = fan.all_rays();
    for (RayMask s = 1; s <= all && s != 0; ++s) {
        if (popcount(s) < 3) continue;
        std::vector<std::size_t> cyc;
        for (auto i : order)
            if (contains(s, i)) cyc.push_back(i);
        std::vector<RayMask> cones;
        bool ok = true;
        for (std::size_t k = 0; k < cyc.size() && ok; ++k) {
            const auto& a = fan.rays()[cyc[k]];
            const auto& b = fan.rays()[cyc[(k + 1) % cyc.size()]];
            ok = Rational(a[0]) * b[1] - Rational(a[1]) * b[0] > 0;  // gap strictly below pi
            cones.push_back(ray_bit(cyc[k]) | ray_bit(cyc[(k + 1) % cyc.size()]));
        }
        if (!ok) continue;
        std::sort(cones.begin(), cones.end());
        out.push_back(std::move(cones));
        if (s == all) break;
    }
    return out;
}

// Backtracking search for complete simplicial fans with rays among the fan's
// rays: start from every simplicial cone containing a generic direction, then
// close open facets one at a time.
inline std::vector<std::vector<RayMask>> complete_simplicial_fans_search(const Fan& fan) {
    const auto n = static_cast<std::size_t>(fan.dim());
    const auto& rays = fan.rays();
    std::vector<RayMask> candidates;
    {
        std::vector<std::size_t> pick(n);
        for (std::size_t i = 0; i < n; ++i) pick[i] = i;
        const std::size_t k = fan.ray_count();
        if (k >= n) {
            for (;;) {
                RayMask m = 0;
                for (auto p : pick) m |= ray_bit(p);
                if (rank_of(rays, m) == n) candidates.push_back(m);
                std::size_t i = n;
                while (i > 0 && pick[i - 1] == k - n + (i - 1)) --i;
                if (i == 0) break;
                ++pick[i - 1];
                for (std::size_t j = i; j < n; ++j) pick[j] = pick[j - 1] + 1;
            }
        }
    }
    // generic direction: off every hyperplane spanned by rays
    Vector w;
    for (std::int64_t t = 7;; t += 4) {
        w.assign(n, Rational(0));
        Rational p = 1;
        for (std::size_t i = 0; i < n; ++i, p *= t) w[i] = p;
        bool generic = true;
        for (auto c : candidates) {
            for (auto drop : indices_of(c)) {
                std::vector<IntVector> vs;
                for (auto g : indices_of(c & ~ray_bit(drop))) vs.push_back(rays[g]);
                Matrix m;
                for (const auto& v : vs) m.push_back(to_rational(v));
                m.push_back(w);
                if (rank(m) < n) generic = false;
            }
        }
        if (generic) break;
    }
    auto strictly_inside = [&](RayMask c, const Vector& point) {
        std::vector<IntVector> basis;
        for (auto g : indices_of(c)) basis.push_back(rays[g]);
        Matrix a(n, Vector(n));
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) a[i][j] = basis[j][i];
        auto coef = solve_unique(a, point, n);
        return std::all_of(coef->begin(), coef->end(), [](const Rational& x) { return x > 0; });
    };
    auto side = [&](RayMask facet, std::size_t r) {
        Matrix m;
        for (auto g : indices_of(facet)) m.push_back(to_rational(rays[g]));
        auto normal = nullspace(m, n).front();
        Rational s = dot(normal, rays[r]);
        return s > 0 ? 1 : (s < 0 ? -1 : 0);
    };

    std::set<std::vector<RayMask>> found;
    std::vector<RayMask> chosen;
    std::function<void()> extend = [&]() {
        std::map<RayMask, int> uses;
        for (auto c : chosen)
            for (auto g : indices_of(c)) ++uses[c & ~ray_bit(g)];
        RayMask open = 0;
        bool has_open = false;
        for (const auto& [f, count] : uses)
            if (count == 1) {
                open = f;
                has_open = true;
                break;
            }
        if (!has_open) {
            auto fan_cones = chosen;
            std::sort(fan_cones.begin(), fan_cones.end());
            found.insert(fan_cones);
            return;
        }
        RayMask owner = 0;
        for (auto c : chosen)
            if (is_subset(open, c)) owner = c;
        const int owner_side = side(open, indices_of(owner & ~open).front());
        for (std::size_t r = 0; r < fan.ray_count(); ++r) {
            if (contains(open, r)) continue;
            if (side(open, r) != -owner_side) continue;
            RayMask next = open | ray_bit(r);
            bool compatible = true;
            for (auto c : chosen)
                if (c == next || !properly_intersect(rays, fan.dim(), c, next)) compatible = false;
            if (!compatible) continue;
            chosen.push_back(next);
            extend();
            chosen.pop_back();
        }
    };
    for (auto c : candidates) {
        if (!strictly_inside(c, w)) continue;
        chosen = {c};
        extend();
    }
    return {found.begin(), found.end()};
}

}  // namespace detail

struct EnumerationOptions {
    /// Allow the backtracking search in dimension >= 3.
    bool best_effort_higher_dim = false;
};

/// Maximal GKZ cones: projective complete simplicial fans Sigma with rays among
/// the fan's rays, each paired with I = Delta(1) \ Sigma(1).
inline std::vector<GkzCone> enumerate_maximal_chambers(const Fan& fan, EnumerationOptions opts = {}) {
    detail::require_complete(fan, "enumerate_maximal_chambers");
    std::vector<std::vector<RayMask>> fans;
    if (fan.dim() == 2) {
        fans = detail::complete_simplicial_fans_2d(fan);
    } else if (opts.best_effort_higher_dim) {
        fans = detail::complete_simplicial_fans_search(fan);
    } else {
        throw PreconditionError("chamber enumeration is supported in dimension 2; dimension " +
                                std::to_string(fan.dim()) + " requires the best-effort search flag");
    }
    std::vector<GkzCone> out;
    for (auto& cones : fans) {
        if (!detail::is_projective_simplicial(fan.rays(), cones)) continue;
        PossiblyDegenerateFan sigma;
        sigma.dim = fan.dim();
        sigma.max_cones = cones;
        RayMask used = sigma.ray_set();
        out.push_back(make_gkz_cone(fan, std::move(sigma), fan.all_rays() & ~used));
    }
    return out;
}

/// A divisor in the interior of a maximal chamber: a strictly convex function on
/// Sigma for the rays of Sigma, and one unit above it on the rays of I.
inline Divisor chamber_sample(const Fan& fan, const GkzCone& cone) {
    const auto n = static_cast<std::size_t>(fan.dim());
    const auto used = indices_of(cone.sigma.ray_set());
    std::vector<lp::Constraint> cons;
    for (auto c : cone.sigma.max_cones) {
        std::vector<IntVector> basis;
        const auto gens = indices_of(c);
        if (gens.size() != n) throw PreconditionError("chamber sample needs a simplicial fan");
        for (auto g : gens) basis.push_back(fan.rays()[g]);
        for (auto r : used) {
            if (contains(c, r)) continue;
            auto a = express_in(basis, fan.rays()[r]);
            Vector row(fan.ray_count(), Rational(0));
            row[r] += 1;
            for (std::size_t i = 0; i < n; ++i) row[gens[i]] -= (*a)[i];
            cons.push_back({std::move(row), lp::Relation::GreaterEq, 1});
        }
    }
    for (std::size_t r = 0; r < fan.ray_count(); ++r) {
        if (contains(cone.sigma.ray_set(), r)) continue;
        Vector row(fan.ray_count(), Rational(0));
        row[r] = 1;
        cons.push_back({std::move(row), lp::Relation::Equal, 0});
    }
    auto x = lp::find_feasible(cons, fan.ray_count());
    if (!x) throw PreconditionError("fan is not projective");
    Divisor d(*x);
    for (auto r : indices_of(fan.all_rays() & ~cone.sigma.ray_set())) {
        // the piece of Psi_D on a cone of Sigma containing v_r
        for (auto c : cone.sigma.max_cones) {
            if (!cone_contains(fan.rays(), c, to_rational(fan.rays()[r]))) continue;
            Matrix a;
            Vector b;
            for (auto g : indices_of(c)) {
                a.push_back(to_rational(fan.rays()[g]));
                b.push_back(-d[g]);
            }
            d[r] = 1 - dot(*solve_unique(a, b, n), fan.rays()[r]);
            break;
        }
    }
    return d;
}

/// The fan Sigma realized on its own rays (renumbered in increasing ambient index).
inline Fan realize(const Fan& fan, const PossiblyDegenerateFan& sigma) {
    if (sigma.degenerate()) throw PreconditionError("degenerate fans have no realization on N");
    const auto used = indices_of(sigma.ray_set());
    std::map<std::size_t, std::size_t> local;
    RawFan raw;
    raw.dim = fan.dim();
    for (std::size_t i = 0; i < used.size(); ++i) {
        local[used[i]] = i;
        raw.rays.push_back(fan.rays()[used[i]]);
    }
    for (auto c : sigma.max_cones) {
        std::vector<std::size_t> cone;
        for (auto g : indices_of(c)) cone.push_back(local[g]);
        raw.cones.push_back(cone);
    }
    return make_fan(raw);
}

/// Birational transform along the identity on N: restriction of coefficients to Sigma(1).
inline Divisor pushforward(const Fan& fan, const Fan& sigma, const Divisor& d) {
    check_divisor(fan, d);
    Divisor out;
    for (const auto& v : sigma.rays()) {
        auto it = std::find(fan.rays().begin(), fan.rays().end(), v);
        if (it == fan.rays().end()) throw std::invalid_argument("ray of the target fan is not a ray of the source fan");
        out.coeffs.push_back(d[static_cast<std::size_t>(it - fan.rays().begin())]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Nef decomposition

struct NefDecomposition {
    Vector shift;              // u
    Divisor shifted;           // D~ = D + div(chi^u)
    RayMask sigma_rays = 0;    // Sigma(1), indices into the ambient rays
    Divisor nef_part;          // D' on X_Sigma, coefficient per ray of Sigma(1) in increasing index
    Divisor pulled_back;       // phi_Sigma(D') on X
    Divisor effective;         // E, supported on I
};

inline NefDecomposition nef_decomposition(const Fan& fan, const GkzCone& cone, const Divisor& d) {
    if (!gkz_membership(fan, cone, d)) throw PreconditionError("divisor class is not in the GKZ cone");
    const auto n = static_cast<std::size_t>(fan.dim());
    auto xi = xi_and_ID(fan, d);
    NefDecomposition out;
    out.shift = cone.sigma.degenerate() ? xi.xi.vertices.front() : Vector(n, Rational(0));
    out.shifted = linear_equiv_shift(fan, d, out.shift);
    out.sigma_rays = cone.sigma.ray_set();

    auto shifted_value = [&](std::size_t r) { return xi.xi.ray_values[r] - dot(out.shift, fan.rays()[r]); };
    for (auto r : indices_of(out.sigma_rays)) out.nef_part.coeffs.push_back(-shifted_value(r));

    // D' through its own local data on Sigma: Psi_{D'} on each maximal cone
    const auto sigma_idx = indices_of(out.sigma_rays);
    auto coeff_of = [&](std::size_t r) {
        auto pos = std::find(sigma_idx.begin(), sigma_idx.end(), r) - sigma_idx.begin();
        return out.nef_part[static_cast<std::size_t>(pos)];
    };
    std::vector<Vector> local;
    for (auto c : cone.sigma.max_cones) {
        Matrix a;
        Vector b;
        for (auto g : indices_of(c)) {
            a.push_back(to_rational(fan.rays()[g]));
            b.push_back(-coeff_of(g));
        }
        auto u = solve_any(a, b, n);
        if (!u) throw std::logic_error("nef part is not Q-Cartier on Sigma");
        local.push_back(*u);
    }
    // nef: each local function lies below the divisor's values on every ray of Sigma
    for (const auto& u : local)
        for (auto r : sigma_idx)
            if (dot(u, fan.rays()[r]) < -coeff_of(r)) throw std::logic_error("nef part is not nef");
    // Psi_{D'}(v) = min over local functions (concave form of the convex PL function)
    out.pulled_back = Divisor::zero(fan.ray_count());
    for (std::size_t r = 0; r < fan.ray_count(); ++r) {
        Rational psi = dot(local.front(), fan.rays()[r]);
        for (const auto& u : local) psi = std::min(psi, dot(u, fan.rays()[r]));
        out.pulled_back[r] = -psi;
    }
    out.effective = out.shifted - out.pulled_back;
    for (std::size_t r = 0; r < fan.ray_count(); ++r) {
        if (out.effective[r] < 0) throw std::logic_error("remainder is not effective");
        if (out.effective[r] != 0 && !contains(cone.outside, r)) throw std::logic_error("remainder not supported on I");
    }
    // P_{D~} = P_{D'} as vertex sets
    HalfOpenRegion sigma_region;
    sigma_region.dim = fan.dim();
    for (auto r : sigma_idx) {
        sigma_region.normals.push_back(fan.rays()[r]);
        sigma_region.levels.push_back(-coeff_of(r));
    }
    sigma_region.weak = full_mask(sigma_idx.size());
    if (closure_vertices(sigma_region).vertices != polytope_vertices(fan, out.shifted))
        throw std::logic_error("P_{D~} differs from P_{D'}");
    return out;
}

/// hhat^0 on a GKZ cone as the top self-intersection of the pushforward; zero on
/// degenerate cones. Cross-checked against the region formula.
inline Rational hhat0_on_chamber(const Fan& fan, const GkzCone& cone, const Divisor& d,
                                 std::size_t cap = kDefaultSubsetCap) {
    if (!gkz_membership(fan, cone, d)) throw PreconditionError("divisor class is not in the GKZ cone");
    Rational value = 0;
    if (!cone.sigma.degenerate()) {
        Fan target = realize(fan, cone.sigma);
        value = self_intersection(target, pushforward(fan, target, d), cap);
    }
    if (value != hhat(fan, d, cap)[0]) throw std::logic_error("chamber polynomial disagrees with hhat^0");
    return value;
}

// ---------------------------------------------------------------------------
// Ampleness through asymptotic vanishing

struct AmpleReport {
    bool ample = false;                 // [D] in the chamber of Delta itself
    bool higher_vanish_at_d = false;    // hhat^{i>0}(D) == 0
    bool neighborhood_vanishes = false; // ... and at every perturbed sample
    std::optional<Divisor> witness;     // a sample with hhat^{i>0} != 0
    Rational step;                      // perturbation size used
};

namespace detail {

inline bool higher_vanish(const AsymptoticVector& h) {
    return std::all_of(h.begin() + 1, h.end(), [](const Rational& x) { return x == 0; });
}

// Largest t such that d + t*e stays strictly inside every condition positive at d,
// for every e in the span of unit vectors weighted by `weights`.
inline std::optional<Rational> slack_bound(const std::vector<LinearCondition>& conds, const Divisor& d,
                                           const std::vector<std::size_t>& rays) {
    std::optional<Rational> best;
    for (const auto& c : conds) {
        Rational value = c.evaluate(d);
        if (value <= 0) continue;
        Rational norm = 0;
        for (auto r : rays) norm += c.coeffs[r] < 0 ? Rational(-c.coeffs[r]) : c.coeffs[r];
        if (norm == 0) continue;
        Rational t = value / norm;
        if (!best || t < *best) best = t;
    }
    return best;
}

}  // namespace detail

inline AmpleReport ample_via_asymptotics(const Fan& fan, const Divisor& d, std::size_t cap = kDefaultSubsetCap) {
    detail::require_complete(fan, "ample_via_asymptotics");
    if (!is_simplicial(fan))
        throw PreconditionError(
            "refusing non-simplicial fan: the asymptotic criterion can fail there (complete toric varieties with no "
            "nontrivial line bundles exist)");
    if (!is_q_cartier(fan, d)) throw PreconditionError("divisor is not Q-Cartier");
    AmpleReport rep;
    auto h = hhat(fan, d, cap);
    rep.higher_vanish_at_d = detail::higher_vanish(h);

    if (!polytope_vertices(fan, d).empty()) {
        auto loc = locate_chamber(fan, d);
        rep.ample = loc.interior && loc.sigma == as_degenerate_fan(fan) && loc.strict_rays == 0;
    }

    auto nef_cone = make_gkz_cone(fan, as_degenerate_fan(fan), 0);
    std::vector<std::size_t> all(fan.ray_count());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    auto bound = detail::slack_bound(nef_cone.conditions, d, all);
    rep.step = bound ? std::min(Rational(1), Rational(*bound / 2)) : Rational(1);

    // Directions +-e_r and +-e_r +- e_s. Single coordinates are not enough: on
    // P1xP1 at D ~ 0 every +-e_r stays on a wall where hhat^1 = 2ab still vanishes.
    const std::size_t k = fan.ray_count();
    std::vector<Divisor> directions;
    for (std::size_t r = 0; r < k; ++r)
        for (int sign : {1, -1}) directions.push_back(Divisor::prime(k, r, Rational(sign)));
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t s = r + 1; s < k; ++s)
            for (int a : {1, -1})
                for (int b : {1, -1})
                    directions.push_back(Divisor::prime(k, r, Rational(a)) + Divisor::prime(k, s, Rational(b)));

    rep.neighborhood_vanishes = rep.higher_vanish_at_d;
    for (const auto& w : directions) {
        if (!rep.neighborhood_vanishes) break;
        Divisor sample = d + rep.step * w;
        if (!detail::higher_vanish(hhat(fan, sample, cap))) {
            rep.neighborhood_vanishes = false;
            rep.witness = sample;
        }
    }
    if (rep.ample && !rep.neighborhood_vanishes)
        throw std::logic_error("ample divisor with non-vanishing higher asymptotic cohomology nearby");
    return rep;
}

}  // namespace toric

#endif
