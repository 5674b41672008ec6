#ifndef TORIC_COHOMOLOGY_HPP
#define TORIC_COHOMOLOGY_HPP

#include "toric/divisor.hpp"
#include "toric/fan.hpp"
#include "toric/homology.hpp"
#include "toric/polyhedra.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <vector>

namespace toric {

/// (h^0, ..., h^n).
using CohomologyVector = std::vector<Integer>;

/// I_u = {rho : <u, v_rho> >= -d_rho}.
template <class Point>
RayMask rays_satisfied(const Fan& fan, const Divisor& d, const Point& u) {
    RayMask m = 0;
    for (std::size_t r = 0; r < fan.ray_count(); ++r)
        if (dot(u, fan.rays()[r]) >= -d[r]) m |= ray_bit(r);
    return m;
}

namespace detail {

inline void require_complete(const Fan& fan, const char* what) {
    if (!is_complete(fan))
        throw PreconditionError(std::string(what) +
                                " requires a complete fan; use graded_piece_dim for individual weights");
}

}  // namespace detail

/// h^i(D) = sum over bounded I of h^i_{|Delta_I|}(N_R) * #(P_{D,I} cap M).
inline CohomologyVector h_all(const Fan& fan, const Divisor& d, std::size_t cap = kDefaultSubsetCap) {
    detail::require_complete(fan, "h_all");
    check_divisor(fan, d);
    const auto n = static_cast<std::size_t>(fan.dim());
    CohomologyVector h(n + 1, Integer(0));
    for (auto subset : bounded_subsets(fan, cap)) {
        auto profile = local_cohomology_ranks(fan, subset);
        if (is_zero(profile)) continue;
        Integer count = static_cast<long long>(lattice_points(region(fan, d, subset)).size());
        for (std::size_t i = 0; i <= n; ++i) h[i] += profile[i] * count;
    }
    return h;
}

/// chi(O(D)) = (-1)^n sum over bounded I of chi(Delta_I) * #(P_{D,I} cap M);
/// cross-checked against the alternating sum of h_all.
inline Integer euler_char(const Fan& fan, const Divisor& d, std::size_t cap = kDefaultSubsetCap) {
    detail::require_complete(fan, "euler_char");
    check_divisor(fan, d);
    Integer chi = 0;
    for (auto subset : bounded_subsets(fan, cap)) {
        auto weight = chi_of_fan(subfan(fan, subset));
        if (weight == 0) continue;
        chi += Integer(weight) * static_cast<long long>(lattice_points(region(fan, d, subset)).size());
    }
    if (fan.dim() % 2 == 1) chi = -chi;
    auto h = h_all(fan, d, cap);
    Integer alt = 0;
    for (std::size_t i = 0; i < h.size(); ++i) alt += (i % 2 == 0) ? h[i] : Integer(-h[i]);
    if (alt != chi) throw std::logic_error("Euler characteristic disagrees with alternating sum of h^i");
    return chi;
}

enum class CechVariant {
    /// Strictly increasing tuples of maximal cones.
    Alternating,
    /// All ordered tuples with repetition, truncated above degree n+1.
    Full,
};

namespace detail {

// Cohomology of the u-graded Cech complex on the cover by maximal cones. A tuple
// contributes a copy of Q iff the rays of its intersection all lie in `satisfied`.
inline std::vector<int> cech_ranks(const Fan& fan, RayMask satisfied, CechVariant variant) {
    const auto& maxc = fan.max_cones();
    const std::size_t k = maxc.size();
    const auto n = static_cast<std::size_t>(fan.dim());
    auto live = [&](const std::vector<std::size_t>& tuple) {
        RayMask inter = ~RayMask{0};
        for (auto t : tuple) inter &= maxc[t];
        return is_subset(inter, satisfied);
    };

    // chains[p] lists tuples of length p+1 that carry a nonzero group
    std::vector<std::vector<std::vector<std::size_t>>> chains;
    const std::size_t top = variant == CechVariant::Alternating ? k : n + 2;
    std::vector<std::vector<std::size_t>> level;
    for (std::size_t i = 0; i < k; ++i) level.push_back({i});
    for (std::size_t len = 1; len <= top; ++len) {
        std::vector<std::vector<std::size_t>> kept;
        for (const auto& t : level)
            if (live(t)) kept.push_back(t);
        chains.push_back(std::move(kept));
        std::vector<std::vector<std::size_t>> next;
        for (const auto& t : level) {
            std::size_t start = variant == CechVariant::Alternating ? t.back() + 1 : 0;
            for (std::size_t i = start; i < k; ++i) {
                auto e = t;
                e.push_back(i);
                next.push_back(std::move(e));
            }
        }
        level = std::move(next);
    }

    // rank of d^p : C^p -> C^{p+1}
    std::vector<std::size_t> d_rank(chains.size(), 0);
    for (std::size_t p = 0; p + 1 < chains.size(); ++p) {
        const auto& src = chains[p];
        const auto& dst = chains[p + 1];
        if (src.empty() || dst.empty()) continue;
        std::map<std::vector<std::size_t>, std::size_t> col_of;
        for (std::size_t c = 0; c < src.size(); ++c) col_of[src[c]] = c;
        Matrix m(dst.size(), Vector(src.size(), Rational(0)));
        for (std::size_t r = 0; r < dst.size(); ++r) {
            for (std::size_t drop = 0; drop < dst[r].size(); ++drop) {
                auto face = dst[r];
                face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
                auto it = col_of.find(face);
                if (it == col_of.end()) continue;  // restriction from a zero group
                m[r][it->second] += (drop % 2 == 0) ? 1 : -1;
            }
        }
        d_rank[p] = rank(std::move(m));
    }

    const std::size_t degrees = variant == CechVariant::Alternating ? chains.size() : n + 1;
    std::vector<int> h(std::max(degrees, n + 1), 0);
    for (std::size_t p = 0; p < degrees; ++p) {
        auto dim = static_cast<std::int64_t>(chains[p].size());
        auto out = static_cast<std::int64_t>(d_rank[p]);
        auto in = p > 0 ? static_cast<std::int64_t>(d_rank[p - 1]) : 0;
        h[p] = static_cast<int>(dim - out - in);
    }
    for (std::size_t p = n + 1; p < h.size(); ++p)
        if (h[p] != 0) throw std::logic_error("Cech cohomology nonzero above the dimension");
    h.resize(n + 1);
    return h;
}

}  // namespace detail

/// Dimension of the u-graded piece of H^i(X, O(D)). The local cohomology is of
/// |Delta| with supports in |Delta_{I_u}|; it is taken in N_R only when the fan is
/// complete, otherwise the graded Cech complex is used.
inline int graded_piece_dim(const Fan& fan, const Divisor& d, const IntVector& u, int i) {
    check_divisor(fan, d);
    if (i < 0 || i > fan.dim()) return 0;
    const RayMask sat = rays_satisfied(fan, d, u);
    if (is_complete(fan)) return local_cohomology_ranks(fan, sat)[static_cast<std::size_t>(i)];
    return detail::cech_ranks(fan, sat, CechVariant::Alternating)[static_cast<std::size_t>(i)];
}

/// Independent route to h^i(D): sums Cech cohomology of each graded piece u over
/// every weight in the bounding box of the bounded regions.
inline CohomologyVector cech_oracle(const Fan& fan, const Divisor& d, std::size_t cap = kDefaultSubsetCap,
                                    CechVariant variant = CechVariant::Alternating) {
    detail::require_complete(fan, "cech_oracle");
    check_divisor(fan, d);
    const auto n = static_cast<std::size_t>(fan.dim());

    bool any = false;
    std::vector<std::int64_t> lo(n), hi(n);
    for (auto subset : bounded_subsets(fan, cap)) {
        for (const auto& v : closure_vertices(region(fan, d, subset)).vertices) {
            for (std::size_t i = 0; i < n; ++i) {
                auto a = ceil(v[i]).convert_to<std::int64_t>();
                auto b = floor(v[i]).convert_to<std::int64_t>();
                lo[i] = any ? std::min(lo[i], b) : b;
                hi[i] = any ? std::max(hi[i], a) : a;
            }
            any = true;
        }
    }
    CohomologyVector h(n + 1, Integer(0));
    if (!any) return h;

    std::map<RayMask, std::vector<int>> memo;
    IntVector u = lo;
    for (;;) {
        RayMask sat = rays_satisfied(fan, d, u);
        auto it = memo.find(sat);
        if (it == memo.end()) it = memo.emplace(sat, detail::cech_ranks(fan, sat, variant)).first;
        for (std::size_t i = 0; i <= n; ++i) h[i] += it->second[i];
        std::size_t i = 0;
        while (i < n && u[i] == hi[i]) {
            u[i] = lo[i];
            ++i;
        }
        if (i == n) break;
        ++u[i];
    }
    return h;
}

}  // namespace toric

#endif
