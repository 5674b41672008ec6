#ifndef TORIC_HOMOLOGY_HPP
#define TORIC_HOMOLOGY_HPP

#include "toric/fan.hpp"
#include "toric/linalg.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <vector>

namespace toric {

/// Which ray a non-simplicial cone is pulled from.
enum class PullingOrder { LowestIndex, HighestIndex };

/// Abstract simplicial complex on ray indices; a j-dimensional cone of the
/// (triangulated) subfan contributes a (j-1)-simplex. The empty simplex is implicit.
struct SphereComplex {
    int ambient_dim = 0;
    std::vector<std::vector<RayMask>> simplices;  // simplices[k] holds the k-simplices

    std::size_t count(int k) const {
        return (k >= 0 && static_cast<std::size_t>(k) < simplices.size()) ? simplices[static_cast<std::size_t>(k)].size() : 0;
    }
    bool empty() const { return count(0) == 0; }
};

/// h^i_{|Delta_I|}(N_R) for i = 0..n.
using HomologyProfile = std::vector<int>;

inline bool is_zero(const HomologyProfile& p) {
    return std::all_of(p.begin(), p.end(), [](int r) { return r == 0; });
}

namespace detail {

inline std::vector<RayMask> pulling_triangulation(const Fan& fan, RayMask cone, PullingOrder order,
                                                  std::map<RayMask, std::vector<RayMask>>& memo) {
    if (auto it = memo.find(cone); it != memo.end()) return it->second;
    std::vector<RayMask> out;
    const auto dim = rank_of(fan.rays(), cone);
    if (dim == static_cast<std::size_t>(popcount(cone))) {
        out.push_back(cone);
    } else {
        auto idx = indices_of(cone);
        std::size_t apex = order == PullingOrder::LowestIndex ? idx.front() : idx.back();
        for (const auto& f : fan.cones()) {
            if (static_cast<std::size_t>(f.dim) + 1 != dim || !is_subset(f.rays, cone) || contains(f.rays, apex)) continue;
            for (auto s : pulling_triangulation(fan, f.rays, order, memo)) out.push_back(s | ray_bit(apex));
        }
    }
    memo[cone] = out;
    return out;
}

inline std::size_t boundary_rank(const std::vector<RayMask>& lower, const std::vector<RayMask>& upper) {
    // boundary map from upper (k-simplices) to lower ((k-1)-simplices)
    if (lower.empty() || upper.empty()) return 0;
    std::map<RayMask, std::size_t> row_of;
    for (std::size_t i = 0; i < lower.size(); ++i) row_of[lower[i]] = i;
    Matrix m(lower.size(), Vector(upper.size(), Rational(0)));
    for (std::size_t c = 0; c < upper.size(); ++c) {
        int sign = 1;
        for (auto v : indices_of(upper[c])) {
            m[row_of.at(upper[c] & ~ray_bit(v))][c] = sign;
            sign = -sign;
        }
    }
    return rank(std::move(m));
}

}  // namespace detail

/// Simplicial model of |Delta_I| cap S using a pulling triangulation that adds no rays.
inline SphereComplex sphere_complex(const Fan& fan, RayMask subset, PullingOrder order = PullingOrder::LowestIndex) {
    std::map<RayMask, std::vector<RayMask>> memo;
    std::set<RayMask> all;
    for (const auto& c : fan.cones()) {
        if (c.rays == 0 || !is_subset(c.rays, subset)) continue;
        for (auto s : detail::pulling_triangulation(fan, c.rays, order, memo)) {
            // close under faces
            for (RayMask sub = s;; sub = (sub - 1) & s) {
                if (sub != 0) all.insert(sub);
                if (sub == 0) break;
            }
        }
    }
    SphereComplex sc;
    sc.ambient_dim = fan.dim();
    sc.simplices.resize(static_cast<std::size_t>(fan.dim()));
    for (auto s : all) sc.simplices[static_cast<std::size_t>(popcount(s) - 1)].push_back(s);
    return sc;
}

/// Reduced Betti numbers over Q for j = -1..n-1 (entry j+1).
inline std::vector<int> reduced_homology_ranks(const SphereComplex& sc) {
    const int n = sc.ambient_dim;
    std::vector<RayMask> empty_simplex{0};
    auto chains = [&](int k) -> const std::vector<RayMask>& {
        static const std::vector<RayMask> none;
        if (k == -1) return empty_simplex;
        if (k < -1 || k >= static_cast<int>(sc.simplices.size())) return none;
        return sc.simplices[static_cast<std::size_t>(k)];
    };
    // rank of boundary from k-chains to (k-1)-chains, k = 0..n
    std::vector<std::size_t> boundary(static_cast<std::size_t>(n) + 2, 0);
    for (int k = 0; k <= n; ++k) boundary[static_cast<std::size_t>(k)] = detail::boundary_rank(chains(k - 1), chains(k));
    std::vector<int> out;
    for (int j = -1; j <= n - 1; ++j) {
        auto dim_c = static_cast<std::int64_t>(chains(j).size());
        auto in_rank = j >= 0 ? static_cast<std::int64_t>(boundary[static_cast<std::size_t>(j)]) : 0;
        auto out_rank = static_cast<std::int64_t>(boundary[static_cast<std::size_t>(j + 1)]);
        out.push_back(static_cast<int>(dim_c - in_rank - out_rank));
    }
    return out;
}

/// r_i = reduced H_{n-i-1}(|Delta_I| cap S). Memoized per (fan, I, order).
inline HomologyProfile local_cohomology_ranks(const Fan& fan, RayMask subset,
                                              PullingOrder order = PullingOrder::LowestIndex) {
    auto& cache = fan.cache();
    const auto key = std::make_pair(subset, static_cast<int>(order));
    {
        std::shared_lock lock(cache.mutex);
        if (auto it = cache.profiles.find(key); it != cache.profiles.end()) return it->second;
    }
    auto reduced = reduced_homology_ranks(sphere_complex(fan, subset, order));
    const int n = fan.dim();
    HomologyProfile profile(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) profile[static_cast<std::size_t>(i)] = reduced[static_cast<std::size_t>(n - i)];
    std::unique_lock lock(cache.mutex);
    cache.profiles.emplace(key, profile);
    return profile;
}

}  // namespace toric

#endif
