#ifndef TORIC_PARTIALS_HPP
#define TORIC_PARTIALS_HPP

#include "toric/asymptotics.hpp"
#include "toric/gkz.hpp"

#include <vector>

namespace toric {

/// Exact mixed partial of hhat^0 in the coefficients of the given rays (repeats
/// allowed), taken inside the maximal chamber containing D.
inline Rational mixed_partial_h0(const Fan& fan, const Divisor& d, const std::vector<std::size_t>& rays,
                                 std::size_t cap = kDefaultSubsetCap) {
    const auto n = static_cast<std::size_t>(fan.dim());
    const std::size_t r = rays.size();
    if (r == 0 || r > n) throw PreconditionError("number of differentiation rays must lie in [1, n]");
    for (auto j : rays)
        if (j >= fan.ray_count()) throw std::out_of_range("ray index out of range");
    auto loc = locate_chamber(fan, d);
    if (!loc.interior) throw PreconditionError("divisor lies on a chamber wall");
    auto chamber = make_gkz_cone(fan, loc.sigma, loc.strict_rays);

    auto bound = detail::slack_bound(chamber.conditions, d, rays);
    const Rational h_max = bound ? *bound : Rational(1);

    // g(t) = q(t) / t^r has degree n - r; interpolate it at t = 0
    const std::size_t nodes = n - r + 1;
    std::vector<Rational> ts, gs;
    for (std::size_t k = 1; k <= nodes; ++k) {
        Rational t = h_max * k / (2 * nodes);
        Rational q = 0;
        for (RayMask s = 0; s < ray_bit(r); ++s) {
            Divisor shifted = d;
            for (std::size_t j = 0; j < r; ++j)
                if (contains(s, j)) shifted[rays[j]] += t;
            Rational value = hhat(fan, shifted, cap)[0];
            q += ((r - static_cast<std::size_t>(popcount(s))) % 2 == 0) ? value : Rational(-value);
        }
        ts.push_back(t);
        gs.push_back(q / pow(t, static_cast<unsigned>(r)));
    }
    Rational at_zero = 0;
    for (std::size_t a = 0; a < nodes; ++a) {
        Rational basis = 1;
        for (std::size_t b = 0; b < nodes; ++b)
            if (b != a) basis *= (0 - ts[b]) / (ts[a] - ts[b]);
        at_zero += gs[a] * basis;
    }
    return at_zero;
}

}  // namespace toric

#endif
