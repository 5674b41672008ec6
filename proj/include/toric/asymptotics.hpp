#ifndef TORIC_ASYMPTOTICS_HPP
#define TORIC_ASYMPTOTICS_HPP

#include "toric/cohomology.hpp"
#include "toric/divisor.hpp"
#include "toric/homology.hpp"
#include "toric/polyhedra.hpp"

#include <utility>
#include <vector>

namespace toric {

/// (hhat^0, ..., hhat^n), the limits of h^i(mD) / (m^n / n!).
using AsymptoticVector = std::vector<Rational>;

/// hhat^i(D) = sum over bounded I of h^i_{|Delta_I|}(N_R) * vol P_{D,I}, exactly.
inline AsymptoticVector hhat(const Fan& fan, const Divisor& d, std::size_t cap = kDefaultSubsetCap) {
    detail::require_complete(fan, "hhat");
    check_divisor(fan, d);
    const auto n = static_cast<std::size_t>(fan.dim());
    AsymptoticVector out(n + 1, Rational(0));
    for (auto subset : bounded_subsets(fan, cap)) {
        auto profile = local_cohomology_ranks(fan, subset);
        if (is_zero(profile)) continue;
        Rational vol = normalized_volume(region(fan, d, subset));
        if (vol == 0) continue;
        for (std::size_t i = 0; i <= n; ++i) out[i] += profile[i] * vol;
    }
    return out;
}

/// (D^n) = (-1)^n sum over bounded I of chi(Delta_I) * vol P_{D,I}. A Q-Cartier
/// divisor is first scaled to a Cartier multiple kD and the result divided by k^n.
inline Rational self_intersection(const Fan& fan, const Divisor& d, std::size_t cap = kDefaultSubsetCap) {
    detail::require_complete(fan, "self_intersection");
    check_divisor(fan, d);
    const Integer k = cartier_index(fan, d);  // throws when not Q-Cartier
    const Divisor kd = Rational(k) * d;
    const auto n = static_cast<unsigned>(fan.dim());
    Rational total = 0;
    for (auto subset : bounded_subsets(fan, cap)) {
        auto weight = chi_of_fan(subfan(fan, subset));
        if (weight == 0) continue;
        total += Rational(weight) * normalized_volume(region(fan, kd, subset));
    }
    if (n % 2 == 1) total = -total;
    return total / pow(Rational(k), n);
}

/// (self_intersection(D), sum_i (-1)^i hhat^i(D)); equal by asymptotic Riemann-Roch.
inline std::pair<Rational, Rational> asymptotic_rr_check(const Fan& fan, const Divisor& d,
                                                         std::size_t cap = kDefaultSubsetCap) {
    Rational lhs = self_intersection(fan, d, cap);
    auto h = hhat(fan, d, cap);
    Rational rhs = 0;
    for (std::size_t i = 0; i < h.size(); ++i) rhs += (i % 2 == 0) ? h[i] : Rational(-h[i]);
    return {lhs, rhs};
}

}  // namespace toric

#endif
