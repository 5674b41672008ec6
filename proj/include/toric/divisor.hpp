#ifndef TORIC_DIVISOR_HPP
#define TORIC_DIVISOR_HPP

#include "toric/fan.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace toric {

/// T-Weil divisor sum d_rho D_rho with rational coefficients, indexed like the fan's rays.
struct Divisor {
    Vector coeffs;

    Divisor() = default;
    explicit Divisor(Vector c) : coeffs(std::move(c)) {}
    Divisor(std::initializer_list<Rational> c) : coeffs(c) {}

    std::size_t size() const { return coeffs.size(); }
    const Rational& operator[](std::size_t i) const { return coeffs[i]; }
    Rational& operator[](std::size_t i) { return coeffs[i]; }

    static Divisor zero(std::size_t rays) { return Divisor(Vector(rays, Rational(0))); }
    static Divisor prime(std::size_t rays, std::size_t i, Rational c = 1) {
        Divisor d = zero(rays);
        d[i] = std::move(c);
        return d;
    }

    friend Divisor operator*(const Rational& c, Divisor d) {
        for (auto& x : d.coeffs) x *= c;
        return d;
    }
    friend Divisor operator+(Divisor a, const Divisor& b) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
        return a;
    }
    friend Divisor operator-(Divisor a, const Divisor& b) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
        return a;
    }
    friend bool operator==(const Divisor&, const Divisor&) = default;
};

inline void check_divisor(const Fan& fan, const Divisor& d) {
    if (d.size() != fan.ray_count())
        throw std::invalid_argument("divisor has " + std::to_string(d.size()) + " coefficients but the fan has " +
                                    std::to_string(fan.ray_count()) + " rays");
}

/// Local linear data u_sigma with <u_sigma, v_rho> = -d_rho on the rays of each maximal cone.
struct CartierData {
    std::vector<RayMask> cones;
    std::vector<Vector> u;

    const Vector& at(RayMask cone) const {
        for (std::size_t i = 0; i < cones.size(); ++i)
            if (cones[i] == cone) return u[i];
        throw std::out_of_range("cone not in Cartier data");
    }
};

inline std::optional<CartierData> is_q_cartier(const Fan& fan, const Divisor& d) {
    check_divisor(fan, d);
    const auto n = static_cast<std::size_t>(fan.dim());
    CartierData data;
    for (auto cone : fan.max_cones()) {
        Matrix a;
        Vector b;
        for (auto i : indices_of(cone)) {
            a.push_back(to_rational(fan.rays()[i]));
            b.push_back(-d[i]);
        }
        auto u = (rank(a) == n) ? solve_unique(a, b, n) : solve_any(a, b, n);
        if (!u) return std::nullopt;
        data.cones.push_back(cone);
        data.u.push_back(std::move(*u));
    }
    return data;
}

/// Smallest positive k such that k*d has integral coefficients and integral local data.
inline Integer cartier_index(const Fan& fan, const Divisor& d) {
    auto data = is_q_cartier(fan, d);
    if (!data) throw PreconditionError("divisor is not Q-Cartier");
    Integer k = 1;
    for (const auto& c : d.coeffs) k = lcm(k, denominator(c));
    for (const auto& u : data->u)
        for (const auto& x : u) k = lcm(k, denominator(x));
    return k;
}

namespace detail {

inline bool convexity_holds(const Fan& fan, const Divisor& d, bool strict) {
    if (!is_complete(fan)) throw PreconditionError("ampleness test requires a complete fan");
    auto data = is_q_cartier(fan, d);
    if (!data) return false;
    for (std::size_t k = 0; k < data->cones.size(); ++k) {
        for (std::size_t r = 0; r < fan.ray_count(); ++r) {
            if (contains(data->cones[k], r)) continue;
            Rational lhs = dot(data->u[k], fan.rays()[r]);
            if (strict ? !(lhs > -d[r]) : !(lhs >= -d[r])) return false;
        }
    }
    return true;
}

}  // namespace detail

/// Strict convexity of the support function across every wall.
inline bool is_ample(const Fan& fan, const Divisor& d) { return detail::convexity_holds(fan, d, true); }

/// Weak convexity: the closure of the ample cone.
inline bool is_nef(const Fan& fan, const Divisor& d) { return detail::convexity_holds(fan, d, false); }

/// d + div(chi^u).
inline Divisor linear_equiv_shift(const Fan& fan, const Divisor& d, const Vector& u) {
    check_divisor(fan, d);
    Divisor out = d;
    for (std::size_t i = 0; i < fan.ray_count(); ++i) out[i] += dot(u, fan.rays()[i]);
    return out;
}

}  // namespace toric

#endif
