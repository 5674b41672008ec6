#ifndef TORIC_FAN_HPP
#define TORIC_FAN_HPP

#include "toric/linalg.hpp"
#include "toric/lp.hpp"
#include "toric/rational.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <vector>

namespace toric {

/// Set of ray indices, bit i standing for ray i.
using RayMask = std::uint64_t;

inline constexpr std::size_t kMaxRays = 64;

inline RayMask ray_bit(std::size_t i) { return RayMask{1} << i; }
inline bool contains(RayMask set, std::size_t i) { return (set >> i) & 1U; }
inline bool is_subset(RayMask a, RayMask b) { return (a & ~b) == 0; }
inline int popcount(RayMask m) { return std::popcount(m); }
inline RayMask full_mask(std::size_t n) { return n >= 64 ? ~RayMask{0} : ray_bit(n) - 1; }

inline std::vector<std::size_t> indices_of(RayMask m) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; m != 0; ++i, m >>= 1)
        if (m & 1U) out.push_back(i);
    return out;
}

inline RayMask mask_of(const std::vector<std::size_t>& idx) {
    RayMask m = 0;
    for (auto i : idx) m |= ray_bit(i);
    return m;
}

struct Cone {
    RayMask rays = 0;
    int dim = 0;

    friend bool operator==(const Cone&, const Cone&) = default;
};

/// Unvalidated fan description as read from a document.
struct RawFan {
    int dim = 0;
    std::vector<IntVector> rays;
    std::vector<std::vector<std::size_t>> cones;
};

struct Diagnostic {
    enum class Severity { Warning, Error };
    Severity severity;
    std::string message;
};

namespace detail {

struct FanData {
    int dim = 0;
    std::vector<IntVector> rays;
    std::vector<RayMask> max_cones;
    std::vector<Cone> cones;  // every face, sorted by (dim, mask); includes the zero cone
};

// Write-once memo tables shared by every copy of a fan.
struct FanCache {
    mutable std::shared_mutex mutex;
    std::optional<std::vector<RayMask>> bounded_subsets;
    std::map<std::pair<RayMask, int>, std::vector<int>> profiles;
};

inline std::vector<Vector> rays_as_rational(const std::vector<IntVector>& rays, RayMask m) {
    std::vector<Vector> out;
    for (auto i : indices_of(m)) out.push_back(to_rational(rays[i]));
    return out;
}

inline std::size_t rank_of(const std::vector<IntVector>& rays, RayMask m) {
    std::vector<IntVector> vs;
    for (auto i : indices_of(m)) vs.push_back(rays[i]);
    return rank_of_vectors(vs);
}

// A subset `face` of the generators `cone` spans a face whose generators are
// exactly `face` iff some functional vanishes on `face` and is positive on the rest.
inline bool is_exact_face(const std::vector<IntVector>& rays, int dim, RayMask cone, RayMask face) {
    std::vector<lp::Constraint> cons;
    for (auto i : indices_of(cone)) {
        Vector row = to_rational(rays[i]);
        if (contains(face, i))
            cons.push_back({std::move(row), lp::Relation::Equal, 0});
        else
            cons.push_back({std::move(row), lp::Relation::GreaterEq, 1});
    }
    return lp::feasible(cons, static_cast<std::size_t>(dim));
}

// Cones a and b meet exactly in the cone over their common generators, which is
// a face of each, iff a functional separates them through that common face.
inline bool properly_intersect(const std::vector<IntVector>& rays, int dim, RayMask a, RayMask b) {
    RayMask common = a & b;
    std::vector<lp::Constraint> cons;
    for (auto i : indices_of(a | b)) {
        Vector row = to_rational(rays[i]);
        if (contains(common, i))
            cons.push_back({std::move(row), lp::Relation::Equal, 0});
        else if (contains(a, i))
            cons.push_back({std::move(row), lp::Relation::GreaterEq, 1});
        else
            cons.push_back({std::move(row), lp::Relation::LessEq, -1});
    }
    return lp::feasible(cons, static_cast<std::size_t>(dim));
}

inline std::vector<Cone> faces_of(const std::vector<IntVector>& rays, int dim, RayMask cone) {
    std::vector<Cone> out;
    const auto idx = indices_of(cone);
    const std::size_t k = idx.size();
    const bool simplicial = rank_of(rays, cone) == k;
    for (RayMask sub = 0; sub < (RayMask{1} << k); ++sub) {
        RayMask face = 0;
        for (std::size_t j = 0; j < k; ++j)
            if (contains(sub, j)) face |= ray_bit(idx[j]);
        if (simplicial || is_exact_face(rays, dim, cone, face))
            out.push_back({face, static_cast<int>(rank_of(rays, face))});
    }
    return out;
}

inline IntVector primitive(const IntVector& v) {
    std::int64_t g = 0;
    for (auto x : v) g = std::gcd(g, x < 0 ? -x : x);
    IntVector out = v;
    if (g > 1)
        for (auto& x : out) x /= g;
    return out;
}

}  // namespace detail

/// A validated rational fan in N = Z^n. Immutable; copies share storage and memo tables.
class Fan {
public:
    int dim() const { return data_->dim; }
    const std::vector<IntVector>& rays() const { return data_->rays; }
    std::size_t ray_count() const { return data_->rays.size(); }
    const std::vector<RayMask>& max_cones() const { return data_->max_cones; }
    const std::vector<Cone>& cones() const { return data_->cones; }
    RayMask all_rays() const { return full_mask(ray_count()); }

    /// Rays that are one-dimensional cones of this fan.
    RayMask used_rays() const {
        RayMask m = 0;
        for (auto c : data_->max_cones) m |= c;
        return m;
    }

    bool same_as(const Fan& other) const { return data_ == other.data_; }

    detail::FanCache& cache() const { return *cache_; }

    /// Builds a fan from data already known to be valid (faces are recomputed).
    static Fan from_valid(int dim, std::vector<IntVector> rays, std::vector<RayMask> max_cones) {
        auto data = std::make_shared<detail::FanData>();
        data->dim = dim;
        data->rays = std::move(rays);
        std::set<std::pair<int, RayMask>> seen;
        for (auto c : max_cones)
            for (const auto& f : detail::faces_of(data->rays, dim, c)) seen.insert({f.dim, f.rays});
        if (max_cones.empty()) seen.insert({0, 0});
        for (const auto& [d, m] : seen) data->cones.push_back({m, d});
        // keep only cones not strictly contained in another listed cone
        std::sort(max_cones.begin(), max_cones.end());
        max_cones.erase(std::unique(max_cones.begin(), max_cones.end()), max_cones.end());
        std::vector<RayMask> maximal;
        for (auto c : max_cones) {
            bool dominated = false;
            for (auto d : max_cones)
                if (c != d && is_subset(c, d)) dominated = true;
            if (!dominated) maximal.push_back(c);
        }
        data->max_cones = std::move(maximal);
        return Fan(std::move(data));
    }

private:
    explicit Fan(std::shared_ptr<const detail::FanData> d)
        : data_(std::move(d)), cache_(std::make_shared<detail::FanCache>()) {}

    std::shared_ptr<const detail::FanData> data_;
    std::shared_ptr<detail::FanCache> cache_;
};

struct ValidationResult {
    std::optional<Fan> fan;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return fan.has_value(); }
    std::string summary() const {
        std::ostringstream os;
        for (const auto& d : diagnostics)
            os << (d.severity == Diagnostic::Severity::Error ? "error: " : "warning: ") << d.message << '\n';
        return os.str();
    }
};

struct ValidationOptions {
    /// Replace non-primitive rays by their primitive generator (with a warning)
    /// instead of reporting them as errors.
    bool primitivize = true;
};

/// Checks a raw fan description. On success the fan holds the primitive rays and
/// the maximal listed cones; otherwise every violation found is reported.
inline ValidationResult validate_fan(const RawFan& raw, ValidationOptions opts = {}) {
    ValidationResult res;
    auto error = [&](std::string msg) { res.diagnostics.push_back({Diagnostic::Severity::Error, std::move(msg)}); };
    auto warn = [&](std::string msg) { res.diagnostics.push_back({Diagnostic::Severity::Warning, std::move(msg)}); };

    if (raw.dim < 1) {
        error("dimension must be positive");
        return res;
    }
    if (raw.rays.size() > kMaxRays) {
        error("at most " + std::to_string(kMaxRays) + " rays are supported");
        return res;
    }
    std::vector<IntVector> rays;
    bool shape_ok = true;
    for (std::size_t i = 0; i < raw.rays.size(); ++i) {
        const auto& v = raw.rays[i];
        if (v.size() != static_cast<std::size_t>(raw.dim)) {
            error("ray " + std::to_string(i) + " has wrong length");
            shape_ok = false;
            rays.push_back(v);
            continue;
        }
        if (std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; })) {
            error("ray " + std::to_string(i) + " is zero");
            shape_ok = false;
            rays.push_back(v);
            continue;
        }
        IntVector p = detail::primitive(v);
        if (p != v) {
            if (opts.primitivize) {
                warn("ray " + std::to_string(i) + " not primitive; replaced by its primitive generator");
            } else {
                error("ray " + std::to_string(i) + " not primitive");
            }
        }
        rays.push_back(p);
    }
    for (std::size_t i = 0; i < rays.size(); ++i)
        for (std::size_t j = i + 1; j < rays.size(); ++j)
            if (rays[i] == rays[j]) error("rays " + std::to_string(i) + " and " + std::to_string(j) + " coincide");

    std::vector<RayMask> cones;
    for (std::size_t k = 0; k < raw.cones.size(); ++k) {
        RayMask m = 0;
        bool ok = true;
        for (auto i : raw.cones[k]) {
            if (i >= rays.size()) {
                error("cone " + std::to_string(k) + " references missing ray " + std::to_string(i));
                ok = false;
            } else if (contains(m, i)) {
                error("cone " + std::to_string(k) + " lists ray " + std::to_string(i) + " twice");
                ok = false;
            } else {
                m |= ray_bit(i);
            }
        }
        if (ok) cones.push_back(m);
    }
    bool has_error = std::any_of(res.diagnostics.begin(), res.diagnostics.end(),
                                 [](const Diagnostic& d) { return d.severity == Diagnostic::Severity::Error; });
    if (!shape_ok || has_error) return res;

    std::vector<bool> cone_ok(cones.size(), true);
    for (std::size_t k = 0; k < cones.size(); ++k) {
        if (!detail::is_exact_face(rays, raw.dim, cones[k], 0)) {
            error("cone " + std::to_string(k) + " is not strongly convex");
            cone_ok[k] = false;
            continue;
        }
        for (auto i : indices_of(cones[k])) {
            if (!detail::is_exact_face(rays, raw.dim, cones[k], ray_bit(i))) {
                error("ray " + std::to_string(i) + " is not an extreme ray of cone " + std::to_string(k));
                cone_ok[k] = false;
            }
        }
    }
    for (std::size_t a = 0; a < cones.size(); ++a)
        for (std::size_t b = a + 1; b < cones.size(); ++b)
            if (cone_ok[a] && cone_ok[b] && !detail::properly_intersect(rays, raw.dim, cones[a], cones[b]))
                error("improper intersection of cones " + std::to_string(a) + " and " + std::to_string(b));

    RayMask used = 0;
    for (auto c : cones) used |= c;
    for (std::size_t i = 0; i < rays.size(); ++i)
        if (!contains(used, i)) error("ray " + std::to_string(i) + " is not used by any cone");

    has_error = std::any_of(res.diagnostics.begin(), res.diagnostics.end(),
                            [](const Diagnostic& d) { return d.severity == Diagnostic::Severity::Error; });
    if (has_error) return res;
    res.fan = Fan::from_valid(raw.dim, std::move(rays), std::move(cones));
    return res;
}

/// Validates and throws std::invalid_argument carrying the diagnostics on failure.
inline Fan make_fan(const RawFan& raw, ValidationOptions opts = {}) {
    auto res = validate_fan(raw, opts);
    if (!res.ok()) throw std::invalid_argument("invalid fan:\n" + res.summary());
    return *res.fan;
}

/// Cones grouped by dimension 0..n.
inline std::vector<std::vector<Cone>> all_cones(const Fan& fan) {
    std::vector<std::vector<Cone>> out(static_cast<std::size_t>(fan.dim()) + 1);
    for (const auto& c : fan.cones()) out[static_cast<std::size_t>(c.dim)].push_back(c);
    return out;
}

inline bool is_simplicial(const Fan& fan) {
    for (auto c : fan.max_cones())
        if (detail::rank_of(fan.rays(), c) != static_cast<std::size_t>(popcount(c))) return false;
    return true;
}

/// |fan| = N_R, by the facet-pairing criterion.
inline bool is_complete(const Fan& fan) {
    if (fan.max_cones().empty()) return false;
    const auto n = fan.dim();
    std::map<RayMask, int> facet_uses;
    for (auto c : fan.max_cones()) {
        if (detail::rank_of(fan.rays(), c) != static_cast<std::size_t>(n)) return false;
        for (const auto& f : fan.cones())
            if (f.dim == n - 1 && is_subset(f.rays, c)) ++facet_uses[f.rays];
    }
    return std::all_of(facet_uses.begin(), facet_uses.end(), [](const auto& kv) { return kv.second == 2; });
}

/// The subfan of cones all of whose rays lie in `subset`. Ray indexing is preserved.
inline Fan subfan(const Fan& fan, RayMask subset) {
    std::vector<RayMask> kept;
    for (const auto& c : fan.cones())
        if (is_subset(c.rays, subset)) kept.push_back(c.rays);
    return Fan::from_valid(fan.dim(), fan.rays(), std::move(kept));
}

/// Alternating cone count sum_j (-1)^j #cones(j).
inline std::int64_t chi_of_fan(const Fan& fan) {
    std::int64_t chi = 0;
    for (const auto& c : fan.cones()) chi += (c.dim % 2 == 0) ? 1 : -1;
    return chi;
}

/// Lattice index of the sublattice generated by a simplicial cone's rays in its
/// saturation: the gcd of the maximal minors of the generator matrix.
inline Integer cone_multiplicity(const Fan& fan, RayMask cone) {
    const auto idx = indices_of(cone);
    const std::size_t k = idx.size();
    if (detail::rank_of(fan.rays(), cone) != k) throw PreconditionError("cone multiplicity requires a simplicial cone");
    if (k == 0) return 1;
    const auto n = static_cast<std::size_t>(fan.dim());
    Integer g = 0;
    std::vector<std::size_t> rows(k);
    std::iota(rows.begin(), rows.end(), 0);
    // iterate k-subsets of coordinate rows
    for (;;) {
        std::vector<IntVector> minor(k, IntVector(k));
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b) minor[a][b] = fan.rays()[idx[b]][rows[a]];
        Integer d = determinant(minor);
        g = gcd(g, d < 0 ? Integer(-d) : d);
        std::size_t i = k;
        while (i > 0 && rows[i - 1] == n - k + (i - 1)) --i;
        if (i == 0) break;
        ++rows[i - 1];
        for (std::size_t j = i; j < k; ++j) rows[j] = rows[j - 1] + 1;
    }
    return g;
}

/// Whether `point` lies in the cone positively spanned by the given rays.
inline bool cone_contains(const std::vector<IntVector>& rays, RayMask cone, const Vector& point) {
    const auto idx = indices_of(cone);
    const std::size_t n = point.size();
    std::vector<lp::Constraint> cons;
    for (std::size_t i = 0; i < n; ++i) {
        Vector row(idx.size());
        for (std::size_t j = 0; j < idx.size(); ++j) row[j] = rays[idx[j]][i];
        cons.push_back({std::move(row), lp::Relation::Equal, point[i]});
    }
    for (std::size_t j = 0; j < idx.size(); ++j) {
        Vector row(idx.size(), Rational(0));
        row[j] = 1;
        cons.push_back({std::move(row), lp::Relation::GreaterEq, 0});
    }
    return lp::feasible(cons, idx.size());
}

}  // namespace toric

#endif
