#ifndef TORIC_LP_HPP
#define TORIC_LP_HPP

#include "toric/rational.hpp"

#include <optional>
#include <vector>

namespace toric::lp {

enum class Relation { LessEq, GreaterEq, Equal };

struct Constraint {
    Vector coeffs;
    Relation rel;
    Rational rhs;
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
    Status status = Status::Infeasible;
    Rational value;
    Vector x;
};

namespace detail {

// Dense two-phase simplex over the rationals with Bland's anti-cycling rule.
// All variables of the tableau are nonnegative; free user variables are split.
class Tableau {
public:
    Tableau(const std::vector<Constraint>& cons, std::size_t nvars) : nvars_(nvars) {
        std::size_t slack_count = 0, art_count = 0;
        for (const auto& c : cons) {
            bool flip = c.rhs < 0;
            Relation r = c.rel;
            if (flip && r != Relation::Equal) r = (r == Relation::LessEq) ? Relation::GreaterEq : Relation::LessEq;
            if (r != Relation::Equal) ++slack_count;
            if (r != Relation::LessEq) ++art_count;
        }
        slack_begin_ = 2 * nvars;
        art_begin_ = slack_begin_ + slack_count;
        cols_ = art_begin_ + art_count;

        std::size_t slack = slack_begin_, art = art_begin_;
        for (const auto& c : cons) {
            Vector row(cols_ + 1, Rational(0));
            bool flip = c.rhs < 0;
            Rational sgn = flip ? -1 : 1;
            Relation r = c.rel;
            if (flip && r != Relation::Equal) r = (r == Relation::LessEq) ? Relation::GreaterEq : Relation::LessEq;
            for (std::size_t j = 0; j < nvars; ++j) {
                row[j] = sgn * c.coeffs[j];
                row[nvars + j] = -row[j];
            }
            row[cols_] = sgn * c.rhs;
            if (r == Relation::LessEq) {
                row[slack] = 1;
                basis_.push_back(slack++);
            } else if (r == Relation::GreaterEq) {
                row[slack++] = -1;
                row[art] = 1;
                basis_.push_back(art++);
            } else {
                row[art] = 1;
                basis_.push_back(art++);
            }
            rows_.push_back(std::move(row));
        }
        blocked_.assign(cols_, false);
    }

    bool phase_one() {
        Vector cost(cols_, Rational(0));
        for (std::size_t j = art_begin_; j < cols_; ++j) cost[j] = -1;
        run(cost);  // bounded below by zero, never unbounded
        Rational total = 0;
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (basis_[i] >= art_begin_) total += rows_[i][cols_];
        if (total != 0) return false;
        // Drive zero-valued artificials out of the basis; drop redundant rows.
        for (std::size_t i = 0; i < rows_.size();) {
            if (basis_[i] < art_begin_) { ++i; continue; }
            std::size_t enter = cols_;
            for (std::size_t j = 0; j < art_begin_; ++j)
                if (rows_[i][j] != 0) { enter = j; break; }
            if (enter == cols_) {
                rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
                basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
                continue;
            }
            pivot(i, enter);
            ++i;
        }
        for (std::size_t j = art_begin_; j < cols_; ++j) blocked_[j] = true;
        return true;
    }

    /// Maximizes cost over the current feasible basis. Returns false if unbounded.
    bool run(const Vector& cost) {
        for (;;) {
            std::size_t enter = cols_;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (blocked_[j]) continue;
                Rational reduced = cost[j];
                for (std::size_t i = 0; i < rows_.size(); ++i)
                    if (rows_[i][j] != 0) reduced -= cost[basis_[i]] * rows_[i][j];
                if (reduced > 0) { enter = j; break; }
            }
            if (enter == cols_) return true;
            std::size_t leave = rows_.size();
            Rational best;
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                if (rows_[i][enter] <= 0) continue;
                Rational ratio = rows_[i][cols_] / rows_[i][enter];
                if (leave == rows_.size() || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == rows_.size()) return false;
            pivot(leave, enter);
        }
    }

    Vector user_solution() const {
        Vector values(cols_, Rational(0));
        for (std::size_t i = 0; i < rows_.size(); ++i) values[basis_[i]] = rows_[i][cols_];
        Vector x(nvars_);
        for (std::size_t j = 0; j < nvars_; ++j) x[j] = values[j] - values[nvars_ + j];
        return x;
    }

    Vector lift_cost(const Vector& objective) const {
        Vector cost(cols_, Rational(0));
        for (std::size_t j = 0; j < nvars_; ++j) {
            cost[j] = objective[j];
            cost[nvars_ + j] = -objective[j];
        }
        return cost;
    }

private:
    void pivot(std::size_t r, std::size_t c) {
        Rational inv = 1 / rows_[r][c];
        for (auto& x : rows_[r]) x *= inv;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (i == r || rows_[i][c] == 0) continue;
            Rational f = rows_[i][c];
            for (std::size_t j = 0; j <= cols_; ++j)
                if (rows_[r][j] != 0) rows_[i][j] -= f * rows_[r][j];
        }
        basis_[r] = c;
    }

    std::size_t nvars_;
    std::size_t slack_begin_ = 0, art_begin_ = 0, cols_ = 0;
    std::vector<Vector> rows_;
    std::vector<std::size_t> basis_;
    std::vector<bool> blocked_;
};

}  // namespace detail

/// Maximizes objective . x over free variables x subject to the constraints.
inline Result maximize(const Vector& objective, const std::vector<Constraint>& cons, std::size_t nvars) {
    detail::Tableau t(cons, nvars);
    Result res;
    if (!t.phase_one()) {
        res.status = Status::Infeasible;
        return res;
    }
    if (!t.run(t.lift_cost(objective))) {
        res.status = Status::Unbounded;
        return res;
    }
    res.status = Status::Optimal;
    res.x = t.user_solution();
    res.value = dot(objective, res.x);
    return res;
}

/// A feasible point of the system, if any.
inline std::optional<Vector> find_feasible(const std::vector<Constraint>& cons, std::size_t nvars) {
    detail::Tableau t(cons, nvars);
    if (!t.phase_one()) return std::nullopt;
    return t.user_solution();
}

inline bool feasible(const std::vector<Constraint>& cons, std::size_t nvars) {
    return find_feasible(cons, nvars).has_value();
}

}  // namespace toric::lp

#endif
