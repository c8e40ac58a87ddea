#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "onto/error.hpp"
#include "onto/rational.hpp"

namespace onto::lp {

enum class Relation { less_equal, equal, greater_equal };

/// maximize objective . x  subject to rows, x >= 0.
template <class T>
class LinearProgram {
public:
    struct Row {
        std::vector<std::pair<std::size_t, T>> terms;
        Relation relation = Relation::equal;
        T rhs{};
    };

    std::size_t add_variable(T cost) {
        objective_.push_back(std::move(cost));
        return objective_.size() - 1;
    }
    void add_row(std::vector<std::pair<std::size_t, T>> terms, Relation relation, T rhs) {
        for (const auto& term : terms)
            if (term.first >= objective_.size()) throw InvalidArgument("LP row references an unknown variable");
        rows_.push_back(Row{std::move(terms), relation, std::move(rhs)});
    }

    std::size_t variables() const noexcept { return objective_.size(); }
    std::size_t constraints() const noexcept { return rows_.size(); }
    const std::vector<T>& objective() const noexcept { return objective_; }
    const std::vector<Row>& rows() const noexcept { return rows_; }

private:
    std::vector<T> objective_;
    std::vector<Row> rows_;
};

enum class Status { optimal, infeasible, unbounded, iteration_limit };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::optimal: return "optimal";
        case Status::infeasible: return "infeasible";
        case Status::unbounded: return "unbounded";
        case Status::iteration_limit: return "iteration_limit";
    }
    return "unknown";
}

template <class T>
struct Solution {
    Status status = Status::infeasible;
    T objective{};
    std::vector<T> x;
    /// One multiplier per row of the original program.
    std::vector<T> duals;
    std::size_t iterations = 0;
    /// Largest violation of an original row by x.
    double primal_residual = 0.0;
    /// Largest negative reduced cost at termination.
    double dual_infeasibility = 0.0;
    /// |b.y - c.x| / max(1, |c.x|).
    double duality_gap = 0.0;
};

struct Options {
    std::size_t max_iterations = 1'000'000;
    /// Consecutive degenerate pivots before switching from Dantzig to Bland.
    std::size_t degenerate_switch = 64;
};

namespace detail {

template <class T>
struct Arith;

template <>
struct Arith<double> {
    static constexpr bool exact = false;
    static bool negative(double v) { return v < -1e-10; }
    static bool positive_pivot(double v) { return v > 1e-9; }
    static bool nonzero(double v) { return std::abs(v) > 1e-12; }
    static double to_double(double v) { return v; }
};

template <>
struct Arith<Rational> {
    static constexpr bool exact = true;
    static bool negative(const Rational& v) { return sgn(v) < 0; }
    static bool positive_pivot(const Rational& v) { return sgn(v) > 0; }
    static bool nonzero(const Rational& v) { return sgn(v) != 0; }
    static double to_double(const Rational& v) { return v.get_d(); }
};

/// Dense two-phase tableau simplex.
template <class T>
class Tableau {
    using A = Arith<T>;

public:
    Tableau(const LinearProgram<T>& program, const Options& options) : program_(program), options_(options) {
        n_struct_ = program.variables();
        m_ = program.constraints();
        flipped_.assign(m_, false);
        identity_col_.assign(m_, 0);

        // Column layout: structural | slack/surplus | artificial.
        std::size_t next = n_struct_;
        std::vector<std::size_t> slack_col(m_, npos), art_col(m_, npos);
        for (std::size_t i = 0; i < m_; ++i) {
            const auto& row = program.rows()[i];
            Relation rel = row.relation;
            if (row.rhs < T{}) {
                flipped_[i] = true;
                if (rel == Relation::less_equal) rel = Relation::greater_equal;
                else if (rel == Relation::greater_equal) rel = Relation::less_equal;
            }
            if (rel != Relation::equal) slack_col[i] = next++;
            relation_.push_back(rel);
        }
        first_art_ = next;
        for (std::size_t i = 0; i < m_; ++i)
            if (relation_[i] != Relation::less_equal) art_col[i] = next++;
        n_cols_ = next;

        rows_.assign(m_, std::vector<T>(n_cols_ + 1, T{}));
        basis_.assign(m_, 0);
        for (std::size_t i = 0; i < m_; ++i) {
            const auto& row = program.rows()[i];
            const T sign = flipped_[i] ? T(-1) : T(1);
            for (const auto& [j, v] : row.terms) rows_[i][j] += sign * v;
            rows_[i][n_cols_] = sign * row.rhs;
            if (slack_col[i] != npos) rows_[i][slack_col[i]] = relation_[i] == Relation::less_equal ? T(1) : T(-1);
            if (art_col[i] != npos) {
                rows_[i][art_col[i]] = T(1);
                basis_[i] = art_col[i];
                identity_col_[i] = art_col[i];
            } else {
                basis_[i] = slack_col[i];
                identity_col_[i] = slack_col[i];
            }
        }
    }

    Solution<T> solve() {
        Solution<T> sol;
        // Phase 1: maximize -sum(artificials).
        if (first_art_ < n_cols_) {
            std::vector<T> cost(n_cols_, T{});
            for (std::size_t j = first_art_; j < n_cols_; ++j) cost[j] = T(-1);
            price(cost);
            const Status s = iterate(n_cols_, sol.iterations);
            if (s == Status::iteration_limit) {
                sol.status = s;
                return sol;
            }
            if (A::negative(objective_row_[n_cols_])) {
                sol.status = Status::infeasible;
                return sol;
            }
            drive_out_artificials();
        }
        // Phase 2 on the original objective; artificial columns may not enter.
        std::vector<T> cost(n_cols_, T{});
        for (std::size_t j = 0; j < n_struct_; ++j) cost[j] = program_.objective()[j];
        price(cost);
        const Status s = iterate(first_art_, sol.iterations);
        sol.status = s;
        if (s != Status::optimal) return sol;

        sol.x.assign(n_struct_, T{});
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] < n_struct_) sol.x[basis_[i]] = rows_[i][n_cols_];
        if constexpr (!A::exact)
            for (auto& v : sol.x)
                if (v < 0 && v > -1e-12) v = 0;
        sol.objective = T{};
        for (std::size_t j = 0; j < n_struct_; ++j) sol.objective += program_.objective()[j] * sol.x[j];

        sol.duals.assign(m_, T{});
        T dual_obj{};
        for (std::size_t i = 0; i < m_; ++i) {
            T y = objective_row_[identity_col_[i]];
            if (flipped_[i]) y = -y;
            dual_obj += y * program_.rows()[i].rhs;
            sol.duals[i] = y;
        }
        double worst = 0.0;
        for (std::size_t j = 0; j < first_art_; ++j)
            worst = std::max(worst, -A::to_double(objective_row_[j]));
        sol.dual_infeasibility = worst;
        const double primal = A::to_double(sol.objective);
        sol.duality_gap = std::abs(A::to_double(dual_obj) - primal) / std::max(1.0, std::abs(primal));
        sol.primal_residual = residual(sol.x);
        return sol;
    }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    void price(const std::vector<T>& cost) {
        cost_ = cost;
        objective_row_.assign(n_cols_ + 1, T{});
        for (std::size_t j = 0; j < n_cols_; ++j) objective_row_[j] = -cost[j];
        for (std::size_t i = 0; i < m_; ++i) {
            const T& cb = cost[basis_[i]];
            if (!A::nonzero(cb)) continue;
            for (std::size_t j = 0; j <= n_cols_; ++j)
                if (A::nonzero(rows_[i][j])) objective_row_[j] += cb * rows_[i][j];
        }
    }

    std::size_t choose_entering(std::size_t limit, bool bland) const {
        std::size_t best = npos;
        for (std::size_t j = 0; j < limit; ++j) {
            if (!A::negative(objective_row_[j])) continue;
            if (bland) return j;
            if (best == npos || objective_row_[j] < objective_row_[best]) best = j;
        }
        return best;
    }

    std::size_t choose_leaving(std::size_t col) const {
        std::size_t best = npos;
        T best_ratio{};
        for (std::size_t i = 0; i < m_; ++i) {
            const T& a = rows_[i][col];
            if (!A::positive_pivot(a)) continue;
            T ratio = rows_[i][n_cols_] / a;
            if constexpr (!A::exact)
                if (ratio < 0) ratio = 0;
            if (best == npos || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[best])) {
                best = i;
                best_ratio = ratio;
            }
        }
        return best;
    }

    Status iterate(std::size_t limit, std::size_t& iterations) {
        std::size_t degenerate_run = 0;
        for (;;) {
            const bool bland = A::exact || degenerate_run >= options_.degenerate_switch;
            const std::size_t col = choose_entering(limit, bland);
            if (col == npos) return Status::optimal;
            const std::size_t row = choose_leaving(col);
            if (row == npos) return Status::unbounded;
            if (++iterations > options_.max_iterations) return Status::iteration_limit;
            const bool degenerate = !A::nonzero(rows_[row][n_cols_]);
            degenerate_run = degenerate ? degenerate_run + 1 : 0;
            pivot(row, col);
        }
    }

    void pivot(std::size_t r, std::size_t s) {
        auto& prow = rows_[r];
        const T inv = T(1) / prow[s];
        std::vector<std::size_t> nz;
        for (std::size_t j = 0; j <= n_cols_; ++j) {
            if (!A::nonzero(prow[j])) {
                prow[j] = T{};
                continue;
            }
            prow[j] *= inv;
            nz.push_back(j);
        }
        prow[s] = T(1);
        auto eliminate = [&](std::vector<T>& target) {
            const T f = target[s];
            if (!A::nonzero(f)) return;
            for (std::size_t j : nz) target[j] -= f * prow[j];
            target[s] = T{};
        };
        for (std::size_t i = 0; i < m_; ++i)
            if (i != r) eliminate(rows_[i]);
        eliminate(objective_row_);
        basis_[r] = s;
    }

    void drive_out_artificials() {
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < first_art_) continue;
            for (std::size_t j = 0; j < first_art_; ++j) {
                if (A::nonzero(rows_[i][j]) && (A::exact || std::abs(A::to_double(rows_[i][j])) > 1e-9)) {
                    pivot(i, j);
                    break;
                }
            }
        }
    }

    double residual(const std::vector<T>& x) const {
        double worst = 0.0;
        for (const auto& row : program_.rows()) {
            T lhs{};
            for (const auto& [j, v] : row.terms) lhs += v * x[j];
            const double diff = A::to_double(lhs - row.rhs);
            double viol = 0.0;
            switch (row.relation) {
                case Relation::equal: viol = std::abs(diff); break;
                case Relation::less_equal: viol = std::max(0.0, diff); break;
                case Relation::greater_equal: viol = std::max(0.0, -diff); break;
            }
            worst = std::max(worst, viol);
        }
        for (const auto& v : x) worst = std::max(worst, -A::to_double(v));
        return worst;
    }

    const LinearProgram<T>& program_;
    Options options_;
    std::size_t n_struct_ = 0;
    std::size_t m_ = 0;
    std::size_t n_cols_ = 0;
    std::size_t first_art_ = 0;
    std::vector<bool> flipped_;
    std::vector<Relation> relation_;
    std::vector<std::size_t> identity_col_;
    std::vector<std::vector<T>> rows_;
    std::vector<std::size_t> basis_;
    std::vector<T> cost_;
    std::vector<T> objective_row_;
};

}  // namespace detail

/// Two-phase simplex. The double instantiation uses Dantzig pricing with a
/// Bland fallback on degenerate stalls; the Rational instantiation always
/// uses Bland's rule and is exact.
template <class T>
Solution<T> solve(const LinearProgram<T>& program, const Options& options = {}) {
    detail::Tableau<T> tableau(program, options);
    return tableau.solve();
}

}  // namespace onto::lp
