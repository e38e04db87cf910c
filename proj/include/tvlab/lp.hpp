#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "tvlab/error.hpp"
#include "tvlab/rational.hpp"

namespace tvlab {

/// x >= 0 with A x = b.
struct Feasible
{
    Vector x;
};

/// Farkas certificate: y^T A <= 0 componentwise and y^T b > 0.
struct Infeasible
{
    Vector y;
};

using FeasibilityResult = std::variant<Feasible, Infeasible>;

inline bool is_feasible(const FeasibilityResult& r) { return std::holds_alternative<Feasible>(r); }

/// Checks a primal witness exactly.
inline bool verifies_feasible(const RationalMatrix& A, const Vector& b, const Vector& x)
{
    if (x.size() != A.cols() || b.size() != A.rows()) return false;
    for (const auto& xi : x)
        if (xi < 0) return false;
    return A * x == b;
}

/// Checks a Farkas certificate exactly.
inline bool verifies_farkas(const RationalMatrix& A, const Vector& b, const Vector& y)
{
    if (y.size() != A.rows() || b.size() != A.rows()) return false;
    for (std::size_t c = 0; c < A.cols(); ++c) {
        Rational s = 0;
        for (std::size_t r = 0; r < A.rows(); ++r) s += y[r] * A(r, c);
        if (s > 0) return false;
    }
    return dot(y, b) > 0;
}

namespace detail {

// Phase-1 tableau for min 1^T a  s.t.  S A x + a = S b,  x, a >= 0, where S flips
// rows so that the right-hand side is nonnegative. Artificial columns are kept
// for the whole run so their reduced costs give the optimal duals.
class PhaseOneTableau
{
public:
    PhaseOneTableau(const RationalMatrix& A, const Vector& b)
        : m_(A.rows()), n_(A.cols()), width_(A.cols() + A.rows()), sign_(m_, 1), basis_(m_),
          t_(m_, Vector(width_ + 1)), cost_(width_ + 1)
    {
        for (std::size_t i = 0; i < m_; ++i) {
            if (b[i] < 0) sign_[i] = -1;
            for (std::size_t j = 0; j < n_; ++j) t_[i][j] = A(i, j) * sign_[i];
            t_[i][n_ + i] = 1;
            t_[i][width_] = b[i] * sign_[i];
            basis_[i] = n_ + i;
        }
        // Reduced costs start at c_j - 1^T (column j); the rhs slot carries -objective.
        for (std::size_t j = 0; j < n_; ++j)
            for (std::size_t i = 0; i < m_; ++i) cost_[j] -= t_[i][j];
        for (std::size_t i = 0; i < m_; ++i) cost_[width_] -= t_[i][width_];
    }

    void run()
    {
        for (;;) {
            // Bland: lowest-index improving column, lowest-index leaving variable on ties.
            std::size_t enter = width_;
            for (std::size_t j = 0; j < width_; ++j) {
                if (cost_[j] < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == width_) return;

            std::size_t leave = m_;
            Rational best;
            for (std::size_t i = 0; i < m_; ++i) {
                if (t_[i][enter] <= 0) continue;
                Rational ratio = t_[i][width_] / t_[i][enter];
                if (leave == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = std::move(ratio);
                }
            }
            // The phase-1 objective is bounded below by zero.
            if (leave == m_) throw InternalError("phase-1 simplex reported an unbounded ray");
            pivot(leave, enter);
        }
    }

    Rational objective() const { return -cost_[width_]; }

    Vector primal() const
    {
        Vector x(n_);
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] < n_) x[basis_[i]] = t_[i][width_];
        return x;
    }

    /// Duals of the original (unflipped) rows: y_i = s_i (1 - reduced cost of artificial i).
    Vector farkas() const
    {
        Vector y(m_);
        for (std::size_t i = 0; i < m_; ++i) y[i] = (Rational(1) - cost_[n_ + i]) * sign_[i];
        return y;
    }

private:
    void pivot(std::size_t row, std::size_t col)
    {
        Rational p = t_[row][col];
        for (auto& v : t_[row]) v /= p;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == row || t_[i][col] == 0) continue;
            Rational f = t_[i][col];
            for (std::size_t j = 0; j <= width_; ++j)
                if (t_[row][j] != 0) t_[i][j] -= f * t_[row][j];
        }
        if (cost_[col] != 0) {
            Rational f = cost_[col];
            for (std::size_t j = 0; j <= width_; ++j)
                if (t_[row][j] != 0) cost_[j] -= f * t_[row][j];
        }
        basis_[row] = col;
    }

    std::size_t m_, n_, width_;
    std::vector<int> sign_;
    std::vector<std::size_t> basis_;
    std::vector<Vector> t_;
    Vector cost_;
};

}  // namespace detail

/// Decides whether {x >= 0 : A x = b} is nonempty, exactly.
///
/// Phase-1 simplex under Bland's rule, so termination does not depend on
/// degeneracy. The returned certificate has already been re-verified: a
/// Feasible x satisfies A x = b, an Infeasible y satisfies y^T A <= 0 and
/// y^T b > 0. A system with zero rows is feasible at x = 0.
inline FeasibilityResult solve_feasibility(const RationalMatrix& A, const Vector& b)
{
    if (A.rows() != b.size()) throw InputError("solve_feasibility: A has " + std::to_string(A.rows()) +
                                               " rows but b has length " + std::to_string(b.size()));
    if (A.rows() == 0) return Feasible{Vector(A.cols())};

    detail::PhaseOneTableau tableau(A, b);
    tableau.run();
    if (tableau.objective() == 0) {
        Vector x = tableau.primal();
        if (!verifies_feasible(A, b, x)) throw InternalError("simplex primal solution failed re-substitution");
        return Feasible{std::move(x)};
    }
    Vector y = tableau.farkas();
    if (!verifies_farkas(A, b, y)) throw InternalError("phase-1 dual failed the Farkas inequalities");
    return Infeasible{std::move(y)};
}

/// Exact rank. Rows are scaled to integers and reduced by Bareiss
/// fraction-free elimination.
inline std::size_t rank(const RationalMatrix& A)
{
    const std::size_t rows = A.rows(), cols = A.cols();
    std::vector<std::vector<Integer>> m(rows, std::vector<Integer>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        Integer l = 1;
        for (std::size_t c = 0; c < cols; ++c) l = boost::multiprecision::lcm(l, denominator(A(r, c)));
        for (std::size_t c = 0; c < cols; ++c) m[r][c] = numerator(A(r, c)) * (l / denominator(A(r, c)));
    }

    std::size_t rk = 0;
    Integer prev = 1;
    for (std::size_t c = 0; c < cols && rk < rows; ++c) {
        std::size_t piv = rk;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[rk]);
        for (std::size_t r = rk + 1; r < rows; ++r) {
            for (std::size_t j = c + 1; j < cols; ++j)
                m[r][j] = (m[rk][c] * m[r][j] - m[r][c] * m[rk][j]) / prev;
            m[r][c] = 0;
        }
        prev = m[rk][c];
        ++rk;
    }
    return rk;
}

}  // namespace tvlab
