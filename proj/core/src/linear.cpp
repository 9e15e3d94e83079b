#include "covlab/linear.hpp"

#include <stdexcept>
#include <utility>

namespace covlab {

std::string rat_to_string(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(boost::multiprecision::cpp_int(s));
    return Rat(boost::multiprecision::cpp_int(s.substr(0, slash)),
               boost::multiprecision::cpp_int(s.substr(slash + 1)));
}

// Standard-form tableau simplex, exact arithmetic, Bland's anticycling rule.
//
//   maximize  Σ_{i<n} x_i
//   s.t.      A x = 0                (m rows; artificial basis, all start 0)
//             x_i + s_i = 1          (n rows; slack basis)
//             x, s, artificials >= 0
//
// Artificial columns carry an exact Big-M penalty (costs are lexicographic
// pairs (M-coefficient, unit part)), so the optimum has all artificials at
// zero whenever Ax = 0 is satisfiable -- and x = 0 shows it always is.  The
// objective is bounded, so the loop terminates by Bland's rule.
LinearSolveResult nonneg_solve(const std::vector<std::vector<Rat>>& rows, int nvars) {
    int n = nvars;
    int m = static_cast<int>(rows.size());
    for (const auto& r : rows)
        if (static_cast<int>(r.size()) != n)
            throw std::invalid_argument("nonneg_solve: row width mismatch");
    int rows_total = m + n;
    int cols = n + m + n;  // x | artificial | slack
    // tableau[r] = coefficients, rhs[r]
    std::vector<std::vector<Rat>> T(rows_total, std::vector<Rat>(cols, Rat(0)));
    std::vector<Rat> rhs(rows_total, Rat(0));
    std::vector<int> basis(rows_total);
    for (int r = 0; r < m; ++r) {
        for (int j = 0; j < n; ++j) T[r][j] = rows[r][j];
        T[r][n + r] = 1;
        basis[r] = n + r;  // artificial
    }
    for (int i = 0; i < n; ++i) {
        int r = m + i;
        T[r][i] = 1;
        T[r][n + m + i] = 1;
        rhs[r] = 1;
        basis[r] = n + m + i;  // slack
    }
    // cost of column j as (M-coefficient, unit part): x_i cost (0, 1),
    // artificials (-1, 0), slacks (0, 0); comparisons are lexicographic
    using Cost = std::pair<Rat, Rat>;
    auto col_cost = [&](int j) {
        if (j < n) return Cost{0, 1};
        if (j < n + m) return Cost{-1, 0};
        return Cost{0, 0};
    };
    std::vector<char> in_basis(cols, 0);
    for (int r = 0; r < rows_total; ++r) in_basis[basis[r]] = 1;
    for (;;) {
        // reduced cost for column j: c_j - Σ_r c_{basis[r]} * T[r][j]
        int enter = -1;
        for (int j = 0; j < cols; ++j) {
            if (j >= n && j < n + m) continue;  // artificials never re-enter
            if (in_basis[j]) continue;
            Cost red = col_cost(j);
            for (int r = 0; r < rows_total; ++r) {
                Cost cb = col_cost(basis[r]);
                if (cb.first != 0) red.first -= cb.first * T[r][j];
                if (cb.second != 0) red.second -= cb.second * T[r][j];
            }
            if (red > Cost{0, 0}) {
                enter = j;  // Bland: first improving column
                break;
            }
        }
        if (enter < 0) break;
        // ratio test, Bland tie-break on leaving basic variable index
        int leave = -1;
        Rat best;
        for (int r = 0; r < rows_total; ++r) {
            if (T[r][enter] <= 0) continue;
            Rat ratio = rhs[r] / T[r][enter];
            if (leave < 0 || ratio < best ||
                (ratio == best && basis[r] < basis[leave])) {
                leave = r;
                best = ratio;
            }
        }
        if (leave < 0)
            throw std::logic_error("nonneg_solve: unbounded (impossible with caps)");
        // pivot
        Rat piv = T[leave][enter];
        for (int j = 0; j < cols; ++j) T[leave][j] /= piv;
        rhs[leave] /= piv;
        for (int r = 0; r < rows_total; ++r) {
            if (r == leave || T[r][enter] == 0) continue;
            Rat f = T[r][enter];
            for (int j = 0; j < cols; ++j) T[r][j] -= f * T[leave][j];
            rhs[r] -= f * rhs[leave];
        }
        in_basis[basis[leave]] = 0;
        in_basis[enter] = 1;
        basis[leave] = enter;
    }
    std::vector<Rat> x(n, Rat(0));
    for (int r = 0; r < rows_total; ++r)
        if (basis[r] < n) x[basis[r]] = rhs[r];
    Rat sum(0);
    for (const Rat& v : x) sum += v;
    LinearSolveResult res;
    if (sum > 0) {
        for (int r = 0; r < m; ++r) {
            Rat acc(0);
            for (int j = 0; j < n; ++j) acc += rows[r][j] * x[j];
            if (acc != 0) throw std::logic_error("nonneg_solve: witness fails a row");
        }
        res.only_zero = false;
        res.witness = std::move(x);
    }
    return res;
}

}  // namespace covlab
