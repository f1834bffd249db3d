#ifndef FABERHURWITZ_LINSOLVE_HPP
#define FABERHURWITZ_LINSOLVE_HPP

#include <faberhurwitz/rational.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace faberhurwitz {

struct linear_solve_result
{
    std::vector<rat> solution;
    int rank = 0;
};

// Exact solve of an (overdetermined) system A x = b by fraction-free
// Bareiss elimination after clearing row denominators.  Deterministic
// pivoting: rows keep their order; the pivot for column j is the first
// unused row with a nonzero entry.  Throws on rank deficiency (the
// offending column is reported) and on inconsistency.
inline linear_solve_result solve_exact(std::vector<std::vector<rat>> a, std::vector<rat> b)
{
    const size_t rows = a.size();
    if (rows == 0) {
        return {};
    }
    const size_t cols = a[0].size();
    for (auto& row : a) {
        if (row.size() != cols) {
            throw std::invalid_argument("solve_exact: ragged matrix");
        }
    }
    if (b.size() != rows) {
        throw std::invalid_argument("solve_exact: rhs size mismatch");
    }

    // integer augmented matrix
    std::vector<std::vector<bigint>> m(rows, std::vector<bigint>(cols + 1));
    for (size_t i = 0; i < rows; ++i) {
        bigint l = 1;
        for (size_t j = 0; j < cols; ++j) {
            l = boost::multiprecision::lcm(l, rat_den(a[i][j]));
        }
        l = boost::multiprecision::lcm(l, rat_den(b[i]));
        for (size_t j = 0; j < cols; ++j) {
            m[i][j] = rat_num(a[i][j]) * (l / rat_den(a[i][j]));
        }
        m[i][cols] = rat_num(b[i]) * (l / rat_den(b[i]));
    }

    // forward Bareiss elimination on rows below each pivot
    bigint prev = 1;
    size_t next_row = 0;
    for (size_t col = 0; col < cols; ++col) {
        size_t pr = next_row;
        while (pr < rows && m[pr][col] == 0) {
            ++pr;
        }
        if (pr == rows) {
            throw std::runtime_error("solve_exact: rank deficiency at column " + std::to_string(col));
        }
        if (pr != next_row) {
            std::swap(m[pr], m[next_row]);
        }
        const bigint piv = m[next_row][col];
        for (size_t i = next_row + 1; i < rows; ++i) {
            for (size_t j = col + 1; j <= cols; ++j) {
                bigint num = m[i][j] * piv - m[i][col] * m[next_row][j];
                bigint q, r;
                boost::multiprecision::divide_qr(num, prev, q, r);
                if (r != 0) {
                    throw std::logic_error("solve_exact: fraction-free division failed");
                }
                m[i][j] = q;
            }
            m[i][col] = 0;
        }
        prev = piv;
        ++next_row;
    }

    // consistency of the leftover rows
    for (size_t i = cols; i < rows; ++i) {
        if (m[i][cols] != 0) {
            throw std::runtime_error("solve_exact: inconsistent system");
        }
    }

    // rational back substitution on the triangular top block
    linear_solve_result out;
    out.rank = static_cast<int>(cols);
    out.solution.assign(cols, rat(0));
    for (size_t col = cols; col-- > 0;) {
        rat s(m[col][cols]);
        for (size_t j = col + 1; j < cols; ++j) {
            s -= rat(m[col][j]) * out.solution[j];
        }
        out.solution[col] = s / rat(m[col][col]);
    }
    return out;
}

} // namespace faberhurwitz

#endif
