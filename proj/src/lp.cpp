#include "sdc/lp.hpp"

#include "sdc/error.hpp"

namespace sdc {

namespace {

struct Tableau {
    // rows x (cols + 1); last column is the right-hand side.
    Matrix t;
    std::vector<std::size_t> basis;
    std::size_t cols = 0;

    void pivot(std::size_t r, std::size_t c)
    {
        Rational inv = 1 / t[r][c];
        for (auto& x : t[r])
            x *= inv;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i == r || t[i][c] == 0)
                continue;
            Rational f = t[i][c];
            for (std::size_t j = 0; j <= cols; ++j)
                t[i][j] -= f * t[r][j];
        }
        basis[r] = c;
    }

    // Maximizes obj·x over columns with allowed[j]. Returns false if unbounded.
    bool optimize(const Point& obj, const std::vector<bool>& allowed)
    {
        while (true) {
            // Reduced cost of column j: obj_j - Σ obj_basis[i] t[i][j].
            std::size_t enter = cols;
            for (std::size_t j = 0; j < cols && enter == cols; ++j) {
                if (!allowed[j])
                    continue;
                Rational rc = obj[j];
                for (std::size_t i = 0; i < t.size(); ++i)
                    if (obj[basis[i]] != 0)
                        rc -= obj[basis[i]] * t[i][j];
                if (rc > 0)
                    enter = j;
            }
            if (enter == cols)
                return true;
            std::size_t leave = t.size();
            Rational best;
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (t[i][enter] <= 0)
                    continue;
                Rational ratio = t[i][cols] / t[i][enter];
                if (leave == t.size() || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == t.size())
                return false;
            pivot(leave, enter);
        }
    }
};

} // namespace

LPResult lp_maximize(const Point& c,
                     const Matrix& le_rows, const Point& le_rhs,
                     const Matrix& eq_rows, const Point& eq_rhs,
                     bool nonnegative)
{
    const std::size_t n = c.size();
    if (le_rows.size() != le_rhs.size() || eq_rows.size() != eq_rhs.size())
        throw Error("lp: row/rhs count mismatch");
    // Structural columns: x (or x+ and x- when free), then one slack per ≤ row,
    // then one artificial per row.
    const std::size_t nx = nonnegative ? n : 2 * n;
    const std::size_t m_le = le_rows.size();
    const std::size_t m = m_le + eq_rows.size();
    const std::size_t art0 = nx + m_le;
    Tableau tab;
    tab.cols = art0 + m;
    tab.t.assign(m, std::vector<Rational>(tab.cols + 1, Rational(0)));
    tab.basis.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const auto& row = i < m_le ? le_rows[i] : eq_rows[i - m_le];
        Rational rhs = i < m_le ? le_rhs[i] : eq_rhs[i - m_le];
        if (row.size() != n)
            throw Error("lp: row width mismatch");
        auto& tr = tab.t[i];
        for (std::size_t j = 0; j < n; ++j) {
            tr[j] = row[j];
            if (!nonnegative)
                tr[n + j] = -row[j];
        }
        if (i < m_le)
            tr[nx + i] = 1;
        tr[tab.cols] = rhs;
        if (rhs < 0)
            for (auto& x : tr)
                x = -x;
        tr[art0 + i] = 1;
        tab.basis[i] = art0 + i;
    }

    std::vector<bool> all(tab.cols, true);
    Point phase1(tab.cols, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
        phase1[art0 + i] = -1;
    tab.optimize(phase1, all);
    LPResult out;
    for (std::size_t i = 0; i < m; ++i)
        if (tab.basis[i] >= art0 && tab.t[i][tab.cols] != 0)
            return out;

    // Drive artificials out of the basis where possible; rows that stay are redundant.
    for (std::size_t i = 0; i < m; ++i) {
        if (tab.basis[i] < art0)
            continue;
        for (std::size_t j = 0; j < art0; ++j)
            if (tab.t[i][j] != 0) {
                tab.pivot(i, j);
                break;
            }
    }
    std::vector<bool> allowed(tab.cols, true);
    for (std::size_t j = art0; j < tab.cols; ++j)
        allowed[j] = false;
    Point phase2(tab.cols, Rational(0));
    for (std::size_t j = 0; j < n; ++j) {
        phase2[j] = c[j];
        if (!nonnegative)
            phase2[n + j] = -c[j];
    }
    if (!tab.optimize(phase2, allowed)) {
        out.status = LPStatus::Unbounded;
        return out;
    }
    Point y(tab.cols, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
        y[tab.basis[i]] = tab.t[i][tab.cols];
    out.status = LPStatus::Optimal;
    out.x.assign(n, Rational(0));
    for (std::size_t j = 0; j < n; ++j)
        out.x[j] = nonnegative ? y[j] : y[j] - y[n + j];
    out.value = dot(c, out.x);
    return out;
}

} // namespace sdc
