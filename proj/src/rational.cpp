#include "sdc/rational.hpp"

#include "sdc/error.hpp"

#include <cctype>

namespace sdc {

Rational parse_rational(const std::string& s)
{
    auto valid_int = [](const std::string& t, bool allow_sign) {
        if (t.empty())
            return false;
        std::size_t i = 0;
        if (allow_sign && (t[0] == '-' || t[0] == '+'))
            i = 1;
        if (i == t.size())
            return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i])))
                return false;
        return true;
    };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false))
        throw InputError("malformed rational '" + s + "'");
    if (num[0] == '+')
        num = num.substr(1);
    mpz_class n(num), d(den);
    if (d == 0)
        throw InputError("malformed rational '" + s + "': zero denominator");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

std::string format_rational(const Rational& q)
{
    return q.get_str();
}

Rational dot(const Point& a, const Point& b)
{
    if (a.size() != b.size())
        throw Error("dot: dimension mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

Point operator+(const Point& a, const Point& b)
{
    Point out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] + b[i];
    return out;
}

Point operator-(const Point& a, const Point& b)
{
    Point out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] - b[i];
    return out;
}

Point operator*(const Rational& s, const Point& a)
{
    Point out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = s * a[i];
    return out;
}

Point barycenter(const std::vector<Point>& pts)
{
    if (pts.empty())
        throw Error("barycenter of no points");
    Point out(pts.front().size(), Rational(0));
    for (const auto& p : pts)
        out = out + p;
    return Rational(1, static_cast<unsigned long>(pts.size())) * out;
}

int sign(const Rational& q)
{
    return sgn(q);
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(Matrix& m, std::size_t cols)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t p = row;
        while (p < m.size() && m[p][col] == 0)
            ++p;
        if (p == m.size())
            continue;
        std::swap(m[p], m[row]);
        Rational inv = 1 / m[row][col];
        for (auto& x : m[row])
            x *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col] == 0)
                continue;
            Rational f = m[r][col];
            for (std::size_t c = 0; c < m[r].size(); ++c)
                m[r][c] -= f * m[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace

std::size_t rank(Matrix m)
{
    if (m.empty())
        return 0;
    return rref(m, m.front().size()).size();
}

Rational determinant(Matrix m)
{
    const std::size_t n = m.size();
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && m[p][col] == 0)
            ++p;
        if (p == n)
            return 0;
        if (p != col) {
            std::swap(m[p], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col] == 0)
                continue;
            Rational f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c)
                m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

std::vector<Point> nullspace(const Matrix& m, std::size_t cols)
{
    Matrix a = m;
    auto pivots = rref(a, cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots)
        is_pivot[p] = true;
    std::vector<Point> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free])
            continue;
        Point v(cols, Rational(0));
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -a[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Point> solve_linear(const Matrix& m, const Point& rhs)
{
    if (m.empty())
        return Point{};
    const std::size_t cols = m.front().size();
    Matrix a = m;
    for (std::size_t r = 0; r < a.size(); ++r)
        a[r].push_back(rhs[r]);
    auto pivots = rref(a, cols);
    for (std::size_t r = pivots.size(); r < a.size(); ++r)
        if (a[r][cols] != 0)
            return std::nullopt;
    Point x(cols, Rational(0));
    for (std::size_t r = 0; r < pivots.size(); ++r)
        x[pivots[r]] = a[r][cols];
    return x;
}

bool affinely_independent(const std::vector<Point>& pts)
{
    if (pts.size() <= 1)
        return true;
    Matrix m;
    for (std::size_t i = 1; i < pts.size(); ++i)
        m.push_back(pts[i] - pts[0]);
    return rank(m) == pts.size() - 1;
}

std::optional<std::vector<Rational>> barycentric_coordinates(const std::vector<Point>& simplex, const Point& x)
{
    const std::size_t d = x.size();
    const std::size_t k = simplex.size();
    // Solve sum λ_i p_i = x, sum λ_i = 1.
    Matrix m(d + 1, std::vector<Rational>(k));
    Point rhs(d + 1);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t i = 0; i < k; ++i)
            m[r][i] = simplex[i][r];
        rhs[r] = x[r];
    }
    for (std::size_t i = 0; i < k; ++i)
        m[d][i] = 1;
    rhs[d] = 1;
    return solve_linear(m, rhs);
}

Rational simplex_volume(const std::vector<Point>& pts)
{
    const std::size_t d = pts.size() - 1;
    Matrix m;
    for (std::size_t i = 1; i < pts.size(); ++i)
        m.push_back(pts[i] - pts[0]);
    Rational det = determinant(m);
    Rational fact = 1;
    for (std::size_t k = 2; k <= d; ++k)
        fact *= static_cast<unsigned long>(k);
    return abs(det) / fact;
}

} // namespace sdc
