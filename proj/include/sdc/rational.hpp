#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace sdc {

using Rational = mpq_class;
using Point = std::vector<Rational>;
using Matrix = std::vector<std::vector<Rational>>;

/// Parses "p/q" or an integer. Throws InputError on anything else
/// (decimals included).
Rational parse_rational(const std::string& s);
std::string format_rational(const Rational& q);

Rational dot(const Point& a, const Point& b);
Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);
Point operator*(const Rational& s, const Point& a);
Point barycenter(const std::vector<Point>& pts);
int sign(const Rational& q);

/// Row rank by exact elimination.
std::size_t rank(Matrix m);
Rational determinant(Matrix m);

/// Basis of {x : m x = 0}; m has `cols` columns.
std::vector<Point> nullspace(const Matrix& m, std::size_t cols);

/// Some solution of m x = rhs, or nullopt if inconsistent.
std::optional<Point> solve_linear(const Matrix& m, const Point& rhs);

bool affinely_independent(const std::vector<Point>& pts);

/// Barycentric coordinates of x w.r.t. affinely independent points, or
/// nullopt if x is outside their affine hull.
std::optional<std::vector<Rational>> barycentric_coordinates(const std::vector<Point>& simplex, const Point& x);

/// d-volume of a d-simplex in R^d given by d+1 points (absolute value).
Rational simplex_volume(const std::vector<Point>& pts);

} // namespace sdc
