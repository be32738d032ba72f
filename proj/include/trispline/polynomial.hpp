#pragma once

#include "trispline/geometry.hpp"
#include "trispline/rational.hpp"

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace trispline {

/// Exponents (i, j, k) of b1^i b2^j b3^k.
struct MultiIndex {
    std::array<int, 3> e{};

    int degree() const { return e[0] + e[1] + e[2]; }
    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

/// Canonical monomial order: by i + j ascending, then max(i, j) ascending, then i
/// descending. For degree 2 this is b3^2, b1 b3, b2 b3, b1 b2, b1^2, b2^2.
struct CanonicalOrder {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

/// All degree-d monomials in canonical order; (d + 1)(d + 2) / 2 of them.
std::vector<MultiIndex> monomials(int degree);

/// Homogeneous polynomial in (b1, b2, b3) with exact coefficients. Zero
/// coefficients are never stored.
class BarycentricPoly {
public:
    using Terms = std::map<MultiIndex, Rational, CanonicalOrder>;

    BarycentricPoly() = default;
    explicit BarycentricPoly(int degree) : degree_(degree) {}

    static BarycentricPoly monomial(const MultiIndex& m, const Rational& coeff = 1);

    int degree() const { return degree_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational coefficient(const MultiIndex& m) const;

    /// Adds coeff * m; m must have the polynomial's degree.
    void add_term(const MultiIndex& m, const Rational& coeff);

    /// Partial derivative with respect to b_{var+1}.
    BarycentricPoly partial(int var) const;

    BarycentricPoly& operator+=(const BarycentricPoly& other);
    BarycentricPoly& operator-=(const BarycentricPoly& other);
    BarycentricPoly& operator*=(const Rational& scalar);

    friend BarycentricPoly operator+(BarycentricPoly a, const BarycentricPoly& b) { return a += b; }
    friend BarycentricPoly operator-(BarycentricPoly a, const BarycentricPoly& b) { return a -= b; }
    friend BarycentricPoly operator*(BarycentricPoly a, const Rational& s) { return a *= s; }
    friend BarycentricPoly operator*(const Rational& s, BarycentricPoly a) { return a *= s; }
    friend BarycentricPoly operator*(const BarycentricPoly& a, const BarycentricPoly& b);

    /// Zero polynomials compare equal regardless of degree.
    friend bool operator==(const BarycentricPoly& a, const BarycentricPoly& b);

private:
    int degree_ = 0;
    Terms terms_;
};

/// Homogeneous polynomial in the edge parameters (q1, q2). Ordered by the q1
/// exponent descending: q1^m, q1^(m-1) q2, ..., q2^m.
class EdgePoly {
public:
    struct Order {
        bool operator()(const std::pair<int, int>& a, const std::pair<int, int>& b) const { return a.first > b.first; }
    };
    using Terms = std::map<std::pair<int, int>, Rational, Order>;

    EdgePoly() = default;
    explicit EdgePoly(int degree) : degree_(degree) {}

    int degree() const { return degree_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational coefficient(int k1, int k2) const;
    void add_term(int k1, int k2, const Rational& coeff);

    friend bool operator==(const EdgePoly& a, const EdgePoly& b);

private:
    int degree_ = 0;
    Terms terms_;
};

/// Edge monomials (k1, k2) of degree m in canonical order.
std::vector<std::pair<int, int>> edge_monomials(int degree);

/// Polynomial sum alpha_ij x^i y^j of total degree at most `degree`.
class CartesianPoly {
public:
    using Terms = std::map<std::pair<int, int>, Rational>;

    CartesianPoly() = default;
    explicit CartesianPoly(int degree) : degree_(degree) {}

    int degree() const { return degree_; }
    const Terms& terms() const { return terms_; }
    void add_term(int i, int j, const Rational& coeff);

    Rational evaluate(const Point2& p) const;
    CartesianPoly derivative(int rx, int ry) const;

private:
    int degree_ = 0;
    Terms terms_;
};

Rational evaluate(const BarycentricPoly& p, const BarycentricCoords& b);

/// Change of variable x = sum b_i x_i, y = sum b_i y_i, with each term of total
/// degree t multiplied by (b1 + b2 + b3)^(degree - t).
BarycentricPoly from_cartesian(const CartesianPoly& p, const TriangleVertices& tri);

/// (a^T grad_b)^r p. r = 0 returns p; r > degree returns the zero polynomial of degree 0.
BarycentricPoly directional_derivative(const BarycentricPoly& p, const std::array<Rational, 3>& a, int r);

enum class Side { A, B };

/// Substitutes the edge's q-map for the given side: the off-edge coordinate goes
/// to zero and the two edge coordinates become q1, q2.
EdgePoly restrict_to_edge(const BarycentricPoly& p, Side side, const SharedEdge& edge);

/// d^(rx+ry) p / dx^rx dy^ry at p0, by exact chain rule through the affine map.
Rational evaluate_cartesian_derivative(const BarycentricPoly& p, const TriangleVertices& tri, const Point2& p0,
                                       int rx, int ry);

/// Canonical text: "1 b3^2 + 2 b2 b3 - 1/2 b1 b2"; the zero polynomial renders as "0".
std::string to_string(const BarycentricPoly& p);
std::string to_string(const EdgePoly& p);

/// Inverse of to_string(BarycentricPoly). Every term must have the given degree.
BarycentricPoly parse_barycentric_poly(std::string_view text, int degree);

}  // namespace trispline
