#include "oracles.hpp"

#include "trispline/errors.hpp"
#include "trispline/polynomial.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace trispline;

namespace {

Rational q(const char* s) { return parse_rational(s); }

const TriangleVertices kT1{{{0, 0}, {1, 0}, {1, 1}}};

BarycentricPoly poly(const char* text, int degree = 2) { return parse_barycentric_poly(text, degree); }

BarycentricPoly random_poly(std::mt19937& rng, int degree) {
    BarycentricPoly p(degree);
    for (const auto& m : monomials(degree)) p.add_term(m, oracle::random_rational(rng));
    return p;
}

}  // namespace

TEST_CASE("canonical monomial order") {
    const auto m2 = monomials(2);
    REQUIRE(m2.size() == 6);
    // b3^2, b1 b3, b2 b3, b1 b2, b1^2, b2^2
    const std::vector<MultiIndex> expected{{{0, 0, 2}}, {{1, 0, 1}}, {{0, 1, 1}}, {{1, 1, 0}}, {{2, 0, 0}}, {{0, 2, 0}}};
    CHECK(m2 == expected);
    CHECK(monomials(1).size() == 3);
    CHECK(monomials(3).size() == 10);
    CHECK(monomials(0).size() == 1);
    CHECK(edge_monomials(1) == std::vector<std::pair<int, int>>{{1, 0}, {0, 1}});
}

TEST_CASE("text form") {
    CHECK(to_string(poly("1 b3^2 + 2 b2 b3")) == "1 b3^2 + 2 b2 b3");
    CHECK(to_string(poly("2 b2 b3 + 1 b3^2")) == "1 b3^2 + 2 b2 b3");
    CHECK(to_string(poly("-1/2 b1 b2 - 3 b1^2")) == "-1/2 b1 b2 - 3 b1^2");
    CHECK(to_string(BarycentricPoly(2)) == "0");
    CHECK(poly("0").is_zero());
    CHECK(poly("1 b1 b1") == poly("1 b1^2"));
    CHECK_THROWS_AS(poly("1 b1"), ParseError);
    CHECK_THROWS_AS(poly("1 b4 b1"), ParseError);
    CHECK_THROWS_AS(poly("1 b1 b2 +"), ParseError);
    CHECK_THROWS_AS(poly("1 b1 b2 * 2 b3^2"), ParseError);

    std::mt19937 rng(3);
    for (int i = 0; i < 20; ++i) {
        const BarycentricPoly p = random_poly(rng, 3);
        CHECK(parse_barycentric_poly(to_string(p), 3) == p);
    }
}

TEST_CASE("from_cartesian") {
    CartesianPoly one(2);
    one.add_term(0, 0, 1);
    CHECK(from_cartesian(one, kT1) == poly("1 b1^2 + 1 b2^2 + 1 b3^2 + 2 b1 b2 + 2 b1 b3 + 2 b2 b3"));

    CartesianPoly x(2);
    x.add_term(1, 0, 1);
    const BarycentricPoly px = from_cartesian(x, kT1);
    CHECK(px == poly("1 b1 b2 + 1 b1 b3 + 1 b2^2 + 2 b2 b3 + 1 b3^2"));
    std::mt19937 rng(5);
    for (int i = 0; i < 20; ++i) {
        const Point2 p = oracle::random_interior_point(rng, kT1);
        CHECK(evaluate(px, cartesian_to_barycentric(kT1, p)) == p.x);
    }

    // generic quadratic: all six monomials appear
    CartesianPoly generic(2);
    generic.add_term(0, 0, 3);
    generic.add_term(1, 0, -2);
    generic.add_term(0, 1, 5);
    generic.add_term(1, 1, 7);
    generic.add_term(2, 0, 11);
    generic.add_term(0, 2, -13);
    CHECK(from_cartesian(generic, kT1).terms().size() == 6);

    const TriangleVertices flat{{{0, 0}, {1, 1}, {2, 2}}};
    CHECK_THROWS_AS(from_cartesian(x, flat), DegenerateTriangle);
}

TEST_CASE("evaluate") {
    CHECK(evaluate(poly("1 b3^2"), {0, 0, 1}) == 1);
    CHECK(evaluate(poly("1 b1 b3"), {q("0.8"), q("0.1"), q("0.1")}) == q("0.08"));
    CHECK(evaluate(poly("1 b2^2 + 2 b2 b3"), {q("0.3"), q("0.2"), q("0.5")}) == q("0.24"));
}

TEST_CASE("directional derivative examples") {
    const std::array<Rational, 3> a{0, 1, 0};
    // Symbolic technique: one monomial per generic coefficient. With a = (0, 1, 0)
    // only gamma01 b2 b3 -> b3, gamma11 b1 b2 -> b1 and gamma02 b2^2 -> 2 b2 survive.
    const std::vector<const char*> expected{"0", "0", "1 b3", "1 b1", "0", "2 b2"};
    const auto mons = monomials(2);
    for (std::size_t k = 0; k < mons.size(); ++k) {
        CHECK(directional_derivative(BarycentricPoly::monomial(mons[k]), a, 1) == parse_barycentric_poly(expected[k], 1));
    }

    std::mt19937 rng(13);
    const BarycentricPoly p = random_poly(rng, 2);
    CHECK(directional_derivative(p, {0, 0, 0}, 1).is_zero());
    CHECK(directional_derivative(p, {1, 2, 3}, 0) == p);
    CHECK(directional_derivative(p, {1, 2, 3}, 2).degree() == 0);
    CHECK(directional_derivative(p, {1, 2, 3}, 3).is_zero());
    CHECK(directional_derivative(p, {1, 2, 3}, 3).degree() == 0);
    CHECK_THROWS(directional_derivative(p, {1, 2, 3}, -1));
}

TEST_CASE("first and second order derivative formulas for a generic quadratic") {
    // Columns in canonical order carry gamma00, gamma10, gamma01, gamma11, gamma20, gamma02.
    const auto mons = monomials(2);
    using Dir = std::array<Rational, 3>;
    const std::vector<Dir> units{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

    SUBCASE("order 0 is the polynomial itself") {
        for (const auto& m : mons) {
            const auto p = BarycentricPoly::monomial(m);
            CHECK(directional_derivative(p, {q("0.3"), 2, -1}, 0) == p);
        }
    }

    SUBCASE("order 1 is linear in a; coefficient of a_i per column") {
        // rows: column; entries: derivative along e1, e2, e3
        const char* expected[6][3] = {
            {"0", "0", "2 b3"},          // gamma00: 2 a3 b3
            {"1 b3", "0", "1 b1"},       // gamma10: a1 b3 + a3 b1
            {"0", "1 b3", "1 b2"},       // gamma01: a2 b3 + a3 b2
            {"1 b2", "1 b1", "0"},       // gamma11: a1 b2 + a2 b1
            {"2 b1", "0", "0"},          // gamma20: 2 a1 b1
            {"0", "2 b2", "0"},          // gamma02: 2 a2 b2
        };
        for (std::size_t k = 0; k < mons.size(); ++k) {
            for (std::size_t i = 0; i < 3; ++i) {
                CHECK(directional_derivative(BarycentricPoly::monomial(mons[k]), units[i], 1) ==
                      parse_barycentric_poly(expected[k][i], 1));
            }
        }
    }

    SUBCASE("order 2 is the constant quadratic form in a") {
        // gamma00: 2 a3^2, gamma10: 2 a1 a3, gamma01: 2 a2 a3, gamma11: 2 a1 a2, gamma20: 2 a1^2, gamma02: 2 a2^2
        auto printed = [](std::size_t column, const Dir& a) -> Rational {
            switch (column) {
                case 0: return 2 * a[2] * a[2];
                case 1: return 2 * a[0] * a[2];
                case 2: return 2 * a[1] * a[2];
                case 3: return 2 * a[0] * a[1];
                case 4: return 2 * a[0] * a[0];
                default: return 2 * a[1] * a[1];
            }
        };
        // e_i and e_i + e_j determine a quadratic form uniquely
        const std::vector<Dir> probes{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}};
        for (std::size_t k = 0; k < mons.size(); ++k) {
            for (const auto& a : probes) {
                const BarycentricPoly d2 = directional_derivative(BarycentricPoly::monomial(mons[k]), a, 2);
                CHECK(d2.coefficient({{0, 0, 0}}) == printed(k, a));
            }
        }
    }
}

TEST_CASE("derivative and restriction properties") {
    std::mt19937 rng(17);
    const auto mesh = oracle::random_mesh(rng, 2);
    const SharedEdge& edge = mesh->shared_edges()[0];
    for (int trial = 0; trial < 25; ++trial) {
        const int d = 1 + trial % 4;
        const BarycentricPoly p = random_poly(rng, d);
        const BarycentricPoly r = random_poly(rng, d);
        const Rational s = oracle::random_rational(rng);
        const std::array<Rational, 3> a{oracle::random_rational(rng), oracle::random_rational(rng),
                                        oracle::random_rational(rng)};
        for (int order = 0; order <= d; ++order) {
            const auto dp = directional_derivative(p, a, order);
            CHECK((dp.is_zero() || dp.degree() == d - order));
            CHECK(directional_derivative(p + s * r, a, order) ==
                  directional_derivative(p, a, order) + s * directional_derivative(r, a, order));
        }
        // sum of partials is the derivative along (1, 1, 1)
        CHECK(directional_derivative(p, {1, 1, 1}, 1) == p.partial(0) + p.partial(1) + p.partial(2));
        {
            // Euler: sum b_i dp/db_i = d p
            const BarycentricCoords b{oracle::random_rational(rng), oracle::random_rational(rng),
                                      oracle::random_rational(rng)};
            Rational lhs = 0;
            for (int i = 0; i < 3; ++i) lhs += b[i] * evaluate(p.partial(i), b);
            CHECK(lhs == d * evaluate(p, b));
        }

        const EdgePoly ep = restrict_to_edge(p, Side::A, edge);
        CHECK((ep.is_zero() || ep.degree() == d));
        const EdgePoly lhs = restrict_to_edge(p + s * r, Side::B, edge);
        EdgePoly rhs = restrict_to_edge(p, Side::B, edge);
        const EdgePoly rb = restrict_to_edge(r, Side::B, edge);
        for (const auto& [k, c] : rb.terms()) rhs.add_term(k.first, k.second, s * c);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("restrict_to_edge on the square mesh") {
    std::vector<Point2> v{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    Triangulation mesh(v, {{{0, 1, 2}}, {{0, 2, 3}}});
    const SharedEdge& e = mesh.shared_edges()[0];
    const auto mons = monomials(2);

    // side A: b2 = 0, b1 = q1, b3 = q2; survivors gamma00 q2^2, gamma10 q1 q2, gamma20 q1^2
    const char* side_a[6] = {"q2^2", "q1 q2", "0", "0", "q1^2", "0"};
    // side B: b~3 = 0, b~1 = q1, b~2 = q2; survivors gamma11 q1 q2, gamma20 q1^2, gamma02 q2^2
    const char* side_b[6] = {"0", "0", "0", "q1 q2", "q1^2", "q2^2"};
    auto edge_str = [](const EdgePoly& p) {
        std::string s = to_string(p);
        return s == "0" ? s : s.substr(2);  // drop the unit coefficient
    };
    for (std::size_t k = 0; k < mons.size(); ++k) {
        const auto p = BarycentricPoly::monomial(mons[k]);
        CHECK(edge_str(restrict_to_edge(p, Side::A, e)) == side_a[k]);
        CHECK(edge_str(restrict_to_edge(p, Side::B, e)) == side_b[k]);
    }
    CHECK(restrict_to_edge(poly("1 b2^2"), Side::A, e).is_zero());
    CHECK(restrict_to_edge(poly("1 b3^2"), Side::B, e).is_zero());
}

TEST_CASE("cartesian derivatives by chain rule") {
    CartesianPoly x2(2);
    x2.add_term(2, 0, 1);
    CHECK(evaluate_cartesian_derivative(from_cartesian(x2, kT1), kT1, {q("0.5"), q("0.2")}, 1, 0) == 1);

    CartesianPoly xy(2);
    xy.add_term(1, 1, 1);
    CHECK(evaluate_cartesian_derivative(from_cartesian(xy, kT1), kT1, {q("0.3"), q("-4")}, 1, 1) == 1);
    CHECK(evaluate_cartesian_derivative(from_cartesian(xy, kT1), kT1, {q("0.3"), q("-4")}, 2, 0) == 0);

    SUBCASE("finite-difference oracle") {
        const BarycentricPoly p = poly("1 b3^2");
        auto value = [&](double x, double y) {
            // b3 on T1 = y, evaluated in doubles independently of the library
            const BarycentricCoords b = cartesian_to_barycentric(kT1, {Rational(x), Rational(y)});
            return to_double(evaluate(p, b));
        };
        const double h = 1e-5;
        const double fd = (value(1.0, 1.0 + h) - value(1.0, 1.0 - h)) / (2 * h);
        const double exact = to_double(evaluate_cartesian_derivative(p, kT1, {1, 1}, 0, 1));
        CHECK(std::abs(exact - fd) < 1e-8);
        CHECK(exact == doctest::Approx(2.0));
    }

    SUBCASE("agrees with direct differentiation of random cartesian polynomials") {
        std::mt19937 rng(19);
        for (int trial = 0; trial < 50; ++trial) {
            const int d = 1 + trial % 3;
            CartesianPoly c(d);
            for (int i = 0; i <= d; ++i) {
                for (int j = 0; i + j <= d; ++j) c.add_term(i, j, oracle::random_rational(rng));
            }
            TriangleVertices tri;
            do {
                for (auto& v : tri) v = {oracle::random_rational(rng), oracle::random_rational(rng)};
            } while (signed_area2(tri) == 0);
            const BarycentricPoly b = from_cartesian(c, tri);
            const Point2 p0{oracle::random_rational(rng), oracle::random_rational(rng)};
            for (int rx = 0; rx <= d; ++rx) {
                for (int ry = 0; rx + ry <= d; ++ry) {
                    CHECK(evaluate_cartesian_derivative(b, tri, p0, rx, ry) == c.derivative(rx, ry).evaluate(p0));
                }
            }
        }
    }
}
