#include "trispline/demo.hpp"

#include "trispline/io.hpp"
#include "trispline/polynomial.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace trispline::demo {

std::shared_ptr<const Triangulation> square_mesh() {
    std::vector<Point2> vertices{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    std::vector<Triangle> triangles{{{0, 1, 2}}, {{0, 2, 3}}};
    return std::make_shared<const Triangulation>(std::move(vertices), std::move(triangles));
}

Dataset square_data() {
    const char* const rows[][3] = {
        {"0.2", "0.1", "1.0"}, {"0.2", "0.7", "3.0"}, {"0.1", "0.3", "2.0"}, {"0.5", "0.1", "1.0"}, {"0.7", "0.8", "4.0"},
    };
    Dataset data;
    for (const auto& r : rows) data.records.push_back({{parse_rational(r[0]), parse_rational(r[1])}, std::stod(r[2])});
    return data;
}

const std::vector<std::array<std::string, 2>>& reference_c0_columns() {
    static const std::vector<std::array<std::string, 2>> columns{
        {"1 b3^2", "1 b2^2"}, {"1 b1 b3", "1 b1 b2"}, {"1 b1^2", "1 b1^2"},
        {"1 b1 b2", "0"},     {"1 b2 b3", "0"},       {"1 b2^2", "0"},
        {"0", "1 b3^2"},      {"0", "1 b1 b3"},       {"0", "1 b2 b3"},
    };
    return columns;
}

const std::vector<std::array<std::string, 2>>& reference_c1_columns() {
    static const std::vector<std::array<std::string, 2>> columns{
        {"1 b1 b2", "-1 b1 b3"},
        {"1 b2 b3", "-1 b2 b3"},
        {"1 b3^2", "1 b2^2 + 2 b2 b3"},
        {"1 b1 b3", "1 b1 b2 + 1 b1 b3 + 1 b2 b3"},
        {"1 b1^2", "1 b1^2 + 2 b1 b3"},
        {"1 b2^2", "0"},
        {"0", "1 b3^2"},
    };
    return columns;
}

SplineBasis reference_basis(const std::vector<std::array<std::string, 2>>& columns, int continuity_order) {
    std::vector<BasisColumn> cols;
    for (const auto& c : columns) {
        cols.push_back({{parse_barycentric_poly(c[0], 2), parse_barycentric_poly(c[1], 2)}});
    }
    return SplineBasis(square_mesh(), 2, std::move(cols), continuity_order);
}

std::string format_entry(const Rational& value) {
    if (value == 0) return "0";
    const Rational scaled = value * 100;
    if (scaled.get_den() != 1) return to_decimal_string(value);
    const mpz_class n = scaled.get_num();
    const mpz_class mag = abs(n);
    std::string frac = mpz_class(mag % 100).get_str();
    if (frac.size() < 2) frac.insert(0, "0");
    return (n < 0 ? "-" : "") + mpz_class(mag / 100).get_str() + "." + frac;
}

namespace {

struct Expected {
    std::size_t triangle;
    const char* coords[3];
};

}  // namespace

int run(std::ostream& out) {
    bool ok = true;
    auto check = [&](bool cond, const std::string& what) {
        if (!cond) {
            out << "MISMATCH: " << what << "\n";
            ok = false;
        }
    };

    const auto mesh = square_mesh();
    const Dataset data = square_data();
    out << "mesh: " << mesh->vertices().size() << " vertices, " << mesh->triangle_count() << " triangles, "
        << mesh->shared_edges().size() << " shared edge\n";

    const Expected expected_coords[] = {
        {0, {"0.8", "0.1", "0.1"}}, {1, {"0.3", "0.2", "0.5"}}, {1, {"0.7", "0.1", "0.2"}},
        {0, {"0.5", "0.4", "0.1"}}, {1, {"0.2", "0.7", "0.1"}},
    };
    out << "barycentric coordinates:\n";
    for (std::size_t i = 0; i < data.records.size(); ++i) {
        const Point2& p = data.records[i].position;
        const Location loc = locate_point(*mesh, p);
        out << "  (" << to_decimal_string(p.x) << ", " << to_decimal_string(p.y) << ") in T" << loc.triangle + 1
            << " -> (" << to_decimal_string(loc.coords[0]) << ", " << to_decimal_string(loc.coords[1]) << ", "
            << to_decimal_string(loc.coords[2]) << ")\n";
        const Expected& e = expected_coords[i];
        check(loc.triangle == e.triangle, "triangle of record " + std::to_string(i + 1));
        for (std::size_t k = 0; k < 3; ++k) {
            check(loc.coords[k] == parse_rational(e.coords[k]), "barycentric coordinate of record " + std::to_string(i + 1));
        }
    }

    EnforcementTrace trace;
    const auto basis = std::make_shared<const SplineBasis>(enforce_continuity(mesh, 2, 1, {}, &trace));
    out << "basis: degree 2, C1, columns:";
    for (std::size_t k = 0; k < trace.column_counts.size(); ++k) out << (k == 0 ? " " : " -> ") << trace.column_counts[k];
    out << "\n";
    const SplineBasis reference = reference_basis(reference_c1_columns(), 1);
    check(basis->columns() == reference.columns(), "constructed C1 basis differs from the reference basis");
    for (std::size_t c = 0; c < basis->column_count(); ++c) {
        out << "  column " << c + 1 << ": T1 " << to_string(basis->columns()[c].per_triangle[0]) << " | T2 "
            << to_string(basis->columns()[c].per_triangle[1]) << "\n";
    }

    const char* const expected_design[5][7] = {
        {"0.08", "0.01", "0.01", "0.08", "0.64", "0.01", "0"},
        {"-0.15", "-0.10", "0.24", "0.31", "0.39", "0", "0.25"},
        {"-0.14", "-0.02", "0.05", "0.23", "0.77", "0", "0.04"},
        {"0.20", "0.04", "0.01", "0.05", "0.25", "0.16", "0"},
        {"-0.02", "-0.07", "0.63", "0.23", "0.08", "0", "0.01"},
    };
    const DesignMatrix design = assemble_design(basis, data);
    out << "design matrix:\n";
    check(design.exact.rows() == 5 && design.exact.cols() == 7, "design matrix shape");
    for (std::size_t i = 0; i < design.exact.rows(); ++i) {
        out << " ";
        for (std::size_t j = 0; j < design.exact.cols(); ++j) {
            out << ' ' << format_entry(design.exact(i, j));
            if (i < 5 && j < 7) {
                check(design.exact(i, j) == parse_rational(expected_design[i][j]),
                      "design entry (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) + ")");
            }
        }
        out << "\n";
    }

    const std::vector<double> z = data.observations();
    const FitModel model = fit(design, z);
    out << "gamma:";
    for (double g : model.gamma) out << ' ' << io::format_double(g);
    out << "\nrank: " << model.diagnostics.rank << "\nresidual: " << io::format_double(model.diagnostics.residual_norm)
        << "\n";
    check(model.diagnostics.rank == 5, "design rank");
    check(model.diagnostics.residual_norm <= 1e-8, "fit residual");
    for (std::size_t i = 0; i < data.records.size(); ++i) {
        check(std::abs(predict(model, data.records[i].position) - z[i]) <= 1e-6,
              "prediction at record " + std::to_string(i + 1));
    }

    const ContinuityReport report = check_continuity(*basis, 1, {.samples = 10});
    out << "continuity C1: " << (report.pass() ? "PASS" : "FAIL") << " (exact)\n";
    check(report.pass(), "C1 continuity check");

    out << (ok ? "demo: all checks passed\n" : "demo: FAILED\n");
    return ok ? 0 : 1;
}

}  // namespace trispline::demo
