#include "trispline/fitting.hpp"

#include "trispline/errors.hpp"

#include <Eigen/Dense>

#include <string>

namespace trispline {

std::vector<double> Dataset::observations() const {
    std::vector<double> z;
    z.reserve(records.size());
    for (const auto& r : records) z.push_back(r.z);
    return z;
}

DesignMatrix assemble_design(std::shared_ptr<const SplineBasis> basis, const Dataset& data) {
    if (!basis) throw std::invalid_argument("assemble_design needs a basis");
    DesignMatrix design;
    design.exact = RationalMatrix(data.records.size(), basis->column_count());
    for (std::size_t i = 0; i < data.records.size(); ++i) {
        Location loc;
        try {
            loc = locate_point(basis->mesh(), data.records[i].position);
        } catch (const PointOutsideMesh& e) {
            throw PointOutsideMesh("record " + std::to_string(i) + ": " + e.what(), i);
        }
        const std::vector<Rational> row = basis->evaluate_row(loc.triangle, loc.coords);
        for (std::size_t c = 0; c < row.size(); ++c) design.exact(i, c) = row[c];
        design.triangles.push_back(loc.triangle);
    }
    design.basis = std::move(basis);
    return design;
}

FitModel fit(const DesignMatrix& design, std::span<const double> z, double ridge) {
    const std::size_t n = design.exact.rows();
    const std::size_t m = design.exact.cols();
    if (z.size() != n) {
        throw DimensionMismatch("design has " + std::to_string(n) + " rows but " + std::to_string(z.size()) +
                                " observations were given");
    }
    if (ridge < 0) throw std::invalid_argument("ridge parameter must be non-negative");

    Eigen::MatrixXd b(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = to_double(design.exact(i, j));
        }
    }
    const Eigen::Map<const Eigen::VectorXd> rhs(z.data(), static_cast<Eigen::Index>(n));

    Eigen::VectorXd gamma = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
    if (n > 0 && m > 0) {
        if (ridge > 0) {
            Eigen::MatrixXd normal = b.transpose() * b;
            normal.diagonal().array() += ridge;
            gamma = normal.ldlt().solve(b.transpose() * rhs);
        } else {
            gamma = b.completeOrthogonalDecomposition().solve(rhs);
        }
    }

    FitModel model;
    model.basis = design.basis;
    model.gamma.assign(gamma.data(), gamma.data() + gamma.size());
    model.diagnostics.rank = rank(design.exact);
    model.diagnostics.residual_norm = n == 0 ? 0.0 : (b * gamma - rhs).norm();
    model.diagnostics.ridge = ridge;
    return model;
}

std::vector<Rational> basis_row(const SplineBasis& basis, const Point2& p) {
    const Location loc = locate_point(basis.mesh(), p);
    return basis.evaluate_row(loc.triangle, loc.coords);
}

double predict(const FitModel& model, const Point2& p) {
    const std::vector<Rational> row = basis_row(*model.basis, p);
    if (row.size() != model.gamma.size()) throw DimensionMismatch("model coefficients do not match the basis");
    double sum = 0.0;
    for (std::size_t k = 0; k < row.size(); ++k) sum += to_double(row[k]) * model.gamma[k];
    return sum;
}

}  // namespace trispline
