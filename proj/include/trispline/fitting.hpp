#pragma once

#include "trispline/continuity.hpp"
#include "trispline/exact_linalg.hpp"
#include "trispline/geometry.hpp"

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace trispline {

struct Record {
    Point2 position;
    double z = 0.0;
};

struct Dataset {
    std::vector<Record> records;

    std::vector<double> observations() const;
};

/// Basis evaluated at the data points. Entries are exact; the solver works on
/// their double images.
struct DesignMatrix {
    std::shared_ptr<const SplineBasis> basis;
    RationalMatrix exact;
    std::vector<std::size_t> triangles;  // containing triangle per row
};

struct FitDiagnostics {
    std::size_t rank = 0;          // exact rank of the design matrix
    double residual_norm = 0.0;    // ||B gamma - z||_2
    double ridge = 0.0;
};

struct FitModel {
    std::shared_ptr<const SplineBasis> basis;
    std::vector<double> gamma;
    FitDiagnostics diagnostics;
};

/// Throws PointOutsideMesh naming the offending record.
DesignMatrix assemble_design(std::shared_ptr<const SplineBasis> basis, const Dataset& data);

/// Minimum-norm least-squares coefficients via a complete orthogonal
/// decomposition; with ridge > 0 solves (B^T B + ridge I) gamma = B^T z instead.
/// Throws DimensionMismatch when z does not match the design rows.
FitModel fit(const DesignMatrix& design, std::span<const double> z, double ridge = 0.0);

/// Basis row at p (exact).
std::vector<Rational> basis_row(const SplineBasis& basis, const Point2& p);

/// b^T gamma at p. Throws PointOutsideMesh.
double predict(const FitModel& model, const Point2& p);

}  // namespace trispline
