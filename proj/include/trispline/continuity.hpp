#pragma once

#include "trispline/exact_linalg.hpp"
#include "trispline/geometry.hpp"
#include "trispline/polynomial.hpp"

#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <vector>

namespace trispline {

/// One piecewise basis function: a polynomial per triangle (zero where the
/// function vanishes). Carries one free coefficient of the spline.
struct BasisColumn {
    std::vector<BarycentricPoly> per_triangle;

    BasisColumn& operator+=(const BasisColumn& other);
    friend BasisColumn operator+(BasisColumn a, const BasisColumn& b) { return a += b; }
    friend BasisColumn operator*(const Rational& s, const BasisColumn& c);
    friend bool operator==(const BasisColumn&, const BasisColumn&) = default;
};

class SplineBasis {
public:
    SplineBasis(std::shared_ptr<const Triangulation> mesh, int degree, std::vector<BasisColumn> columns,
                int continuity_order);

    const Triangulation& mesh() const { return *mesh_; }
    const std::shared_ptr<const Triangulation>& mesh_ptr() const { return mesh_; }
    int degree() const { return degree_; }
    int continuity_order() const { return continuity_order_; }
    const std::vector<BasisColumn>& columns() const { return columns_; }
    std::size_t column_count() const { return columns_.size(); }

    /// Values of every column on `triangle` at the given coordinates: one row of
    /// the design matrix.
    std::vector<Rational> evaluate_row(std::size_t triangle, const BarycentricCoords& b) const;

private:
    std::shared_ptr<const Triangulation> mesh_;
    int degree_;
    std::vector<BasisColumn> columns_;
    int continuity_order_;
};

/// Coefficients of every column over the (triangle, monomial) slots, slot-major:
/// row = triangle * monomial_count + canonical monomial index.
RationalMatrix coefficient_matrix(const SplineBasis& basis);

/// Edge-restricted order-r directional derivatives of each column, one entry per
/// side. Row 0 is side A, row 1 side B.
struct ConstraintMatrix {
    std::size_t edge_index = 0;
    int order = 0;
    int entry_degree = 0;
    std::vector<std::array<EdgePoly, 2>> columns;

    std::size_t cols() const { return columns.size(); }
};

/// Block-diagonal basis: one column per (triangle, monomial), triangle-major.
SplineBasis initial_basis(std::shared_ptr<const Triangulation> mesh, int degree);

ConstraintMatrix constraint_matrix(const SplineBasis& basis, std::size_t edge_index, int order,
                                   const Point2& transversal);

struct ColumnSplit {
    std::vector<std::size_t> active;
    std::vector<std::size_t> inactive;  // zero in both rows
};

ColumnSplit split_columns(const ConstraintMatrix& q);

ConstraintMatrix select_columns(const ConstraintMatrix& q, const std::vector<std::size_t>& indices);

/// Q^T expanded into coefficients: one row per column of q, one column per
/// (row, edge monomial) pair, side A block first.
RationalMatrix coefficient_expansion(const ConstraintMatrix& q);

/// True when every column of q is zero or a single unit monomial in a single row,
/// and no (row, monomial) slot is used twice.
bool is_canonical(const ConstraintMatrix& q);

/// Change-of-basis matrix P (m x m, invertible) such that q_active * P is
/// canonical whenever such a form exists. Obtained by row reducing
/// [coefficient_expansion(q_active) | I] and transposing the right block.
/// Called a permutation matrix in some presentations, although it is generally
/// not a 0/1 matrix. Returns the identity if q_active is already canonical.
RationalMatrix build_change_of_basis(const ConstraintMatrix& q_active);

/// Q * P.
ConstraintMatrix apply_change_of_basis(const ConstraintMatrix& q, const RationalMatrix& p);
/// Column k of the result is sum_j columns[j] * P(j, k).
std::vector<BasisColumn> apply_change_of_basis(const std::vector<BasisColumn>& columns, const RationalMatrix& p);

/// Pairwise merging driven by a canonical Q * P: columns holding the same
/// monomial in opposite rows are summed (at the earlier position), a monomial
/// reachable from one row only forces its column out, zero columns pass through.
/// The inactive columns are appended unchanged. Throws std::invalid_argument if
/// canonical_qp is not canonical.
std::vector<BasisColumn> merge_columns(const std::vector<BasisColumn>& transformed_active,
                                       const ConstraintMatrix& canonical_qp,
                                       const std::vector<BasisColumn>& inactive);

/// General form of merge_columns for constraint matrices with no canonical form:
/// replaces the active columns by a basis of the subspace on which both rows of
/// qp agree coefficient-wise. Agrees with merge_columns on canonical input.
std::vector<BasisColumn> reduce_by_kernel(const std::vector<BasisColumn>& transformed_active,
                                          const ConstraintMatrix& qp, const std::vector<BasisColumn>& inactive);

struct EdgeStep {
    std::size_t edge_index = 0;
    int order = 0;
    std::size_t active = 0;
    std::size_t rank = 0;  // rank of the active constraint coefficients
    std::size_t columns_before = 0;
    std::size_t columns_after = 0;
    bool canonical = true;  // false when reduce_by_kernel was needed
};

/// One constraint/merge round on one edge at one order.
SplineBasis enforce_edge(const SplineBasis& basis, std::size_t edge_index, int order, const Point2& transversal,
                         EdgeStep* step = nullptr);

struct EnforcementTrace {
    std::vector<std::size_t> column_counts;  // initial, then after each order
    std::vector<EdgeStep> steps;
};

/// Builds the C^r basis: all edges at order 0, then all edges at order 1, and so
/// on up to r_target. Transversal overrides are keyed by shared-edge index.
/// The result is verified with an exact continuity check; failure throws
/// ContinuityCheckFailed.
SplineBasis enforce_continuity(std::shared_ptr<const Triangulation> mesh, int degree, int r_target,
                               const std::map<std::size_t, Point2>& transversal_overrides = {},
                               EnforcementTrace* trace = nullptr);

enum class CheckMode { Exact, Float };

struct CheckOptions {
    int samples = 10;
    CheckMode mode = CheckMode::Exact;
    double tolerance = 1e-9;
};

struct EdgeReport {
    std::size_t edge_index = 0;
    double max_discrepancy = 0.0;
    bool pass = true;
};

struct ContinuityReport {
    int order = 0;
    std::vector<EdgeReport> edges;

    bool pass() const;
};

/// Compares every Cartesian partial derivative of total order <= r of every column
/// across every shared edge at `samples` interior edge points t = k / (samples + 1).
ContinuityReport check_continuity(const SplineBasis& basis, int order, const CheckOptions& options = {});

}  // namespace trispline
