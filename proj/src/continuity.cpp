#include "trispline/continuity.hpp"

#include "trispline/errors.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace trispline {

BasisColumn& BasisColumn::operator+=(const BasisColumn& other) {
    if (per_triangle.size() != other.per_triangle.size()) throw DimensionMismatch("basis columns over different meshes");
    for (std::size_t t = 0; t < per_triangle.size(); ++t) per_triangle[t] += other.per_triangle[t];
    return *this;
}

BasisColumn operator*(const Rational& s, const BasisColumn& c) {
    BasisColumn out = c;
    for (auto& p : out.per_triangle) p *= s;
    return out;
}

SplineBasis::SplineBasis(std::shared_ptr<const Triangulation> mesh, int degree, std::vector<BasisColumn> columns,
                         int continuity_order)
    : mesh_(std::move(mesh)), degree_(degree), columns_(std::move(columns)), continuity_order_(continuity_order) {
    if (!mesh_) throw std::invalid_argument("basis needs a mesh");
    for (const auto& col : columns_) {
        if (col.per_triangle.size() != mesh_->triangle_count()) {
            throw DimensionMismatch("basis column does not cover every triangle");
        }
        for (const auto& p : col.per_triangle) {
            if (!p.is_zero() && p.degree() != degree_) throw DimensionMismatch("basis polynomial has wrong degree");
        }
    }
}

std::vector<Rational> SplineBasis::evaluate_row(std::size_t triangle, const BarycentricCoords& b) const {
    std::vector<Rational> row;
    row.reserve(columns_.size());
    for (const auto& col : columns_) row.push_back(evaluate(col.per_triangle.at(triangle), b));
    return row;
}

RationalMatrix coefficient_matrix(const SplineBasis& basis) {
    const auto mons = monomials(basis.degree());
    const std::size_t n_tri = basis.mesh().triangle_count();
    RationalMatrix m(n_tri * mons.size(), basis.column_count());
    for (std::size_t c = 0; c < basis.column_count(); ++c) {
        for (std::size_t t = 0; t < n_tri; ++t) {
            const auto& poly = basis.columns()[c].per_triangle[t];
            for (std::size_t k = 0; k < mons.size(); ++k) m(t * mons.size() + k, c) = poly.coefficient(mons[k]);
        }
    }
    return m;
}

SplineBasis initial_basis(std::shared_ptr<const Triangulation> mesh, int degree) {
    if (!mesh) throw std::invalid_argument("initial_basis needs a mesh");
    if (degree < 1) throw std::invalid_argument("degree must be at least 1");
    const std::size_t n_tri = mesh->triangle_count();
    std::vector<BasisColumn> columns;
    for (std::size_t t = 0; t < n_tri; ++t) {
        for (const auto& m : monomials(degree)) {
            BasisColumn col{std::vector<BarycentricPoly>(n_tri, BarycentricPoly(degree))};
            col.per_triangle[t] = BarycentricPoly::monomial(m);
            columns.push_back(std::move(col));
        }
    }
    return SplineBasis(std::move(mesh), degree, std::move(columns), -1);
}

ConstraintMatrix constraint_matrix(const SplineBasis& basis, std::size_t edge_index, int order,
                                   const Point2& transversal) {
    const Triangulation& mesh = basis.mesh();
    const SharedEdge& edge = mesh.shared_edges().at(edge_index);

    std::array<Rational, 3> dir_a{};
    std::array<Rational, 3> dir_b{};
    if (order > 0) {
        transversal_point(mesh, edge, transversal);  // rejects points on the edge line
        dir_a = point_to_affine_coords(mesh.triangle_vertices(edge.tri_a), transversal);
        dir_b = point_to_affine_coords(mesh.triangle_vertices(edge.tri_b), transversal);
    }

    ConstraintMatrix q;
    q.edge_index = edge_index;
    q.order = order;
    q.entry_degree = std::max(basis.degree() - order, 0);
    q.columns.reserve(basis.column_count());
    for (const auto& col : basis.columns()) {
        auto side_entry = [&](std::size_t tri, const std::array<Rational, 3>& dir, Side side) {
            BarycentricPoly poly = col.per_triangle[tri];
            if (poly.is_zero()) poly = BarycentricPoly(basis.degree());
            EdgePoly e = restrict_to_edge(directional_derivative(poly, dir, order), side, edge);
            return e.is_zero() ? EdgePoly(q.entry_degree) : e;
        };
        q.columns.push_back({side_entry(edge.tri_a, dir_a, Side::A), side_entry(edge.tri_b, dir_b, Side::B)});
    }
    return q;
}

ColumnSplit split_columns(const ConstraintMatrix& q) {
    ColumnSplit split;
    for (std::size_t c = 0; c < q.cols(); ++c) {
        const bool zero = q.columns[c][0].is_zero() && q.columns[c][1].is_zero();
        (zero ? split.inactive : split.active).push_back(c);
    }
    return split;
}

ConstraintMatrix select_columns(const ConstraintMatrix& q, const std::vector<std::size_t>& indices) {
    ConstraintMatrix out;
    out.edge_index = q.edge_index;
    out.order = q.order;
    out.entry_degree = q.entry_degree;
    for (std::size_t i : indices) out.columns.push_back(q.columns.at(i));
    return out;
}

RationalMatrix coefficient_expansion(const ConstraintMatrix& q) {
    const auto mons = edge_monomials(q.entry_degree);
    RationalMatrix m(q.cols(), 2 * mons.size());
    for (std::size_t c = 0; c < q.cols(); ++c) {
        for (std::size_t side = 0; side < 2; ++side) {
            for (std::size_t k = 0; k < mons.size(); ++k) {
                m(c, side * mons.size() + k) = q.columns[c][side].coefficient(mons[k].first, mons[k].second);
            }
        }
    }
    return m;
}

namespace {

// Slot index (side * monomials + k) of a canonical column, nullopt for a zero
// column; throws if the column is not a single unit monomial in a single row.
struct SlotScan {
    bool canonical = true;
    std::vector<std::optional<std::size_t>> slots;
};

SlotScan scan_slots(const ConstraintMatrix& q) {
    const RationalMatrix coeffs = coefficient_expansion(q);
    SlotScan scan;
    std::vector<bool> used(coeffs.cols(), false);
    for (std::size_t c = 0; c < coeffs.rows(); ++c) {
        std::optional<std::size_t> slot;
        bool ok = true;
        for (std::size_t k = 0; k < coeffs.cols(); ++k) {
            if (coeffs(c, k) == 0) continue;
            if (slot || coeffs(c, k) != 1) ok = false;
            slot = k;
        }
        if (slot && ok) {
            if (used[*slot]) ok = false;
            used[*slot] = true;
        }
        if (!ok) scan.canonical = false;
        scan.slots.push_back(slot);
    }
    return scan;
}

}  // namespace

bool is_canonical(const ConstraintMatrix& q) {
    return scan_slots(q).canonical;
}

RationalMatrix build_change_of_basis(const ConstraintMatrix& q_active) {
    const std::size_t m = q_active.cols();
    if (m == 0) throw std::invalid_argument("change of basis needs at least one active column");
    if (is_canonical(q_active)) return RationalMatrix::identity(m);

    const RationalMatrix coeffs = coefficient_expansion(q_active);
    const RationalMatrix augmented = coeffs.hstack(RationalMatrix::identity(m));
    const RrefResult reduced = rref(augmented);
    return reduced.matrix.column_block(coeffs.cols(), m).transpose();
}

ConstraintMatrix apply_change_of_basis(const ConstraintMatrix& q, const RationalMatrix& p) {
    if (p.rows() != q.cols()) throw DimensionMismatch("change of basis does not match constraint columns");
    ConstraintMatrix out;
    out.edge_index = q.edge_index;
    out.order = q.order;
    out.entry_degree = q.entry_degree;
    for (std::size_t k = 0; k < p.cols(); ++k) {
        std::array<EdgePoly, 2> entry{EdgePoly(q.entry_degree), EdgePoly(q.entry_degree)};
        for (std::size_t j = 0; j < q.cols(); ++j) {
            if (p(j, k) == 0) continue;
            for (std::size_t side = 0; side < 2; ++side) {
                for (const auto& [kk, c] : q.columns[j][side].terms()) entry[side].add_term(kk.first, kk.second, c * p(j, k));
            }
        }
        out.columns.push_back(std::move(entry));
    }
    return out;
}

std::vector<BasisColumn> apply_change_of_basis(const std::vector<BasisColumn>& columns, const RationalMatrix& p) {
    if (p.rows() != columns.size()) throw DimensionMismatch("change of basis does not match basis columns");
    std::vector<BasisColumn> out;
    for (std::size_t k = 0; k < p.cols(); ++k) {
        BasisColumn acc = Rational(0) * columns.front();
        for (std::size_t j = 0; j < columns.size(); ++j) {
            if (p(j, k) != 0) acc += p(j, k) * columns[j];
        }
        out.push_back(std::move(acc));
    }
    return out;
}

std::vector<BasisColumn> merge_columns(const std::vector<BasisColumn>& transformed_active,
                                       const ConstraintMatrix& canonical_qp,
                                       const std::vector<BasisColumn>& inactive) {
    if (transformed_active.size() != canonical_qp.cols()) throw DimensionMismatch("merge: column count mismatch");
    const SlotScan scan = scan_slots(canonical_qp);
    if (!scan.canonical) throw std::invalid_argument("merge_columns requires a canonical constraint matrix");

    const std::size_t n_mon = edge_monomials(canonical_qp.entry_degree).size();
    // For each edge monomial: the column holding it in row A and in row B.
    std::vector<std::optional<std::size_t>> in_a(n_mon);
    std::vector<std::optional<std::size_t>> in_b(n_mon);
    for (std::size_t k = 0; k < scan.slots.size(); ++k) {
        if (!scan.slots[k]) continue;
        const std::size_t slot = *scan.slots[k];
        (slot < n_mon ? in_a[slot] : in_b[slot - n_mon]) = k;
    }

    std::vector<BasisColumn> out;
    for (std::size_t k = 0; k < transformed_active.size(); ++k) {
        if (!scan.slots[k]) {
            out.push_back(transformed_active[k]);
            continue;
        }
        const std::size_t mon = *scan.slots[k] % n_mon;
        if (!in_a[mon] || !in_b[mon]) continue;  // coefficient forced to zero
        const std::size_t first = std::min(*in_a[mon], *in_b[mon]);
        const std::size_t second = std::max(*in_a[mon], *in_b[mon]);
        if (k == first) out.push_back(transformed_active[first] + transformed_active[second]);
    }
    out.insert(out.end(), inactive.begin(), inactive.end());
    return out;
}

std::vector<BasisColumn> reduce_by_kernel(const std::vector<BasisColumn>& transformed_active,
                                          const ConstraintMatrix& qp, const std::vector<BasisColumn>& inactive) {
    if (transformed_active.size() != qp.cols()) throw DimensionMismatch("reduce: column count mismatch");
    const auto mons = edge_monomials(qp.entry_degree);
    RationalMatrix system(mons.size(), qp.cols());
    for (std::size_t i = 0; i < mons.size(); ++i) {
        for (std::size_t k = 0; k < qp.cols(); ++k) {
            system(i, k) = qp.columns[k][0].coefficient(mons[i].first, mons[i].second) -
                           qp.columns[k][1].coefficient(mons[i].first, mons[i].second);
        }
    }

    std::vector<BasisColumn> out;
    for (const auto& v : nullspace(system)) {
        BasisColumn acc = Rational(0) * transformed_active.front();
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (v[k] != 0) acc += v[k] * transformed_active[k];
        }
        out.push_back(std::move(acc));
    }
    out.insert(out.end(), inactive.begin(), inactive.end());
    return out;
}

SplineBasis enforce_edge(const SplineBasis& basis, std::size_t edge_index, int order, const Point2& transversal,
                         EdgeStep* step) {
    const ConstraintMatrix q = constraint_matrix(basis, edge_index, order, transversal);
    const ColumnSplit split = split_columns(q);

    EdgeStep info;
    info.edge_index = edge_index;
    info.order = order;
    info.active = split.active.size();
    info.columns_before = basis.column_count();
    info.columns_after = basis.column_count();

    if (split.active.empty()) {
        if (step) *step = info;
        return basis;
    }

    const ConstraintMatrix q_active = select_columns(q, split.active);
    info.rank = rank(coefficient_expansion(q_active));

    std::vector<BasisColumn> active_cols;
    std::vector<BasisColumn> inactive_cols;
    for (std::size_t i : split.active) active_cols.push_back(basis.columns()[i]);
    for (std::size_t i : split.inactive) inactive_cols.push_back(basis.columns()[i]);

    const RationalMatrix p = build_change_of_basis(q_active);
    const ConstraintMatrix qp = apply_change_of_basis(q_active, p);
    const std::vector<BasisColumn> transformed = apply_change_of_basis(active_cols, p);

    std::vector<BasisColumn> merged;
    if (is_canonical(qp)) {
        merged = merge_columns(transformed, qp, inactive_cols);
    } else {
        info.canonical = false;
        merged = reduce_by_kernel(transformed, qp, inactive_cols);
    }

    info.columns_after = merged.size();
    if (step) *step = info;
    return SplineBasis(basis.mesh_ptr(), basis.degree(), std::move(merged), basis.continuity_order());
}

SplineBasis enforce_continuity(std::shared_ptr<const Triangulation> mesh, int degree, int r_target,
                               const std::map<std::size_t, Point2>& transversal_overrides, EnforcementTrace* trace) {
    if (r_target < 0 || r_target > degree) {
        throw std::invalid_argument("smoothness " + std::to_string(r_target) + " must lie in [0, degree " +
                                    std::to_string(degree) + "]");
    }
    const auto& edges = mesh->shared_edges();
    std::vector<Point2> transversals;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        auto it = transversal_overrides.find(e);
        transversals.push_back(transversal_point(
            *mesh, edges[e], it == transversal_overrides.end() ? std::nullopt : std::optional<Point2>(it->second)));
    }
    for (const auto& [e, p] : transversal_overrides) {
        if (e >= edges.size()) throw std::invalid_argument("transversal override for unknown edge " + std::to_string(e));
    }

    SplineBasis basis = initial_basis(mesh, degree);
    if (trace) {
        *trace = {};
        trace->column_counts.push_back(basis.column_count());
    }
    for (int r = 0; r <= r_target; ++r) {
        for (std::size_t e = 0; e < edges.size(); ++e) {
            EdgeStep step;
            basis = enforce_edge(basis, e, r, transversals[e], &step);
            if (trace) trace->steps.push_back(step);
        }
        basis = SplineBasis(basis.mesh_ptr(), degree, basis.columns(), r);
        if (trace) trace->column_counts.push_back(basis.column_count());
    }

    for (int r = 0; r <= r_target; ++r) {
        if (!check_continuity(basis, r, {.samples = std::max(degree + 1, 2)}).pass()) {
            throw ContinuityCheckFailed("constructed basis fails the C^" + std::to_string(r) + " check");
        }
    }
    return basis;
}

bool ContinuityReport::pass() const {
    return std::all_of(edges.begin(), edges.end(), [](const EdgeReport& e) { return e.pass; });
}

ContinuityReport check_continuity(const SplineBasis& basis, int order, const CheckOptions& options) {
    if (options.samples < 2) throw std::invalid_argument("continuity check needs at least 2 samples per edge");
    const Triangulation& mesh = basis.mesh();
    ContinuityReport report;
    report.order = order;

    for (std::size_t e = 0; e < mesh.shared_edges().size(); ++e) {
        const SharedEdge& edge = mesh.shared_edges()[e];
        const TriangleVertices tri_a = mesh.triangle_vertices(edge.tri_a);
        const TriangleVertices tri_b = mesh.triangle_vertices(edge.tri_b);
        const Point2& p = mesh.vertices()[edge.vertex_ids[0]];
        const Point2& q = mesh.vertices()[edge.vertex_ids[1]];

        EdgeReport er;
        er.edge_index = e;
        Rational worst = 0;
        for (int k = 1; k <= options.samples; ++k) {
            const Rational t = Rational(k) / (options.samples + 1);
            const Point2 sample{(1 - t) * p.x + t * q.x, (1 - t) * p.y + t * q.y};
            for (const auto& col : basis.columns()) {
                for (int total = 0; total <= order; ++total) {
                    for (int rx = total; rx >= 0; --rx) {
                        const int ry = total - rx;
                        const Rational va =
                            evaluate_cartesian_derivative(col.per_triangle[edge.tri_a], tri_a, sample, rx, ry);
                        const Rational vb =
                            evaluate_cartesian_derivative(col.per_triangle[edge.tri_b], tri_b, sample, rx, ry);
                        const Rational diff = abs(va - vb);
                        if (diff > worst) worst = diff;
                        if (options.mode == CheckMode::Exact) {
                            if (diff != 0) er.pass = false;
                        } else if (std::abs(to_double(va) - to_double(vb)) > options.tolerance) {
                            er.pass = false;
                        }
                    }
                }
            }
        }
        er.max_discrepancy = to_double(worst);
        report.edges.push_back(er);
    }
    return report;
}

}  // namespace trispline
