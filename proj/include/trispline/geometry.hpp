#pragma once

#include "trispline/rational.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

namespace trispline {

struct Point2 {
    Rational x;
    Rational y;

    friend bool operator==(const Point2& a, const Point2& b) { return a.x == b.x && a.y == b.y; }
};

/// Exact barycentric (or, for points outside, affine) coordinates relative to a triangle.
/// Entries always sum to one.
using BarycentricCoords = std::array<Rational, 3>;

/// The three corner points of a triangle in local order v1, v2, v3.
using TriangleVertices = std::array<Point2, 3>;

/// A triangle as an ordered triple of vertex ids. Local order defines b1, b2, b3.
struct Triangle {
    std::array<std::size_t, 3> vertex_ids;
};

/// Bookkeeping for a pair of triangles sharing an edge. All local indices are
/// zero-based (0 ↦ b1). The q-maps send q1 to the lower shared vertex id and q2
/// to the higher one, so both sides parameterize the edge identically.
struct SharedEdge {
    std::size_t tri_a = 0;
    std::size_t tri_b = 0;
    std::array<std::size_t, 2> vertex_ids{};  // global ids, ascending
    int off_edge_local_a = 0;
    int off_edge_local_b = 0;
    std::array<int, 2> q_map_a{};
    std::array<int, 2> q_map_b{};
};

/// Twice the signed area of the triangle (positive for counter-clockwise order).
Rational signed_area2(const TriangleVertices& tri);

/// Solves for the affine coordinates of p relative to tri. Throws DegenerateTriangle.
BarycentricCoords cartesian_to_barycentric(const TriangleVertices& tri, const Point2& p);

Point2 barycentric_to_cartesian(const TriangleVertices& tri, const BarycentricCoords& b);

/// Affine coordinates of a transversal point u. Identical arithmetic to
/// cartesian_to_barycentric; kept separate because u is generally outside tri.
BarycentricCoords point_to_affine_coords(const TriangleVertices& tri, const Point2& u);

bool contains(const BarycentricCoords& b);

/// Planar triangulation with exact rational vertices. Validated on construction:
/// indices in range and distinct, non-degenerate triangles, no duplicate triangles,
/// pairwise disjoint interiors.
class Triangulation {
public:
    Triangulation(std::vector<Point2> vertices, std::vector<Triangle> triangles);

    const std::vector<Point2>& vertices() const { return vertices_; }
    const std::vector<Triangle>& triangles() const { return triangles_; }
    const std::vector<SharedEdge>& shared_edges() const { return shared_edges_; }

    std::size_t triangle_count() const { return triangles_.size(); }
    TriangleVertices triangle_vertices(std::size_t t) const;

private:
    std::vector<Point2> vertices_;
    std::vector<Triangle> triangles_;
    std::vector<SharedEdge> shared_edges_;
};

struct Location {
    std::size_t triangle = 0;
    BarycentricCoords coords;
};

/// Lowest-index triangle whose closed region contains p. Throws PointOutsideMesh.
Location locate_point(const Triangulation& mesh, const Point2& p);

/// One SharedEdge per unordered triangle pair with exactly two common vertex ids,
/// ordered by (tri_a, tri_b). Throws DuplicateTriangle on pairs sharing all three.
std::vector<SharedEdge> find_shared_edges(const std::vector<Triangle>& triangles);

/// The transversal point used for derivative constraints on an edge: the override
/// if given (rejected with TransversalOnEdge when it lies on the edge line),
/// otherwise tri_a's off-edge vertex.
Point2 transversal_point(const Triangulation& mesh, const SharedEdge& edge,
                         const std::optional<Point2>& override_point = std::nullopt);

inline Point2 default_transversal_point(const Triangulation& mesh, const SharedEdge& edge) {
    return transversal_point(mesh, edge);
}

}  // namespace trispline
