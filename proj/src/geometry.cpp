#include "trispline/geometry.hpp"

#include "trispline/errors.hpp"

#include <algorithm>
#include <string>

namespace trispline {

namespace {

Rational cross(const Point2& o, const Point2& a, const Point2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

std::string point_str(const Point2& p) {
    return "(" + to_decimal_string(p.x) + ", " + to_decimal_string(p.y) + ")";
}

// Separating-axis test on the six edge normals; touching boundaries do not count
// as overlap.
bool interiors_overlap(const TriangleVertices& s, const TriangleVertices& t) {
    auto separated_by_edges_of = [](const TriangleVertices& a, const TriangleVertices& b) {
        for (int i = 0; i < 3; ++i) {
            const Point2& p = a[i];
            const Point2& q = a[(i + 1) % 3];
            const Rational nx = q.y - p.y;
            const Rational ny = p.x - q.x;
            auto project = [&](const Point2& v) { return Rational(nx * v.x + ny * v.y); };
            Rational amin = project(a[0]);
            Rational amax = amin;
            Rational bmin = project(b[0]);
            Rational bmax = bmin;
            for (int k = 1; k < 3; ++k) {
                Rational pa = project(a[k]);
                Rational pb = project(b[k]);
                amin = std::min(amin, pa);
                amax = std::max(amax, pa);
                bmin = std::min(bmin, pb);
                bmax = std::max(bmax, pb);
            }
            if (amax <= bmin || bmax <= amin) return true;
        }
        return false;
    };
    return !separated_by_edges_of(s, t) && !separated_by_edges_of(t, s);
}

int local_index(const Triangle& tri, std::size_t vertex_id) {
    for (int i = 0; i < 3; ++i) {
        if (tri.vertex_ids[i] == vertex_id) return i;
    }
    return -1;
}

}  // namespace

Rational signed_area2(const TriangleVertices& tri) {
    return cross(tri[2], tri[0], tri[1]);
}

BarycentricCoords cartesian_to_barycentric(const TriangleVertices& tri, const Point2& p) {
    // [b1 b2]^T = M^{-1} (p - v3), M = [v1 - v3, v2 - v3]
    const Rational m11 = tri[0].x - tri[2].x;
    const Rational m12 = tri[1].x - tri[2].x;
    const Rational m21 = tri[0].y - tri[2].y;
    const Rational m22 = tri[1].y - tri[2].y;
    const Rational det = m11 * m22 - m12 * m21;
    if (det == 0) throw DegenerateTriangle("triangle has zero area");
    const Rational dx = p.x - tri[2].x;
    const Rational dy = p.y - tri[2].y;
    Rational b1 = (m22 * dx - m12 * dy) / det;
    Rational b2 = (m11 * dy - m21 * dx) / det;
    Rational b3 = 1 - b1 - b2;
    return {b1, b2, b3};
}

Point2 barycentric_to_cartesian(const TriangleVertices& tri, const BarycentricCoords& b) {
    return {b[0] * tri[0].x + b[1] * tri[1].x + b[2] * tri[2].x,
            b[0] * tri[0].y + b[1] * tri[1].y + b[2] * tri[2].y};
}

BarycentricCoords point_to_affine_coords(const TriangleVertices& tri, const Point2& u) {
    return cartesian_to_barycentric(tri, u);
}

bool contains(const BarycentricCoords& b) {
    return b[0] >= 0 && b[1] >= 0 && b[2] >= 0;
}

Triangulation::Triangulation(std::vector<Point2> vertices, std::vector<Triangle> triangles)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)) {
    if (triangles_.empty()) throw InvalidMesh("mesh has no triangles");
    for (std::size_t t = 0; t < triangles_.size(); ++t) {
        const auto& ids = triangles_[t].vertex_ids;
        for (std::size_t id : ids) {
            if (id >= vertices_.size()) {
                throw InvalidMesh("triangle " + std::to_string(t) + " references missing vertex " + std::to_string(id));
            }
        }
        if (ids[0] == ids[1] || ids[0] == ids[2] || ids[1] == ids[2]) {
            throw InvalidMesh("triangle " + std::to_string(t) + " repeats a vertex id");
        }
        if (signed_area2(triangle_vertices(t)) == 0) {
            throw DegenerateTriangle("triangle " + std::to_string(t) + " has zero area");
        }
    }
    shared_edges_ = find_shared_edges(triangles_);
    for (std::size_t s = 0; s < triangles_.size(); ++s) {
        for (std::size_t t = s + 1; t < triangles_.size(); ++t) {
            if (interiors_overlap(triangle_vertices(s), triangle_vertices(t))) {
                throw InvalidMesh("triangles " + std::to_string(s) + " and " + std::to_string(t) + " overlap");
            }
        }
    }
}

TriangleVertices Triangulation::triangle_vertices(std::size_t t) const {
    const auto& ids = triangles_.at(t).vertex_ids;
    return {vertices_[ids[0]], vertices_[ids[1]], vertices_[ids[2]]};
}

Location locate_point(const Triangulation& mesh, const Point2& p) {
    for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
        BarycentricCoords b = cartesian_to_barycentric(mesh.triangle_vertices(t), p);
        if (contains(b)) return {t, std::move(b)};
    }
    throw PointOutsideMesh("point " + point_str(p) + " is outside the mesh");
}

std::vector<SharedEdge> find_shared_edges(const std::vector<Triangle>& triangles) {
    std::vector<SharedEdge> edges;
    for (std::size_t a = 0; a < triangles.size(); ++a) {
        for (std::size_t b = a + 1; b < triangles.size(); ++b) {
            std::vector<std::size_t> common;
            for (std::size_t id : triangles[a].vertex_ids) {
                if (local_index(triangles[b], id) >= 0) common.push_back(id);
            }
            if (common.size() == 3) {
                throw DuplicateTriangle("triangles " + std::to_string(a) + " and " + std::to_string(b) +
                                        " have the same vertices");
            }
            if (common.size() != 2) continue;
            std::sort(common.begin(), common.end());

            SharedEdge e;
            e.tri_a = a;
            e.tri_b = b;
            e.vertex_ids = {common[0], common[1]};
            e.q_map_a = {local_index(triangles[a], common[0]), local_index(triangles[a], common[1])};
            e.q_map_b = {local_index(triangles[b], common[0]), local_index(triangles[b], common[1])};
            e.off_edge_local_a = 3 - e.q_map_a[0] - e.q_map_a[1];
            e.off_edge_local_b = 3 - e.q_map_b[0] - e.q_map_b[1];
            edges.push_back(e);
        }
    }
    return edges;
}

Point2 transversal_point(const Triangulation& mesh, const SharedEdge& edge, const std::optional<Point2>& override_point) {
    if (!override_point) {
        const auto& tri = mesh.triangles()[edge.tri_a];
        return mesh.vertices()[tri.vertex_ids[static_cast<std::size_t>(edge.off_edge_local_a)]];
    }
    const Point2& p = mesh.vertices()[edge.vertex_ids[0]];
    const Point2& q = mesh.vertices()[edge.vertex_ids[1]];
    if (cross(p, q, *override_point) == 0) {
        throw TransversalOnEdge("transversal point " + point_str(*override_point) + " lies on the line of edge " +
                                std::to_string(edge.vertex_ids[0]) + "-" + std::to_string(edge.vertex_ids[1]));
    }
    return *override_point;
}

}  // namespace trispline
