#pragma once

#include "trispline/continuity.hpp"
#include "trispline/fitting.hpp"
#include "trispline/geometry.hpp"

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>

namespace trispline::io {

inline constexpr int kFormatVersion = 1;

/// Mesh document (JSON):
///   {"format_version": 1,
///    "vertices": [["0", "0"], ["1", "0.5"], ...],
///    "triangles": [[0, 1, 2], ...]}
/// Coordinates are decimal or "p/q" strings and are read exactly. Plain JSON
/// numbers are accepted and read through their shortest round-trip decimal form.
Triangulation parse_mesh(std::string_view text);
std::string write_mesh(const Triangulation& mesh);

/// Stable 64-bit FNV-1a digest of the mesh's exact content, as 16 hex digits.
std::string mesh_hash(const Triangulation& mesh);

/// Basis document: format_version, mesh_hash, degree, continuity_order,
/// triangle_count and "columns", a list of per-triangle polynomial strings.
std::string write_basis(const SplineBasis& basis);
/// Throws ParseError, including when the mesh hash does not match.
SplineBasis parse_basis(std::string_view text, std::shared_ptr<const Triangulation> mesh);
std::string basis_hash(const SplineBasis& basis);

/// Model document: format_version, mesh_hash, basis_hash, gamma (decimal strings
/// with 17 significant digits) and diagnostics.
std::string write_model(const FitModel& model);
FitModel parse_model(std::string_view text, std::shared_ptr<const SplineBasis> basis);

/// Comma-separated records with header "x,y,z" (or "x,y" when z is optional).
Dataset parse_dataset(std::string_view text, bool require_z);

std::string format_double(double value);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace trispline::io
