#pragma once

#include "trispline/continuity.hpp"
#include "trispline/fitting.hpp"
#include "trispline/geometry.hpp"

#include <array>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace trispline::demo {

/// Unit square split along its diagonal: T1 = ((0,0),(1,0),(1,1)),
/// T2 = ((0,0),(1,1),(0,1)).
std::shared_ptr<const Triangulation> square_mesh();

/// Five observations on the square mesh.
Dataset square_data();

/// Reference quadratic bases on the square mesh, one string per triangle per
/// column, in construction order: C0 (9 columns) and C1 (7 columns).
const std::vector<std::array<std::string, 2>>& reference_c0_columns();
const std::vector<std::array<std::string, 2>>& reference_c1_columns();

SplineBasis reference_basis(const std::vector<std::array<std::string, 2>>& columns, int continuity_order);

/// Design-matrix entry with two decimals ("-0.10"), "0" for zero.
std::string format_entry(const Rational& value);

/// Runs the worked example end to end and prints a transcript. Returns 0 when
/// every embedded expectation holds, 1 otherwise.
int run(std::ostream& out);

}  // namespace trispline::demo
