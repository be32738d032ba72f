#include "oracles.hpp"

#include "trispline/demo.hpp"
#include "trispline/errors.hpp"
#include "trispline/io.hpp"

#include <doctest.h>

#include <random>

using namespace trispline;

namespace {

const char* kSquare = R"({"format_version": 1,
  "vertices": [["0", "0"], ["1", "0"], ["1", "1"], ["0", "1"]],
  "triangles": [[0, 1, 2], [0, 2, 3]]})";

}  // namespace

TEST_CASE("mesh documents") {
    const Triangulation mesh = io::parse_mesh(kSquare);
    CHECK(mesh.triangle_count() == 2);
    CHECK(mesh.vertices()[2].x == 1);
    CHECK(io::mesh_hash(mesh) == io::mesh_hash(*demo::square_mesh()));
    CHECK(io::mesh_hash(mesh).size() == 16);

    const std::string text = io::write_mesh(mesh);
    CHECK(io::write_mesh(io::parse_mesh(text)) == text);

    // numbers, decimals and fractions are read exactly
    const Triangulation mixed = io::parse_mesh(
        R"({"format_version": 1, "vertices": [[0, 0], [0.1, "0"], ["1/3", 1]], "triangles": [[0, 1, 2]]})");
    CHECK(mixed.vertices()[1].x == parse_rational("1/10"));
    CHECK(mixed.vertices()[2].x == parse_rational("1/3"));
    CHECK(io::mesh_hash(mixed) != io::mesh_hash(mesh));

    CHECK_THROWS_AS(io::parse_mesh("{"), ParseError);
    CHECK_THROWS_AS(io::parse_mesh(R"({"vertices": [], "triangles": []})"), ParseError);
    CHECK_THROWS_AS(io::parse_mesh(R"({"format_version": 2, "vertices": [], "triangles": []})"), ParseError);
    CHECK_THROWS_AS(io::parse_mesh(R"({"format_version": 1, "vertices": [["a", "0"]], "triangles": []})"),
                    ParseError);
    CHECK_THROWS_AS(io::parse_mesh(R"({"format_version": 1, "vertices": [[0, 0], [1, 0], [0, 1]],
                                       "triangles": [[0, 1, -2]]})"),
                    ParseError);
    CHECK_THROWS_AS(io::parse_mesh(R"({"format_version": 1, "vertices": [[0, 0], [1, 1], [2, 2]],
                                       "triangles": [[0, 1, 2]]})"),
                    DegenerateTriangle);
}

TEST_CASE("basis documents") {
    std::mt19937 rng(67);
    const auto mesh = oracle::random_mesh(rng, 3);
    const SplineBasis basis = enforce_continuity(mesh, 3, 1);
    const std::string text = io::write_basis(basis);
    const SplineBasis back = io::parse_basis(text, mesh);
    CHECK(back.columns() == basis.columns());
    CHECK(back.degree() == 3);
    CHECK(back.continuity_order() == 1);
    CHECK(io::write_basis(back) == text);
    CHECK(io::basis_hash(back) == io::basis_hash(basis));

    CHECK_THROWS_AS(io::parse_basis(text, demo::square_mesh()), ParseError);
    CHECK_THROWS_AS(io::parse_basis("[]", mesh), ParseError);
}

TEST_CASE("model documents") {
    const auto basis = std::make_shared<const SplineBasis>(enforce_continuity(demo::square_mesh(), 2, 1));
    const Dataset data = demo::square_data();
    const FitModel model = fit(assemble_design(basis, data), data.observations());
    const std::string text = io::write_model(model);
    const FitModel back = io::parse_model(text, basis);
    CHECK(back.gamma == model.gamma);  // 17 significant digits round-trip doubles
    CHECK(back.diagnostics.rank == 5);
    CHECK(io::write_model(back) == text);

    const auto other = std::make_shared<const SplineBasis>(enforce_continuity(demo::square_mesh(), 2, 0));
    CHECK_THROWS_AS(io::parse_model(text, other), ParseError);

    CHECK(io::format_double(0.1) == "0.10000000000000001");
    CHECK(io::format_double(1.0) == "1");
}

TEST_CASE("data files") {
    const Dataset d = io::parse_dataset("x,y,z\n0.2,0.1,1.0\n0.5, 0.1 ,1\n\n", true);
    REQUIRE(d.records.size() == 2);
    CHECK(d.records[0].position.x == parse_rational("0.2"));
    CHECK(d.records[1].position.y == parse_rational("0.1"));
    CHECK(d.records[1].z == 1.0);

    const Dataset xy = io::parse_dataset("x,y\n0.3,0.4\n", false);
    REQUIRE(xy.records.size() == 1);
    CHECK(xy.records[0].position.y == parse_rational("0.4"));

    CHECK_THROWS_AS(io::parse_dataset("", true), ParseError);
    CHECK_THROWS_AS(io::parse_dataset("a,b,c\n", true), ParseError);
    CHECK_THROWS_AS(io::parse_dataset("x,y\n1,2\n", true), ParseError);
    CHECK_THROWS_AS(io::parse_dataset("x,y,z\n1,2\n", true), ParseError);
    CHECK_THROWS_AS(io::parse_dataset("x,y,z\n1,2,zz\n", true), ParseError);
    CHECK_THROWS_AS(io::parse_dataset("x,y,z\n1,q,3\n", true), ParseError);
}
