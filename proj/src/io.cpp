#include "trispline/io.hpp"

#include "trispline/errors.hpp"

#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace trispline::io {

using nlohmann::json;

namespace {

json parse_json(std::string_view text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string(what) + ": " + e.what());
    }
}

void require_version(const json& doc, const char* what) {
    if (!doc.is_object() || !doc.contains("format_version")) {
        throw ParseError(std::string(what) + ": missing format_version");
    }
    if (doc["format_version"] != kFormatVersion) {
        throw ParseError(std::string(what) + ": unsupported format_version " + doc["format_version"].dump());
    }
}

Rational json_rational(const json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number()) return parse_rational(v.dump());
    throw ParseError("expected a number or numeric string, got " + v.dump());
}

std::uint64_t fnv1a(std::string_view data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

template <class T>
T field(const json& doc, const char* key, const char* what) {
    if (!doc.contains(key)) throw ParseError(std::string(what) + ": missing field '" + key + "'");
    try {
        return doc[key].get<T>();
    } catch (const json::exception& e) {
        throw ParseError(std::string(what) + ": bad field '" + key + "': " + e.what());
    }
}

}  // namespace

Triangulation parse_mesh(std::string_view text) {
    const json doc = parse_json(text, "mesh");
    require_version(doc, "mesh");
    if (!doc.contains("vertices") || !doc["vertices"].is_array()) throw ParseError("mesh: 'vertices' must be a list");
    if (!doc.contains("triangles") || !doc["triangles"].is_array()) throw ParseError("mesh: 'triangles' must be a list");

    std::vector<Point2> vertices;
    for (const auto& v : doc["vertices"]) {
        if (!v.is_array() || v.size() != 2) throw ParseError("mesh: each vertex must be [x, y]");
        vertices.push_back({json_rational(v[0]), json_rational(v[1])});
    }
    std::vector<Triangle> triangles;
    for (const auto& t : doc["triangles"]) {
        if (!t.is_array() || t.size() != 3) throw ParseError("mesh: each triangle must be [i, j, k]");
        Triangle tri{};
        for (std::size_t k = 0; k < 3; ++k) {
            if (!t[k].is_number_integer() || t[k].get<long long>() < 0) {
                throw ParseError("mesh: triangle indices must be non-negative integers");
            }
            tri.vertex_ids[k] = t[k].get<std::size_t>();
        }
        triangles.push_back(tri);
    }
    return Triangulation(std::move(vertices), std::move(triangles));
}

std::string write_mesh(const Triangulation& mesh) {
    json doc;
    doc["format_version"] = kFormatVersion;
    doc["vertices"] = json::array();
    for (const auto& v : mesh.vertices()) doc["vertices"].push_back({to_decimal_string(v.x), to_decimal_string(v.y)});
    doc["triangles"] = json::array();
    for (const auto& t : mesh.triangles()) doc["triangles"].push_back(t.vertex_ids);
    return doc.dump(2) + "\n";
}

std::string mesh_hash(const Triangulation& mesh) {
    std::ostringstream canon;
    for (const auto& v : mesh.vertices()) canon << to_string(v.x) << ',' << to_string(v.y) << ';';
    canon << '|';
    for (const auto& t : mesh.triangles()) canon << t.vertex_ids[0] << ',' << t.vertex_ids[1] << ',' << t.vertex_ids[2] << ';';
    return hex64(fnv1a(canon.str()));
}

namespace {

json basis_columns_json(const SplineBasis& basis) {
    json cols = json::array();
    for (const auto& col : basis.columns()) {
        json polys = json::array();
        for (const auto& p : col.per_triangle) polys.push_back(to_string(p));
        cols.push_back(std::move(polys));
    }
    return cols;
}

}  // namespace

std::string write_basis(const SplineBasis& basis) {
    json doc;
    doc["format_version"] = kFormatVersion;
    doc["mesh_hash"] = mesh_hash(basis.mesh());
    doc["degree"] = basis.degree();
    doc["continuity_order"] = basis.continuity_order();
    doc["triangle_count"] = basis.mesh().triangle_count();
    doc["columns"] = basis_columns_json(basis);
    return doc.dump(2) + "\n";
}

std::string basis_hash(const SplineBasis& basis) {
    return hex64(fnv1a(write_basis(basis)));
}

SplineBasis parse_basis(std::string_view text, std::shared_ptr<const Triangulation> mesh) {
    const json doc = parse_json(text, "basis");
    require_version(doc, "basis");
    const auto hash = field<std::string>(doc, "mesh_hash", "basis");
    if (hash != mesh_hash(*mesh)) throw ParseError("basis: mesh hash " + hash + " does not match the given mesh");
    const int degree = field<int>(doc, "degree", "basis");
    const int order = field<int>(doc, "continuity_order", "basis");
    const auto n_tri = field<std::size_t>(doc, "triangle_count", "basis");
    if (n_tri != mesh->triangle_count()) throw ParseError("basis: triangle count does not match the mesh");

    const auto cols = field<std::vector<std::vector<std::string>>>(doc, "columns", "basis");
    std::vector<BasisColumn> columns;
    for (const auto& col : cols) {
        if (col.size() != n_tri) throw ParseError("basis: column does not list every triangle");
        BasisColumn c;
        for (const auto& s : col) c.per_triangle.push_back(parse_barycentric_poly(s, degree));
        columns.push_back(std::move(c));
    }
    return SplineBasis(std::move(mesh), degree, std::move(columns), order);
}

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string write_model(const FitModel& model) {
    json doc;
    doc["format_version"] = kFormatVersion;
    doc["mesh_hash"] = mesh_hash(model.basis->mesh());
    doc["basis_hash"] = basis_hash(*model.basis);
    doc["gamma"] = json::array();
    for (double g : model.gamma) doc["gamma"].push_back(format_double(g));
    doc["diagnostics"] = {{"rank", model.diagnostics.rank},
                          {"residual_norm", format_double(model.diagnostics.residual_norm)},
                          {"ridge", format_double(model.diagnostics.ridge)}};
    return doc.dump(2) + "\n";
}

FitModel parse_model(std::string_view text, std::shared_ptr<const SplineBasis> basis) {
    const json doc = parse_json(text, "model");
    require_version(doc, "model");
    if (field<std::string>(doc, "basis_hash", "model") != basis_hash(*basis)) {
        throw ParseError("model: basis hash does not match the given basis");
    }
    FitModel model;
    for (const auto& s : field<std::vector<std::string>>(doc, "gamma", "model")) {
        char* end = nullptr;
        const double g = std::strtod(s.c_str(), &end);
        if (end == s.c_str() || *end != '\0') throw ParseError("model: bad coefficient '" + s + "'");
        model.gamma.push_back(g);
    }
    if (model.gamma.size() != basis->column_count()) throw ParseError("model: coefficient count does not match basis");
    if (doc.contains("diagnostics")) {
        const json& d = doc["diagnostics"];
        model.diagnostics.rank = field<std::size_t>(d, "rank", "model diagnostics");
        model.diagnostics.residual_norm = std::strtod(field<std::string>(d, "residual_norm", "model diagnostics").c_str(), nullptr);
        model.diagnostics.ridge = std::strtod(field<std::string>(d, "ridge", "model diagnostics").c_str(), nullptr);
    }
    model.basis = std::move(basis);
    return model;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) {
        const auto first = cell.find_first_not_of(" \t\r");
        const auto last = cell.find_last_not_of(" \t\r");
        out.push_back(first == std::string::npos ? "" : cell.substr(first, last - first + 1));
    }
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

Dataset parse_dataset(std::string_view text, bool require_z) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line)) throw ParseError("data: empty file");
    const auto header = split_csv_line(line);
    const bool has_z = header.size() == 3 && header[2] == "z";
    if (header.size() < 2 || header[0] != "x" || header[1] != "y" || (header.size() == 3 && !has_z) ||
        header.size() > 3) {
        throw ParseError("data: header must be 'x,y,z' or 'x,y'");
    }
    if (require_z && !has_z) throw ParseError("data: a 'z' column is required");

    Dataset data;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != header.size()) {
            throw ParseError("data: line " + std::to_string(line_no) + " has " + std::to_string(cells.size()) +
                             " fields, expected " + std::to_string(header.size()));
        }
        Record r;
        r.position = {parse_rational(cells[0]), parse_rational(cells[1])};
        if (has_z) {
            char* end = nullptr;
            r.z = std::strtod(cells[2].c_str(), &end);
            if (end == cells[2].c_str() || *end != '\0') {
                throw ParseError("data: line " + std::to_string(line_no) + ": bad z value '" + cells[2] + "'");
            }
        }
        data.records.push_back(std::move(r));
    }
    return data;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << content;
    if (!out) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace trispline::io
