// Command-line front end: basis construction, continuity checks, fitting,
// prediction and the worked square-mesh example.

#include "trispline/continuity.hpp"
#include "trispline/demo.hpp"
#include "trispline/errors.hpp"
#include "trispline/fitting.hpp"
#include "trispline/io.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace trispline;

constexpr int kExitVerificationFailed = 1;
constexpr int kExitOperationalError = 2;

/// Error tagged with the pipeline stage that produced it.
struct StageError {
    std::string stage;
    std::string message;
};

template <class F>
auto stage(const std::string& name, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const std::exception& e) {
        throw StageError{name, e.what()};
    }
}

struct Config {
    std::string mesh_path;
    std::string basis_path;
    std::string model_path;
    std::string data_path;
    std::string out_path;
    int degree = 2;
    int smoothness = -1;
    int samples = 10;
    double tolerance = 1e-9;
    bool exact = true;
    double ridge = 0.0;
    std::vector<std::string> transversals;
};

std::shared_ptr<const Triangulation> load_mesh(const Config& cfg) {
    return stage("mesh parse", [&] {
        return std::make_shared<const Triangulation>(io::parse_mesh(io::read_file(cfg.mesh_path)));
    });
}

std::shared_ptr<const SplineBasis> load_basis(const Config& cfg, std::shared_ptr<const Triangulation> mesh) {
    return stage("basis parse", [&] {
        return std::make_shared<const SplineBasis>(io::parse_basis(io::read_file(cfg.basis_path), std::move(mesh)));
    });
}

std::map<std::size_t, Point2> parse_transversals(const std::vector<std::string>& specs) {
    std::map<std::size_t, Point2> out;
    for (const auto& spec : specs) {
        const auto eq = spec.find('=');
        const auto comma = spec.find(',', eq == std::string::npos ? 0 : eq);
        if (eq == std::string::npos || comma == std::string::npos) {
            throw std::invalid_argument("--transversal expects EDGE=X,Y, got '" + spec + "'");
        }
        const std::size_t edge = std::stoul(spec.substr(0, eq));
        out[edge] = {parse_rational(spec.substr(eq + 1, comma - eq - 1)), parse_rational(spec.substr(comma + 1))};
    }
    return out;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
    } else {
        io::write_file(path, content);
    }
}

int cmd_basis(const Config& cfg) {
    if (cfg.smoothness < 0 || cfg.smoothness > cfg.degree) {
        std::cerr << "usage error: smoothness must satisfy 0 <= r <= degree (got r=" << cfg.smoothness
                  << ", d=" << cfg.degree << ")\n";
        return kExitOperationalError;
    }
    if (cfg.degree < 1) {
        std::cerr << "usage error: degree must be at least 1\n";
        return kExitOperationalError;
    }
    const auto mesh = load_mesh(cfg);
    const auto overrides = stage("transversal", [&] { return parse_transversals(cfg.transversals); });

    EnforcementTrace trace;
    const SplineBasis basis = stage("continuity", [&] {
        return enforce_continuity(mesh, cfg.degree, cfg.smoothness, overrides, &trace);
    });
    stage("write", [&] {
        write_output(cfg.out_path, io::write_basis(basis));
        return 0;
    });

    std::ostream& log = (cfg.out_path.empty() || cfg.out_path == "-") ? std::cerr : std::cout;
    log << "mesh: " << mesh->vertices().size() << " vertices, " << mesh->triangle_count() << " triangles, "
        << mesh->shared_edges().size() << (mesh->shared_edges().size() == 1 ? " shared edge" : " shared edges") << " (hash " << io::mesh_hash(*mesh) << ")\n";
    log << "degree: " << cfg.degree << ", continuity: C" << cfg.smoothness << "\n";
    log << "columns:";
    for (std::size_t k = 0; k < trace.column_counts.size(); ++k) log << (k == 0 ? " " : " -> ") << trace.column_counts[k];
    log << "\n";
    for (const auto& s : trace.steps) {
        const auto& e = mesh->shared_edges()[s.edge_index];
        log << "  order " << s.order << " edge " << s.edge_index << " (T" << e.tri_a + 1 << "|T" << e.tri_b + 1
            << "): active " << s.active << ", rank " << s.rank << ", columns " << s.columns_before << " -> "
            << s.columns_after << (s.canonical ? "" : " (kernel reduction)") << "\n";
    }
    return 0;
}

int cmd_check(const Config& cfg) {
    const auto mesh = load_mesh(cfg);
    const auto basis = load_basis(cfg, mesh);
    const int order = cfg.smoothness >= 0 ? cfg.smoothness : basis->continuity_order();
    if (order < 0) {
        std::cerr << "usage error: basis is unconstrained; pass --smoothness\n";
        return kExitOperationalError;
    }
    if (cfg.samples < 2) {
        std::cerr << "usage error: --samples must be at least 2\n";
        return kExitOperationalError;
    }
    CheckOptions opts;
    opts.samples = cfg.samples;
    opts.mode = cfg.exact ? CheckMode::Exact : CheckMode::Float;
    opts.tolerance = cfg.tolerance;
    const ContinuityReport report = stage("check", [&] { return check_continuity(*basis, order, opts); });

    std::cout << "edge  triangles  max_discrepancy  verdict\n";
    for (const auto& e : report.edges) {
        const auto& edge = mesh->shared_edges()[e.edge_index];
        std::ostringstream tris;
        tris << "T" << edge.tri_a + 1 << "|T" << edge.tri_b + 1;
        std::cout << e.edge_index << "     " << tris.str() << "      " << io::format_double(e.max_discrepancy) << "  "
                  << (e.pass ? "PASS" : "FAIL") << "\n";
    }
    std::cout << "continuity C" << order << ": " << (report.pass() ? "PASS" : "FAIL") << " ("
              << (cfg.exact ? "exact" : "float, tol " + io::format_double(cfg.tolerance)) << ")\n";
    return report.pass() ? 0 : kExitVerificationFailed;
}

int cmd_fit(const Config& cfg) {
    const auto mesh = load_mesh(cfg);
    const auto basis = load_basis(cfg, mesh);
    const Dataset data = stage("data parse", [&] { return io::parse_dataset(io::read_file(cfg.data_path), true); });
    const DesignMatrix design = stage("design", [&] { return assemble_design(basis, data); });
    const FitModel model = stage("fit", [&] { return fit(design, data.observations(), cfg.ridge); });
    stage("write", [&] {
        write_output(cfg.out_path, io::write_model(model));
        return 0;
    });
    std::ostream& log = (cfg.out_path.empty() || cfg.out_path == "-") ? std::cerr : std::cout;
    log << "records: " << data.records.size() << ", columns: " << basis->column_count() << "\n";
    log << "rank: " << model.diagnostics.rank << "\nresidual: " << io::format_double(model.diagnostics.residual_norm)
        << "\n";
    return 0;
}

int cmd_predict(const Config& cfg) {
    const auto mesh = load_mesh(cfg);
    const auto basis = load_basis(cfg, mesh);
    const FitModel model = stage("model parse", [&] { return io::parse_model(io::read_file(cfg.model_path), basis); });
    const Dataset data = stage("data parse", [&] { return io::parse_dataset(io::read_file(cfg.data_path), false); });

    std::ostringstream out;
    out << "x,y,zhat\n";
    for (std::size_t i = 0; i < data.records.size(); ++i) {
        const Point2& p = data.records[i].position;
        const double zhat = stage("predict", [&] {
            try {
                return predict(model, p);
            } catch (const PointOutsideMesh& e) {
                throw PointOutsideMesh("record " + std::to_string(i) + ": " + e.what(), i);
            }
        });
        out << to_decimal_string(p.x) << ',' << to_decimal_string(p.y) << ',' << io::format_double(zhat) << "\n";
    }
    stage("write", [&] {
        write_output(cfg.out_path, out.str());
        return 0;
    });
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Smooth piecewise-polynomial spline bases on triangulations"};
    app.require_subcommand(1);
    Config cfg;

    auto* basis = app.add_subcommand("basis", "Construct a C^r spline basis and write it to a file");
    basis->add_option("--mesh", cfg.mesh_path, "Mesh file")->required()->check(CLI::ExistingFile);
    basis->add_option("--degree", cfg.degree, "Polynomial degree d")->required();
    basis->add_option("--smoothness", cfg.smoothness, "Continuity order r (0 <= r <= d)")->required();
    basis->add_option("--transversal", cfg.transversals, "Transversal point override EDGE=X,Y (repeatable)");
    basis->add_option("--out", cfg.out_path, "Basis file to write (stdout if omitted)");

    auto* check = app.add_subcommand("check", "Verify continuity of a basis across every shared edge");
    check->add_option("--mesh", cfg.mesh_path, "Mesh file")->required()->check(CLI::ExistingFile);
    check->add_option("--basis", cfg.basis_path, "Basis file")->required()->check(CLI::ExistingFile);
    check->add_option("--smoothness", cfg.smoothness, "Order to check (defaults to the basis order)");
    check->add_option("--samples", cfg.samples, "Sample points per edge")->capture_default_str();
    check->add_option("--tol", cfg.tolerance, "Tolerance in float mode")->capture_default_str();
    check->add_flag("--exact,!--no-exact", cfg.exact, "Exact rational comparison (default on)");

    auto* fit_cmd = app.add_subcommand("fit", "Least-squares fit of a basis to scattered data");
    fit_cmd->add_option("--mesh", cfg.mesh_path, "Mesh file")->required()->check(CLI::ExistingFile);
    fit_cmd->add_option("--basis", cfg.basis_path, "Basis file")->required()->check(CLI::ExistingFile);
    fit_cmd->add_option("--data", cfg.data_path, "CSV with header x,y,z")->required()->check(CLI::ExistingFile);
    fit_cmd->add_option("--ridge", cfg.ridge, "Ridge parameter lambda >= 0")->capture_default_str();
    fit_cmd->add_option("--out", cfg.out_path, "Model file to write (stdout if omitted)");

    auto* predict_cmd = app.add_subcommand("predict", "Evaluate a fitted model at new points");
    predict_cmd->add_option("--mesh", cfg.mesh_path, "Mesh file")->required()->check(CLI::ExistingFile);
    predict_cmd->add_option("--basis", cfg.basis_path, "Basis file")->required()->check(CLI::ExistingFile);
    predict_cmd->add_option("--model", cfg.model_path, "Model file")->required()->check(CLI::ExistingFile);
    predict_cmd->add_option("--data", cfg.data_path, "CSV with header x,y (z ignored)")->required()->check(CLI::ExistingFile);
    predict_cmd->add_option("--out", cfg.out_path, "Prediction CSV to write (stdout if omitted)");

    auto* demo_cmd = app.add_subcommand("demo", "Run the built-in two-triangle example end to end");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitOperationalError;
    }

    try {
        if (*basis) return cmd_basis(cfg);
        if (*check) return cmd_check(cfg);
        if (*fit_cmd) return cmd_fit(cfg);
        if (*predict_cmd) return cmd_predict(cfg);
        if (*demo_cmd) return demo::run(std::cout);
    } catch (const StageError& e) {
        std::cerr << "error [" << e.stage << "]: " << e.message << "\n";
        return kExitOperationalError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitOperationalError;
    }
    return kExitOperationalError;
}
