#include "subnorm/io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

using namespace subnorm;

namespace {

// 0 Subnormal / 1 NotSubnormal / 2 Inconclusive / >2 error
int exit_code(Status s) {
    switch (s) {
        case Status::Subnormal: return 0;
        case Status::NotSubnormal: return 1;
        case Status::Inconclusive: return 2;
    }
    return 3;
}

std::size_t atom_budget() {
    if (const char* env = std::getenv("SUBNORM_ATOM_BUDGET")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 4096;
}

void emit(const Json& report, const std::string& format) {
    if (format == "json") {
        std::cout << report.dump(2) << '\n';
        return;
    }
    std::cout << "status: " << report.value("status", std::string("-")) << '\n';
    if (report.contains("witness")) std::cout << "  " << report["witness"].get<std::string>() << '\n';
    for (const auto& [k, v] : report.items())
        if (k != "status" && k != "witness" && k != "certificate" && k != "h")
            std::cout << k << ": " << v.dump() << '\n';
}

int cmd_analyze(const std::string& space_file, unsigned depth, const std::string& format) {
    SpaceMapDoc doc = space_map_from_json(load_json_file(space_file));
    DecideOptions opts;
    opts.boundary = doc.boundary;
    Verdict v = decide_subnormal_discrete(doc.space, doc.map, depth, opts);
    Json report = verdict_to_json(v);
    report["h"] = derivative_table_to_json(doc.space, derivative_table(doc.space, doc.map, depth));
    emit(report, format);
    return exit_code(v.status);
}

int cmd_verify(const std::string& space_file, const std::string& family_file, bool lift,
               unsigned depth, const std::string& format) {
    SpaceMapDoc doc = space_map_from_json(load_json_file(space_file));
    Family family = family_from_json(load_json_file(family_file));
    family.validate_for(doc.space);

    Json checks = Json::object();
    std::string first_violation;
    auto record = [&](const char* name, const CheckResult& r) {
        checks[name] = r.ok;
        if (!r.ok && first_violation.empty()) {
            first_violation = name;
            if (r.witness) checks[std::string(name) + "_witness"] = *r.witness;
        }
    };
    record("cc", verify_cc(doc.space, doc.map, family, doc.boundary));
    DerivativeTable table = derivative_table(doc.space, doc.map, depth);
    bool moments = verify_moment_identity(doc.space, doc.map, family, table, doc.boundary);
    checks["moment_identity"] = moments;
    if (!moments && first_violation.empty()) first_violation = "moment_identity";
    if (lift) {
        Lift l = build_lift(doc.space, doc.map, family, doc.boundary);
        record("lift_derivative", verify_lift_derivative(doc.space, l));
        record("lift_quasinormal", verify_lift_quasinormal(doc.space, l));
        checks["product"] = lift_to_json(l);
    }
    Json report{{"status", first_violation.empty() ? "pass" : "fail"}};
    if (!first_violation.empty()) report["witness"] = "first violation: " + first_violation;
    report["checks"] = std::move(checks);
    report["window"] = depth;
    emit(report, format);
    return first_violation.empty() ? 0 : 1;
}

int cmd_construct(const std::string& spec_file, const std::string& format) {
    Json j = load_json_file(spec_file);
    Json bundle;
    if (j.contains("theta")) {
        GeneratorSpec spec = generator_spec_from_json(j);
        GeneratedExample ex = generate_fixed_point_example(spec);
        bundle["space"] = space_map_to_json(ex.space, ex.map, ex.boundary);
        bundle["family"] = family_to_json(ex.family);
        bundle["expected_h"] = derivative_table_to_json(ex.space, ex.expected);
        bundle["norm_squared"] = ex.norm_squared.str();
        bundle["epsilon"] = rational_str(ex.epsilon);
    } else if (j.contains("m_lo")) {
        TreeProfile profile = profile_from_json(j);
        Verdict v = tree_subnormal(profile);
        long depth = std::min<long>(profile.m_hi(), 4);
        TreeSlice slice = materialize_tree(profile, static_cast<unsigned>(std::max(0L, depth)));
        bundle["space"] = space_map_to_json(slice.space, slice.map, slice.boundary);
        bundle["verdict"] = verdict_to_json(v);
    } else {
        throw ParseError("generator spec is neither a seed-measure spec nor a tree profile");
    }
    emit(bundle, format == "text" ? "json" : format);  // bundles are always JSON
    return 0;
}

int cmd_matrix(const std::string& symbol_file, const std::string& density_file, unsigned samples,
               double tolerance, const std::string& format) {
    SpectralSymbol symbol = symbol_from_json(load_json_file(symbol_file));
    DensitySeries density = density_from_json(load_json_file(density_file));
    // deterministic rational grid: k points with coordinates j/2 + 1
    std::vector<Vec> grid;
    for (unsigned j = 0; j < samples; ++j) {
        Vec x(symbol.dim(), Rat(0));
        for (unsigned k = 0; k < symbol.dim(); ++k)
            x[k] = Rat(2 + ((j + k) % 3)) / Rat(1 + (j % 2));
        grid.push_back(std::move(x));
    }
    bool overt = true;
    for (const Vec& x : grid) overt = overt && verify_overt(symbol, x);
    bool scc = verify_matrix_scc(symbol, density, grid, tolerance, atom_budget());
    Json report{{"status", overt && scc ? "pass" : "fail"},
                {"overt", overt},
                {"scc", scc},
                {"samples", samples},
                {"exact", symbol.is_exact()}};
    emit(report, format);
    return overt && scc ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"subnormality toolkit for composition operators over discrete measure spaces"};
    app.require_subcommand(1);
    std::string format = "json";
    app.add_option("--format", format, "json | text")->check(CLI::IsMember({"json", "text"}));

    std::string space_file, family_file, spec_file, symbol_file, density_file;
    unsigned depth = 4, samples = 4;
    double tolerance = 1e-9;
    bool lift = false;

    auto* analyze = app.add_subcommand("analyze", "decide subnormality of a space/map fixture");
    analyze->add_option("space", space_file, "space+map JSON")->required();
    analyze->add_option("--depth", depth, "moment window depth")->check(CLI::Range(2u, 64u));

    auto* verify = app.add_subcommand("verify", "replay consistency checks for a family");
    verify->add_option("space", space_file, "space+map JSON")->required();
    verify->add_option("family", family_file, "family JSON")->required();
    verify->add_option("--depth", depth, "moment window depth")->check(CLI::Range(2u, 64u));
    verify->add_flag("--lift", lift, "also verify the product-space lift");

    auto* construct = app.add_subcommand("construct", "emit a self-verifying fixture bundle");
    construct->add_option("spec", spec_file, "generator spec or tree profile JSON")->required();

    auto* matrix = app.add_subcommand("matrix", "verify a matrix symbol with a density");
    matrix->add_option("symbol", symbol_file, "symbol JSON")->required();
    matrix->add_option("density", density_file, "coefficient array JSON")->required();
    matrix->add_option("--samples", samples, "number of sample points")->check(CLI::Range(1u, 64u));
    matrix->add_option("--tolerance", tolerance, "comparison tolerance for non-exact symbols")
        ->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze) return cmd_analyze(space_file, depth, format);
        if (*verify) return cmd_verify(space_file, family_file, lift, depth, format);
        if (*construct) return cmd_construct(spec_file, format);
        if (*matrix) return cmd_matrix(symbol_file, density_file, samples, tolerance, format);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
    return 3;
}
