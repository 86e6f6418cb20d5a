#pragma once

#include <array>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "psts/io.hpp"
#include "psts/psts.hpp"

namespace psts::cli {

enum ExitCode : int { ok = 0, invariant_failure = 1, bad_config = 2, numeric_error = 3 };

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

struct RunConfig {
    std::optional<std::array<double, 2>> caustic;
    std::optional<std::array<double, 2>> outer;
    int nu = 128, nv = 33;
    int samples = 1024;
    Embedding embedding = Embedding::straight;
    double major_radius = 0.0;  // 0 selects 2a
    io::ColorBy color_by = io::ColorBy::gaussian;
    std::string out;
    std::string format;
    std::string curve_set = "contacts";
    double residual_threshold = 0.05;

    void validate() const {
        if (caustic.has_value() == outer.has_value())
            throw ConfigError("exactly one of --caustic or --outer is required");
        if (nu < 8 || nv < 2) throw ConfigError("--grid needs NU >= 8 and NV >= 2");
        if (samples < 64) throw ConfigError("--samples must be at least 64");
        if (major_radius < 0.0) throw ConfigError("--major-radius must be positive");
    }

    ConfocalPair pair() const {
        validate();
        return caustic ? pair_from_caustic((*caustic)[0], (*caustic)[1]) : pair_from_outer((*outer)[0], (*outer)[1]);
    }
};

inline nlohmann::json pair_json(const ConfocalPair& p) {
    return {{"a", p.a}, {"b", p.b}, {"a_c", p.a_c}, {"b_c", p.b_c}, {"m", p.m}, {"K", p.K}, {"du", p.du}};
}

inline std::ofstream open_output(const std::string& path, std::ios::openmode mode = std::ios::out) {
    std::ofstream os(path, mode);
    if (!os) throw IoError("cannot open output file '" + path + "'");
    return os;
}

// Writes to `path`, or to `fallback` when path is empty.
template <class Fn>
void emit(const std::string& path, std::ostream& fallback, Fn&& write) {
    if (path.empty()) {
        write(fallback);
        return;
    }
    std::ofstream os = open_output(path);
    write(os);
    if (!os) throw IoError("failed writing '" + path + "'");
}

inline int cmd_family(const RunConfig& cfg, std::ostream& out) {
    const ConfocalPair pair = cfg.pair();
    emit(cfg.out, out, [&](std::ostream& os) { io::write_family_csv(os, pair, cfg.samples); });
    return ok;
}

inline int cmd_surface(const RunConfig& cfg, std::ostream& out) {
    const ConfocalPair pair = cfg.pair();
    std::string format = cfg.format;
    if (format.empty()) format = cfg.out.ends_with(".ply") ? "ply" : "obj";
    if (format != "obj" && format != "ply") throw ConfigError("surface supports --format obj or ply");
    if (cfg.out.empty()) throw ConfigError("surface needs --out PATH");
    io::Mesh mesh = io::surface_mesh(pair, cfg.nu, cfg.nv, cfg.embedding, cfg.major_radius, cfg.color_by);
    std::ofstream os = open_output(cfg.out, std::ios::out | std::ios::binary);
    if (format == "ply")
        io::write_ply(os, mesh);
    else
        io::write_obj(os, mesh);
    if (!os) throw IoError("failed writing '" + cfg.out + "'");
    out << nlohmann::json{{"vertices", mesh.vertices.size()}, {"faces", mesh.faces.size()},
                          {"color_min", mesh.color_min}, {"color_max", mesh.color_max}}
               .dump()
        << '\n';
    return ok;
}

inline nlohmann::json critical_json(const CriticalPoint& cp) {
    nlohmann::json j = {{"u", cp.u},
                        {"v", cp.v},
                        {"value", cp.value},
                        {"morse_type", to_string(cp.morse_type)},
                        {"hessian_eigs", {cp.hessian_eigs[0], cp.hessian_eigs[1]}},
                        {"hessian_det", cp.hessian_det},
                        {"gradient_norm", cp.gradient_norm},
                        {"iterations", cp.iterations},
                        {"converged", cp.converged}};
    if (!cp.diagnostic.empty()) j["diagnostic"] = cp.diagnostic;
    return j;
}

/// Per-facet (u, v, K, H) grids in <out>_facet<i>.csv and the critical point
/// report in <out>_critical.json.
inline int cmd_curvature(const RunConfig& cfg, std::ostream& out) {
    const ConfocalPair pair = cfg.pair();
    nlohmann::json report = {{"pair", pair_json(pair)}, {"grid", {{"nu", cfg.nu}, {"nv", cfg.nv}}}};
    report["facets"] = nlohmann::json::array();
    for (int facet = 1; facet <= 3; ++facet) {
        CurvatureFields f = curvature_numeric(fundamental_forms(patch(pair, facet, cfg.nu, cfg.nv)));
        f.gaussian.critical_points = find_critical_points(f.gaussian, pair, facet);
        f.mean.critical_points = find_critical_points(f.mean, pair, facet);
        if (!cfg.out.empty()) {
            std::ofstream os = open_output(cfg.out + "_facet" + std::to_string(facet) + ".csv");
            io::write_curvature_csv(os, f);
        }
        nlohmann::json fj = {{"facet", facet}};
        for (const CurvatureField* fld : {&f.gaussian, &f.mean}) {
            nlohmann::json pts = nlohmann::json::array();
            for (const auto& cp : fld->critical_points) pts.push_back(critical_json(cp));
            fj[to_string(fld->which)] = {{"min", fld->min()}, {"max", fld->max()}, {"critical_points", pts}};
        }
        report["facets"].push_back(fj);
    }
    emit(cfg.out.empty() ? "" : cfg.out + "_critical.json", out,
         [&](std::ostream& os) { os << report.dump(2) << '\n'; });
    return ok;
}

inline std::vector<CurveLabel> curve_set(const std::string& name) {
    std::vector<CurveLabel> labels;
    const bool all = name == "all";
    if (name == "contacts" || all)
        for (int i = 1; i <= 3; ++i) labels.push_back(contact_curve(i));
    if (name == "vertices" || all)
        for (int i = 1; i <= 3; ++i) labels.push_back(vertex_curve(i));
    if (name == "centers" || all) {
        labels.push_back({CurveKind::X1, 0});
        labels.push_back({CurveKind::X2, 0});
    }
    if (labels.empty()) throw ConfigError("unknown curve set '" + name + "' (contacts|vertices|centers|all)");
    return labels;
}

inline nlohmann::json link_report_json(const LinkReport& rep) {
    return {{"labels", rep.labels},
            {"matrix", rep.matrix},
            {"raw", rep.raw},
            {"residuals", rep.residuals},
            {"residual_threshold", rep.residual_threshold},
            {"reliable", rep.reliable},
            {"classification", to_string(rep.classification)}};
}

/// Link report in <out>.json plus one OBJ polyline per curve.
inline int cmd_tangle(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const ConfocalPair pair = cfg.pair();
    std::vector<SpaceCurve> curves;
    for (const CurveLabel& l : curve_set(cfg.curve_set))
        curves.push_back(sweep_curve(pair, l, cfg.samples, cfg.major_radius));
    LinkReport rep;
    try {
        rep = tangle_report(curves, {cfg.residual_threshold, false});
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\nhint: increase --samples or change --major-radius\n";
        return numeric_error;
    }
    nlohmann::json j = {{"pair", pair_json(pair)}, {"samples", cfg.samples}};
    j["major_radius"] = cfg.major_radius > 0.0 ? cfg.major_radius : default_major_radius(pair);
    j["report"] = link_report_json(rep);
    emit(cfg.out.empty() ? "" : cfg.out + ".json", out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
    if (!cfg.out.empty())
        for (const SpaceCurve& c : curves) {
            std::ofstream os = open_output(cfg.out + "_" + c.label.name() + ".obj");
            io::write_polyline_obj(os, c);
        }
    if (!rep.reliable) {
        err << "error: linking residual " << rep.max_residual() << " exceeds " << rep.residual_threshold
            << "; increase --samples\n";
        return numeric_error;
    }
    return ok;
}

inline constexpr double kInvariantTolerance = 1e-8;

inline int cmd_invariants(const RunConfig& cfg, std::ostream& out) {
    const ConfocalPair pair = cfg.pair();
    const InvariantReport r = billiard_invariants(pair, cfg.samples);
    const bool pass = r.perimeter_spread <= kInvariantTolerance && r.reflection_max_deviation <= kInvariantTolerance &&
                      r.cosine_sum_spread <= kInvariantTolerance;
    nlohmann::json j = {{"pair", pair_json(pair)},
                        {"samples", r.samples},
                        {"perimeter_mean", r.perimeter_mean},
                        {"perimeter_spread", r.perimeter_spread},
                        {"reflection_max_deviation", r.reflection_max_deviation},
                        {"cosine_sum_mean", r.cosine_sum_mean},
                        {"cosine_sum_spread", r.cosine_sum_spread},
                        {"tolerance", kInvariantTolerance},
                        {"pass", pass}};
    emit(cfg.out, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
    return pass ? ok : invariant_failure;
}

/// Runs a command, mapping failures onto the documented exit codes.
template <class Fn>
int guarded(Fn&& fn, std::ostream& err) {
    try {
        return fn();
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return bad_config;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return bad_config;
    } catch (const NumericError& e) {
        err << "numeric error: " << e.what() << '\n';
        return numeric_error;
    } catch (const IoError& e) {
        err << "io error: " << e.what() << '\n';
        return bad_config;
    }
}

}  // namespace psts::cli
