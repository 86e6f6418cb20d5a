// psts: build, measure and export the Poncelet spatio-temporal surface.

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
    using namespace psts;
    using namespace psts::cli;

    CLI::App app{"Poncelet spatio-temporal surface: curvature, critical points and space-curve tangles"};
    app.set_config("--config", "", "key=value config file; command-line flags win");
    app.require_subcommand(1);

    RunConfig cfg;
    std::vector<double> caustic, outer, grid;
    std::string curves = "contacts";

    app.add_option("--caustic", caustic, "caustic semi-axes A_C B_C")->expected(2);
    app.add_option("--outer", outer, "outer ellipse semi-axes A B")->expected(2);
    app.add_option("--grid", grid, "surface grid NU NV")->expected(2);
    app.add_option("--samples", cfg.samples, "samples along the family period");
    app.add_option("--embedding", cfg.embedding, "straight | toroidal")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, Embedding>{{"straight", Embedding::straight}, {"toroidal", Embedding::toroidal}}));
    app.add_option("--major-radius", cfg.major_radius, "torus major radius (default 2a)");
    app.add_option("--color", cfg.color_by, "gaussian | mean | none")
        ->transform(CLI::CheckedTransformer(std::map<std::string, io::ColorBy>{
            {"gaussian", io::ColorBy::gaussian}, {"mean", io::ColorBy::mean}, {"none", io::ColorBy::none}}));
    app.add_option("--out", cfg.out, "output path (prefix for multi-file commands)");
    app.add_option("--format", cfg.format, "obj | ply | csv | json");
    app.add_option("--residual-threshold", cfg.residual_threshold, "max distance of a linking integral to its integer");

    auto* family = app.add_subcommand("family", "CSV of vertex angles and coordinates along the family");
    auto* surface = app.add_subcommand("surface", "OBJ or PLY mesh of the three facets");
    auto* curvature = app.add_subcommand("curvature", "curvature grids and critical point report");
    auto* tangle = app.add_subcommand("tangle", "linking numbers of the swept space curves");
    tangle->add_option("--set", curves, "contacts | vertices | centers | all");
    auto* invariants = app.add_subcommand("invariants", "billiard invariants report");
    for (auto* sub : {family, surface, curvature, tangle, invariants}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? ok : bad_config;
    }

    if (!caustic.empty()) cfg.caustic = {caustic[0], caustic[1]};
    if (!outer.empty()) cfg.outer = {outer[0], outer[1]};
    if (!grid.empty()) {
        cfg.nu = static_cast<int>(grid[0]);
        cfg.nv = static_cast<int>(grid[1]);
    }
    cfg.curve_set = curves;

    return guarded(
        [&]() -> int {
            if (family->parsed()) return cmd_family(cfg, std::cout);
            if (surface->parsed()) return cmd_surface(cfg, std::cout);
            if (curvature->parsed()) return cmd_curvature(cfg, std::cout);
            if (tangle->parsed()) return cmd_tangle(cfg, std::cout, std::cerr);
            return cmd_invariants(cfg, std::cout);
        },
        std::cerr);
}
