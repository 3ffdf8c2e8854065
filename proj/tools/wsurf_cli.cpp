#include <iostream>
#include <numbers>

#include "CLI11.hpp"
#include "wsurf/cli.hpp"

int main(int argc, char** argv) {
  using namespace wsurf;
  CLI::App app{"Minimal space-like surfaces in R^4_1 from Weierstrass data"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string grid, t0, mobius, lorentz, variant;
  double phi = 0;

  for (const std::string& name : cli_commands()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--in", cfg.in, "surface definition file")->required();
    sub->add_option("--out", cfg.out, "output file (default: standard output)");
    sub->add_option("--grid", grid, "grid override NUxNV");
    sub->add_option("--t0", t0, "base point RE,IM");
    sub->add_option("--tol", cfg.tol, "validity tolerance");
    if (name == "mesh") sub->add_option("--projection", cfg.projection, "drop-x4 | drop-x3 | orthographic:<12 reals>");
    if (name == "canonize") sub->add_option("--type", cfg.canonical_type, "first | second");
    if (name == "associate") sub->add_option("--phi", phi, "angle in radians, [0, pi/2]")->required();
    if (name == "transform") {
      sub->add_option("--mobius", mobius, "B as 8 reals: re a, im a, re b, im b, re c, im c, re d, im d");
      sub->add_option("--lorentz", lorentz, "A as 16 reals, row-major");
      sub->add_option("--variant", variant,
                      "orthochronous-proper | non-orthochronous-proper | orthochronous-improper | "
                      "non-orthochronous-improper");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    if (!grid.empty()) cfg.grid = parse_grid_flag(grid);
    if (!t0.empty()) cfg.t0 = parse_complex_flag(t0);
    if (!mobius.empty()) cfg.mobius = parse_mobius_flag(mobius);
    if (!lorentz.empty()) cfg.lorentz = parse_lorentz_flag(lorentz);
    if (!variant.empty()) {
      const auto v = variant_from_tag(variant);
      if (!v) throw ConfigError("unknown variant '" + variant + "'");
      cfg.variant = *v;
    }
    if (cfg.command == "associate") cfg.phi = phi;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code();
  }
  return run_command(cfg, std::cout, std::cerr);
}
