#include <iostream>

#include <CLI11.hpp>

#include "borel/cli.hpp"

namespace {

struct Flags {
  borel::CommandOptions opt;
  std::string window;
  std::string format = "table";
  bool no_time = false;
};

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--group", f.opt.group, "Codegree list (4,6) or catalog name (SU(3))");
  app->add_option("--window", f.window, "Degree window lo:hi");
  app->add_option("--format", f.format, "table or json")->check(CLI::IsMember({"table", "json"}));
  app->add_flag("--no-time", f.no_time, "Report ms as 0");
}

void add_modules(CLI::App* app, Flags& f, bool two) {
  app->add_option("--M", f.opt.m, "Module file, or k, kbar, I, R, L with @n and +");
  if (two) app->add_option("--N", f.opt.n, "Second module");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with DG modules over H*(BG) and H_*(G)"};
  app.require_subcommand(1);
  Flags f;

  auto* homology = app.add_subcommand("homology", "Homology dimensions of a module");
  add_modules(homology, f, false);
  homology->add_flag("--lambda", f.opt.lambda, "Named modules over H_*(G)");
  auto* ext = app.add_subcommand("ext", "Bigraded Ext over H*(BG)");
  add_modules(ext, f, true);
  ext->add_option("--route", f.opt.route, "free, injective or both")
      ->check(CLI::IsMember({"free", "injective", "both"}));
  add_modules(app.add_subcommand("rhom", "Derived Hom on a window"), f, true);
  add_modules(app.add_subcommand("adams", "E2 page against the abutment"), f, true);
  add_modules(app.add_subcommand("koszul-t", "T(M) = Hom_R(k-bar, M)"), f, false);
  add_modules(app.add_subcommand("koszul-s", "S(N) = N tensor_Lambda k_Lambda"), f, false);
  auto* roundtrip = app.add_subcommand("roundtrip", "Koszul duality round trip on homology");
  add_modules(roundtrip, f, false);
  roundtrip->add_flag("--lambda", f.opt.lambda, "Input over H_*(G)");
  app.add_subcommand("endcheck", "Double centralizer and Cartan map checks");
  add_modules(app.add_subcommand("recognize-k", "Quasi-isomorphism k-bar -> M"), f, false);
  app.add_subcommand("catalog", "Groups and subgroup pairs");

  auto* groups = app.add_subcommand("groups", "Change of groups along H < G");
  groups->require_subcommand(1);
  for (const char* name : {"restrict", "extend", "coextend", "dual", "shriek", "shift-check"}) {
    auto* sub = groups->add_subcommand(name);
    add_common(sub, f);
    add_modules(sub, f, false);
    sub->add_option("--pair", f.opt.pair, "Catalog pair, e.g. T<SU(2)");
    sub->add_option("--source", f.opt.source, "G");
    sub->add_option("--target", f.opt.target, "H");
    sub->add_option("--image", f.opt.images, "Image of x_i in y1, y2, ...");
  }
  for (auto* sub : app.get_subcommands({})) add_common(sub, f);

  CLI11_PARSE(app, argc, argv);
  f.opt.command = app.get_subcommands().front()->get_name();
  if (f.opt.command == "groups") f.opt.subcommand = groups->get_subcommands().front()->get_name();
  if (f.opt.command == "koszul-s") f.opt.lambda = true;

  const bool json = f.format == "json";
  try {
    if (!f.window.empty()) f.opt.window = borel::parse_window_spec(f.window);
    const borel::RunReport rep = borel::run_command(f.opt);
    std::cout << (json ? rep.to_json(!f.no_time) : rep.to_table(!f.no_time));
    return rep.all_checks_passed() ? 0 : 3;
  } catch (const borel::Error& e) {
    if (json) std::cout << borel::error_json(e);
    else std::cerr << "error " << borel::to_string(e.code()) << ": " << e.what() << '\n';
    return 1;
  }
}
