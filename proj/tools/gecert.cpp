#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "gecert/report.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) gecert::fail(gecert::Errc::parse_error, "cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Options {
  std::string scenario_path;
  std::string out_dir = "out";
  int grid = 0;  // 0: keep the scenario's value
  bool plot = false;
  double tol_res = 0.0;
  double tol_z = 0.0;
  double delta_link = 0.0;
  double p_value = 0.0;
};

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--scenario", opt.scenario_path, "scenario JSON file")->required();
  cmd->add_option("--grid", opt.grid, "override the scenario's grid point count");
  cmd->add_option("--out", opt.out_dir, "output directory");
  cmd->add_flag("--plot", opt.plot, "also write trajectories.svg");
  cmd->add_option("--tol-res", opt.tol_res, "residual tolerance override, V");
  cmd->add_option("--tol-z", opt.tol_z, "abscissa tolerance override, A");
  cmd->add_option("--delta-link", opt.delta_link, "trajectory linking gap, A");
}

gecert::Scenario load(const Options& opt, const std::string& text) {
  gecert::Scenario sc = gecert::parse_scenario(text);
  if (opt.grid > 0) sc.grid_n = opt.grid;
  if (opt.tol_res > 0.0) sc.tol.tol_res = opt.tol_res;
  if (opt.tol_z > 0.0) sc.tol.tol_z = opt.tol_z;
  if (opt.delta_link > 0.0) sc.delta_link = opt.delta_link;
  return sc;
}

int run_stages(const Options& opt, const gecert::Stages& stages) {
  const std::string text = slurp(opt.scenario_path);
  const gecert::Scenario sc = load(opt, text);
  const gecert::RunReport report =
      gecert::run_scenario(sc, text, stages, opt.out_dir, opt.plot);
  for (const auto& note : report.notes) std::cerr << "note: " << note << "\n";
  std::cout << fmt::format("{}: {} trajectories, max residual {}\n", sc.name,
                           report.branches.size(), report.max_residual);
  for (const auto& [id, u] : report.uniform)
    std::cout << fmt::format("branch {}: a={} b={} (b_capped={}) kappa={}\n", id, u.a, u.b,
                             u.b_capped, u.kappa);
  for (const auto& [id, b] : report.bounds)
    std::cout << fmt::format(
        "branch {}: eps={} gate={} bound={} observed={} gate_ok={} pass={}\n", id, b.epsilon,
        b.gate, b.bound, b.observed, b.gate_ok, b.pass);
  return report.verified ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"solver and strong-metric-regularity certifier for scalar generalized "
               "equations from nonsmooth circuits"};
  app.require_subcommand(1);
  Options opt;

  CLI::App* solve = app.add_subcommand("solve", "solve the static equation at one p value");
  add_common(solve, opt);
  solve->add_option("--p", opt.p_value, "source value, V")->required();
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "sweep the grid and link trajectories");
  add_common(sweep_cmd, opt);
  CLI::App* certify = app.add_subcommand("certify", "sweep plus pointwise/uniform certificates");
  add_common(certify, opt);
  CLI::App* perturb = app.add_subcommand("perturb", "full pipeline incl. perturbed trajectory");
  add_common(perturb, opt);
  CLI::App* run = app.add_subcommand("run", "all stages");
  add_common(run, opt);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      const gecert::Scenario sc = load(opt, slurp(opt.scenario_path));
      const gecert::GeneralizedEquation eq = sc.equation();
      const gecert::SolutionSet s = gecert::solve_static(eq, opt.p_value, sc.tol);
      for (double z : s.points) std::cout << fmt::format("{}\n", z);
      for (const auto& [lo, hi] : s.intervals) std::cout << fmt::format("[{}, {}]\n", lo, hi);
      return 0;
    }
    gecert::Stages stages;
    if (sweep_cmd->parsed()) stages = {true, false, false};
    if (certify->parsed()) stages = {true, true, false};
    return run_stages(opt, stages);
  } catch (const gecert::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == gecert::Errc::gate_violation ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
