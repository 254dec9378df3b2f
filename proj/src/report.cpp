#include "gecert/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>

#include <fmt/format.h>
#include <json.hpp>

namespace gecert {
namespace {

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return fmt::format("{:016x}", h);
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::validation_error, "cannot write " + path.string());
  out << content;
}

std::string trajectories_csv(const TrajectoryBundle& bundle) {
  std::string csv = "t,branch_id,z\n";
  for (const auto& traj : bundle.trajectories)
    for (const auto& [t, z] : traj.samples)
      csv += fmt::format("{},{},{}\n", t, traj.branch_id, z);
  return csv;
}

std::string certificate_csv(const std::map<int, UniformCertificate>& uniform) {
  std::string csv = "t,branch_id,z,a_t,b_t,kappa_t\n";
  for (const auto& [id, ucert] : uniform)
    for (const auto& c : ucert.pointwise)
      csv += fmt::format("{},{},{},{},{},{}\n", c.t, id, c.z, c.a, c.b, c.kappa);
  return csv;
}

std::string uniform_csv(const std::map<int, UniformCertificate>& uniform) {
  std::string csv = "branch_id,a,b,b_capped,kappa\n";
  for (const auto& [id, ucert] : uniform)
    csv += fmt::format("{},{},{},{},{}\n", id, ucert.a, ucert.b, ucert.b_capped, ucert.kappa);
  return csv;
}

std::string perturbed_csv(const TrajectoryBundle& bundle,
                          const std::map<int, Trajectory>& perturbed) {
  std::string csv = "t,branch_id,z,z_tilde,deviation\n";
  for (const auto& traj : bundle.trajectories) {
    auto it = perturbed.find(traj.branch_id);
    if (it == perturbed.end()) continue;
    for (size_t i = 0; i < traj.samples.size(); ++i) {
      const auto& [t, z] = traj.samples[i];
      const double zt = it->second.samples[i].second;
      csv += fmt::format("{},{},{},{},{}\n", t, traj.branch_id, z, zt, std::fabs(zt - z));
    }
  }
  return csv;
}

std::string trajectories_svg(const TrajectoryBundle& bundle) {
  constexpr double w = 800, h = 480, pad = 40;
  double z_lo = 0, z_hi = 0;
  for (const auto& traj : bundle.trajectories)
    for (const auto& [t, z] : traj.samples) {
      z_lo = std::min(z_lo, z);
      z_hi = std::max(z_hi, z);
    }
  if (z_hi == z_lo) z_hi = z_lo + 1;
  const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"};
  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" "
      "viewBox=\"0 0 {} {}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
      w, h, w, h);
  for (const auto& traj : bundle.trajectories) {
    std::string pts;
    for (const auto& [t, z] : traj.samples) {
      const double x = pad + t * (w - 2 * pad);
      const double y = h - pad - (z - z_lo) / (z_hi - z_lo) * (h - 2 * pad);
      pts += fmt::format("{:.2f},{:.2f} ", x, y);
    }
    svg += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" "
                       "points=\"{}\"/>\n",
                       colors[(traj.branch_id - 1) % 6], pts);
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace

std::string report_to_json(const RunReport& r) {
  nlohmann::ordered_json j;
  j["tool_version"] = kToolVersion;
  j["scenario"] = r.scenario_name;
  j["scenario_digest"] = r.scenario_digest;
  j["grid"] = r.grid_n;
  j["trajectories"] = nlohmann::ordered_json::array();
  for (const auto& b : r.branches)
    j["trajectories"].push_back({{"branch_id", b.branch_id},
                                 {"samples", b.n_samples},
                                 {"t_begin", b.t_begin},
                                 {"t_end", b.t_end},
                                 {"z_min", b.z_min},
                                 {"z_max", b.z_max}});
  j["isolation_margin"] =
      std::isfinite(r.isolation) ? nlohmann::ordered_json(r.isolation) : "inf";
  j["max_residual"] = r.max_residual;
  j["uniform"] = nlohmann::ordered_json::object();
  for (const auto& [id, u] : r.uniform)
    j["uniform"][std::to_string(id)] = {
        {"a", u.a}, {"b", u.b}, {"b_capped", u.b_capped}, {"kappa", u.kappa}};
  j["uncertified"] = nlohmann::ordered_json::object();
  for (const auto& [id, why] : r.uncertified) j["uncertified"][std::to_string(id)] = why;
  if (!r.bounds.empty()) {
    j["epsilon"] = r.epsilon;
    j["bounds"] = nlohmann::ordered_json::object();
    for (const auto& [id, b] : r.bounds)
      j["bounds"][std::to_string(id)] = {{"epsilon", b.epsilon},   {"gate", b.gate},
                                         {"bound", b.bound},       {"observed", b.observed},
                                         {"gate_ok", b.gate_ok},   {"pass", b.pass}};
  }
  j["notes"] = r.notes;
  j["verified"] = r.verified;
  return j.dump(2) + "\n";
}

RunReport run_scenario(const Scenario& sc, const std::string& scenario_text,
                       const Stages& stages, const std::string& out_dir, bool plot) {
  if (stages.perturb && !stages.certify)
    fail(Errc::validation_error, "perturb requires certify");
  if (stages.certify && !stages.sweep) fail(Errc::validation_error, "certify requires sweep");
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path out(out_dir);

  RunReport report;
  report.scenario_name = sc.name;
  report.scenario_digest = fnv1a_hex(scenario_text);
  report.grid_n = sc.grid_n;
  if (!stages.sweep) return report;

  const GeneralizedEquation eq = sc.equation();
  const Grid grid = Grid::uniform(sc.grid_n);
  const std::vector<SolutionSet> sets = sweep(eq, grid, sc.tol);
  const double delta = sc.delta_link ? *sc.delta_link : default_delta_link(sets);
  const TrajectoryBundle bundle = link_trajectories(sets, grid, delta, sc.tol);
  report.isolation = bundle.isolation_margin;
  for (const auto& traj : bundle.trajectories) {
    BranchSummary s;
    s.branch_id = traj.branch_id;
    s.n_samples = static_cast<int>(traj.samples.size());
    s.t_begin = traj.t_begin();
    s.t_end = traj.t_end();
    s.z_min = s.z_max = traj.samples.front().second;
    for (const auto& [t, z] : traj.samples) {
      s.z_min = std::min(s.z_min, z);
      s.z_max = std::max(s.z_max, z);
    }
    report.branches.push_back(s);
    report.max_residual = std::max(report.max_residual, check_selection(traj, eq, sc.tol));
  }
  if (report.max_residual > sc.tol.tol_res) {
    report.verified = false;
    report.notes.push_back("residual check failed on some trajectory");
  }
  write_file(out / "trajectories.csv", trajectories_csv(bundle));
  if (plot) write_file(out / "trajectories.svg", trajectories_svg(bundle));

  if (stages.certify) {
    for (const auto& traj : bundle.trajectories) {
      try {
        std::vector<SmrCertificate> certs;
        certs.reserve(traj.samples.size());
        for (const auto& [t, z] : traj.samples)
          certs.push_back(smr_pointwise(eq, t, z, sc.tol));
        report.uniform[traj.branch_id] = uniform_certificate(std::move(certs));
      } catch (const Error& e) {
        if (e.code() != Errc::on_fold) throw;
        report.uncertified[traj.branch_id] = e.what();
      }
    }
    write_file(out / "certificate.csv", certificate_csv(report.uniform));
    write_file(out / "uniform.csv", uniform_csv(report.uniform));
    report.notes.push_back(
        "uniform b is the raw min of the pointwise b_t; the a/kappa cap would shrink it to "
        "b_capped (so that kappa*b_capped <= a), and the b/4 gate and 4*a*eps/b bound are "
        "evaluated against the raw b");
  }

  if (stages.perturb && sc.perturbed_source) {
    report.epsilon = signal_distance(sc.source, *sc.perturbed_source, Grid::uniform(4096));
    std::map<int, Trajectory> perturbed;
    for (const auto& traj : bundle.trajectories) {
      auto it = report.uniform.find(traj.branch_id);
      if (it == report.uniform.end()) continue;
      const UniformCertificate& ucert = it->second;
      Trajectory z_tilde = construct_perturbed_trajectory(
          eq, traj, ucert, *sc.perturbed_source, grid, report.epsilon, GatePolicy::warn, sc.tol);
      const BoundReport br = verify_deviation_bound(traj, z_tilde, ucert, report.epsilon);
      if (!br.pass) {
        report.verified = false;
        report.notes.push_back(fmt::format(
            "branch {}: deviation-bound verification failed ({})", traj.branch_id,
            br.gate_ok ? "observed >= bound" : "epsilon >= b/4 gate"));
      }
      report.bounds[traj.branch_id] = br;
      perturbed[traj.branch_id] = std::move(z_tilde);
    }
    write_file(out / "perturbed.csv", perturbed_csv(bundle, perturbed));
  }

  write_file(out / "report.json", report_to_json(report));
  return report;
}

}  // namespace gecert
