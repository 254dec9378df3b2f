#pragma once

#include <map>
#include <optional>
#include <string>

#include "gecert/perturb.hpp"
#include "gecert/scenario.hpp"

namespace gecert {

struct Stages {
  bool sweep = true;
  bool certify = true;
  bool perturb = true;
};

/// Everything one orchestrated run produces, before serialization.
struct BranchSummary {
  int branch_id = 0;
  int n_samples = 0;
  double t_begin = 0.0, t_end = 0.0;
  double z_min = 0.0, z_max = 0.0;
};

struct RunReport {
  std::string scenario_name;
  std::string scenario_digest;  // FNV-1a of the scenario text, hex
  int grid_n = 0;
  std::vector<BranchSummary> branches;
  double isolation = 0.0;
  double max_residual = 0.0;
  /// Uniform certificate per certifiable branch id.
  std::map<int, UniformCertificate> uniform;
  /// Branches refused by the certifier (on a fold/kink, e.g. z == 0 on a
  /// multivalued segment) with the reason.
  std::map<int, std::string> uncertified;
  /// Deviation-bound verification per perturbed branch id.
  std::map<int, BoundReport> bounds;
  double epsilon = 0.0;
  std::vector<std::string> notes;
  bool verified = true;  // false => CLI exit code 1
};

inline constexpr const char* kToolVersion = "0.1.0";

/// Runs the enabled stages, writes trajectories.csv / certificate.csv /
/// uniform.csv / perturbed.csv / report.json under out_dir (created if
/// missing), optionally trajectories.svg.
RunReport run_scenario(const Scenario& sc, const std::string& scenario_text,
                       const Stages& stages, const std::string& out_dir, bool plot);

std::string report_to_json(const RunReport& r);

}  // namespace gecert
