#include "gecert/solver.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace gecert {

double Trajectory::at(double t) const {
  auto it = std::lower_bound(samples.begin(), samples.end(), t,
                             [](const auto& s, double x) { return s.first < x; });
  if (it == samples.end() || it->first != t)
    fail(Errc::grid_mismatch, "trajectory has no sample at the requested time");
  return it->second;
}

SolutionSet solve_static(const GeneralizedEquation& eq, double p_value, const Tolerances& tol) {
  RootSet roots = eq.summed.invert_at(p_value, tol);
  return {std::move(roots.points), std::move(roots.intervals)};
}

std::vector<SolutionSet> sweep(const GeneralizedEquation& eq, const Grid& grid,
                               const Tolerances& tol) {
  std::vector<SolutionSet> sets;
  sets.reserve(grid.count());
  for (double t : grid.points) sets.push_back(solve_static(eq, eval_signal(eq.p, t), tol));
  return sets;
}

double default_delta_link(const std::vector<SolutionSet>& sets) {
  if (sets.empty() || sets.front().points.empty())
    fail(Errc::empty_input, "no solutions at the first grid point");
  const auto& zs = sets.front().points;
  if (zs.size() < 2) return 0.25;  // lone branch: any generous gap works
  double spacing = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i + 1 < zs.size(); ++i) spacing = std::min(spacing, zs[i + 1] - zs[i]);
  return 0.25 * spacing;
}

TrajectoryBundle link_trajectories(const std::vector<SolutionSet>& sets, const Grid& grid,
                                   double delta_link, const Tolerances& tol) {
  if (delta_link <= 0.0) fail(Errc::validation_error, "delta_link must be positive");
  if (static_cast<int>(sets.size()) != grid.count())
    fail(Errc::grid_mismatch, "one SolutionSet per grid point required");
  struct Open {
    double z_last;
    std::vector<std::pair<double, double>> samples;
  };
  std::vector<Open> open;
  std::vector<Open> closed;
  for (int i = 0; i < grid.count(); ++i) {
    const double t = grid.points[i];
    const auto& zs = sets[i].points;  // continuum intervals are never linked
    // nearest open branch for each new point, and vice versa
    std::vector<int> match(zs.size(), -1);
    std::vector<int> taken(open.size(), -1);
    for (size_t j = 0; j < zs.size(); ++j) {
      int best = -1;
      double best_d = delta_link;
      for (size_t k = 0; k < open.size(); ++k) {
        const double d = std::fabs(zs[j] - open[k].z_last);
        if (d < best_d) {
          best_d = d;
          best = static_cast<int>(k);
        }
      }
      if (best >= 0) {
        if (taken[best] >= 0) {
          // two candidates within delta_link of one predecessor: ambiguous
          // only if they also crowd each other
          if (std::fabs(zs[j] - zs[taken[best]]) < delta_link)
            fail(Errc::ambiguous_link, "two solution candidates within delta_link");
          if (std::fabs(zs[j] - open[best].z_last) <
              std::fabs(zs[taken[best]] - open[best].z_last)) {
            match[taken[best]] = -1;
            taken[best] = static_cast<int>(j);
            match[j] = best;
          }
        } else {
          taken[best] = static_cast<int>(j);
          match[j] = best;
        }
      }
    }
    std::vector<Open> next;
    for (size_t j = 0; j < zs.size(); ++j) {
      if (match[j] >= 0) {
        Open o = std::move(open[match[j]]);
        o.z_last = zs[j];
        o.samples.push_back({t, zs[j]});
        next.push_back(std::move(o));
      } else {
        next.push_back({zs[j], {{t, zs[j]}}});
      }
    }
    for (size_t k = 0; k < open.size(); ++k)
      if (taken[k] < 0) closed.push_back(std::move(open[k]));  // branch terminates
    open = std::move(next);
  }
  for (auto& o : open) closed.push_back(std::move(o));
  std::sort(closed.begin(), closed.end(), [](const Open& a, const Open& b) {
    if (a.samples.front().first != b.samples.front().first)
      return a.samples.front().first < b.samples.front().first;
    return a.samples.front().second < b.samples.front().second;
  });
  // stable ids: sorted by initial z among branches starting at t=0, then by
  // start time
  std::stable_sort(closed.begin(), closed.end(), [](const Open& a, const Open& b) {
    return a.samples.front().second < b.samples.front().second;
  });
  TrajectoryBundle bundle;
  for (size_t k = 0; k < closed.size(); ++k) {
    Trajectory traj;
    traj.branch_id = static_cast<int>(k + 1);
    traj.samples = std::move(closed[k].samples);
    bundle.trajectories.push_back(std::move(traj));
  }
  std::sort(bundle.trajectories.begin(), bundle.trajectories.end(),
            [](const Trajectory& a, const Trajectory& b) { return a.branch_id < b.branch_id; });
  bundle.isolation_margin = isolation_margin(bundle);
  (void)tol;
  return bundle;
}

double isolation_margin(const TrajectoryBundle& bundle) {
  double margin = std::numeric_limits<double>::infinity();
  const auto& ts = bundle.trajectories;
  for (size_t i = 0; i < ts.size(); ++i) {
    std::map<double, double> zi(ts[i].samples.begin(), ts[i].samples.end());
    for (size_t j = i + 1; j < ts.size(); ++j) {
      for (const auto& [t, z] : ts[j].samples) {
        auto it = zi.find(t);
        if (it != zi.end()) margin = std::min(margin, std::fabs(z - it->second));
      }
    }
  }
  return margin;
}

double check_selection(const Trajectory& traj, const GeneralizedEquation& eq,
                       const Tolerances& tol) {
  double worst = 0.0;
  for (const auto& [t, z] : traj.samples) {
    const ValueSet vs = eq.summed.eval(z, tol);
    worst = std::max(worst, vs.distance(eval_signal(eq.p, t)));
  }
  return worst;
}

}  // namespace gecert
