#pragma once

#include <stdexcept>
#include <string>

namespace gecert {

enum class Errc {
  domain_miss,
  at_kink,
  nondifferentiable_piece,
  incompatible_domain,
  unsupported_topology,
  out_of_range,
  ambiguous_link,
  on_fold,
  ratio_violation,
  empty_input,
  epsilon_too_large,
  gate_violation,
  localization_empty,
  localization_multivalued,
  window_too_wide,
  grid_mismatch,
  parse_error,
  validation_error,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

/// Shared numeric tolerances. Currents in the bundled circuits are ~1e-4 A,
/// so the root dedup tolerance sits well below the smallest certificate radius.
struct Tolerances {
  double tol_z = 1e-12;    // root dedup / trajectory comparisons, A
  double tol_eval = 1e-9;  // closedness checks and value-set merging, V
  double tol_res = 1e-6;   // residual acceptance for trajectory samples, V
};

// Certificate radii keep a strict margin below the quantities they bound,
// and the Lipschitz modulus keeps a strict margin above its infimum formula.
inline constexpr double kRadiusSafety = 0.98;
inline constexpr double kKappaMargin = 1.05;

}  // namespace gecert
