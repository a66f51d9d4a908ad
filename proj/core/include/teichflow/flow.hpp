#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "teichflow/field.hpp"
#include "teichflow/torus.hpp"

namespace teichflow {

/// Map plus either torus moduli (coupled flow) or a fixed conformal metric.
struct FlowState {
  double t = 0.0;
  MapField u;
  std::optional<TorusModuli> moduli;
  ConformalMetric metric = ConformalMetric::flat();
  double eta = 1.0;

  /// Coupled torus state; the grid of u is replaced by the torus grid of m.
  static FlowState torus(MapField u, TorusModuli m, double eta);
  static FlowState fixed(MapField u, ConformalMetric g = ConformalMetric::flat());
  /// Metric the tension and norms are measured in.
  ConformalMetric current_metric() const;
};

/// Thrown when dt exceeds the explicit stability bound.
class StepRejected : public std::runtime_error {
 public:
  StepRejected(const std::string& what, double admissible_dt)
      : std::runtime_error(what), admissible_dt_(admissible_dt) {}
  double admissible_dt() const noexcept { return admissible_dt_; }

 private:
  double admissible_dt_;
};

/// Explicit failure during a run (non-finite energy, etc.).
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kDefaultCfl = 0.2;

/// c_cfl min(h_s, h_theta)^2 min(rho)^2 / (1 + |shear|)^2, reduced further
/// for spectral theta-differentiation.
double admissible_dt(const FlowState& s, double c_cfl = kDefaultCfl);

/// Quantities of the state that drive one step.
struct FlowDrive {
  AmbientArray tau_g;  ///< rho^-2 tau
  double energy = 0.0;
  double tension_norm = 0.0;  ///< ||tau_g||_{L2(g)}
  std::optional<HolomorphicQD> projection;
  double proj_norm = 0.0;  ///< ||P_g Phi||_{L2(g)}, zero for fixed metrics
};
FlowDrive compute_drive(const FlowState& s);

struct StepDiagnostics {
  double energy_before = 0.0;
  double energy_after = 0.0;
  double du_norm2 = 0.0;            ///< ||du/dt||^2_{L2(g)} from the realized step
  double dg_norm2_over_eta2 = 0.0;  ///< eta^-2 ||dg/dt||^2_{L2(g)} from the realized step
  double residual = 0.0;            ///< |dE/dt + du_norm2 + dg_norm2_over_eta2|
};

/// u <- P_N(u + dt tau_g); (a, b) <- (a, b) + dt * moduli velocity; t <- t + dt.
/// Throws StepRejected if dt exceeds admissible_dt.
FlowState step(const FlowState& s, double dt, double c_cfl = kDefaultCfl);
FlowState step(const FlowState& s, const FlowDrive& drive, double dt, StepDiagnostics* diag,
               double c_cfl = kDefaultCfl);

struct LedgerRecord {
  int step = 0;
  double t = 0.0;
  double energy = 0.0;
  double du_norm2 = 0.0;
  double dg_norm2_over_eta2 = 0.0;
  double residual = 0.0;
  double a = 0.0;
  double b = 0.0;
  double ell = 0.0;
  double tension_norm = 0.0;
  double proj_norm = 0.0;
};

/// CSV header line (no trailing newline) and one row per record.
std::string ledger_csv_header();
std::string ledger_csv_row(const LedgerRecord& r);

struct AlmostMinimalSample {
  double t;
  double tension_norm;
  double proj_norm;
  double energy;
  double ell;
};

struct RunOptions {
  double t_end = 1.0;
  double dt = 0.0;        ///< <= 0 picks the admissible dt
  bool adaptive = false;  ///< shrink dt to the admissible value when needed
  long max_steps = 10'000'000;
  int snapshot_every = 0;  ///< 0 disables snapshots
  double c_cfl = kDefaultCfl;
  std::function<void(const LedgerRecord&)> on_record;
  std::function<void(const FlowState&, const FlowDrive&)> on_snapshot;
};

struct RunResult {
  FlowState final_state;
  std::vector<LedgerRecord> ledger;
  std::vector<AlmostMinimalSample> samples;  ///< one per snapshot
};

/// Integrates to t_end. The ledger starts with the initial state (step 0).
/// Step errors are rethrown with the step index in the message.
RunResult run(const FlowState& initial, const RunOptions& opt);

struct AlmostMinimalCertificate {
  double t;
  double tension_norm;
  double proj_norm;
  double energy;
  double ell;
};

struct AlmostMinimalExtraction {
  std::vector<AlmostMinimalCertificate> qualifying;  ///< every sample under both thresholds
  std::vector<AlmostMinimalCertificate> selected;    ///< per dyadic window, the minimizer of the summed squares
};

/// Windows are [0, 1) and [2^k, 2^{k+1}) for k >= 0. Thresholds are strict.
AlmostMinimalExtraction extract_almost_minimal(const std::vector<AlmostMinimalSample>& samples,
                                               double tension_threshold, double proj_threshold);

struct BoundaryFlowResult {
  MapField u;
  bool converged = false;
  double tension_norm = 0.0;
  double t = 0.0;
  long steps = 0;
  std::string status;
};

/// Fixed-metric harmonic map flow on a finite cylinder with the boundary
/// circles of u0 pinned. Stops when ||tau||_{L2} < tol or at t_end; the
/// latter sets status "not converged".
BoundaryFlowResult cylinder_boundary_flow(const MapField& u0, double t_end, double dt = 0.0, double tol = 1e-10,
                                          const ConformalMetric& g = ConformalMetric::flat());

/// Near-harmonic initial guess for the boundary-driven fixture: S^2-valued
/// projection of e3 + eps (cosh(s - m) / cosh(L/2)) (cos theta, sin theta, 0),
/// m the midpoint; the boundary circles carry eps (cos theta, sin theta)
/// perturbations of the pole.
MapField boundary_driven_guess(const CylinderGrid& grid, double eps);

}  // namespace teichflow
