#pragma once

#include <optional>
#include <string>
#include <vector>

#include "teichflow/field.hpp"

namespace teichflow {

struct AnalysisParams {
  double delta = 0.1;  ///< chunk threshold
  double gap = 10.0;   ///< separation that counts as "far apart"
  double lambda = 2.0; ///< margin trimmed from connecting intervals
};

/// Energy of the length-3 chunk C(k - 1, k + 2).
struct Chunk {
  int k;
  double energy;
  double position() const { return k + 0.5; }
};

struct IntervalSummary {
  double lo;
  double hi;
  double energy;
  double max_oscillation;
  double max_angular_energy;
  double half_hopf_real;  ///< 1/2 int (|u_s|^2 - |u_theta|^2)
};

struct BranchDecomposition {
  double delta;
  double gap;
  double s_min;
  double s_max;
  /// Sorted; first and last are s_min and s_max.
  std::vector<double> centers;
  /// Chunks with energy >= delta / 2.
  std::vector<Chunk> heavy_chunks;
  /// One per pair of consecutive centers.
  std::vector<IntervalSummary> intervals;

  int interior_count() const { return static_cast<int>(centers.size()) - 2; }
};

/// Integer chunks inside the grid range, with their energies.
std::vector<Chunk> chunk_energies(const MapField& f);

/// Heavy chunks closer than gap to an end are absorbed by it; the rest are
/// linked when within gap of each other. A cluster is represented by its
/// energy-weighted centroid when that lies within gap of every member,
/// otherwise by a greedy cover with spacing > gap.
/// DomainError when the half-length is < 3 or delta <= 0.
BranchDecomposition decompose(const MapField& f, double delta = 0.1, double gap = 10.0);

struct DecaySlice {
  double s;
  double angular_energy;
  double tension_integrand;
  double bound;
  double margin;
};

enum class Verdict { pass, fail, declined };
std::string to_string(Verdict v);

struct DecayCertificate {
  Verdict verdict = Verdict::declined;
  std::string reason;
  std::optional<int> offending_chunk;
  double e0 = 0.0;
  double c_constructive = 0.0;  ///< 2 E0
  double c_fit = 0.0;           ///< smallest C for which the slice bound holds
  double lambda = 0.0;
  double half_length = 0.0;
  double tension_norm2 = 0.0;
  double hopf_l1 = 0.0;
  double min_margin = 0.0;
  double decay_exponent = 0.0;  ///< fitted rate of theta(s) ~ e^{rate (|s| - L)}
  std::vector<DecaySlice> slices;
  bool slice_bound = false;  ///< theta(s) <= C e^{|s| - L} + sum e^{-|s-q|} T(q) w_q
  double integrated_lhs = 0.0, integrated_rhs = 0.0;
  bool integrated_bound = false;  ///< sum theta w <= C_fit e^{-lambda} + 2 ||tau||^2
  double energy_lhs = 0.0, energy_rhs = 0.0;
  bool energy_bound = false;  ///< E <= C_fit e^{-lambda} + 2 ||tau||^2 + 1/4 ||Phi||_{L1}
};

/// Angular-energy decay certificate on a cylinder C(c - L, c + L). Slices
/// with |s - c| < L - 1 are checked. Declines (no exception) when some
/// integer chunk carries energy >= delta / 2 or ||tau||^2 >= delta.
DecayCertificate certify_decay(const MapField& f, double e0, const AnalysisParams& p = {});

struct LedgerEntry {
  double lo;
  double hi;
  bool skipped = false;  ///< margin leaves nothing of the interval
  double energy = 0.0;   ///< E on (lo + lambda, hi - lambda)
  double hopf_lo = 0.0, hopf_hi = 0.0;
  double half_hopf_real = 0.0;
  double difference = 0.0;  ///< energy - half_hopf_real
  double max_oscillation = 0.0;
};

struct EnergyLossLedger {
  double lambda;
  std::vector<LedgerEntry> entries;
  std::optional<double> mean_hopf_defect;  ///< set for torus periods
};

/// Interval m compares E on the trimmed interval with half the Hopf real
/// integral over the interval, trimmed only at the ends of the domain.
EnergyLossLedger energy_loss_ledger(const MapField& f, const BranchDecomposition& d, double lambda);

struct ConcentrationRecord {
  double center;
  double local_energy;
  double scale;      ///< smallest radius holding half the local energy around peak
  double peak_s;
  double peak_theta;
};

struct ConcentrationReport {
  std::vector<ConcentrationRecord> records;
};

/// One record per interior center, using the window (c - 1.5, c + 1.5).
ConcentrationReport detect_concentration(const MapField& f, const BranchDecomposition& d);

struct CollarAnalysis {
  double ell;
  BranchDecomposition decomposition;
  DecayCertificate decay;
  EnergyLossLedger ledger;
  double flat_tension_norm;
  double collar_tension_norm;
  bool tension_inequality;  ///< flat <= collar, from rho <= 1
  double hopf_l1_flat;
  double hopf_l1_collar;
};

/// Runs decompose, certify_decay (E0 = energy) and the ledger on the flat
/// cylinder and compares flat and collar tension norms.
CollarAnalysis collar_pipeline(const MapField& f, double ell, const AnalysisParams& p = {});

}  // namespace teichflow
