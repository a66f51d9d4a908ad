#pragma once

#include <vector>

namespace teichflow {

enum class BvpScheme {
  /// Nodally exact for piecewise-linear T.
  exponential_fit,
  /// Second-order central differences.
  central,
};

struct OdeComparisonInput {
  double s1 = 0.0;
  double s2 = 2.0;
  std::vector<double> t;  ///< T at equispaced nodes s1 .. s2 inclusive
  double f1 = 0.0;
  double f2 = 0.0;
  double e0 = 1.0;
  BvpScheme scheme = BvpScheme::exponential_fit;
};

struct OdeComparisonRow {
  double s;
  double f;      ///< solution of f'' - f = -2T with the given boundary values
  double bound;  ///< 2 E0 (e^{s - s2} + e^{s1 - s}) + int e^{-|s-q|} T(q) dq
  double margin;  ///< bound - f
};

struct OdeComparisonTable {
  std::vector<OdeComparisonRow> rows;
  double min_margin;
};

/// Solves the equality case of f'' - f >= -2T and compares it with the
/// closed-form two-exponential bound (T linear between nodes).
/// DomainError for negative T, s2 - s1 < 2, fewer than 3 nodes, or boundary
/// values outside [0, 2 E0].
OdeComparisonTable ode_comparison_oracle(const OdeComparisonInput& in);

/// int_{s1}^{s2} e^{-|s - q|} T(q) dq for T linear between equispaced nodes.
double exponential_convolution(double s1, double s2, const std::vector<double>& t, double s);

}  // namespace teichflow
