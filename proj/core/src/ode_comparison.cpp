#include "teichflow/ode_comparison.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "teichflow/errors.hpp"
#include "teichflow/tridiagonal.hpp"

namespace teichflow {

double exponential_convolution(double s1, double s2, const std::vector<double>& t, double s) {
  const int n = static_cast<int>(t.size());
  if (n < 2) throw DomainError("need at least two samples");
  const double h = (s2 - s1) / (n - 1);
  const double e = std::exp(-h);
  const double i0 = -std::expm1(-h);          // int_0^h e^-u du
  const double i1 = 1.0 - (1.0 + h) * e;      // int_0^h u e^-u du
  double sum = 0.0;
  for (int k = 0; k + 1 < n; ++k) {
    const double qa = s1 + k * h, qb = s1 + (k + 1) * h;
    if (qa >= s) {
      // e^{-(q - s)} on [qa, qb], T = T_a + m (q - qa)
      const double m = (t[k + 1] - t[k]) / h;
      sum += std::exp(-(qa - s)) * (t[k] * i0 + m * i1);
    } else if (qb <= s) {
      const double m = (t[k] - t[k + 1]) / h;
      sum += std::exp(-(s - qb)) * (t[k + 1] * i0 + m * i1);
    } else {
      // s inside the segment: split it.
      const double ts = t[k] + (t[k + 1] - t[k]) * (s - qa) / h;
      const double hl = s - qa, hr = qb - s;
      auto part = [](double len, double t0, double t1) {
        const double el = std::exp(-len);
        const double j0 = -std::expm1(-len), j1 = 1.0 - (1.0 + len) * el;
        return t0 * j0 + (t1 - t0) / len * j1;
      };
      sum += part(hr, ts, t[k + 1]) + part(hl, ts, t[k]);
    }
  }
  return sum;
}

OdeComparisonTable ode_comparison_oracle(const OdeComparisonInput& in) {
  const int n = static_cast<int>(in.t.size());
  if (n < 3) throw DomainError("need at least three nodes");
  if (!(in.s2 - in.s1 >= 2.0)) throw DomainError("interval must have length at least 2");
  for (double v : in.t) {
    if (!(v >= 0.0)) throw DomainError("T must be nonnegative");
  }
  if (!(in.e0 >= 0.0) || in.f1 < 0.0 || in.f2 < 0.0 || in.f1 > 2.0 * in.e0 || in.f2 > 2.0 * in.e0) {
    throw DomainError("boundary values must lie in [0, 2 E0]");
  }
  const double h = (in.s2 - in.s1) / (n - 1);
  const int m = n - 2;
  std::vector<double> sub(m, 1.0), diag(m), sup(m, 1.0), rhs(m);
  for (int k = 0; k < m; ++k) {
    const int i = k + 1;
    if (in.scheme == BvpScheme::exponential_fit) {
      const double ch = std::cosh(h), sh = std::sinh(h);
      diag[k] = -2.0 * ch;
      const double second = in.t[i + 1] - 2.0 * in.t[i] + in.t[i - 1];
      rhs[k] = -2.0 * (2.0 * in.t[i] * (ch - 1.0) + (sh - h) * second / h);
    } else {
      diag[k] = -2.0 - h * h;
      rhs[k] = -2.0 * h * h * in.t[i];
    }
  }
  rhs[0] -= in.f1;
  rhs[m - 1] -= in.f2;
  const auto inner = solve_tridiagonal(sub, diag, sup, rhs);

  OdeComparisonTable out{{}, std::numeric_limits<double>::infinity()};
  out.rows.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double s = in.s1 + i * h;
    const double f = i == 0 ? in.f1 : (i == n - 1 ? in.f2 : inner[i - 1]);
    const double bound = 2.0 * in.e0 * (std::exp(s - in.s2) + std::exp(in.s1 - s)) +
                         exponential_convolution(in.s1, in.s2, in.t, s);
    out.rows.push_back({s, f, bound, bound - f});
    out.min_margin = std::min(out.min_margin, bound - f);
  }
  return out;
}

}  // namespace teichflow
