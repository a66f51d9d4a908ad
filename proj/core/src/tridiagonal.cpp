#include "teichflow/tridiagonal.hpp"

#include <cmath>

#include "teichflow/errors.hpp"

namespace teichflow {

std::vector<double> solve_tridiagonal(const std::vector<double>& sub, const std::vector<double>& diag,
                                      const std::vector<double>& sup, std::vector<double> rhs) {
  const std::size_t n = diag.size();
  if (n == 0 || sub.size() != n || sup.size() != n || rhs.size() != n) {
    throw DomainError("tridiagonal system has inconsistent sizes");
  }
  std::vector<double> c(n);
  double pivot = diag[0];
  if (pivot == 0.0) throw DomainError("zero pivot in tridiagonal solve");
  c[0] = sup[0] / pivot;
  rhs[0] /= pivot;
  for (std::size_t i = 1; i < n; ++i) {
    pivot = diag[i] - sub[i] * c[i - 1];
    if (pivot == 0.0 || !std::isfinite(pivot)) throw DomainError("zero pivot in tridiagonal solve");
    c[i] = sup[i] / pivot;
    rhs[i] = (rhs[i] - sub[i] * rhs[i - 1]) / pivot;
  }
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c[i] * rhs[i + 1];
  return rhs;
}

}  // namespace teichflow
