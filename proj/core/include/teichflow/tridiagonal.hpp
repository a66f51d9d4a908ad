#pragma once

#include <vector>

namespace teichflow {

/// Solves a tridiagonal system by the Thomas algorithm. sub[0] and sup[n-1]
/// are ignored. Throws DomainError on size mismatch or a zero pivot.
std::vector<double> solve_tridiagonal(const std::vector<double>& sub, const std::vector<double>& diag,
                                      const std::vector<double>& sup, std::vector<double> rhs);

}  // namespace teichflow
