#pragma once

#include "qgids/assemble.hpp"

namespace qgids {

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Spectrum {
  std::vector<double> values;   // ascending, with multiplicity
  Eigen::MatrixXcd vectors;     // M-orthonormal columns when requested
  bool has_vectors = false;
};

/// Number of pencil eigenvalues <= lambda via the inertia of K - lambda' M,
/// lambda' = lambda + 1e-9 (1 + |lambda|) for right continuity. Factorization
/// breakdown retries at lambda +- 10 delta.
int count_below(const AssembledPencil& p, double lambda);

/// All eigenvalues <= lambda_max (and M-orthonormal eigenvectors when
/// requested). The count is cross-checked against count_below.
Spectrum eigenpairs(const AssembledPencil& p, double lambda_max, bool want_vectors = false);

/// Dimension above which dense LAPACK solves give way to banded or sparse
/// paths; the paths agree to 1e-8 where both run (tested).
inline constexpr int kDenseLimit = 5200;

}  // namespace qgids
