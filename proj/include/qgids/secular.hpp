#pragma once

#include "qgids/operator_data.hpp"

namespace qgids {

/// Result of the exact secular scan.
struct SecularSpectrum {
  std::vector<double> values;  // ascending, with multiplicity
  bool clustered_roots = false;  // two distinct roots closer than the flag tolerance
};

/// Independent oracle for graphs with at most 8 edges and constant edge
/// potentials: eigenvalues are roots of the determinant of the boundary
/// system built from per-edge fundamental solutions (trigonometric above the
/// potential, hyperbolic below, linear at the crossover). Roots are located
/// by sign-change bracketing of the real determinant plus a minimum scan of
/// the smallest singular value (which also resolves multiplicities), and
/// refined to absolute tolerance 1e-10.
SecularSpectrum secular_oracle(const OperatorData& data, double lambda_min, double lambda_max);

}  // namespace qgids
