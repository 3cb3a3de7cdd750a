#pragma once

#include "qgids/cluster.hpp"
#include "qgids/solve.hpp"
#include "qgids/step_function.hpp"

namespace qgids {

struct EngineOptions {
  Discretization disc{64, 2};
  /// Recognize bare chains (path graph, zero potentials, Kirchhoff interior,
  /// Dirichlet or Neumann ends, no twist) and use their closed-form spectra.
  bool analytic_chains = true;
  bool use_cache = true;
};

/// Eigenvalues <= lambda_max of one connected component; cached on the
/// component's translation-canonical form.
std::vector<double> component_spectrum(const OperatorData& component, double lambda_max, const EngineOptions& opts);

/// Counting function of the whole operator: decompose into components and
/// merge their spectra (rho = 1).
StepFunction counting_function(const OperatorData& data, double lambda_max, const EngineOptions& opts);

/// Energies with total multiplicity of eigenfunctions living on components
/// that the configuration itself decouples from the region boundary; these
/// extend by zero to compactly supported eigenfunctions.
std::vector<std::pair<double, int>> compact_eigenfunctions(const OperatorData& data, double lambda_max,
                                                           const EngineOptions& opts);

/// Drop all memoized component spectra (tests).
void clear_engine_cache();

}  // namespace qgids
