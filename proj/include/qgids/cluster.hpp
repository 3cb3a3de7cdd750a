#pragma once

#include "qgids/operator_data.hpp"

namespace qgids {

struct Component {
  OperatorData data;
  std::vector<int> parent_edges;  // indices into the parent edge list
  /// True when every terminating end at a restriction-closure vertex is
  /// pinned by the configuration itself: the component's eigenfunctions
  /// extend by zero to genuine compactly supported eigenfunctions.
  bool config_decoupled = true;
};

/// Split the operator at every vertex condition that block-decouples edge
/// ends. The union of component spectra equals the whole spectrum with
/// multiplicity.
std::vector<Component> cluster_decompose_full(const OperatorData& data);

/// Plain component list.
std::vector<OperatorData> cluster_decompose(const OperatorData& data);

}  // namespace qgids
