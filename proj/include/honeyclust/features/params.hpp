// SPDX-License-Identifier: Apache-2.0

#ifndef HONEYCLUST_FEATURES_PARAMS_HPP
#define HONEYCLUST_FEATURES_PARAMS_HPP

#include <cstddef>

namespace honeyclust::features {

/// OPTICS parameters shared by the density-based clusterers. Small
/// min_samples suits the sparse attacker subsets each feature sees.
struct OpticsParams {
  std::size_t min_samples = 3;
  double xi = 0.05;
};

}  // namespace honeyclust::features

#endif  // HONEYCLUST_FEATURES_PARAMS_HPP
