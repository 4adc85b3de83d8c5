#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "tdrd/reaction.hpp"
#include "tdrd/regions.hpp"
#include "tdrd/spectral.hpp"

namespace tdrd::datasets {

/// The five-component worked example, shipped as "paper-ex5".
ToeplitzParams ex5_params();

/// U0 = (0, 15, 14, 29, 20).
Eigen::VectorXd ex5_initial();

/// Printed diagonalizing matrix, 4 decimals, in its printed column order.
Eigen::MatrixXd ex5_printed_P();

/// Printed Upsilon_1..5 / sigma_1..5 tables (4 decimals, original variables).
QuadraticReactionSystem ex5_tables();

/// Diagonal reaction in the printed column order:
///   G1 = -0.5 w1 w5 + 0.65 w2,   G2 = -G1,
///   G3 = -0.32 w3 w5 + 0.41 w4,  G4 = -G3,
///   G5 = G1 + G3.
QuadraticReactionSystem ex5_diagonal_system();

/// Map from the descending computed eigenvectors to the printed columns:
/// printed column k = sign[k] * computed column perm[k].
struct PrintedOrder {
  std::vector<int> perm;
  std::vector<int> signs;
};
PrintedOrder ex5_printed_order();

/// Signature of the printed region in descending eigenvalue order.
RegionSignature ex5_signature();

/// Exact unit eigenvectors arranged in the printed column order and sign.
Eigen::MatrixXd ex5_aligned_P();

/// Original-variable reaction whose exact transform by ex5_aligned_P() is
/// ex5_diagonal_system(). Agrees with ex5_tables() to table rounding.
QuadraticReactionSystem ex5_consistent_system();

/// Names accepted by reaction presets.
std::vector<std::string> reaction_presets();
QuadraticReactionSystem reaction_preset(const std::string& name);

}  // namespace tdrd::datasets
