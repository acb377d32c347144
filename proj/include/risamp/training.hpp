#pragma once

#include "risamp/common.hpp"

namespace risamp {

/// Known training matrix: RIS phase configurations times (unit) pilot
/// symbols. Rows are distinct cyclic shifts of one Zadoff-Chu sequence, so
/// every entry has unit modulus and the rows are mutually orthogonal.
struct TrainingMatrix {
  MatrixXcd E;      // M x tau
  int root = 1;     // ZC root index
  int seq_len = 0;  // tau
};

/// Zadoff-Chu sequence of the given length and root; gcd(root, length) must
/// be 1 or std::invalid_argument is thrown.
VectorXcd zadoff_chu(int length, int root);

/// Rows are the base sequence cyclically shifted by m * floor(tau / M).
/// Requires tau >= M (full row rank needs at least M columns).
TrainingMatrix build_training(int num_ris, int seq_len, int root = 1);

/// Condition number of E * E^H, reported for diagnostics.
double training_gram_condition(const TrainingMatrix& training);

}  // namespace risamp
