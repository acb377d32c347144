#include "risamp/training.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace risamp {

VectorXcd zadoff_chu(int length, int root) {
  if (length < 1) throw std::invalid_argument("zadoff_chu: length must be >= 1");
  if (root < 1 || std::gcd(root, length) != 1)
    throw std::invalid_argument("zadoff_chu: root " + std::to_string(root) +
                                " is not coprime with length " + std::to_string(length));
  VectorXcd s(length);
  const bool odd = (length % 2) != 0;
  for (int n = 0; n < length; ++n) {
    const double num = odd ? static_cast<double>(n) * (n + 1) : static_cast<double>(n) * n;
    s(n) = std::polar(1.0, -kPi * root * num / length);
  }
  return s;
}

TrainingMatrix build_training(int num_ris, int seq_len, int root) {
  if (num_ris < 1) throw std::invalid_argument("build_training: num_ris must be >= 1");
  if (seq_len < num_ris)
    throw std::invalid_argument("build_training: seq_len " + std::to_string(seq_len) +
                                " must be >= num_ris " + std::to_string(num_ris));
  const VectorXcd base = zadoff_chu(seq_len, root);
  const int spacing = seq_len / num_ris;

  TrainingMatrix tr;
  tr.root = root;
  tr.seq_len = seq_len;
  tr.E.resize(num_ris, seq_len);
  for (int m = 0; m < num_ris; ++m) {
    const int shift = m * spacing;
    for (int t = 0; t < seq_len; ++t) tr.E(m, t) = base((t + shift) % seq_len);
  }
  return tr;
}

double training_gram_condition(const TrainingMatrix& training) {
  const MatrixXcd gram = training.E * training.E.adjoint();
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (lo <= 0.0) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

}  // namespace risamp
