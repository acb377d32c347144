#include "risamp/baselines.hpp"

#include <stdexcept>

namespace risamp {

BussgangModel make_bussgang(double eta_b, double noise_var, double obs_power) {
  if (eta_b < 0.0 || eta_b >= 1.0)
    throw std::invalid_argument("make_bussgang: eta_b must be in [0, 1)");
  BussgangModel m;
  m.eta_b = eta_b;
  m.gain = 1.0 - eta_b;
  m.eff_noise_var = m.gain * m.gain * noise_var + eta_b * m.gain * obs_power;
  return m;
}

MatrixXcd ls_estimate(const MatrixXcd& observed, const TrainingMatrix& training) {
  const MatrixXcd& e = training.E;
  if (observed.cols() != e.cols())
    throw std::invalid_argument("ls_estimate: observation/training column mismatch");
  // U^H solves the overdetermined system E^H X = Y^H in the least-squares
  // sense, which equals Y E^H (E E^H)^{-1} for full-row-rank E.
  Eigen::ColPivHouseholderQR<MatrixXcd> qr(e.adjoint());
  if (qr.rank() < e.rows()) throw std::runtime_error("ls_estimate: training matrix is rank deficient");
  return qr.solve(observed.adjoint()).adjoint();
}

MatrixXcd almmse_estimate(const MatrixXcd& observed, const TrainingMatrix& training,
                          const BussgangModel& model, double noise_var, double prior_var,
                          int num_bs) {
  const MatrixXcd& e = training.E;
  if (observed.cols() != e.cols())
    throw std::invalid_argument("almmse_estimate: observation/training column mismatch");
  if (!(prior_var > 0.0)) throw std::invalid_argument("almmse_estimate: prior_var must be > 0");
  const double ridge = model.gain * noise_var / prior_var + model.eta_b * num_bs;
  MatrixXcd reg = model.gain * (e * e.adjoint());
  reg.diagonal().array() += ridge;
  Eigen::LDLT<MatrixXcd> ldlt(reg);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
    throw std::runtime_error("almmse_estimate: regularized system is singular");
  // (Y E^H) reg^{-1}, via reg^{-1} (E Y^H) since reg is Hermitian
  return ldlt.solve(e * observed.adjoint()).adjoint();
}

}  // namespace risamp
