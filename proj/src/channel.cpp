#include "risamp/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace risamp {

VectorXcd steering_vector(int n_elems, double freq) {
  if (n_elems < 1) throw std::invalid_argument("steering_vector: n_elems must be >= 1");
  if (!(freq > 0.0) || freq > 1.0)
    throw std::domain_error("steering_vector: frequency must lie in (0, 1], got " + std::to_string(freq));
  VectorXcd a(n_elems);
  for (int k = 0; k < n_elems; ++k) a(k) = std::polar(1.0, 2.0 * kPi * freq * k);
  return a;
}

PathSet sample_paths(int paths_bs_ris, int paths_user_ris, double gain_var_g,
                     double gain_var_h, Rng& rng) {
  if (paths_bs_ris < 1 || paths_user_ris < 1)
    throw std::invalid_argument("sample_paths: path counts must be >= 1");
  PathSet p;
  p.gains_g.resize(paths_bs_ris);
  p.aod_bs.resize(paths_bs_ris);
  p.aod_ris.resize(paths_bs_ris);
  p.gains_h.resize(paths_user_ris);
  p.aoa_ris.resize(paths_user_ris);
  const double sg = std::sqrt(gain_var_g);
  const double sh = std::sqrt(gain_var_h);
  for (int l = 0; l < paths_bs_ris; ++l) {
    p.gains_g(l) = sg * rng.complex_gaussian();
    p.aod_bs(l) = rng.uniform_open0();
    p.aod_ris(l) = rng.uniform_open0();
  }
  for (int j = 0; j < paths_user_ris; ++j) {
    p.gains_h(j) = sh * rng.complex_gaussian();
    p.aoa_ris(j) = rng.uniform_open0();
  }
  return p;
}

ChannelRealization build_channels(const PathSet& paths, int num_bs, int num_ris) {
  const auto L = paths.gains_g.size();
  const auto J = paths.gains_h.size();
  if (L < 1 || J < 1 || paths.aod_bs.size() != L || paths.aod_ris.size() != L ||
      paths.aoa_ris.size() != J)
    throw std::invalid_argument("build_channels: inconsistent path set dimensions");

  ChannelRealization c;
  c.G = MatrixXcd::Zero(num_bs, num_ris);
  for (Eigen::Index l = 0; l < L; ++l) {
    c.G.noalias() += paths.gains_g(l) * steering_vector(num_bs, paths.aod_bs(l)) *
                     steering_vector(num_ris, paths.aod_ris(l)).adjoint();
  }
  c.h = VectorXcd::Zero(num_ris);
  for (Eigen::Index j = 0; j < J; ++j)
    c.h += paths.gains_h(j) * steering_vector(num_ris, paths.aoa_ris(j));
  c.U = c.G * c.h.asDiagonal();
  c.paths = paths;
  return c;
}

MatrixXcd cascaded_channel_direct(const PathSet& paths, int num_bs, int num_ris) {
  MatrixXcd u = MatrixXcd::Zero(num_bs, num_ris);
  for (Eigen::Index l = 0; l < paths.gains_g.size(); ++l) {
    const VectorXcd a_bs = steering_vector(num_bs, paths.aod_bs(l));
    for (Eigen::Index j = 0; j < paths.gains_h.size(); ++j) {
      // difference frequency wrapped back into (0, 1]
      double f = paths.aod_ris(l) - paths.aoa_ris(j);
      f -= std::floor(f);
      if (f == 0.0) f = 1.0;
      u.noalias() += (paths.gains_g(l) * paths.gains_h(j)) * a_bs *
                     steering_vector(num_ris, f).adjoint();
    }
  }
  return u;
}

}  // namespace risamp
