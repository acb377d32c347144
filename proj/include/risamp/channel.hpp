#pragma once

#include "risamp/common.hpp"
#include "risamp/rng.hpp"

namespace risamp {

/// Multipath parameters of one channel realization. Angles are normalized
/// spatial frequencies in (0, 1]; the ULA response at frequency f is
/// exp(j*2*pi*f*k) for element k.
struct PathSet {
  VectorXcd gains_g;  // per-path gains of the RIS->BS channel (length L)
  VectorXcd gains_h;  // per-path gains of the user->RIS channel (length J)
  VectorXd aod_bs;    // departure frequencies at the BS array (length L)
  VectorXd aod_ris;   // departure frequencies at the RIS side of G (length L)
  VectorXd aoa_ris;   // arrival frequencies at the RIS (length J)
};

struct ChannelRealization {
  MatrixXcd G;  // N x M RIS->BS channel
  VectorXcd h;  // length-M user->RIS channel
  MatrixXcd U;  // N x M cascaded channel, U = G * Diag(h)
  PathSet paths;
};

/// ULA steering vector a_K(f)[k] = exp(j*2*pi*f*k), k = 0..n_elems-1.
/// Throws std::domain_error for f outside (0, 1].
VectorXcd steering_vector(int n_elems, double freq);

/// Draws path gains i.i.d. CN(0, gain_var) and spatial frequencies i.i.d.
/// uniform on (0, 1].
PathSet sample_paths(int paths_bs_ris, int paths_user_ris, double gain_var_g,
                     double gain_var_h, Rng& rng);

/// Assembles G, h and the cascaded channel U = G * Diag(h) from a PathSet.
ChannelRealization build_channels(const PathSet& paths, int num_bs, int num_ris);

/// Builds the cascaded channel directly from the per-path double sum with
/// difference frequencies wrapped into (0, 1]. Equals build_channels(...).U
/// up to rounding; kept as an independent construction route.
MatrixXcd cascaded_channel_direct(const PathSet& paths, int num_bs, int num_ris);

}  // namespace risamp
