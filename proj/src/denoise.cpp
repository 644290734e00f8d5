#include "cdmd/denoise.hpp"

#include <algorithm>
#include <cmath>

#include "cdmd/parallel.hpp"
#include "cdmd/preprocess.hpp"
#include "cdmd/pruning.hpp"

namespace cdmd {

TimeSeries add_noise(const TimeSeries& z, const NoiseSpec& spec) {
  if (!(spec.std_dev >= 0.0) || !std::isfinite(spec.std_dev)) throw InvalidArgument("add_noise: bad std_dev");
  if (spec.std_dev == 0.0) return z;
  Rng rng(spec.seed);
  const CMatrix& d = z.data();
  const bool real = d.imag().cwiseAbs().maxCoeff() == 0.0;
  const double a = spec.std_dev * std::sqrt(3.0) / (real ? 1.0 : std::sqrt(2.0));
  CMatrix out = d;
  for (Eigen::Index j = 0; j < d.cols(); ++j)
    for (Eigen::Index i = 0; i < d.rows(); ++i) {
      const double re = rng.uniform(-a, a);
      const double im = real ? 0.0 : rng.uniform(-a, a);
      out(i, j) += cplx(re, im);
    }
  return TimeSeries(std::move(out), z.label());
}

TimeSeries tls_data(const TimeSeries& z_noisy, Eigen::Index rank) {
  if (rank < 1 || rank > std::min(z_noisy.observables(), z_noisy.snapshots()))
    throw InvalidArgument("tls_companion: rank must be in [1, min(rows, cols)]");
  return TimeSeries(low_rank_approx(z_noisy.data(), rank), z_noisy.label());
}

DmdModel tls_companion(const TimeSeries& z_noisy, Eigen::Index rank, SvdThreshold tol) {
  return fit_companion(tls_data(z_noisy, rank), tol);
}

TimeSeries noise_resistant_data(const TimeSeries& z_noisy, const TimeSeries& z_filter, int d) {
  const TimeSeries zd = delay_embed(z_noisy, d);
  const TimeSeries fd = delay_embed(z_filter, d);
  if (zd.observables() != fd.observables())
    throw InvalidArgument("noise_resistant_companion: delayed row counts differ");
  return TimeSeries(fd.data().adjoint() * zd.data() / static_cast<double>(d + 1), z_noisy.label());
}

DmdModel noise_resistant_companion(const TimeSeries& z_noisy, const TimeSeries& z_filter, int d,
                                   SvdThreshold tol) {
  return fit_companion(noise_resistant_data(z_noisy, z_filter, d), tol);
}

NoiseWindows split_windows(const TimeSeries& z, Eigen::Index train, Eigen::Index filter_start,
                           Eigen::Index filter_width) {
  if (filter_start < train) throw InvalidArgument("filter window overlaps the training window");
  if (train < 2 || filter_width < 1 || filter_start + filter_width > z.snapshots())
    throw InvalidArgument("noise windows exceed the trajectory");
  if (filter_width < 2) throw InvalidArgument("filter window needs at least 2 snapshots");
  return {TimeSeries(z.data().leftCols(train), z.label()),
          TimeSeries(z.data().middleCols(filter_start, filter_width), z.label())};
}

double noisy_quality(const LtiSystem& sys, const TimeSeries& z_noisy, int theta, int d, DenoiseVariant v,
                     int rank, int filter_columns, int gap, SvdThreshold tol) {
  const Eigen::Index train = theta + d + 1;
  TimeSeries used = delay_embed(z_noisy.head(train), d);
  if (v == DenoiseVariant::Tls) {
    used = tls_data(used, std::min<Eigen::Index>(rank, std::min(used.observables(), used.snapshots())));
  } else if (v == DenoiseVariant::NoiseResistant) {
    NoiseWindows w = split_windows(z_noisy, train, train + gap, filter_columns + d);
    used = noise_resistant_data(w.train, w.filter, d);
  }
  const DmdModel model = fit_companion(used, tol);
  return kmd_quality(used, sys.eigenvalues, model.c_star).quality;
}

NoiseStudyResult noise_study(const NoiseStudyConfig& cfg, int threads) {
  if (cfg.ensemble < 1 || cfg.theta < 1 || cfg.delays < 0 || cfg.filter_columns < 2 || cfg.gap < 0)
    throw InvalidArgument("noise_study: invalid configuration");
  const CVector eig = lti_spectrum(cfg.preset, cfg.seed);
  const Eigen::Index length = cfg.theta + cfg.delays + 1 + cfg.gap + cfg.filter_columns + cfg.delays;
  NoiseStudyResult res;
  res.plain.resize(cfg.ensemble);
  res.tls.resize(cfg.ensemble);
  res.noise_resistant.resize(cfg.ensemble);
  parallel_for(cfg.ensemble, threads, [&](std::size_t i) {
    const std::uint64_t s = member_seed(cfg.seed, i);
    LtiSystem sys = make_lti(eig, cfg.m, false, s);
    sys.initial_state *= cfg.signal_scale;
    const TimeSeries z = add_noise(lti_trajectory(sys, length), {cfg.noise_std, splitmix64(s)});
    res.plain[i] = noisy_quality(sys, z, cfg.theta, cfg.delays, DenoiseVariant::Plain, cfg.rank,
                                 cfg.filter_columns, cfg.gap);
    res.tls[i] = noisy_quality(sys, z, cfg.theta, cfg.delays, DenoiseVariant::Tls, cfg.rank,
                               cfg.filter_columns, cfg.gap);
    res.noise_resistant[i] = noisy_quality(sys, z, cfg.theta, cfg.delays, DenoiseVariant::NoiseResistant,
                                           cfg.rank, cfg.filter_columns, cfg.gap);
  });
  return res;
}

}  // namespace cdmd
