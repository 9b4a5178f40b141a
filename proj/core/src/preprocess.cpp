#include "dyadscan/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace dyadscan {

namespace {

using cd = std::complex<double>;

// Expands a monic polynomial from its roots; returns real coefficients in
// descending-power order. Imaginary residue from conjugate pairs is dropped.
std::vector<double> poly_from_roots(const std::vector<cd>& roots) {
  std::vector<cd> coeffs{cd(1.0, 0.0)};
  for (const cd& r : roots) {
    std::vector<cd> next(coeffs.size() + 1, cd(0.0, 0.0));
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      next[i] += coeffs[i];
      next[i + 1] -= coeffs[i] * r;
    }
    coeffs = std::move(next);
  }
  std::vector<double> out(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    out[i] = coeffs[i].real();
  }
  return out;
}

// |H(e^{j omega})| for b/a coefficient vectors.
double gain_at(const std::vector<double>& b, const std::vector<double>& a, double omega) {
  const cd z_inv = std::exp(cd(0.0, -omega));
  cd num(0.0, 0.0), den(0.0, 0.0);
  cd zk(1.0, 0.0);
  for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    if (i < b.size()) num += b[i] * zk;
    if (i < a.size()) den += a[i] * zk;
    zk *= z_inv;
  }
  return std::abs(num / den);
}

// Gaussian elimination with partial pivoting; A is n x n row-major.
std::vector<double> solve_linear(std::vector<double> A, std::vector<double> rhs, std::size_t n) {
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row) {
      if (std::abs(A[row * n + col]) > std::abs(A[pivot * n + col])) pivot = row;
    }
    if (pivot != col) {
      for (std::size_t k = 0; k < n; ++k) std::swap(A[col * n + k], A[pivot * n + k]);
      std::swap(rhs[col], rhs[pivot]);
    }
    const double diag = A[col * n + col];
    if (diag == 0.0) {
      throw Error(ErrorCode::InvalidParams, "singular system in filter state solve");
    }
    for (std::size_t row = col + 1; row < n; ++row) {
      const double f = A[row * n + col] / diag;
      if (f == 0.0) continue;
      for (std::size_t k = col; k < n; ++k) A[row * n + k] -= f * A[col * n + k];
      rhs[row] -= f * rhs[col];
    }
  }
  std::vector<double> x(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double s = rhs[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= A[i * n + k] * x[k];
    x[i] = s / A[i * n + i];
  }
  return x;
}

// Steady-state initial filter state for a unit step input (direct form II
// transposed), so a constant input produces a constant output immediately.
std::vector<double> steady_state_conditions(const IirCoefficients& c) {
  const std::size_t n = std::max(c.a.size(), c.b.size());
  const std::size_t m = n - 1;
  std::vector<double> a(c.a), b(c.b);
  a.resize(n, 0.0);
  b.resize(n, 0.0);
  // Solve (I - A^T) zi = B with A the companion matrix of a.
  std::vector<double> M(m * m, 0.0);
  std::vector<double> rhs(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    M[i * m + 0] = (i == 0 ? 1.0 : 0.0) + a[i + 1];
    for (std::size_t j = 1; j < m; ++j) {
      const double eye = (i == j) ? 1.0 : 0.0;
      const double comp = (j == i + 1) ? 1.0 : 0.0;
      M[i * m + j] = eye - comp;
    }
    rhs[i] = b[i + 1] - a[i + 1] * b[0];
  }
  return solve_linear(std::move(M), std::move(rhs), m);
}

std::vector<double> iir_filter_with_state(const IirCoefficients& c, const std::vector<double>& x,
                                          std::vector<double> state) {
  const std::size_t n = std::max(c.a.size(), c.b.size());
  std::vector<double> a(c.a), b(c.b);
  a.resize(n, 0.0);
  b.resize(n, 0.0);
  std::vector<double> y(x.size());
  if (n == 1) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = b[0] * x[i];
    return y;
  }
  state.resize(n - 1, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    const double yi = b[0] * xi + state[0];
    for (std::size_t k = 0; k + 1 < state.size(); ++k) {
      state[k] = b[k + 1] * xi + state[k + 1] - a[k + 1] * yi;
    }
    state[state.size() - 1] = b[n - 1] * xi - a[n - 1] * yi;
    y[i] = yi;
  }
  return y;
}

} // namespace

void MbllConfig::validate() const {
  const double det = extinction[0][0] * extinction[1][1] - extinction[0][1] * extinction[1][0];
  if (std::abs(det) <= 1e-12) {
    throw Error(ErrorCode::SingularExtinction, "extinction matrix is near-singular");
  }
  if (!(dpf[0] > 0.0) || !(dpf[1] > 0.0)) {
    throw Error(ErrorCode::InvalidParams, "differential pathlength factors must be positive");
  }
  if (!(distance_mm > 0.0)) {
    throw Error(ErrorCode::InvalidParams, "source-detector distance must be positive");
  }
}

void BandpassConfig::validate(double fs_hz) const {
  if (!(fs_hz > 0.0)) {
    throw Error(ErrorCode::InvalidBand, "sampling rate must be positive");
  }
  if (!(low_hz > 0.0) || !(low_hz < high_hz) || !(high_hz < fs_hz / 2.0)) {
    throw Error(ErrorCode::InvalidBand, "band must satisfy 0 < low < high < fs/2");
  }
  if (order < 1) {
    throw Error(ErrorCode::InvalidBand, "filter order must be at least 1");
  }
}

IirCoefficients design_butterworth_bandpass(int order, double low_hz, double high_hz, double fs_hz) {
  BandpassConfig probe{low_hz, high_hz, order, true};
  probe.validate(fs_hz);

  // Pre-warped analog edges for the bilinear transform.
  const double fs2 = 2.0 * fs_hz;
  const double w1 = fs2 * std::tan(std::numbers::pi * low_hz / fs_hz);
  const double w2 = fs2 * std::tan(std::numbers::pi * high_hz / fs_hz);
  const double bw = w2 - w1;
  const double w0 = std::sqrt(w1 * w2);

  // Lowpass prototype poles on the unit circle, left half-plane.
  std::vector<cd> proto;
  proto.reserve(order);
  for (int k = 1; k <= order; ++k) {
    const double theta = std::numbers::pi * (2.0 * k + order - 1.0) / (2.0 * order);
    proto.emplace_back(std::cos(theta), std::sin(theta));
  }

  // Lowpass-to-bandpass substitution doubles the pole count.
  std::vector<cd> analog_poles;
  analog_poles.reserve(2 * order);
  for (const cd& p : proto) {
    const cd half = p * (bw / 2.0);
    const cd root = std::sqrt(half * half - cd(w0 * w0, 0.0));
    analog_poles.push_back(half + root);
    analog_poles.push_back(half - root);
  }

  // Bilinear transform of poles; zeros land at z = +1 (n) and z = -1 (n).
  std::vector<cd> zpoles, zzeros;
  zpoles.reserve(2 * order);
  zzeros.reserve(2 * order);
  for (const cd& s : analog_poles) {
    zpoles.push_back((cd(fs2, 0.0) + s) / (cd(fs2, 0.0) - s));
  }
  for (int k = 0; k < order; ++k) {
    zzeros.emplace_back(1.0, 0.0);
    zzeros.emplace_back(-1.0, 0.0);
  }

  IirCoefficients coeffs;
  coeffs.b = poly_from_roots(zzeros);
  coeffs.a = poly_from_roots(zpoles);

  // Unit gain at the (warped) geometric band centre, where the analog
  // magnitude response is exactly one.
  const double omega0 = 2.0 * std::atan(w0 / fs2);
  const double g = gain_at(coeffs.b, coeffs.a, omega0);
  for (double& v : coeffs.b) v /= g;
  return coeffs;
}

std::vector<double> iir_filter(const IirCoefficients& coeffs, const std::vector<double>& x) {
  return iir_filter_with_state(coeffs, x, {});
}

std::vector<double> filtfilt(const IirCoefficients& coeffs, const std::vector<double>& x) {
  const std::size_t t = x.size();
  const std::size_t ntaps = std::max(coeffs.a.size(), coeffs.b.size());
  if (t < 2) {
    throw Error(ErrorCode::SeriesTooShort, "filtfilt needs at least 2 samples");
  }
  const std::size_t pad = std::min<std::size_t>(3 * ntaps, t - 1);

  // Odd reflection about both endpoints.
  std::vector<double> ext;
  ext.reserve(t + 2 * pad);
  for (std::size_t i = pad; i >= 1; --i) ext.push_back(2.0 * x.front() - x[i]);
  ext.insert(ext.end(), x.begin(), x.end());
  for (std::size_t i = 2; i <= pad + 1; ++i) ext.push_back(2.0 * x.back() - x[t - i]);

  const std::vector<double> zi = steady_state_conditions(coeffs);
  auto scaled = [&zi](double v) {
    std::vector<double> s(zi.size());
    for (std::size_t i = 0; i < zi.size(); ++i) s[i] = zi[i] * v;
    return s;
  };

  std::vector<double> y = iir_filter_with_state(coeffs, ext, scaled(ext.front()));
  std::reverse(y.begin(), y.end());
  y = iir_filter_with_state(coeffs, y, scaled(y.front()));
  std::reverse(y.begin(), y.end());

  return std::vector<double>(y.begin() + static_cast<std::ptrdiff_t>(pad),
                             y.begin() + static_cast<std::ptrdiff_t>(pad + t));
}

std::pair<std::vector<double>, std::vector<double>>
mbll_convert(const std::vector<std::vector<double>>& od, const MbllConfig& cfg) {
  cfg.validate();
  if (od.size() != 2 || od[0].size() != od[1].size()) {
    throw Error(ErrorCode::InvalidParams, "optical density input must be 2 x T");
  }
  for (const auto& row : od) {
    for (double v : row) {
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::InvalidParams, "optical density sample is not finite");
      }
    }
  }
  // Per sample: od[lambda] = (eps[lambda][HbO]*hbo + eps[lambda][HbR]*hbr) * d * dpf[lambda].
  const double m00 = cfg.extinction[0][0] * cfg.distance_mm * cfg.dpf[0];
  const double m01 = cfg.extinction[0][1] * cfg.distance_mm * cfg.dpf[0];
  const double m10 = cfg.extinction[1][0] * cfg.distance_mm * cfg.dpf[1];
  const double m11 = cfg.extinction[1][1] * cfg.distance_mm * cfg.dpf[1];
  const double det = m00 * m11 - m01 * m10;
  if (std::abs(det) <= 1e-12 * cfg.distance_mm * cfg.distance_mm * cfg.dpf[0] * cfg.dpf[1]) {
    throw Error(ErrorCode::SingularExtinction, "scaled extinction system is near-singular");
  }
  const std::size_t t = od[0].size();
  std::vector<double> hbo(t), hbr(t);
  for (std::size_t i = 0; i < t; ++i) {
    hbo[i] = (m11 * od[0][i] - m01 * od[1][i]) / det;
    hbr[i] = (m00 * od[1][i] - m10 * od[0][i]) / det;
  }
  return {std::move(hbo), std::move(hbr)};
}

std::vector<std::vector<double>> mbll_forward(const std::vector<double>& hbo,
                                              const std::vector<double>& hbr,
                                              const MbllConfig& cfg) {
  cfg.validate();
  if (hbo.size() != hbr.size()) {
    throw Error(ErrorCode::LengthMismatch, "chromophore series have unequal lengths");
  }
  std::vector<std::vector<double>> od(2, std::vector<double>(hbo.size()));
  for (std::size_t i = 0; i < hbo.size(); ++i) {
    od[0][i] = (cfg.extinction[0][0] * hbo[i] + cfg.extinction[0][1] * hbr[i]) * cfg.distance_mm * cfg.dpf[0];
    od[1][i] = (cfg.extinction[1][0] * hbo[i] + cfg.extinction[1][1] * hbr[i]) * cfg.distance_mm * cfg.dpf[1];
  }
  return od;
}

std::vector<double> bandpass(const std::vector<double>& series, double fs_hz, const BandpassConfig& cfg) {
  cfg.validate(fs_hz);
  const std::size_t min_len = 3 * static_cast<std::size_t>(cfg.order + 1);
  if (series.size() < min_len) {
    throw Error(ErrorCode::SeriesTooShort, "bandpass needs at least " + std::to_string(min_len) +
                    " samples, got " + std::to_string(series.size()));
  }
  const IirCoefficients coeffs = design_butterworth_bandpass(cfg.order, cfg.low_hz, cfg.high_hz, fs_hz);
  return cfg.zero_phase ? filtfilt(coeffs, series) : iir_filter(coeffs, series);
}

DyadTrial bandpass_trial(const DyadTrial& trial, const BandpassConfig& cfg) {
  DyadTrial out = trial;
  const IirCoefficients coeffs =
      design_butterworth_bandpass(cfg.order, cfg.low_hz, cfg.high_hz, trial.a.fs_hz);
  cfg.validate(trial.a.fs_hz);
  const std::size_t min_len = 3 * static_cast<std::size_t>(cfg.order + 1);
  for (TrialSeries* side : {&out.a, &out.b}) {
    for (auto& ch : side->channels) {
      if (ch.size() < min_len) {
        throw Error(ErrorCode::SeriesTooShort, "trial too short for bandpass");
      }
      ch = cfg.zero_phase ? filtfilt(coeffs, ch) : iir_filter(coeffs, ch);
    }
  }
  return out;
}

std::vector<DyadTrial> filter_by_length(const std::vector<DyadTrial>& trials,
                                        std::size_t min_t, std::size_t max_t) {
  std::vector<DyadTrial> kept;
  kept.reserve(trials.size());
  for (const auto& trial : trials) {
    const std::size_t ta = trial.a.sample_count();
    const std::size_t tb = trial.b.sample_count();
    if (ta >= min_t && ta <= max_t && tb >= min_t && tb <= max_t) {
      kept.push_back(trial);
    }
  }
  return kept;
}

DyadTrial trim_last_n(const DyadTrial& trial, std::size_t n) {
  DyadTrial out = trial;
  for (TrialSeries* side : {&out.a, &out.b}) {
    for (auto& ch : side->channels) {
      if (ch.size() < n) {
        throw Error(ErrorCode::SeriesTooShort, "cannot trim " + std::to_string(ch.size()) +
                        " samples to last " + std::to_string(n));
      }
      ch.erase(ch.begin(), ch.end() - static_cast<std::ptrdiff_t>(n));
    }
  }
  return out;
}

DyadTrial unit_norm(const DyadTrial& trial) {
  DyadTrial out = trial;
  for (TrialSeries* side : {&out.a, &out.b}) {
    for (auto& ch : side->channels) {
      double sq = 0.0;
      for (double v : ch) sq += v * v;
      const double norm = std::sqrt(sq);
      if (norm == 0.0) {
        throw Error(ErrorCode::ZeroChannel, "cannot normalize an identically zero channel");
      }
      for (double& v : ch) v /= norm;
    }
  }
  return out;
}

std::vector<double> clamp_artifacts(const std::vector<double>& series, double k_mad) {
  if (series.size() < 5) {
    throw Error(ErrorCode::SeriesTooShort, "artifact clamp needs at least 5 samples");
  }
  auto median_of = [](std::vector<double> v) {
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    double hi = v[mid];
    if (v.size() % 2 == 0) {
      const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
      return (lo + hi) / 2.0;
    }
    return hi;
  };
  const double med = median_of(series);
  std::vector<double> dev(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) dev[i] = std::abs(series[i] - med);
  const double mad = median_of(dev);
  if (mad == 0.0) {
    return series;
  }
  const double bound = k_mad * mad;
  std::vector<double> out(series);
  for (double& v : out) {
    v = std::clamp(v, med - bound, med + bound);
  }
  return out;
}

std::vector<DyadTrial> preprocess_trials(const std::vector<DyadTrial>& trials,
                                         const PreprocessConfig& cfg) {
  std::vector<DyadTrial> work = trials;
  if (cfg.clamp) {
    for (auto& trial : work) {
      for (TrialSeries* side : {&trial.a, &trial.b}) {
        for (auto& ch : side->channels) {
          ch = clamp_artifacts(ch, cfg.clamp_k_mad);
        }
      }
    }
  }
  for (auto& trial : work) {
    trial = bandpass_trial(trial, cfg.bandpass);
  }
  work = filter_by_length(work, cfg.min_len, cfg.max_len);
  for (auto& trial : work) {
    trial = trim_last_n(trial, cfg.trim_len);
    trial = unit_norm(trial);
  }
  return work;
}

} // namespace dyadscan
