#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "dyadscan/domain.hpp"

namespace dyadscan {

// Modified Beer-Lambert conversion setup. Extinction coefficients are in
// (uM*mm)^-1, indexed [wavelength][chromophore] with chromophore order
// {HbO, HbR}; defaults are standard published values for 690/830 nm.
struct MbllConfig {
  std::array<double, 2> wavelengths_nm{690.0, 830.0};
  std::array<std::array<double, 2>, 2> extinction{{{3.50e-5, 2.10e-4},
                                                   {1.058e-4, 7.40e-5}}};
  std::array<double, 2> dpf{6.0, 6.0};
  double distance_mm = 30.0;

  void validate() const;
};

struct BandpassConfig {
  double low_hz = 0.01;
  double high_hz = 0.5;
  int order = 3;
  bool zero_phase = true;

  void validate(double fs_hz) const;
};

// Digital IIR transfer function, b over a, with a[0] == 1.
struct IirCoefficients {
  std::vector<double> b;
  std::vector<double> a;
};

// Butterworth bandpass via analog prototype + bilinear transform, with unit
// gain at the geometric band centre.
IirCoefficients design_butterworth_bandpass(int order, double low_hz, double high_hz, double fs_hz);

// Single causal pass, zero initial state.
std::vector<double> iir_filter(const IirCoefficients& coeffs, const std::vector<double>& x);

// Forward-backward pass with odd-reflection padding and steady-state initial
// conditions, so short series keep small edge transients. Net phase is zero
// and the effective order doubles.
std::vector<double> filtfilt(const IirCoefficients& coeffs, const std::vector<double>& x);

// Converts a 2xT matrix of optical-density changes at the two configured
// wavelengths into (delta-HbO, delta-HbR) series in uM.
std::pair<std::vector<double>, std::vector<double>>
mbll_convert(const std::vector<std::vector<double>>& od, const MbllConfig& cfg);

// Inverse of mbll_convert: reconstructs the 2xT optical-density matrix from
// chromophore series (forward model, used as the conversion oracle).
std::vector<std::vector<double>> mbll_forward(const std::vector<double>& hbo,
                                              const std::vector<double>& hbr,
                                              const MbllConfig& cfg);

std::vector<double> bandpass(const std::vector<double>& series, double fs_hz, const BandpassConfig& cfg);

// Applies the bandpass to every channel of both participants.
DyadTrial bandpass_trial(const DyadTrial& trial, const BandpassConfig& cfg);

// Keeps trials whose length is within [min_t, max_t] inclusive, preserving order.
std::vector<DyadTrial> filter_by_length(const std::vector<DyadTrial>& trials,
                                        std::size_t min_t = 50, std::size_t max_t = 60);

// Each channel of both participants becomes its final n samples.
DyadTrial trim_last_n(const DyadTrial& trial, std::size_t n = 50);

// Scales every channel to unit Euclidean norm.
DyadTrial unit_norm(const DyadTrial& trial);

// Clamps samples further than k_mad median-absolute-deviations from the
// median to that bound. MAD of zero leaves the series untouched.
std::vector<double> clamp_artifacts(const std::vector<double>& series, double k_mad = 8.0);

struct PreprocessConfig {
  BandpassConfig bandpass;
  std::size_t min_len = 50;
  std::size_t max_len = 60;
  std::size_t trim_len = 50;
  bool clamp = false;   // stand-in for wavelet motion correction, off by default
  double clamp_k_mad = 8.0;
};

// Full cleaning pipeline: optional clamp, bandpass, length filter, trim,
// unit norm. Trials failing the length filter are dropped.
std::vector<DyadTrial> preprocess_trials(const std::vector<DyadTrial>& trials,
                                         const PreprocessConfig& cfg);

} // namespace dyadscan
