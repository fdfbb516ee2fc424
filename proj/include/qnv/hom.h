// Copyright 2026 The qnet-verify Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QNV_HOM_H_
#define QNV_HOM_H_

#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qnv/netproto.h"
#include "qnv/noise.h"
#include "qnv/overlap.h"
#include "qnv/random.h"
#include "qnv/state_vector.h"

namespace qnv {

enum class ModeShape { kGaussian, kLorentzian, kSech, kTimeBin };

std::string mode_shape_name(ModeShape shape);
ModeShape parse_mode_shape(const std::string& name);

/// Single-photon temporal amplitude psi(t), normalized to unit intensity.
///
///   gaussian(sigma):  (pi sigma^2)^{-1/4} exp(-(t - delay)^2 / (2 sigma^2))
///   lorentzian(rate): sqrt(2 rate) exp(-rate (t - delay)) for t >= delay
///   sech(rate):       sqrt(rate)/2 sech(rate (t - delay) / 2)
///   timebin(width,i): 1/sqrt(width) on [delay + i width, delay + (i+1) width)
///
/// Construction verifies the normalization by quadrature.
class ModeFunction {
 public:
  static ModeFunction gaussian(double sigma, double delay = 0.0);
  static ModeFunction lorentzian(double rate, double delay = 0.0);
  static ModeFunction sech(double rate, double delay = 0.0);
  static ModeFunction timebin(double width, int bin_index, double delay = 0.0);

  ModeShape shape() const { return shape_; }
  /// sigma, rate, or bin width depending on the shape.
  double parameter() const { return parameter_; }
  int bin_index() const { return bin_index_; }
  double delay() const { return delay_; }

  ModeFunction delayed(double extra) const;

  double operator()(double t) const;
  /// Interval outside of which the intensity is negligible (12 widths) or
  /// exactly zero.
  std::pair<double, double> support() const;
  /// Points where psi is not smooth, inside the support.
  std::vector<double> kinks() const;

  std::string to_string() const;

 private:
  ModeFunction(ModeShape shape, double parameter, int bin_index, double delay);

  ModeShape shape_;
  double parameter_;
  int bin_index_;
  double delay_;
};

inline constexpr double kQuadratureTolerance = 1e-8;
inline constexpr double kSupportWidths = 12.0;

/// Adaptive Gauss-Kronrod integral of f over [a, b] split at `breaks`.
/// Throws std::runtime_error if the error estimate exceeds `tolerance`.
double integrate(const std::function<double(double)>& f, double a, double b,
                 std::vector<double> breaks = {}, double tolerance = kQuadratureTolerance);

/// <psi1|psi2>, from closed forms for same-shape, same-width pairs and
/// quadrature otherwise.
std::complex<double> mode_overlap(const ModeFunction& psi1, const ModeFunction& psi2);
/// Always by quadrature.
std::complex<double> mode_overlap_quadrature(const ModeFunction& psi1, const ModeFunction& psi2);

/// (1 - |<psi1|psi2>|^2) / 2.
double coincidence_probability(const ModeFunction& psi1, const ModeFunction& psi2);

/// Closed forms of |<psi1|psi2>|^2 for two identical shapes separated by
/// `delta`.
double gaussian_overlap_sq(double delta, double sigma);
double lorentzian_overlap_sq(double delta, double rate);
double sech_overlap_sq(double delta, double rate);

/// Alternative closed-form coincidence expressions, kept verbatim for
/// comparison against the overlap law. They do not satisfy p_c(0) = 0.
double printed_gaussian_pc(double delta, double sigma);
double printed_lorentzian_pc(double delta, double rate);
double printed_sech_pc(double delta, double rate);

struct HomComparisonRow {
  std::string shape;
  double delta;
  double overlap_sq;             // closed form
  double overlap_sq_quadrature;  // forced quadrature
  double pc_law;
  double pc_printed;
};

/// Delay sweep of the overlap law vs the printed expressions for the three
/// pulse shapes, `points` delays in [0, max_delay_widths * width].
std::vector<HomComparisonRow> hom_comparison_table(double sigma, double rate, int points,
                                                   double max_delay_widths);

/// Plain-text summary of where the printed expressions disagree with the
/// limits p_c -> 0 (identical) and p_c -> 1/2 (distinguishable).
std::string hom_discrepancy_report(const std::vector<HomComparisonRow>& rows);

/// Per-qubit photon modes for S4.
struct ModePair {
  ModeFunction first;
  ModeFunction second;
};

/// Default: identical time-bin modes (visibility 1).
std::vector<ModePair> identical_timebin_pairs(int n);

/// Interference visibility |<first|second>|^2 of each pair.
std::vector<double> visibilities(const std::vector<ModePair>& pairs);

/// Optical Bell test. Each pair interferes with probability V_k; then it
/// reproduces the Bell-basis measurement statistics. Otherwise the photons
/// are distinguishable: the pair is read in the computational basis and its
/// (B_k, C_k) bits are replaced by a coincidence coin (11 with probability
/// 1/2, else uniform over 00, 01, 10). Each photon of node A crosses the link
/// once (f_transfer, damping); every pair readout is one f_readout event.
ProtocolRun run_s4(const StateVector& psi_a, const StateVector& psi_b, std::size_t shots,
                   const std::vector<double>& visibility, const NoiseBudget& noise,
                   const ProtocolOptions& options, RandomSource& rng);

}  // namespace qnv

#endif  // QNV_HOM_H_
