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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qnv/hom.h"

namespace qnv {

namespace {

void check_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + " must be positive and finite");
  }
}

}  // namespace

std::string mode_shape_name(ModeShape shape) {
  switch (shape) {
    case ModeShape::kGaussian: return "gaussian";
    case ModeShape::kLorentzian: return "lorentzian";
    case ModeShape::kSech: return "sech";
    case ModeShape::kTimeBin: return "timebin";
  }
  return "?";
}

ModeShape parse_mode_shape(const std::string& name) {
  if (name == "gaussian") return ModeShape::kGaussian;
  if (name == "lorentzian") return ModeShape::kLorentzian;
  if (name == "sech") return ModeShape::kSech;
  if (name == "timebin") return ModeShape::kTimeBin;
  throw std::invalid_argument("unknown mode shape '" + name +
                              "' (expected gaussian|lorentzian|sech|timebin)");
}

ModeFunction::ModeFunction(ModeShape shape, double parameter, int bin_index, double delay)
    : shape_(shape), parameter_(parameter), bin_index_(bin_index), delay_(delay) {
  check_positive(parameter_, "mode width parameter");
  if (!std::isfinite(delay_)) throw std::invalid_argument("mode delay must be finite");
  const auto [lo, hi] = support();
  const double norm = integrate([this](double t) { return (*this)(t) * (*this)(t); }, lo, hi,
                                kinks());
  if (std::abs(norm - 1.0) > kQuadratureTolerance) {
    throw std::invalid_argument("mode function " + to_string() + " is not normalized (" +
                                std::to_string(norm) + ")");
  }
}

ModeFunction ModeFunction::gaussian(double sigma, double delay) {
  return ModeFunction(ModeShape::kGaussian, sigma, 0, delay);
}

ModeFunction ModeFunction::lorentzian(double rate, double delay) {
  return ModeFunction(ModeShape::kLorentzian, rate, 0, delay);
}

ModeFunction ModeFunction::sech(double rate, double delay) {
  return ModeFunction(ModeShape::kSech, rate, 0, delay);
}

ModeFunction ModeFunction::timebin(double width, int bin_index, double delay) {
  if (bin_index != 0 && bin_index != 1) {
    throw std::invalid_argument("time bin index must be 0 or 1");
  }
  return ModeFunction(ModeShape::kTimeBin, width, bin_index, delay);
}

ModeFunction ModeFunction::delayed(double extra) const {
  return ModeFunction(shape_, parameter_, bin_index_, delay_ + extra);
}

double ModeFunction::operator()(double t) const {
  const double u = t - delay_;
  switch (shape_) {
    case ModeShape::kGaussian: {
      const double s = parameter_;
      return std::pow(std::numbers::pi * s * s, -0.25) * std::exp(-u * u / (2.0 * s * s));
    }
    case ModeShape::kLorentzian:
      return u < 0.0 ? 0.0 : std::sqrt(2.0 * parameter_) * std::exp(-parameter_ * u);
    case ModeShape::kSech:
      return 0.5 * std::sqrt(parameter_) / std::cosh(0.5 * parameter_ * u);
    case ModeShape::kTimeBin: {
      const double start = bin_index_ * parameter_;
      return (u >= start && u < start + parameter_) ? 1.0 / std::sqrt(parameter_) : 0.0;
    }
  }
  return 0.0;
}

std::pair<double, double> ModeFunction::support() const {
  switch (shape_) {
    case ModeShape::kGaussian:
      return {delay_ - kSupportWidths * parameter_, delay_ + kSupportWidths * parameter_};
    case ModeShape::kLorentzian:
      return {delay_, delay_ + kSupportWidths / parameter_};
    case ModeShape::kSech: {
      // the amplitude decays on the scale 2 / rate
      const double w = 2.0 / parameter_;
      return {delay_ - kSupportWidths * w, delay_ + kSupportWidths * w};
    }
    case ModeShape::kTimeBin: {
      const double start = delay_ + bin_index_ * parameter_;
      return {start, start + parameter_};
    }
  }
  return {0.0, 0.0};
}

std::vector<double> ModeFunction::kinks() const {
  const auto [lo, hi] = support();
  switch (shape_) {
    case ModeShape::kGaussian:
    case ModeShape::kSech:
      return {delay_};
    case ModeShape::kLorentzian:
    case ModeShape::kTimeBin:
      return {lo, hi};
  }
  return {};
}

std::string ModeFunction::to_string() const {
  std::ostringstream os;
  os << mode_shape_name(shape_) << "(" << parameter_;
  if (shape_ == ModeShape::kTimeBin) os << ", bin " << bin_index_;
  os << ", delay " << delay_ << ")";
  return os.str();
}

}  // namespace qnv
