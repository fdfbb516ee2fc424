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
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qnv/hom.h"

namespace qnv {

double integrate(const std::function<double(double)>& f, double a, double b,
                 std::vector<double> breaks, double tolerance) {
  if (!(b > a)) return 0.0;
  breaks.push_back(a);
  breaks.push_back(b);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  double total = 0.0;
  double total_error = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double lo = breaks[i];
    const double hi = breaks[i + 1];
    if (lo < a || hi > b || !(hi > lo)) continue;
    double error = 0.0;
    total += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, lo, hi, 25, 1e-13,
                                                                           &error);
    total_error += error;
  }
  if (!std::isfinite(total) || total_error > tolerance) {
    throw std::runtime_error("quadrature did not converge (error estimate " +
                             std::to_string(total_error) + ")");
  }
  return total;
}

}  // namespace qnv
