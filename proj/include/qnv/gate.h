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

#ifndef QNV_GATE_H_
#define QNV_GATE_H_

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace qnv {

using Amplitude = std::complex<double>;

enum class GateKind {
  kH,
  kX,
  kY,
  kZ,
  kS,
  kSdag,
  kPhase,
  kCnot,
  kCphase,
  kCswap,
  kToffoli,
  kSwap,
  kUnitary1,
  kUnitary,
};

std::string gate_kind_name(GateKind kind);

/// A quantum gate bound to concrete qubit indices.
///
/// `matrix()` is expressed over the local basis of `targets()`, with
/// targets()[0] as the least-significant local bit. Two-qubit controlled
/// kinds list the control first (CNOT: {control, target}; CSWAP: {control,
/// a, b}; Toffoli: {c1, c2, target}).
///
/// Extra control conditions added through `controlled()` restrict the action
/// to the subspace where every listed control qubit holds the given value.
class Gate {
 public:
  struct Control {
    int qubit;
    bool value;
  };

  static Gate h(int q);
  static Gate x(int q);
  static Gate y(int q);
  static Gate z(int q);
  static Gate s(int q);
  static Gate sdg(int q);
  static Gate phase(int q, double phi);
  static Gate cnot(int control, int target);
  static Gate cphase(int a, int b);
  static Gate cswap(int control, int a, int b);
  static Gate toffoli(int c1, int c2, int target);
  static Gate swap(int a, int b);
  /// Arbitrary 2x2 unitary, row-major.
  static Gate unitary1(int q, std::vector<Amplitude> matrix);
  /// Arbitrary unitary on up to three qubits, row-major 2^k x 2^k.
  static Gate unitary(std::vector<int> targets, std::vector<Amplitude> matrix);

  GateKind kind() const { return kind_; }
  std::span<const int> targets() const { return targets_; }
  std::span<const Control> controls() const { return controls_; }
  double angle() const { return angle_; }
  int arity() const { return static_cast<int>(targets_.size()); }

  std::vector<Amplitude> matrix() const;
  Gate inverse() const;
  /// Same gate with one more control condition. Throws if `qubit` overlaps
  /// the gate's qubits.
  Gate controlled(int qubit, bool value = true) const;
  /// Same gate with every qubit index q replaced by mapping[q].
  Gate remapped(std::span<const int> mapping) const;
  /// Largest qubit index touched, including controls.
  int max_qubit() const;

  std::string to_string() const;

 private:
  Gate(GateKind kind, std::vector<int> targets, double angle = 0.0,
       std::vector<Amplitude> matrix = {});

  GateKind kind_;
  std::vector<int> targets_;
  std::vector<Control> controls_;
  double angle_ = 0.0;
  std::vector<Amplitude> custom_;
};

inline constexpr double kUnitarityTolerance = 1e-10;
inline constexpr int kMaxUnitaryArity = 3;

/// max |(U^dagger U - I)_{ij}| for a row-major dim x dim matrix.
double unitarity_defect(std::span<const Amplitude> matrix, std::size_t dim);

}  // namespace qnv

#endif  // QNV_GATE_H_
