// SPDX-License-Identifier: Apache-2.0
//
// Exact statevector simulation. Qubit 0 is the most significant bit of the
// basis index: for n qubits, qubit q owns bit (n - 1 - q).
#pragma once

#include <complex>
#include <span>
#include <vector>

#include "qsarbench/kernels.hpp"

namespace qsarbench {

using kernels::cplx;
using kernels::Mat2;

class StateVector {
 public:
  /// |0...0> on n >= 1 qubits.
  explicit StateVector(int qubits);

  /// Takes ownership of 2^n amplitudes; no normalisation is applied.
  static StateVector from_amplitudes(std::vector<cplx> amplitudes);

  int qubits() const noexcept { return qubits_; }
  std::size_t size() const noexcept { return amps_.size(); }
  std::span<cplx> amplitudes() noexcept { return amps_; }
  std::span<const cplx> amplitudes() const noexcept { return amps_; }
  double norm2() const noexcept;

  /// Bit mask of `qubit` in the basis index.
  std::size_t mask(int qubit) const;

  void apply(int qubit, const Mat2& u);
  void apply_rot(int qubit, double alpha, double beta, double gamma);
  void apply_cnot(int control, int target);

 private:
  StateVector() = default;
  int qubits_ = 0;
  std::vector<cplx> amps_;
};

Mat2 rz(double theta) noexcept;
Mat2 ry(double theta) noexcept;
/// RZ(gamma) . RY(beta) . RZ(alpha): alpha acts first.
Mat2 rot(double alpha, double beta, double gamma) noexcept;
Mat2 multiply(const Mat2& a, const Mat2& b) noexcept;

struct EmbeddedState {
  StateVector state;
  bool degenerate = false;  // ||x|| < 1e-12; uniform state substituted
};

/// x / ||x|| as real amplitudes. |x| must be a power of two (>= 2).
EmbeddedState amplitude_embed(std::span<const double> x);

/// Strongly-entangling ansatz angles, laid out [layer][qubit][alpha, beta, gamma].
struct AnsatzParams {
  int qubits = 0;
  int layers = 2;
  std::vector<double> angles;

  AnsatzParams() = default;
  AnsatzParams(int qubits, int layers = 2);

  std::size_t count() const noexcept { return angles.size(); }
  std::size_t index(int layer, int qubit, int k) const noexcept {
    return (static_cast<std::size_t>(layer) * static_cast<std::size_t>(qubits) +
            static_cast<std::size_t>(qubit)) * 3 + static_cast<std::size_t>(k);
  }
  double& angle(int layer, int qubit, int k) { return angles[index(layer, qubit, k)]; }
  double angle(int layer, int qubit, int k) const { return angles[index(layer, qubit, k)]; }
};

/// CNOT range of layer l: (l mod max(n-1, 1)) + 1.
int entangler_range(int layer, int qubits) noexcept;

/// Per layer: Rot on every qubit, then CNOT(i, (i + r) mod n) for i = 0..n-1
/// (skipped when n = 1).
void run_ansatz(StateVector& state, const AnsatzParams& params);

/// <Z_q> for every qubit, exact.
std::vector<double> z_expectations(const StateVector& state);

/// d/dtheta of sum_q upstream_q <Z_q> via the +-pi/2 shift rule (12n circuit
/// evaluations for two layers).
std::vector<double> parameter_shift_gradient(std::span<const double> x, const AnsatzParams& params,
                                             std::span<const double> upstream);

/// Same quantity by adjoint (reverse-mode) differentiation: one forward and
/// one backward sweep.
std::vector<double> adjoint_gradient(std::span<const double> x, const AnsatzParams& params,
                                     std::span<const double> upstream);

/// Backward sweep only; `final_state` must be run_ansatz(embed(x), params).
std::vector<double> adjoint_gradient_from_state(StateVector final_state, const AnsatzParams& params,
                                                std::span<const double> upstream);

}  // namespace qsarbench
