// SPDX-License-Identifier: Apache-2.0
#include "qsarbench/statevector.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "qsarbench/error.hpp"

namespace qsarbench {
namespace {

constexpr double kShift = std::numbers::pi / 2.0;

void check_qubit(int qubit, int qubits) {
  if (qubit < 0 || qubit >= qubits) {
    throw Error(ErrorCode::QubitOutOfRange,
                "qubit " + std::to_string(qubit) + " of " + std::to_string(qubits));
  }
}

// Im <lambda| Z_q |psi>
double im_z(const StateVector& lambda, const StateVector& psi, std::size_t mask) {
  const auto l = lambda.amplitudes();
  const auto p = psi.amplitudes();
  double sum = 0.0;
  for (std::size_t b = 0; b < p.size(); ++b) {
    const double term = l[b].real() * p[b].imag() - l[b].imag() * p[b].real();
    sum += (b & mask) ? -term : term;
  }
  return sum;
}

// Im <lambda| Y_q |psi>; Y|0> = i|1>, Y|1> = -i|0>.
double im_y(const StateVector& lambda, const StateVector& psi, std::size_t mask) {
  const auto l = lambda.amplitudes();
  const auto p = psi.amplitudes();
  cplx sum = 0.0;
  for (std::size_t b0 = 0; b0 < p.size(); ++b0) {
    if (b0 & mask) continue;
    const std::size_t b1 = b0 | mask;
    sum += std::conj(l[b0]) * cplx(p[b1].imag(), -p[b1].real());  // -i * psi_b1
    sum += std::conj(l[b1]) * cplx(-p[b0].imag(), p[b0].real());  // +i * psi_b0
  }
  return sum.imag();
}

void entangle(StateVector& state, int layer) {
  const int n = state.qubits();
  if (n < 2) return;
  const int range = entangler_range(layer, n);
  for (int i = 0; i < n; ++i) state.apply_cnot(i, (i + range) % n);
}

void unentangle(StateVector& state, int layer) {
  const int n = state.qubits();
  if (n < 2) return;
  const int range = entangler_range(layer, n);
  for (int i = n - 1; i >= 0; --i) state.apply_cnot(i, (i + range) % n);
}

double weighted_z(const StateVector& state, std::span<const double> upstream) {
  const auto z = z_expectations(state);
  double sum = 0.0;
  for (std::size_t q = 0; q < z.size(); ++q) sum += upstream[q] * z[q];
  return sum;
}

}  // namespace

StateVector::StateVector(int qubits) : qubits_(qubits) {
  if (qubits < 1 || qubits > 30) {
    throw Error(ErrorCode::InvalidArgument, "qubit count must lie in [1, 30]");
  }
  amps_.assign(std::size_t{1} << qubits, cplx(0.0, 0.0));
  amps_[0] = 1.0;
}

StateVector StateVector::from_amplitudes(std::vector<cplx> amplitudes) {
  if (amplitudes.size() < 2 || !std::has_single_bit(amplitudes.size())) {
    throw Error(ErrorCode::NotPowerOfTwo, "amplitude count must be a power of two >= 2");
  }
  StateVector s;
  s.qubits_ = std::countr_zero(amplitudes.size());
  s.amps_ = std::move(amplitudes);
  return s;
}

double StateVector::norm2() const noexcept { return kernels::active().norm2(amps_.data(), amps_.size()); }

std::size_t StateVector::mask(int qubit) const {
  check_qubit(qubit, qubits_);
  return std::size_t{1} << (qubits_ - 1 - qubit);
}

void StateVector::apply(int qubit, const Mat2& u) {
  kernels::active().apply_1q(amps_.data(), amps_.size(), mask(qubit), u);
}

void StateVector::apply_rot(int qubit, double alpha, double beta, double gamma) {
  apply(qubit, rot(alpha, beta, gamma));
}

void StateVector::apply_cnot(int control, int target) {
  const std::size_t c = mask(control);
  const std::size_t t = mask(target);
  if (control == target) throw Error(ErrorCode::SameQubit, "CNOT control equals target");
  for (std::size_t b = 0; b < amps_.size(); ++b) {
    if ((b & c) && !(b & t)) std::swap(amps_[b], amps_[b | t]);
  }
}

Mat2 rz(double theta) noexcept {
  const cplx lo = std::polar(1.0, -theta / 2.0);
  const cplx hi = std::polar(1.0, theta / 2.0);
  return {lo, 0.0, 0.0, hi};
}

Mat2 ry(double theta) noexcept {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  return {c, -s, s, c};
}

Mat2 multiply(const Mat2& a, const Mat2& b) noexcept {
  return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
          a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}

Mat2 rot(double alpha, double beta, double gamma) noexcept {
  return multiply(rz(gamma), multiply(ry(beta), rz(alpha)));
}

EmbeddedState amplitude_embed(std::span<const double> x) {
  if (x.size() < 2 || !std::has_single_bit(x.size())) {
    throw Error(ErrorCode::NotPowerOfTwo,
                "amplitude embedding needs 2^n inputs, got " + std::to_string(x.size()));
  }
  double norm = 0.0;
  for (double v : x) norm += v * v;
  norm = std::sqrt(norm);
  std::vector<cplx> amps(x.size());
  bool degenerate = false;
  if (norm < 1e-12) {
    degenerate = true;
    const double u = 1.0 / std::sqrt(static_cast<double>(x.size()));
    for (auto& a : amps) a = u;
  } else {
    for (std::size_t i = 0; i < x.size(); ++i) amps[i] = x[i] / norm;
  }
  return {StateVector::from_amplitudes(std::move(amps)), degenerate};
}

AnsatzParams::AnsatzParams(int qubits_in, int layers_in)
    : qubits(qubits_in), layers(layers_in),
      angles(static_cast<std::size_t>(3 * qubits_in * layers_in), 0.0) {
  if (qubits_in < 1 || layers_in < 1) {
    throw Error(ErrorCode::InvalidArgument, "ansatz needs at least one qubit and one layer");
  }
}

int entangler_range(int layer, int qubits) noexcept {
  const int period = qubits - 1 > 1 ? qubits - 1 : 1;
  return layer % period + 1;
}

void run_ansatz(StateVector& state, const AnsatzParams& params) {
  if (state.qubits() != params.qubits || params.count() != params.index(params.layers, 0, 0)) {
    throw Error(ErrorCode::DimensionMismatch, "ansatz parameters do not match the state");
  }
  for (int l = 0; l < params.layers; ++l) {
    for (int q = 0; q < params.qubits; ++q) {
      state.apply_rot(q, params.angle(l, q, 0), params.angle(l, q, 1), params.angle(l, q, 2));
    }
    entangle(state, l);
  }
}

std::vector<double> z_expectations(const StateVector& state) {
  const int n = state.qubits();
  const auto amps = state.amplitudes();
  std::vector<double> z(static_cast<std::size_t>(n), 0.0);
  for (std::size_t b = 0; b < amps.size(); ++b) {
    const double p = std::norm(amps[b]);
    for (int q = 0; q < n; ++q) {
      const std::size_t bit = std::size_t{1} << (n - 1 - q);
      z[static_cast<std::size_t>(q)] += (b & bit) ? -p : p;
    }
  }
  return z;
}

std::vector<double> parameter_shift_gradient(std::span<const double> x, const AnsatzParams& params,
                                             std::span<const double> upstream) {
  if (upstream.size() != static_cast<std::size_t>(params.qubits)) {
    throw Error(ErrorCode::DimensionMismatch, "upstream must have one entry per qubit");
  }
  const StateVector input = amplitude_embed(x).state;
  if (input.qubits() != params.qubits) {
    throw Error(ErrorCode::DimensionMismatch, "input width does not match the ansatz");
  }
  std::vector<double> grad(params.count(), 0.0);
  bool any = false;
  for (double u : upstream) any = any || u != 0.0;
  if (!any) return grad;

  AnsatzParams shifted = params;
  for (std::size_t j = 0; j < params.count(); ++j) {
    shifted.angles[j] = params.angles[j] + kShift;
    StateVector plus = input;
    run_ansatz(plus, shifted);
    shifted.angles[j] = params.angles[j] - kShift;
    StateVector minus = input;
    run_ansatz(minus, shifted);
    shifted.angles[j] = params.angles[j];
    grad[j] = 0.5 * (weighted_z(plus, upstream) - weighted_z(minus, upstream));
  }
  return grad;
}

std::vector<double> adjoint_gradient_from_state(StateVector psi, const AnsatzParams& params,
                                                std::span<const double> upstream) {
  const int n = params.qubits;
  if (upstream.size() != static_cast<std::size_t>(n) || psi.qubits() != n) {
    throw Error(ErrorCode::DimensionMismatch, "adjoint gradient dimensions");
  }
  // lambda = O psi with O = sum_q upstream_q Z_q (diagonal).
  StateVector lambda = psi;
  {
    auto l = lambda.amplitudes();
    for (std::size_t b = 0; b < l.size(); ++b) {
      double w = 0.0;
      for (int q = 0; q < n; ++q) {
        const std::size_t bit = std::size_t{1} << (n - 1 - q);
        w += (b & bit) ? -upstream[static_cast<std::size_t>(q)]
                       : upstream[static_cast<std::size_t>(q)];
      }
      l[b] *= w;
    }
  }

  // dU/dtheta = -i/2 G U for U = exp(-i theta G / 2), so the contribution of
  // each gate is Im <lambda| G |psi> taken just after the gate.
  std::vector<double> grad(params.count(), 0.0);
  for (int layer = params.layers - 1; layer >= 0; --layer) {
    unentangle(psi, layer);
    unentangle(lambda, layer);
    for (int q = n - 1; q >= 0; --q) {
      const std::size_t m = psi.mask(q);
      const double alpha = params.angle(layer, q, 0);
      const double beta = params.angle(layer, q, 1);
      const double gamma = params.angle(layer, q, 2);

      grad[params.index(layer, q, 2)] = im_z(lambda, psi, m);
      psi.apply(q, rz(-gamma));
      lambda.apply(q, rz(-gamma));

      grad[params.index(layer, q, 1)] = im_y(lambda, psi, m);
      psi.apply(q, ry(-beta));
      lambda.apply(q, ry(-beta));

      grad[params.index(layer, q, 0)] = im_z(lambda, psi, m);
      psi.apply(q, rz(-alpha));
      lambda.apply(q, rz(-alpha));
    }
  }
  return grad;
}

std::vector<double> adjoint_gradient(std::span<const double> x, const AnsatzParams& params,
                                     std::span<const double> upstream) {
  StateVector psi = amplitude_embed(x).state;
  if (psi.qubits() != params.qubits) {
    throw Error(ErrorCode::DimensionMismatch, "input width does not match the ansatz");
  }
  run_ansatz(psi, params);
  return adjoint_gradient_from_state(std::move(psi), params, upstream);
}

}  // namespace qsarbench
