// SPDX-License-Identifier: Apache-2.0
//
// Independent reference implementations used only by tests: dense-matrix
// quantum evolution, naive linear algebra and error measures.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

/// Square complex matrix, row-major.
struct Dense {
  std::size_t dim = 0;
  std::vector<cplx> a;

  explicit Dense(std::size_t d = 0) : dim(d), a(d * d, 0.0) {}
  cplx& operator()(std::size_t r, std::size_t c) { return a[r * dim + c]; }
  cplx operator()(std::size_t r, std::size_t c) const { return a[r * dim + c]; }

  static Dense identity(std::size_t d) {
    Dense m(d);
    for (std::size_t i = 0; i < d; ++i) m(i, i) = 1.0;
    return m;
  }
  static Dense from2(cplx m00, cplx m01, cplx m10, cplx m11) {
    Dense m(2);
    m(0, 0) = m00;
    m(0, 1) = m01;
    m(1, 0) = m10;
    m(1, 1) = m11;
    return m;
  }
};

inline Dense kron(const Dense& x, const Dense& y) {
  Dense out(x.dim * y.dim);
  for (std::size_t i = 0; i < x.dim; ++i)
    for (std::size_t j = 0; j < x.dim; ++j)
      for (std::size_t k = 0; k < y.dim; ++k)
        for (std::size_t l = 0; l < y.dim; ++l) out(i * y.dim + k, j * y.dim + l) = x(i, j) * y(k, l);
  return out;
}

inline Dense matmul(const Dense& x, const Dense& y) {
  Dense out(x.dim);
  for (std::size_t i = 0; i < x.dim; ++i)
    for (std::size_t k = 0; k < x.dim; ++k)
      for (std::size_t j = 0; j < x.dim; ++j) out(i, j) += x(i, k) * y(k, j);
  return out;
}

inline Dense add(const Dense& x, const Dense& y) {
  Dense out(x.dim);
  for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] = x.a[i] + y.a[i];
  return out;
}

inline std::vector<cplx> matvec(const Dense& m, std::span<const cplx> v) {
  std::vector<cplx> out(m.dim, 0.0);
  for (std::size_t i = 0; i < m.dim; ++i)
    for (std::size_t j = 0; j < m.dim; ++j) out[i] += m(i, j) * v[j];
  return out;
}

/// Operator acting as `u` on qubit q of n (qubit 0 is the leftmost factor).
inline Dense embed(const Dense& u, int q, int n) {
  Dense out = Dense::identity(1);
  for (int i = 0; i < n; ++i) out = kron(out, i == q ? u : Dense::identity(2));
  return out;
}

/// |0><0|_c (x) I + |1><1|_c (x) X_t, built from Kronecker products.
inline Dense cnot(int control, int target, int n) {
  const Dense p0 = Dense::from2(1, 0, 0, 0);
  const Dense p1 = Dense::from2(0, 0, 0, 1);
  const Dense x = Dense::from2(0, 1, 1, 0);
  Dense a = Dense::identity(1);
  Dense b = Dense::identity(1);
  for (int i = 0; i < n; ++i) {
    a = kron(a, i == control ? p0 : Dense::identity(2));
    b = kron(b, i == control ? p1 : (i == target ? x : Dense::identity(2)));
  }
  return add(a, b);
}

inline Dense rz(double t) {
  return Dense::from2(std::exp(cplx(0, -t / 2)), 0, 0, std::exp(cplx(0, t / 2)));
}
inline Dense ry(double t) {
  return Dense::from2(std::cos(t / 2), -std::sin(t / 2), std::sin(t / 2), std::cos(t / 2));
}
inline Dense pauli_z() { return Dense::from2(1, 0, 0, -1); }

/// <psi| Z_q |psi> by dense multiplication.
inline double expect_z(std::span<const cplx> psi, int q, int n) {
  const auto zpsi = matvec(embed(pauli_z(), q, n), psi);
  cplx s = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) s += std::conj(psi[i]) * zpsi[i];
  return s.real();
}

/// Full circuit of the two-layer ansatz as one dense unitary. Angles are
/// laid out [layer][qubit][alpha, beta, gamma].
inline Dense ansatz_unitary(std::span<const double> angles, int n, int layers) {
  Dense u = Dense::identity(std::size_t{1} << n);
  for (int l = 0; l < layers; ++l) {
    for (int q = 0; q < n; ++q) {
      const double* a = angles.data() + (l * n + q) * 3;
      u = matmul(embed(rz(a[0]), q, n), u);
      u = matmul(embed(ry(a[1]), q, n), u);
      u = matmul(embed(rz(a[2]), q, n), u);
    }
    if (n > 1) {
      const int range = l % std::max(n - 1, 1) + 1;
      for (int i = 0; i < n; ++i) u = matmul(cnot(i, (i + range) % n, n), u);
    }
  }
  return u;
}

inline double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

/// max_i |a_i - b_i| / max(max_j |b_j|, floor)
inline double max_rel_error(std::span<const double> a, std::span<const double> b,
                            double floor = 1e-12) {
  double diff = 0.0;
  double scale = floor;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff = std::max(diff, std::abs(a[i] - b[i]));
    scale = std::max(scale, std::abs(b[i]));
  }
  return diff / scale;
}

/// Central finite differences of f at x.
template <typename F>
std::vector<double> central_diff(F&& f, std::vector<double> x, double h) {
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double keep = x[i];
    x[i] = keep + h;
    const double up = f(x);
    x[i] = keep - h;
    const double down = f(x);
    x[i] = keep;
    g[i] = (up - down) / (2 * h);
  }
  return g;
}

/// Scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("qsarbench-" + tag + "-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace oracle
