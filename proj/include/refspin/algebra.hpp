#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "refspin/error.hpp"

namespace refspin {

using Complex = std::complex<double>;

// Absolute tolerance for equality checks and the threshold below which a
// value counts as zero.
inline constexpr double kTolNum = 1e-9;
inline constexpr double kTolZero = 1e-12;

/// Dense square complex matrix indexed by X = {0..n-1}, row-major.
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(std::size_t n, Complex fill = 0.0);
  CMatrix(std::size_t n, std::initializer_list<Complex> row_major);

  static CMatrix identity(std::size_t n);
  static CMatrix ones(std::size_t n);
  /// 0/1 matrix with ones where the cyclic distance |i-j| mod n equals k.
  static CMatrix circulant_distance(std::size_t n, std::size_t k);

  std::size_t size() const noexcept { return n_; }
  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  std::span<const Complex> data() const noexcept { return data_; }

  CMatrix transpose() const;
  CMatrix hadamard(const CMatrix& other) const;
  std::vector<Complex> apply(std::span<const Complex> v) const;

  CMatrix& operator+=(const CMatrix& other);
  CMatrix& operator-=(const CMatrix& other);
  CMatrix& operator*=(Complex s);

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, Complex s) { return a *= s; }
  friend CMatrix operator*(Complex s, CMatrix a) { return a *= s; }
  friend CMatrix operator/(CMatrix a, Complex s) { return a *= (1.0 / s); }
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);

 private:
  std::size_t n_ = 0;
  std::vector<Complex> data_;
};

double max_abs_diff(const CMatrix& a, const CMatrix& b);
bool approx_equal(const CMatrix& a, const CMatrix& b, double tol = kTolNum);
bool is_symmetric(const CMatrix& a, double tol = kTolNum);

/// Entrywise reciprocal. Throws ZeroEntry naming the first entry below kTolZero.
CMatrix hadamard_inverse(const CMatrix& a);

/// Y^A_{ij}(x) = A(x,i) / A(x,j).
std::vector<Complex> y_vector(const CMatrix& a, std::size_t i, std::size_t j);

/// A spin model (W+, d). Construct through verify_spin_model.
struct SpinModel {
  std::size_t n = 0;
  double d = 0.0;
  CMatrix w_plus;
  CMatrix w_minus;
  Complex alpha_w;
};

/// Checks the type-I/II/III equations and returns the populated model.
SpinModel verify_spin_model(const CMatrix& w_plus, double d);

/// True iff every Y^{W+}_{ij} is an eigenvector of `a`.
bool is_in_nomura(const CMatrix& a, const SpinModel& m);

/// psi(a)(i,j) is the eigenvalue of `a` on Y^{W+}_{ij}. Throws NotInNomura.
CMatrix psi_image(const CMatrix& a, const SpinModel& m);

// Text I/O. Complex literals are `re`, `re+imi`, `re-imi` or `imi`.
Complex parse_complex(std::string_view text);
std::string format_complex(Complex z);

/// Reads a `matrix n=<n>` block followed by n*n complex literals.
CMatrix parse_matrix(std::string_view text);
std::string format_matrix(const CMatrix& a);

}  // namespace refspin
