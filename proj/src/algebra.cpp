#include "refspin/algebra.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace refspin {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroEntry: return "ZeroEntry";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::TypeIIIFailure: return "TypeIIIFailure";
    case ErrorCode::BadLoopValue: return "BadLoopValue";
    case ErrorCode::NotInNomura: return "NotInNomura";
    case ErrorCode::ZeroModulus: return "ZeroModulus";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::NonPlanar: return "NonPlanar";
    case ErrorCode::OpenArc: return "OpenArc";
    case ErrorCode::NotBipartite: return "NotBipartite";
    case ErrorCode::AxisCountMismatch: return "AxisCountMismatch";
    case ErrorCode::BadVertex: return "BadVertex";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::WidthOverflow: return "WidthOverflow";
    case ErrorCode::ColoringMismatch: return "ColoringMismatch";
    case ErrorCode::PatternMismatch: return "PatternMismatch";
    case ErrorCode::TypeIIRequired: return "TypeIIRequired";
    case ErrorCode::BadModelSpec: return "BadModelSpec";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

CMatrix::CMatrix(std::size_t n, Complex fill) : n_(n), data_(n * n, fill) {}

CMatrix::CMatrix(std::size_t n, std::initializer_list<Complex> row_major) : n_(n), data_(row_major) {
  if (data_.size() != n * n) {
    throw Error(ErrorCode::DimensionMismatch, "initializer has " + std::to_string(data_.size()) +
                                                  " entries, expected " + std::to_string(n * n));
  }
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::ones(std::size_t n) { return CMatrix(n, 1.0); }

CMatrix CMatrix::circulant_distance(std::size_t n, std::size_t k) {
  CMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t diff = (i + n - j) % n;
      if (diff == k % n || (n - diff) % n == k % n) m(i, j) = 1.0;
    }
  }
  return m;
}

CMatrix CMatrix::transpose() const {
  CMatrix t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

CMatrix CMatrix::hadamard(const CMatrix& other) const {
  if (other.n_ != n_) throw Error(ErrorCode::DimensionMismatch, "hadamard product");
  CMatrix r(n_);
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] * other.data_[k];
  return r;
}

std::vector<Complex> CMatrix::apply(std::span<const Complex> v) const {
  if (v.size() != n_) throw Error(ErrorCode::DimensionMismatch, "matrix-vector product");
  std::vector<Complex> out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < n_; ++j) s += (*this)(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
  if (other.n_ != n_) throw Error(ErrorCode::DimensionMismatch, "matrix sum");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
  if (other.n_ != n_) throw Error(ErrorCode::DimensionMismatch, "matrix difference");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

CMatrix& CMatrix::operator*=(Complex s) {
  for (auto& x : data_) x *= s;
  return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "matrix product");
  const std::size_t n = a.size();
  CMatrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      for (std::size_t j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "comparison");
  double m = 0.0;
  auto da = a.data();
  auto db = b.data();
  for (std::size_t k = 0; k < da.size(); ++k) m = std::max(m, std::abs(da[k] - db[k]));
  return m;
}

bool approx_equal(const CMatrix& a, const CMatrix& b, double tol) {
  return a.size() == b.size() && max_abs_diff(a, b) <= tol;
}

bool is_symmetric(const CMatrix& a, double tol) { return max_abs_diff(a, a.transpose()) <= tol; }

namespace {

std::string index_pair(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

void require_same_size(const CMatrix& a, const SpinModel& m) {
  if (a.size() != m.n) {
    throw Error(ErrorCode::DimensionMismatch,
                "matrix of size " + std::to_string(a.size()) + " against model of size " + std::to_string(m.n));
  }
}

// Eigenvalue of `a` on `y`, or false if `y` is not an eigenvector within kTolNum.
bool eigenvalue_on(const CMatrix& a, const std::vector<Complex>& y, Complex& lambda) {
  const auto ay = a.apply(y);
  std::size_t k = 0;
  while (k < y.size() && std::abs(y[k]) <= kTolZero) ++k;
  if (k == y.size()) return false;
  lambda = ay[k] / y[k];
  for (std::size_t x = 0; x < y.size(); ++x) {
    if (std::abs(ay[x] - lambda * y[x]) > kTolNum) return false;
  }
  return true;
}

}  // namespace

CMatrix hadamard_inverse(const CMatrix& a) {
  const std::size_t n = a.size();
  CMatrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(a(i, j)) < kTolZero) throw Error(ErrorCode::ZeroEntry, "entry " + index_pair(i, j));
      r(i, j) = 1.0 / a(i, j);
    }
  return r;
}

std::vector<Complex> y_vector(const CMatrix& a, std::size_t i, std::size_t j) {
  const std::size_t n = a.size();
  if (i >= n || j >= n) throw Error(ErrorCode::DimensionMismatch, "Y-vector index " + index_pair(i, j));
  std::vector<Complex> y(n);
  for (std::size_t x = 0; x < n; ++x) {
    if (std::abs(a(x, j)) < kTolZero) throw Error(ErrorCode::ZeroEntry, "entry " + index_pair(x, j));
    y[x] = a(x, i) / a(x, j);
  }
  return y;
}

SpinModel verify_spin_model(const CMatrix& w_plus, double d) {
  const std::size_t n = w_plus.size();
  if (n < 2) throw Error(ErrorCode::DimensionMismatch, "spin models need n >= 2");
  if (std::abs(d * d - static_cast<double>(n)) > kTolNum) {
    throw Error(ErrorCode::BadLoopValue, "d^2 = " + std::to_string(d * d) + " but n = " + std::to_string(n));
  }
  if (!is_symmetric(w_plus)) throw Error(ErrorCode::NotSymmetric, "W+ is not symmetric");

  SpinModel m;
  m.n = n;
  m.d = d;
  m.w_plus = w_plus;
  m.w_minus = hadamard_inverse(w_plus);
  m.alpha_w = w_plus(0, 0);

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const auto y = y_vector(w_plus, a, b);
      const auto wy = w_plus.apply(y);
      const Complex lambda = d * m.w_minus(a, b);
      for (std::size_t x = 0; x < n; ++x) {
        if (std::abs(wy[x] - lambda * y[x]) > kTolNum) {
          throw Error(ErrorCode::TypeIIIFailure, "eigen-equation fails at (a,b)=" + index_pair(a, b));
        }
      }
    }
  }
  // Diagonal constancy follows from the b=a equations; checked for the report.
  for (std::size_t a = 0; a < n; ++a) {
    if (std::abs(w_plus(a, a) - m.alpha_w) > kTolNum) {
      throw Error(ErrorCode::TypeIIIFailure, "non-constant diagonal at a=" + std::to_string(a + 1));
    }
  }
  return m;
}

bool is_in_nomura(const CMatrix& a, const SpinModel& m) {
  if (a.size() != m.n) return false;
  Complex lambda;
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t j = 0; j < m.n; ++j)
      if (!eigenvalue_on(a, y_vector(m.w_plus, i, j), lambda)) return false;
  return true;
}

CMatrix psi_image(const CMatrix& a, const SpinModel& m) {
  require_same_size(a, m);
  CMatrix r(m.n);
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t j = 0; j < m.n; ++j) {
      Complex lambda;
      if (!eigenvalue_on(a, y_vector(m.w_plus, i, j), lambda)) {
        throw Error(ErrorCode::NotInNomura, "Y" + index_pair(i, j) + " is not an eigenvector");
      }
      r(i, j) = lambda;
    }
  return r;
}

Complex parse_complex(std::string_view text) {
  const std::string s(text);
  if (s.empty()) throw Error(ErrorCode::SyntaxError, "empty complex literal");
  const char* begin = s.c_str();
  const char* end = begin + s.size();
  auto fail = [&]() -> Complex { throw Error(ErrorCode::SyntaxError, "bad complex literal '" + s + "'"); };

  if (s.back() != 'i') {
    char* stop = nullptr;
    const double re = std::strtod(begin, &stop);
    if (stop != end || stop == begin) return fail();
    return {re, 0.0};
  }
  // Imaginary part present: find the sign that starts it (not an exponent sign).
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size() - 1; k-- > 0;) {
    if ((s[k] == '+' || s[k] == '-') && k > 0 && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto parse_imag = [&](const std::string& t) -> double {
    if (t == "" || t == "+") return 1.0;
    if (t == "-") return -1.0;
    char* stop = nullptr;
    const double v = std::strtod(t.c_str(), &stop);
    if (*stop != '\0') fail();
    return v;
  };
  const std::string body = s.substr(0, s.size() - 1);
  if (split == std::string::npos) return {0.0, parse_imag(body)};
  char* stop = nullptr;
  const std::string re_text = body.substr(0, split);
  const double re = std::strtod(re_text.c_str(), &stop);
  if (*stop != '\0' || re_text.empty()) return fail();
  return {re, parse_imag(body.substr(split))};
}

std::string format_complex(Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%c%.17gi", z.real(), std::signbit(z.imag()) ? '-' : '+',
                std::fabs(z.imag()));
  return buf;
}

CMatrix parse_matrix(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string tok;
  if (!(in >> tok) || tok != "matrix") throw Error(ErrorCode::SyntaxError, "expected 'matrix n=<n>' header");
  if (!(in >> tok) || tok.rfind("n=", 0) != 0) throw Error(ErrorCode::SyntaxError, "expected n=<n>");
  char* stop = nullptr;
  const long n = std::strtol(tok.c_str() + 2, &stop, 10);
  if (*stop != '\0' || n <= 0) throw Error(ErrorCode::SyntaxError, "bad dimension '" + tok + "'");
  CMatrix m(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      if (!(in >> tok)) throw Error(ErrorCode::SyntaxError, "matrix ended after " + std::to_string(i * n + j) + " entries");
      m(i, j) = parse_complex(tok);
    }
  return m;
}

std::string format_matrix(const CMatrix& a) {
  std::string out = "matrix n=" + std::to_string(a.size()) + "\n";
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (j) out += ' ';
      out += format_complex(a(i, j));
    }
    out += '\n';
  }
  return out;
}

}  // namespace refspin
