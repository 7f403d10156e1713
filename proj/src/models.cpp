#include "refspin/models.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

namespace refspin {

Complex potts_xi(double d, int choice) {
  const double disc = d * d - 4.0;
  std::array<Complex, 2> roots;
  if (disc >= 0.0) {
    const double s = std::sqrt(disc);
    roots = {Complex((-d + s) / 2.0, 0.0), Complex((-d - s) / 2.0, 0.0)};
  } else {
    const double s = std::sqrt(-disc);
    roots = {Complex(-d / 2.0, s / 2.0), Complex(-d / 2.0, -s / 2.0)};
  }
  auto arg_key = [](Complex z) {
    double a = std::atan2(z.imag(), z.real());
    if (a < 0.0) a += 2.0 * std::numbers::pi;
    return std::pair{a, std::abs(z)};
  };
  std::sort(roots.begin(), roots.end(), [&](Complex x, Complex y) { return arg_key(x) < arg_key(y); });
  const int c = ((choice % 4) + 4) % 4;
  const Complex root = std::sqrt(roots[static_cast<std::size_t>(c / 2)]);
  return (c % 2 == 0) ? root : -root;
}

CMatrix potts_matrix(std::size_t n, Complex xi) {
  const CMatrix id = CMatrix::identity(n);
  return (-1.0 / (xi * xi * xi)) * id + xi * (CMatrix::ones(n) - id);
}

SpinModel make_potts(std::size_t n, int d_sign, int xi_choice) {
  const double d = (d_sign < 0 ? -1.0 : 1.0) * std::sqrt(static_cast<double>(n));
  return verify_spin_model(potts_matrix(n, potts_xi(d, xi_choice)), d);
}

int potts_xi_choice_nearest(double d, Complex target) {
  int best = 0;
  for (int c = 1; c < 4; ++c)
    if (std::abs(potts_xi(d, c) - target) < std::abs(potts_xi(d, best) - target)) best = c;
  return best;
}

CMatrix pentagonal_a1() { return CMatrix::circulant_distance(5, 1); }
CMatrix pentagonal_a2() { return CMatrix::circulant_distance(5, 2); }

SpinModel make_pentagonal() {
  const Complex omega = std::polar(1.0, 2.0 * std::numbers::pi / 5.0);
  const CMatrix w = CMatrix::identity(5) + omega * pentagonal_a1() + std::pow(omega, 4) * pentagonal_a2();
  return verify_spin_model(w, std::sqrt(5.0));
}

RefinedSpinModel make_refined(const SpinModel& m, const CMatrix& v_plus) {
  if (v_plus.size() != m.n) throw Error(ErrorCode::DimensionMismatch, "V+ size differs from W+");
  if (!is_symmetric(v_plus)) throw Error(ErrorCode::NotSymmetric, "V+ is not symmetric");
  RefinedSpinModel r;
  r.base = m;
  r.v_plus = v_plus;
  r.v_minus = psi_image(v_plus, m) / Complex(m.d);
  r.alpha_vp = v_plus(0, 0);
  r.alpha_vm = r.v_minus(0, 0);
  for (std::size_t a = 1; a < m.n; ++a) {
    if (std::abs(v_plus(a, a) - r.alpha_vp) > kTolNum || std::abs(r.v_minus(a, a) - r.alpha_vm) > kTolNum) {
      throw Error(ErrorCode::NotInNomura, "diagonal of V+ or V- is not constant");
    }
  }
  if (std::abs(r.alpha_vp * r.alpha_vm) < kTolZero) {
    throw Error(ErrorCode::ZeroModulus, "alpha(V+) * alpha(V-) vanishes");
  }
  r.type_ii = approx_equal(v_plus.hadamard(r.v_minus), CMatrix::ones(m.n));
  return r;
}

RefinedSpinModel make_potts_refinement(const SpinModel& m, int xi_choice) {
  return make_refined(m, potts_matrix(m.n, potts_xi(m.d, xi_choice)));
}

RefinedSpinModel make_potts_family(Complex a, Complex b) {
  const SpinModel base = make_potts(3, -1, 0);
  const CMatrix id = CMatrix::identity(3);
  const CMatrix v = a * id + b * (CMatrix::ones(3) - id);
  return make_refined(base, v);
}

RefinedSpinModel make_pentagonal_family(Complex a, Complex b, Complex c) {
  const CMatrix v = a * CMatrix::identity(5) + b * pentagonal_a1() + c * pentagonal_a2();
  return make_refined(make_pentagonal(), v);
}

bool is_circulant(const CMatrix& a, double tol) {
  const std::size_t n = a.size();
  const ShiftMap t{n};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (std::abs(a(t(i), t(j)) - a(i, j)) > tol) return false;
  return true;
}

bool is_translation_invariant(const RefinedSpinModel& r, double tol) {
  return is_circulant(r.base.w_plus, tol) && is_circulant(r.base.w_minus, tol) && is_circulant(r.v_plus, tol) &&
         is_circulant(r.v_minus, tol);
}

namespace {

std::map<std::string, std::string> parse_params(std::string_view text) {
  std::map<std::string, std::string> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    const auto item = text.substr(pos, comma - pos);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw Error(ErrorCode::BadModelSpec, "expected key=value, got '" + std::string(item) + "'");
    }
    out[std::string(item.substr(0, eq))] = std::string(item.substr(eq + 1));
    pos = comma + 1;
  }
  return out;
}

class Params {
 public:
  Params(std::string kind, std::map<std::string, std::string> values) : kind_(std::move(kind)), values_(std::move(values)) {}

  Complex complex_or(const std::string& key, Complex fallback) {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::string v = it->second;
    values_.erase(it);
    try {
      return parse_complex(v);
    } catch (const Error&) {
      throw Error(ErrorCode::BadModelSpec, kind_ + ": bad value for " + key + ": '" + v + "'");
    }
  }
  long int_or(const std::string& key, long fallback) {
    const Complex z = complex_or(key, Complex(static_cast<double>(fallback)));
    if (z.imag() != 0.0 || std::floor(z.real()) != z.real()) {
      throw Error(ErrorCode::BadModelSpec, kind_ + ": " + key + " must be an integer");
    }
    return static_cast<long>(z.real());
  }
  std::string string_or(const std::string& key, const std::string& fallback) {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::string v = it->second;
    values_.erase(it);
    return v;
  }
  void finish() const {
    if (!values_.empty()) throw Error(ErrorCode::BadModelSpec, kind_ + ": unknown parameter '" + values_.begin()->first + "'");
  }

 private:
  std::string kind_;
  std::map<std::string, std::string> values_;
};

SpinModel base_from(Params& p, const std::string& name, const std::string& xi_key) {
  if (name == "pentagonal") return make_pentagonal();
  if (name == "potts") {
    const long n = p.int_or("n", 3);
    if (n < 2) throw Error(ErrorCode::BadModelSpec, "potts: n must be >= 2");
    const long dsign = p.int_or("dsign", -1);
    if (dsign != 1 && dsign != -1) throw Error(ErrorCode::BadModelSpec, "potts: dsign must be +1 or -1");
    const long xi = p.int_or(xi_key, 0);
    if (xi < 0 || xi > 3) throw Error(ErrorCode::BadModelSpec, "potts: xi must be in 0..3");
    return make_potts(static_cast<std::size_t>(n), static_cast<int>(dsign), static_cast<int>(xi));
  }
  throw Error(ErrorCode::BadModelSpec, "unknown base model '" + name + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

RefinedSpinModel parse_model_file(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<double> d;
  std::string w_block;
  std::string v_block;
  std::string* current = &w_block;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    line = line.substr(first);
    if (line.rfind("d=", 0) == 0) {
      char* stop = nullptr;
      d = std::strtod(line.c_str() + 2, &stop);
      if (stop == line.c_str() + 2) throw Error(ErrorCode::SyntaxError, "bad d= line");
      continue;
    }
    if (line.rfind("w_plus=", 0) == 0) {
      current = &w_block;
      line = line.substr(7);
    } else if (line.rfind("v_plus=", 0) == 0) {
      current = &v_block;
      line = line.substr(7);
    }
    *current += line + "\n";
  }
  if (!d) throw Error(ErrorCode::SyntaxError, "model file lacks a d= line");
  const SpinModel base = verify_spin_model(parse_matrix(w_block), *d);
  const CMatrix v = v_block.find_first_not_of(" \t\r\n") == std::string::npos ? base.w_plus : parse_matrix(v_block);
  return make_refined(base, v);
}

RefinedSpinModel parse_model_spec(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string kind(spec.substr(0, colon));
  const std::string_view rest = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);

  if (kind == "file") {
    if (rest.empty()) throw Error(ErrorCode::BadModelSpec, "file: needs a path");
    return parse_model_file(read_file(std::string(rest)));
  }
  Params p(kind, parse_params(rest));
  RefinedSpinModel r;
  if (kind == "potts" || kind == "pentagonal") {
    const SpinModel base = base_from(p, kind, "xi");
    r = make_refined(base, base.w_plus);
  } else if (kind == "potts-family") {
    const Complex a = p.complex_or("a", 1.0);
    const Complex b = p.complex_or("b", 0.0);
    r = make_potts_family(a, b);
  } else if (kind == "pent-family") {
    const Complex a = p.complex_or("a", 1.0);
    const Complex b = p.complex_or("b", 0.0);
    const Complex c = p.complex_or("c", 0.0);
    r = make_pentagonal_family(a, b, c);
  } else if (kind == "potts-refined") {
    const std::string base_name = p.string_or("base", "potts");
    const long vxi = p.int_or("xi", 0);
    if (vxi < 0 || vxi > 3) throw Error(ErrorCode::BadModelSpec, "potts-refined: xi must be in 0..3");
    const SpinModel base = base_from(p, base_name, "bxi");
    r = make_potts_refinement(base, static_cast<int>(vxi));
  } else {
    throw Error(ErrorCode::BadModelSpec, "unknown model kind '" + kind + "'");
  }
  p.finish();
  return r;
}

}  // namespace refspin
