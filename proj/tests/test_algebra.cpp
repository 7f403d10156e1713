#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "refspin/models.hpp"

using namespace refspin;

namespace {

const double kPi = std::numbers::pi;

CMatrix random_matrix(std::size_t n, std::mt19937_64& rng, bool symmetric) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  CMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = symmetric ? i : 0; j < n; ++j) {
      m(i, j) = Complex(u(rng), u(rng));
      if (symmetric) m(j, i) = m(i, j);
    }
  return m;
}

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::Io;
}

}  // namespace

TEST_CASE("hadamard_inverse of J is J") { CHECK(approx_equal(hadamard_inverse(CMatrix::ones(3)), CMatrix::ones(3))); }

TEST_CASE("hadamard_inverse of the Potts matrix") {
  const Complex xi = std::polar(1.0, kPi / 12);
  const CMatrix inv = hadamard_inverse(potts_matrix(3, xi));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(std::abs(inv(i, j) - (i == j ? -xi * xi * xi : 1.0 / xi)) < kTolNum);
}

TEST_CASE("hadamard_inverse rejects a zero entry") {
  CMatrix m = CMatrix::ones(3);
  m(1, 2) = 0.0;
  CHECK(code_of([&] { hadamard_inverse(m); }) == ErrorCode::ZeroEntry);
  CHECK(code_of([&] { hadamard_inverse(CMatrix::identity(3)); }) == ErrorCode::ZeroEntry);
}

TEST_CASE("hadamard_inverse is an involution") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 50; ++k) {
    const CMatrix m = random_matrix(1 + k % 5, rng, false);
    CHECK(max_abs_diff(hadamard_inverse(hadamard_inverse(m)), m) < kTolNum);
    CHECK(approx_equal(hadamard_inverse(m).hadamard(m), CMatrix::ones(m.size())));
  }
}

TEST_CASE("y_vector") {
  const SpinModel pent = make_pentagonal();
  const Complex omega = std::polar(1.0, 2 * kPi / 5);
  SUBCASE("equal indices give the all-one vector") {
    for (Complex y : y_vector(pent.w_plus, 3, 3)) CHECK(std::abs(y - 1.0) < kTolNum);
  }
  SUBCASE("pentagonal columns 1 and 2") {
    const auto y = y_vector(pent.w_plus, 0, 1);
    for (std::size_t x = 0; x < 5; ++x) CHECK(std::abs(y[x] - pent.w_plus(x, 0) / pent.w_plus(x, 1)) < kTolNum);
    CHECK(std::abs(y[0] - 1.0 / omega) < kTolNum);
    CHECK(std::abs(y[1] - omega) < kTolNum);
  }
  SUBCASE("J has equal columns") {
    for (Complex y : y_vector(CMatrix::ones(4), 0, 2)) CHECK(std::abs(y - 1.0) < kTolNum);
  }
  SUBCASE("zero in the divisor column") {
    CHECK(code_of([] { y_vector(CMatrix::identity(3), 0, 1); }) == ErrorCode::ZeroEntry);
  }
}

TEST_CASE("Nomura membership") {
  const SpinModel pent = make_pentagonal();
  CHECK(is_in_nomura(CMatrix::identity(5), pent));
  CHECK(is_in_nomura(pentagonal_a1(), pent));
  CHECK(is_in_nomura(pentagonal_a2(), pent));
  std::mt19937_64 rng(5);
  CHECK_FALSE(is_in_nomura(random_matrix(5, rng, true), pent));
  CHECK(code_of([&] { psi_image(random_matrix(5, rng, true), pent); }) == ErrorCode::NotInNomura);
}

TEST_CASE("psi on the standard members") {
  for (const SpinModel& m : {make_potts(3, -1, 0), make_potts(4, 1, 2), make_pentagonal()}) {
    const std::size_t n = m.n;
    CHECK(approx_equal(psi_image(CMatrix::identity(n), m), CMatrix::ones(n)));
    CHECK(approx_equal(psi_image(CMatrix::ones(n), m), static_cast<double>(n) * CMatrix::identity(n)));
    CHECK(approx_equal(psi_image(m.w_plus, m), m.d * m.w_minus));
    CHECK(approx_equal(psi_image(m.w_minus, m), m.d * m.w_plus));
  }
}

TEST_CASE("psi squared is n times transpose") {
  const SpinModel pent = make_pentagonal();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int k = 0; k < 20; ++k) {
    const CMatrix a = Complex(u(rng), u(rng)) * CMatrix::identity(5) + Complex(u(rng), u(rng)) * pentagonal_a1() +
                      Complex(u(rng), u(rng)) * pentagonal_a2();
    CHECK(max_abs_diff(psi_image(psi_image(a, pent), pent), 5.0 * a.transpose()) < kTolNum);
  }
}

TEST_CASE("row sums of a symmetric Nomura member give the dual modulus") {
  const SpinModel pent = make_pentagonal();
  const CMatrix ap = 2.0 * CMatrix::identity(5) + Complex(0.3, 1) * pentagonal_a1() - 0.5 * pentagonal_a2();
  const CMatrix am = psi_image(ap, pent) / Complex(pent.d);
  for (std::size_t y = 0; y < 5; ++y) {
    Complex sp = 0.0, sm = 0.0;
    for (std::size_t x = 0; x < 5; ++x) {
      sp += ap(y, x);
      sm += am(y, x);
    }
    CHECK(std::abs(sp / pent.d - am(0, 0)) < kTolNum);
    CHECK(std::abs(sm / pent.d - ap(0, 0)) < kTolNum);
  }
}

TEST_CASE("verify_spin_model accepts Potts and pentagonal") {
  const Complex xi = std::polar(1.0, kPi / 12);
  const SpinModel p = verify_spin_model(potts_matrix(3, xi), -std::sqrt(3.0));
  CHECK(std::abs(p.alpha_w - (-1.0 / (xi * xi * xi))) < kTolNum);
  CHECK(approx_equal(p.w_minus, hadamard_inverse(p.w_plus)));
  const SpinModel q = verify_spin_model(make_pentagonal().w_plus, std::sqrt(5.0));
  CHECK(std::abs(q.alpha_w - 1.0) < kTolNum);
}

TEST_CASE("verify_spin_model errors") {
  CHECK(code_of([] { verify_spin_model(CMatrix::ones(3), std::sqrt(3.0)); }) == ErrorCode::TypeIIIFailure);
  CHECK(code_of([] { verify_spin_model(make_pentagonal().w_plus, 2.0); }) == ErrorCode::BadLoopValue);
  CMatrix asym = make_pentagonal().w_plus;
  asym(0, 1) = 2.0;
  CHECK(code_of([&] { verify_spin_model(asym, std::sqrt(5.0)); }) == ErrorCode::NotSymmetric);
  CMatrix zero = CMatrix::ones(3);
  zero(0, 0) = 0.0;
  CHECK(code_of([&] { verify_spin_model(zero, std::sqrt(3.0)); }) == ErrorCode::ZeroEntry);
}

TEST_CASE("type III failure names the first failing pair") {
  try {
    verify_spin_model(CMatrix::ones(3), std::sqrt(3.0));
    FAIL("accepted J");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("(1,1)") != std::string::npos);
  }
}

TEST_CASE("complex literals") {
  CHECK(parse_complex("1.5") == Complex(1.5, 0));
  CHECK(parse_complex("-2+3i") == Complex(-2, 3));
  CHECK(parse_complex("1e-3-2.5e2i") == Complex(1e-3, -250));
  CHECK(parse_complex("4i") == Complex(0, 4));
  CHECK(parse_complex("-i") == Complex(0, -1));
  CHECK(code_of([] { parse_complex("1+"); }) == ErrorCode::SyntaxError);
  CHECK(code_of([] { parse_complex("abc"); }) == ErrorCode::SyntaxError);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int k = 0; k < 100; ++k) {
    const Complex z(u(rng), u(rng));
    CHECK(parse_complex(format_complex(z)) == z);
  }
}

TEST_CASE("matrix literals round-trip") {
  const CMatrix w = make_pentagonal().w_plus;
  CHECK(parse_matrix(format_matrix(w)).data().size() == 25);
  CHECK(max_abs_diff(parse_matrix(format_matrix(w)), w) == 0.0);
  CHECK(code_of([] { parse_matrix("matrix n=2\n1 2 3"); }) == ErrorCode::SyntaxError);
}
