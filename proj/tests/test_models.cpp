#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "refspin/models.hpp"
#include "refspin/repro.hpp"

using namespace refspin;

namespace {

const double kPi = std::numbers::pi;

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

// P W P^T for the transposition of the first two indices.
CMatrix swap01(const CMatrix& w) {
  const std::size_t n = w.size();
  auto p = [](std::size_t i) -> std::size_t { return i == 0 ? 1 : i == 1 ? 0 : i; };
  CMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(p(i), p(j)) = w(i, j);
  return out;
}

}  // namespace

TEST_CASE("potts_xi solves d = -xi^2 - xi^-2") {
  for (double d : {-std::sqrt(3.0), std::sqrt(3.0), std::sqrt(2.0), -2.0, std::sqrt(5.0)})
    for (int c = 0; c < 4; ++c) {
      const Complex xi = potts_xi(d, c);
      CHECK(std::abs(-xi * xi - 1.0 / (xi * xi) - d) < kTolNum);
    }
  CHECK(std::abs(potts_xi(-std::sqrt(3.0), 0) - std::polar(1.0, kPi / 12)) < kTolNum);
  CHECK(potts_xi_choice_nearest(-std::sqrt(3.0), std::polar(1.0, kPi / 12)) == 0);
  // The pentagonal choice: xi^2 = (1 - sqrt5)/2 with the principal root.
  const Complex xp = potts_xi(std::sqrt(5.0), 0);
  CHECK(std::abs(xp - Complex(0, std::sqrt((std::sqrt(5.0) - 1) / 2))) < kTolNum);
}

TEST_CASE("make_potts n=3 with xi = e^{i pi/12}") {
  const SpinModel m = make_potts(3, -1, 0);
  CHECK(m.d == doctest::Approx(-std::sqrt(3.0)));
  CHECK(std::abs(m.w_plus(0, 0) - (-std::polar(1.0, -kPi / 4))) < kTolNum);
  CHECK(std::abs(m.w_plus(0, 1) - std::polar(1.0, kPi / 12)) < kTolNum);
  const Complex xi = std::polar(1.0, kPi / 12);
  CHECK(std::abs(m.alpha_w + 1.0 / (xi * xi * xi)) < kTolNum);
}

TEST_CASE("make_potts for every size, sign and choice") {
  for (std::size_t n = 2; n <= 5; ++n)
    for (int s : {-1, 1})
      for (int c = 0; c < 4; ++c) {
        const SpinModel m = make_potts(n, s, c);
        CHECK(m.d * m.d == doctest::Approx(static_cast<double>(n)));
        CHECK(is_circulant(m.w_plus));
      }
}

TEST_CASE("make_pentagonal matches the printed matrix") {
  const SpinModel m = make_pentagonal();
  const Complex omega = std::polar(1.0, 2 * kPi / 5);
  CHECK(m.n == 5);
  CHECK(m.d == doctest::Approx(std::sqrt(5.0)));
  CHECK(std::abs(m.w_plus(0, 1) - omega) < kTolNum);
  CHECK(std::abs(m.w_plus(0, 2) - 1.0 / omega) < kTolNum);
  CHECK(std::abs(m.alpha_w - 1.0) < kTolNum);
}

TEST_CASE("make_refined with V = I over Potts") {
  const auto r = make_refined(make_potts(3, -1, 0), CMatrix::identity(3));
  CHECK(std::abs(r.alpha_vp - 1.0) < kTolNum);
  CHECK(std::abs(r.alpha_vm - 1.0 / r.d()) < kTolNum);
  CHECK(approx_equal(r.v_minus, CMatrix::ones(3) / Complex(r.d())));
  CHECK_FALSE(r.type_ii);
}

TEST_CASE("make_refined with V = W reproduces the base model") {
  for (const SpinModel& m : {make_potts(3, -1, 0), make_pentagonal()}) {
    const auto r = make_refined(m, m.w_plus);
    CHECK(approx_equal(r.v_minus, m.w_minus));
    CHECK(r.type_ii);
  }
}

TEST_CASE("make_refined errors") {
  CMatrix asym = CMatrix::identity(3);
  asym(0, 1) = 1.0;
  CHECK(code_of([&] { make_refined(make_potts(3, -1, 0), asym); }) == ErrorCode::NotSymmetric);
  CHECK(code_of([] { make_refined(make_pentagonal(), CMatrix::identity(3)); }) == ErrorCode::DimensionMismatch);
  CMatrix other = CMatrix::identity(5);
  other(0, 1) = other(1, 0) = 1.0;
  CHECK(code_of([&] { make_refined(make_pentagonal(), other); }) == ErrorCode::NotInNomura);
  CHECK(code_of([] { make_pentagonal_family(0.0, 1.0, 2.0); }) == ErrorCode::ZeroModulus);
  CHECK(code_of([] { make_pentagonal_family(1.0, -0.25, -0.25); }) == ErrorCode::ZeroModulus);
}

TEST_CASE("Potts refinements are type II") {
  const SpinModel potts = make_potts(3, -1, 0);
  const SpinModel pent = make_pentagonal();
  for (int c = 0; c < 4; ++c) {
    for (const SpinModel* m : {&potts, &pent}) {
      const auto r = make_potts_refinement(*m, c);
      CHECK(r.type_ii);
      CHECK(std::abs(r.alpha_vp * r.alpha_vm - 1.0) < kTolNum);
    }
  }
}

TEST_CASE("make_potts_family") {
  SUBCASE("(1,0)") {
    const auto r = make_potts_family(1.0, 0.0);
    CHECK(std::abs(r.alpha_vp - 1.0) < kTolNum);
    CHECK(std::abs(r.alpha_vm - 1.0 / r.d()) < kTolNum);
  }
  SUBCASE("psi formula at random points") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-2, 2);
    const CMatrix I = CMatrix::identity(3), J = CMatrix::ones(3);
    for (int k = 0; k < 20; ++k) {
      const Complex a(u(rng), u(rng)), b(u(rng), u(rng));
      const auto r = make_potts_family(a, b);
      CHECK(max_abs_diff(r.d() * r.v_minus, (a + 2.0 * b) * I + (a - b) * (J - I)) < kTolNum);
    }
  }
  SUBCASE("(0,1) has zero modulus") {
    CHECK(code_of([] { make_potts_family(0.0, 1.0); }) == ErrorCode::ZeroModulus);
  }
  SUBCASE("type II exactly at the solutions") {
    for (int root = 0; root < 4; ++root) CHECK(potts_family_type_ii(root).type_ii);
    CHECK_FALSE(make_potts_family(0.7, 0.3).type_ii);
    CHECK_FALSE(make_potts_family(1.0, 0.0).type_ii);
  }
}

TEST_CASE("make_pentagonal_family") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int k = 0; k < 20; ++k) {
    const double a = u(rng), b = u(rng), c = u(rng);
    if (std::abs(a * (a + 2 * b + 2 * c)) < 0.05) continue;
    const auto r = make_pentagonal_family(a, b, c);
    CHECK(std::abs(r.alpha_vp - a) < kTolNum);
    CHECK(std::abs(r.alpha_vm - (a + 2 * b + 2 * c) / std::sqrt(5.0)) < kTolNum);
  }
  CHECK(std::abs(make_pentagonal_family(1.0, 0.6, -0.6).alpha_vm - 1.0 / std::sqrt(5.0)) < kTolNum);
  const Complex xi = potts_xi(std::sqrt(5.0), 0);
  const auto fam = make_pentagonal_family(-1.0 / (xi * xi * xi), xi, xi);
  const auto pot = make_potts_refinement(make_pentagonal(), 0);
  CHECK(approx_equal(fam.v_plus, pot.v_plus));
  CHECK(approx_equal(fam.v_minus, pot.v_minus));
  CHECK(fam.type_ii);
}

TEST_CASE("translation invariance") {
  CHECK(is_translation_invariant(make_potts_family(0.4, -1.2)));
  CHECK(is_translation_invariant(make_pentagonal_family(1.0, 0.3, 0.2)));
  const SpinModel swapped = verify_spin_model(swap01(make_pentagonal().w_plus), std::sqrt(5.0));
  CHECK_FALSE(is_translation_invariant(make_refined(swapped, swapped.w_plus)));
  const ShiftMap t{5};
  CHECK(t(4) == 0);
  CHECK(t(2) == 3);
}

TEST_CASE("model specs") {
  SUBCASE("shorthands") {
    const auto p = parse_model_spec("potts:n=3");
    CHECK(std::abs(p.base.w_plus(0, 1) - std::polar(1.0, kPi / 12)) < kTolNum);
    CHECK(p.type_ii);
    CHECK(parse_model_spec("pentagonal").n() == 5);
    CHECK(parse_model_spec("potts:n=4,dsign=1,xi=3").d() == doctest::Approx(2.0));
    const auto f = parse_model_spec("potts-family:a=1,b=0");
    CHECK(std::abs(f.alpha_vm - 1.0 / f.d()) < kTolNum);
    const auto g = parse_model_spec("pent-family:a=1,b=2,c=-2");
    CHECK(std::abs(g.alpha_vm - 1.0 / std::sqrt(5.0)) < kTolNum);
    CHECK(parse_model_spec("potts-refined:base=pentagonal,xi=0").type_ii);
    CHECK(parse_model_spec("potts-refined:base=potts,n=3,dsign=-1,bxi=1,xi=2").type_ii);
    CHECK(std::abs(parse_model_spec("potts-family:a=1+2i,b=-0.5i").alpha_vp - Complex(1, 2)) < kTolNum);
  }
  SUBCASE("errors") {
    CHECK(code_of([] { parse_model_spec("ising"); }) == ErrorCode::BadModelSpec);
    CHECK(code_of([] { parse_model_spec("potts:n=3,q=2"); }) == ErrorCode::BadModelSpec);
    CHECK(code_of([] { parse_model_spec("potts:n=1"); }) == ErrorCode::BadModelSpec);
    CHECK(code_of([] { parse_model_spec("potts-family:a=x"); }) == ErrorCode::BadModelSpec);
    CHECK(code_of([] { parse_model_spec("potts-family:a=0,b=1"); }) == ErrorCode::ZeroModulus);
    CHECK(code_of([] { parse_model_spec("file:/nonexistent/model.txt"); }) == ErrorCode::Io);
  }
  SUBCASE("model file") {
    const auto path = std::filesystem::temp_directory_path() / "refspin_model_test.txt";
    {
      std::ofstream out(path);
      out << "# pentagonal with a refinement\nd=2.2360679774997898\nw_plus=\n"
          << format_matrix(make_pentagonal().w_plus) << "v_plus=\n"
          << format_matrix(CMatrix::identity(5) + 0.5 * pentagonal_a1());
    }
    const auto r = parse_model_spec("file:" + path.string());
    CHECK(r.n() == 5);
    CHECK(std::abs(r.alpha_vm - 2.0 / std::sqrt(5.0)) < kTolNum);
    std::filesystem::remove(path);
  }
}
