#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "refspin/algebra.hpp"

namespace refspin {

/// (W+, V+, d) with V- = psi(V+)/d. Construct through make_refined.
struct RefinedSpinModel {
  SpinModel base;
  CMatrix v_plus;
  CMatrix v_minus;
  Complex alpha_vp;
  Complex alpha_vm;
  bool type_ii = false;

  std::size_t n() const noexcept { return base.n; }
  double d() const noexcept { return base.d; }
};

/// The four solutions of d = -xi^2 - xi^-2: xi^2 runs over the roots of
/// z^2 + d z + 1 = 0 ordered by argument in [0, 2pi), then +sqrt / -sqrt of
/// each (principal square root first). `choice` is taken mod 4.
Complex potts_xi(double d, int choice);

/// (-xi^-3) I + xi (J - I).
CMatrix potts_matrix(std::size_t n, Complex xi);

SpinModel make_potts(std::size_t n, int d_sign, int xi_choice);

/// Index of the Potts xi choice closest to `target` for the given d.
int potts_xi_choice_nearest(double d, Complex target);

/// The adjacency matrices A1 (cyclic distance 1) and A2 (cyclic distance 2) on 5 points.
CMatrix pentagonal_a1();
CMatrix pentagonal_a2();
SpinModel make_pentagonal();

RefinedSpinModel make_refined(const SpinModel& m, const CMatrix& v_plus);
RefinedSpinModel make_potts_refinement(const SpinModel& m, int xi_choice);

/// Refinement of Potts n=3, d=-sqrt(3), xi=e^{i pi/12} by a I + b (J - I).
RefinedSpinModel make_potts_family(Complex a, Complex b);
/// Refinement of the pentagonal model by a I + b A1 + c A2.
RefinedSpinModel make_pentagonal_family(Complex a, Complex b, Complex c);

/// True iff W+-, V+- are all invariant under the simultaneous shift a -> a+1 mod n.
bool is_translation_invariant(const RefinedSpinModel& r, double tol = kTolNum);
bool is_circulant(const CMatrix& a, double tol = kTolNum);

/// The shift permutation t(a) = a + 1 mod n.
struct ShiftMap {
  std::size_t n = 0;
  std::size_t operator()(std::size_t a) const noexcept { return (a + 1) % n; }
};

/// Model spec mini-language:
///   potts:n=3,dsign=-1,xi=0   pentagonal   potts-family:a=1,b=0
///   pent-family:a=1,b=2,c=-2  file:<path>
///   potts-refined:base=pentagonal,xi=0
///   potts-refined:base=potts,n=3,dsign=-1,bxi=0,xi=1
/// An unrefined base model is refined by V+ = W+. For potts-refined, `xi`
/// selects the refinement's Potts matrix and `bxi` the base Potts model's.
RefinedSpinModel parse_model_spec(std::string_view spec);

/// Model file: a `d=<real>` line, a `w_plus=` matrix block and optionally a
/// `v_plus=` matrix block (blocks in the matrix literal format).
RefinedSpinModel parse_model_file(std::string_view text);

}  // namespace refspin
