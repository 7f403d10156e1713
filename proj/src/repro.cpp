#include "refspin/repro.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

namespace refspin {

SymmetricDiagram fixture_diagram(std::string_view name) {
  for (const auto& f : fixtures())
    if (f.name == name) return parse_sud(f.sud);
  throw Error(ErrorCode::Io, "no fixture named '" + std::string(name) + "'");
}

TaitGraph fixture_graph(std::string_view name) {
  const SymmetricDiagram d = fixture_diagram(name);
  return tait_graph(d, checkerboard(d).first);
}

TaitGraph iterated_sum(const TaitGraph& g, int k) {
  TaitGraph out = g;
  for (int j = 1; j < k; ++j) out = connected_sum(out, g, 0, 0);
  return out;
}

RefinedSpinModel potts_family_type_ii(int root) {
  const double d = -std::sqrt(3.0);
  const Complex disc(0.0, std::sqrt(3.0) * std::abs(d));
  const Complex b2 = (-3.0 * d + ((root / 2) % 2 == 0 ? disc : -disc)) / 6.0;
  const Complex b = (root % 2 == 0 ? 1.0 : -1.0) * std::sqrt(b2);
  return make_potts_family(b + d / b, b);
}

namespace {

using Clock = std::chrono::steady_clock;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// Random rational p/q with |p| <= 9 and 1 <= q <= 9.
double rational(std::mt19937_64& rng, bool nonzero = false) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
  int p = num(rng);
  while (nonzero && p == 0) p = num(rng);
  return static_cast<double>(p) / den(rng);
}

Complex pent_xi(int branch) {
  const Complex xi(0.0, std::sqrt((std::sqrt(5.0) - 1.0) / 2.0));
  return branch == 0 ? xi : -xi;
}

RefinedSpinModel pent_xi_model(int branch) {
  const Complex xi = pent_xi(branch);
  return make_pentagonal_family(-1.0 / (xi * xi * xi), xi, xi);
}

// Tracks the worst error of a batch of comparisons.
struct Tally {
  explicit Tally(double t) : tol(t) {}

  double tol;
  double worst = 0;
  int count = 0;
  int failed = 0;
  std::string first_failure;

  void check(Complex got, Complex want, const std::string& what) {
    const double err = std::abs(got - want);
    worst = std::max(worst, err);
    ++count;
    if (!(err <= tol)) {
      if (!failed) first_failure = what + ": got " + format_complex(got) + ", want " + format_complex(want);
      ++failed;
    }
  }
  void flag(bool ok, const std::string& what) {
    ++count;
    if (!ok) {
      if (!failed) first_failure = what;
      ++failed;
    }
  }
  void fill(CriterionResult& r) const {
    r.pass = failed == 0;
    r.detail = std::to_string(count) + " checks, max error " + fmt(worst);
    if (failed) r.detail += ", " + std::to_string(failed) + " failed; first: " + first_failure;
  }
};

Complex diagram_i(const SymmetricDiagram& d, const RefinedSpinModel& r, const EngineConfig& cfg) {
  return invariant_of_diagram(d, r, Method::Auto, cfg).i;
}

void potts_closed_forms(CriterionResult& res, const EngineConfig& cfg) {
  const auto d1 = fixture_diagram("d1042");
  const auto d2 = fixture_diagram("d1042p");
  const double d = -std::sqrt(3.0);
  std::mt19937_64 rng(1042);
  Tally t(res.tol);
  int done = 0;
  while (done < 20) {
    const double a = rational(rng, true), b = rational(rng);
    if (std::abs(a * (a + 2 * b)) <= 0.1) continue;
    const auto r = make_potts_family(a, b);
    const std::string at = "(a,b)=(" + fmt(a) + "," + fmt(b) + ")";
    t.check(diagram_i(d1, r, cfg), d * (a * a * a + 6 * a * a * b + 2 * b * b * b) / (a * (a + 2 * b) * (a + 2 * b)),
            "D1042 " + at);
    t.check(diagram_i(d2, r, cfg), 3 * a * d / (a + 2 * b), "D1042' " + at);
    ++done;
  }
  t.fill(res);
}

void point_values(CriterionResult& res, const EngineConfig& cfg) {
  const auto r = make_potts_family(1.0, 0.0);
  Tally t(res.tol);
  t.check(diagram_i(fixture_diagram("d1042"), r, cfg), -std::sqrt(3.0), "D1042 at (1,0)");
  t.check(diagram_i(fixture_diagram("d1042p"), r, cfg), -3 * std::sqrt(3.0), "D1042' at (1,0)");
  t.fill(res);
}

void pentagonal_values(CriterionResult& res, const EngineConfig& cfg) {
  const auto d1 = fixture_diagram("d89");
  const auto d2 = fixture_diagram("d89p");
  const double d = std::sqrt(5.0);
  std::mt19937_64 rng(89);
  Tally t(res.tol);
  for (int k = 0; k < 20; ++k) {
    const double b = rational(rng);
    const auto r = make_pentagonal_family(1.0, b, -b);
    t.check(diagram_i(d1, r, cfg), d * (4 * b * b + 1), "D89 at b=" + fmt(b));
    t.check(diagram_i(d2, r, cfg), 40 * b * b + d, "D89' at b=" + fmt(b));
  }
  int branches = 0;
  std::string branch_note;
  for (int branch = 0; branch < 2; ++branch) {
    const auto r = pent_xi_model(branch);
    const Complex i1 = diagram_i(d1, r, cfg), i2 = diagram_i(d2, r, cfg);
    const bool ok = std::abs(i1 - (-5 * d + 10)) <= res.tol && std::abs(i2 - (-5 * d - 10)) <= res.tol;
    branches += ok;
    branch_note += (branch ? ", " : "") + std::string(ok ? "match" : "no match");
  }
  t.flag(branches >= 1, "neither xi branch gives -5d+10 / -5d-10");
  t.fill(res);
  res.detail += "; xi branches: " + branch_note;
}

void model_axioms(CriterionResult& res, const EngineConfig&) {
  Tally t(res.tol);
  for (std::size_t n = 2; n <= 5; ++n)
    for (int s : {-1, 1})
      for (int c = 0; c < 4; ++c) {
        bool ok = true;
        try {
          make_potts(n, s, c);
        } catch (const Error&) {
          ok = false;
        }
        t.flag(ok, "Potts n=" + std::to_string(n) + " dsign=" + std::to_string(s) + " xi=" + std::to_string(c));
      }
  SpinModel pent;
  bool pent_ok = true;
  try {
    pent = verify_spin_model(make_pentagonal().w_plus, std::sqrt(5.0));
  } catch (const Error&) {
    pent_ok = false;
  }
  t.flag(pent_ok, "pentagonal");
  if (!pent_ok) {
    t.fill(res);
    return;
  }
  std::mt19937_64 rng(4);
  const SpinModel potts = make_potts(3, -1, 0);
  const CMatrix I3 = CMatrix::identity(3), J3 = CMatrix::ones(3);
  for (int k = 0; k < 10; ++k) {
    const double a = rational(rng, true), b = rational(rng);
    const CMatrix v = a * I3 + b * (J3 - I3);
    const CMatrix want = (a + 2 * b) * I3 + (a - b) * (J3 - I3);
    t.check(max_abs_diff(psi_image(v, potts), want), 0.0, "psi(V_ab)");
  }
  for (const CMatrix& m : {CMatrix::identity(5), CMatrix::ones(5), pent.w_plus, pentagonal_a1(), pentagonal_a2()}) {
    t.check(max_abs_diff(psi_image(psi_image(m, pent), pent), 5.0 * m.transpose()), 0.0, "psi^2 = n tau");
  }
  for (int k = 0; k < 10; ++k) {
    const double a = rational(rng, true), b = rational(rng), c = rational(rng);
    if (std::abs(a + 2 * b + 2 * c) < 0.1) {
      --k;
      continue;
    }
    t.check(make_pentagonal_family(a, b, c).alpha_vm, (a + 2 * b + 2 * c) / std::sqrt(5.0), "alpha(V-)");
  }
  t.fill(res);
}

std::vector<RefinedSpinModel> corpus_models() {
  const SpinModel potts = make_potts(3, -1, 0);
  const SpinModel pent = make_pentagonal();
  std::vector<RefinedSpinModel> out{
      make_refined(potts, potts.w_plus),
      make_refined(pent, pent.w_plus),
      make_potts_family(1.0, 0.0),
      make_potts_family(0.7, 0.3),
      make_potts_family(Complex(0.5, 0.25), -1.5),
      make_pentagonal_family(1.0, 0.4, -0.4),
      make_pentagonal_family(2.0, -0.3, 0.7),
      pent_xi_model(0),
  };
  for (int c = 0; c < 4; ++c) out.push_back(make_potts_refinement(potts, c));
  for (int c = 0; c < 4; ++c) out.push_back(make_potts_refinement(pent, c));
  return out;
}

void coloring_independence(CriterionResult& res, const EngineConfig& cfg) {
  Tally t(res.tol);
  const auto models = corpus_models();
  for (const auto& f : fixtures()) {
    const auto d = parse_sud(f.sud);
    for (std::size_t m = 0; m < models.size(); ++m) {
      const auto [c1, c2] = invariant_both_colorings(d, models[m], Method::Auto, cfg);
      t.check(c1.i, c2.i, f.name + " model " + std::to_string(m));
    }
  }
  t.fill(res);
}

void rewrite_soundness(CriterionResult& res, const EngineConfig& cfg) {
  Tally t(res.tol);
  const RefinedSpinModel type_ii = make_potts_refinement(make_potts(3, -1, 0), 0);
  const RefinedSpinModel plain = make_potts_family(0.7, 0.3);
  for (const auto& f : fixtures()) {
    const TaitGraph g = fixture_graph(f.name);
    const Complex i2 = normalized_invariant(g, type_ii, Method::Auto, cfg).i;
    const Complex i1 = normalized_invariant(g, plain, Method::Auto, cfg).i;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const int steps = 50;
      const std::string what = f.name + " seed " + std::to_string(seed);
      const TaitGraph h2 = random_equivalent(g, seed, steps, true);
      t.check(normalized_invariant(h2, type_ii, Method::Auto, cfg).i, i2, what + " (type II)");
      const TaitGraph h1 = random_equivalent(g, seed, steps, false);
      t.check(normalized_invariant(h1, plain, Method::Auto, cfg).i, i1, what);
    }
  }
  t.fill(res);
}

void gluing(CriterionResult& res, const EngineConfig& cfg) {
  Tally t(res.tol);
  const std::vector<RefinedSpinModel> models{make_potts_family(0.7, 0.3), make_potts_family(1.0, 0.0),
                                             make_pentagonal_family(1.0, 0.4, -0.4),
                                             make_pentagonal_family(2.0, -0.3, 0.7)};
  std::vector<TaitGraph> graphs;
  for (const auto& f : fixtures()) graphs.push_back(fixture_graph(f.name));
  std::mt19937_64 rng(7);
  for (const auto& r : models) {
    t.flag(is_translation_invariant(r), "model not translation invariant");
    std::vector<Complex> single;
    for (const auto& g : graphs) single.push_back(normalized_invariant(g, r, Method::Auto, cfg).i);
    for (std::size_t i = 0; i < graphs.size(); ++i)
      for (std::size_t j = 0; j < graphs.size(); ++j) {
        const int v1 = static_cast<int>(rng() % static_cast<std::uint64_t>(graphs[i].vertex_count));
        const int v2 = static_cast<int>(rng() % static_cast<std::uint64_t>(graphs[j].vertex_count));
        const TaitGraph glued = connected_sum(graphs[i], graphs[j], v1, v2);
        t.check(normalized_invariant(glued, r, Method::Auto, cfg).i, single[i] * single[j] / r.d(),
                graphs[i].name + " # " + graphs[j].name);
      }
  }
  const TaitGraph base = fixture_graph("d1042");
  for (const auto& r : models) {
    const Complex i1 = normalized_invariant(base, r, Method::Eliminate, cfg).i;
    for (int k = 1; k <= 10; ++k) {
      const Complex ik = normalized_invariant(iterated_sum(base, k), r, Method::Eliminate, cfg).i;
      t.check(ik, std::pow(i1, k) / std::pow(r.d(), k - 1), "#^" + std::to_string(k) + " D1042");
    }
  }
  t.fill(res);
}

TaitGraph random_graph(std::mt19937_64& rng, int max_n) {
  TaitGraph g;
  g.name = "random";
  g.vertex_count = static_cast<int>(1 + rng() % static_cast<std::uint64_t>(max_n));
  const int edges = static_cast<int>(rng() % 17);
  int axis = 0;
  for (int k = 0; k < edges; ++k) {
    TaitEdge e;
    e.u = static_cast<int>(rng() % static_cast<std::uint64_t>(g.vertex_count));
    e.v = static_cast<int>(rng() % static_cast<std::uint64_t>(g.vertex_count));
    e.sign = rng() % 2 ? Sign::Plus : Sign::Minus;
    e.location = rng() % 3 == 0 ? Location::Axis : Location::Off;
    axis += e.on_axis();
    g.edges.push_back(e);
  }
  g.p_b = axis ? static_cast<int>(rng() % static_cast<std::uint64_t>(axis + 1)) : 0;
  g.n_b = axis - g.p_b;
  return g;
}

void oracle_equivalence(CriterionResult& res, const EngineConfig& cfg) {
  Tally t(res.tol);
  std::mt19937_64 rng(8);
  const RefinedSpinModel m3 = make_potts_family(0.7, 0.3);
  const RefinedSpinModel m5 = make_pentagonal_family(2.0, -0.3, 0.7);
  for (int k = 0; k < 200; ++k) {
    const TaitGraph g = random_graph(rng, 8);
    const RefinedSpinModel& r = k % 2 ? m5 : m3;
    t.check(partition_eliminate(g, r, nullptr, cfg), partition_naive(g, r, cfg), "graph " + std::to_string(k));
  }
  t.fill(res);
}

void performance(CriterionResult& res, const EngineConfig& cfg) {
  const TaitGraph g = iterated_sum(fixture_graph("d1042"), 10);
  const RefinedSpinModel r = make_potts_family(0.7, 0.3);
  const auto start = Clock::now();
  int width = 0;
  const Complex z = partition_eliminate(g, r, nullptr, cfg, &width);
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  res.pass = secs < 1.0 && std::isfinite(z.real()) && std::isfinite(z.imag());
  res.detail = "N=" + std::to_string(g.vertex_count) + ", width " + std::to_string(width) + ", " + fmt(secs) +
               " s (naive would need 3^" + std::to_string(g.vertex_count) + " states)";
}

void type_ii_agreement(CriterionResult& res, const EngineConfig& cfg) {
  Tally t(res.tol);
  std::vector<RefinedSpinModel> models;
  for (int root = 0; root < 4; ++root) models.push_back(potts_family_type_ii(root));
  const SpinModel other_base = make_potts(3, -1, 1);
  for (int c = 0; c < 2; ++c) models.push_back(make_potts_refinement(other_base, c));
  const SpinModel pent = make_pentagonal();
  for (int c = 0; c < 4; ++c) models.push_back(make_potts_refinement(pent, c));
  const auto d1 = fixture_diagram("d1042");
  const auto d2 = fixture_diagram("d1042p");
  for (std::size_t k = 0; k < models.size(); ++k) {
    t.flag(models[k].type_ii, "model " + std::to_string(k) + " is not type II");
    t.check(diagram_i(d1, models[k], cfg), diagram_i(d2, models[k], cfg), "model " + std::to_string(k));
  }
  t.fill(res);
}

struct Spec {
  const char* title;
  double tol;
  void (*run)(CriterionResult&, const EngineConfig&);
};

const Spec kCriteria[] = {
    {"Potts family closed forms on D1042, D1042'", 1e-9, potts_closed_forms},
    {"point values -sqrt3 and -3sqrt3 at (a,b)=(1,0)", 1e-9, point_values},
    {"pentagonal family values on D89, D89'", 1e-6, pentagonal_values},
    {"model axioms, psi identities and moduli", 1e-9, model_axioms},
    {"coloring independence on the fixture corpus", 1e-9, coloring_independence},
    {"rewrite soundness under random equivalent graphs", 1e-9, rewrite_soundness},
    {"gluing and iterated connected sums", 1e-9, gluing},
    {"elimination agrees with enumeration", 1e-9, oracle_equivalence},
    {"elimination on #^10 D1042 under one second", 0, performance},
    {"type II refinements agree on D1042, D1042'", 1e-6, type_ii_agreement},
};

}  // namespace

std::vector<ReproRow> repro_table(const EngineConfig& cfg) {
  std::vector<ReproRow> rows;
  auto add = [&](std::string label, Complex value, Complex expected, double tol) {
    rows.push_back({std::move(label), value, expected, tol, std::abs(value - expected) <= tol});
  };
  const auto d1 = fixture_diagram("d1042"), d1p = fixture_diagram("d1042p");
  const auto d8 = fixture_diagram("d89"), d8p = fixture_diagram("d89p");
  const double s3 = -std::sqrt(3.0), s5 = std::sqrt(5.0);
  for (auto [a, b] : {std::pair{1.0, 0.0}, {2.0, 1.0}, {1.0, -0.25}, {-1.5, 2.0}}) {
    const auto r = make_potts_family(a, b);
    const std::string at = "(a,b)=(" + fmt(a) + "," + fmt(b) + ")";
    add("I(D1042)  " + at, diagram_i(d1, r, cfg),
        s3 * (a * a * a + 6 * a * a * b + 2 * b * b * b) / (a * (a + 2 * b) * (a + 2 * b)), 1e-9);
    add("I(D1042') " + at, diagram_i(d1p, r, cfg), 3 * a * s3 / (a + 2 * b), 1e-9);
  }
  for (double b : {0.0, 0.5, -1.25}) {
    const auto r = make_pentagonal_family(1.0, b, -b);
    add("I(D89)  a=1, b=-c=" + fmt(b), diagram_i(d8, r, cfg), s5 * (4 * b * b + 1), 1e-6);
    add("I(D89') a=1, b=-c=" + fmt(b), diagram_i(d8p, r, cfg), 40 * b * b + s5, 1e-6);
  }
  for (int branch = 0; branch < 2; ++branch) {
    const auto r = pent_xi_model(branch);
    const std::string at = std::string("a=-xi^-3, b=c=xi, xi=") + (branch ? "-" : "+") + "i*sqrt((sqrt5-1)/2)";
    add("I(D89)  " + at, diagram_i(d8, r, cfg), -5 * s5 + 10, 1e-6);
    add("I(D89') " + at, diagram_i(d8p, r, cfg), -5 * s5 - 10, 1e-6);
  }
  return rows;
}

CriterionResult run_criterion(int id, const EngineConfig& cfg) {
  if (id < 1 || id > static_cast<int>(std::size(kCriteria))) throw Error(ErrorCode::BadVertex, "no criterion " + std::to_string(id));
  const Spec& s = kCriteria[id - 1];
  CriterionResult res;
  res.id = id;
  res.title = s.title;
  res.tol = s.tol;
  const auto start = Clock::now();
  try {
    s.run(res, cfg);
  } catch (const Error& e) {
    res.pass = false;
    res.detail = std::string("error: ") + e.what();
  }
  res.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (res.seconds >= 60.0) {
    res.pass = false;
    res.detail += "; exceeded 60 s";
  }
  return res;
}

std::vector<CriterionResult> run_acceptance(const EngineConfig& cfg) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= static_cast<int>(std::size(kCriteria)); ++id) out.push_back(run_criterion(id, cfg));
  return out;
}

}  // namespace refspin
