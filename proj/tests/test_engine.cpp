#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include "refspin/engine.hpp"
#include "refspin/repro.hpp"

using namespace refspin;

namespace {

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

Complex matrix_sum(const CMatrix& m) {
  Complex s = 0.0;
  for (Complex z : m.data()) s += z;
  return s;
}

TaitGraph graph(int n, std::vector<TaitEdge> edges, int pb = -1, int nb = -1) {
  TaitGraph g;
  g.name = "t";
  g.vertex_count = n;
  g.edges = std::move(edges);
  int p = 0, q = 0;
  for (const auto& e : g.edges)
    if (e.on_axis()) ++(e.sign == Sign::Plus ? q : p);
  g.p_b = pb < 0 ? p : pb;
  g.n_b = nb < 0 ? q : nb;
  return g;
}

// A random connected signed graph with a few axis edges.
TaitGraph random_graph(std::mt19937_64& rng, int n, int extra) {
  std::vector<TaitEdge> edges;
  auto vert = [&](int hi) { return std::uniform_int_distribution<int>(0, hi)(rng); };
  auto sign = [&] { return vert(1) ? Sign::Plus : Sign::Minus; };
  auto loc = [&] { return vert(3) == 0 ? Location::Axis : Location::Off; };
  for (int v = 1; v < n; ++v) edges.push_back({v, vert(v - 1), sign(), loc()});
  for (int k = 0; k < extra; ++k) edges.push_back({vert(n - 1), vert(n - 1), sign(), loc()});
  return graph(n, edges);
}

Complex value_i(const TaitGraph& g, const RefinedSpinModel& r) { return normalized_invariant(g, r).i; }

const RefinedSpinModel& potts3() {
  static const RefinedSpinModel r = parse_model_spec("potts:n=3");
  return r;
}

}  // namespace

TEST_CASE("single vertex gives n/d") {
  const TaitGraph g = graph(1, {});
  const auto v = normalized_invariant(g, potts3());
  CHECK(std::abs(v.z - (-std::sqrt(3.0))) < kTolNum);
  CHECK(std::abs(v.i - v.z) < kTolNum);
  const auto pent = parse_model_spec("pentagonal");
  CHECK(std::abs(normalized_invariant(g, pent).i - std::sqrt(5.0)) < kTolNum);
}

TEST_CASE("two vertices joined by one edge") {
  const auto& r = potts3();
  const double d = r.d();
  SUBCASE("off the axis") {
    const TaitGraph g = graph(2, {{0, 1, Sign::Plus, Location::Off}});
    const Complex z = normalized_invariant(g, r, Method::Naive).z;
    CHECK(std::abs(z - matrix_sum(r.base.w_plus) / (d * d)) < kTolNum);
    // W+ has row sums d / alpha_W, so Z = n / alpha_W / d.
    CHECK(std::abs(z - 3.0 / r.base.alpha_w / d) < kTolNum);
    CHECK(std::abs(z - Complex(1.224744871391589, 1.224744871391589)) < 1e-12);
  }
  SUBCASE("on the axis") {
    const Complex a(0.7, 0.1), b(0.3, -0.2);
    const auto rf = make_potts_family(a, b);
    const TaitGraph g = graph(2, {{0, 1, Sign::Plus, Location::Axis}});
    const auto v = normalized_invariant(g, rf);
    CHECK(std::abs(v.z - (a + 2.0 * b)) < kTolNum);
    CHECK(std::abs(v.i - v.z / rf.alpha_vm) < kTolNum);
  }
}

TEST_CASE("I carries the axis counts") {
  const auto rf = make_potts_family(Complex(0.7, 0.1), Complex(0.3, -0.2));
  std::mt19937_64 rng(7);
  for (int k = 0; k < 10; ++k) {
    TaitGraph g = random_graph(rng, 5, 4);
    const auto base = normalized_invariant(g, rf);
    g.p_b += 2;
    g.n_b += 1;
    const auto v = normalized_invariant(g, rf);
    CHECK(std::abs(v.z - base.z) < kTolNum);
    CHECK(std::abs(v.i - base.i / (rf.alpha_vp * rf.alpha_vp * rf.alpha_vm)) < kTolNum * std::abs(v.i) + kTolNum);
  }
}

TEST_CASE("naive and elimination agree on random graphs") {
  const RefinedSpinModel models[] = {potts3(), make_potts_family(0.7, 0.3), make_pentagonal_family(1.0, 0.3, -0.2)};
  std::mt19937_64 rng(19);
  for (const auto& r : models)
    for (int k = 0; k < 15; ++k) {
      const TaitGraph g = random_graph(rng, 2 + k % 6, k % 7);
      const Complex a = partition_naive(g, r);
      const Complex b = partition_eliminate(g, r);
      CHECK(std::abs(a - b) < kTolNum * (1 + std::abs(a)));
    }
}

TEST_CASE("elimination width") {
  std::vector<TaitEdge> path;
  for (int v = 1; v < 50; ++v) path.push_back({v - 1, v, v % 2 ? Sign::Plus : Sign::Minus, Location::Off});
  const TaitGraph g = graph(50, path);
  const auto ord = min_degree_order(g);
  CHECK(ord.order.size() == 50);
  CHECK(ord.width <= 2);
  int width = -1;
  partition_eliminate(g, potts3(), &ord, {}, &width);
  CHECK(width <= 2);
  const auto v = normalized_invariant(g, potts3(), Method::Eliminate);
  CHECK(v.method == Method::Eliminate);
  CHECK(v.width <= 2);
}

TEST_CASE("a supplied order gives the same value") {
  const TaitGraph g = fixture_graph("d1042");
  EliminationOrder rev = min_degree_order(g);
  std::reverse(rev.order.begin(), rev.order.end());
  const Complex a = partition_eliminate(g, potts3());
  const Complex b = partition_eliminate(g, potts3(), &rev);
  CHECK(std::abs(a - b) < kTolNum);
}

TEST_CASE("pinned sums") {
  const auto& r = potts3();
  const TaitGraph one = graph(1, {});
  for (std::size_t a = 0; a < 3; ++a) CHECK(std::abs(pinned_sum(one, r, 0, a) - 1.0) < kTolNum);
  const TaitGraph g = fixture_graph("d1042");
  Complex total = 0.0;
  for (std::size_t a = 0; a < 3; ++a) {
    const Complex p = pinned_sum(g, r, 0, a);
    CHECK(std::abs(p - pinned_sum(g, r, 0, 0)) < kTolNum);
    CHECK(std::abs(p - pinned_sum(g, r, 4, a, Method::Naive)) < kTolNum);
    total += p;
  }
  const double dn = std::pow(r.d(), g.vertex_count);
  CHECK(std::abs(total - dn * normalized_invariant(g, r).z) < kTolNum * std::abs(total));
  CHECK(code_of([&] { pinned_sum(g, r, 99, 0); }) == ErrorCode::BadVertex);
}

TEST_CASE("resource limits") {
  const auto& r = potts3();
  std::vector<TaitEdge> k5;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) k5.push_back({i, j, Sign::Plus, Location::Off});
  const TaitGraph g = graph(5, k5);
  EngineConfig tight;
  tight.enum_cap = 100;
  CHECK(code_of([&] { partition_naive(g, r, tight); }) == ErrorCode::TooLarge);
  EngineConfig narrow;
  narrow.arity_cap = 3;
  CHECK(code_of([&] { partition_eliminate(g, r, nullptr, narrow); }) == ErrorCode::WidthOverflow);
  SUBCASE("auto falls back to naive") {
    const auto v = normalized_invariant(g, r, Method::Auto, narrow);
    CHECK(v.method == Method::Naive);
    CHECK(std::abs(v.z - partition_naive(g, r)) < kTolNum);
  }
  SUBCASE("the state cap applies per component") {
    EngineConfig cap;
    cap.enum_cap = 3 * 3 * 3;
    const TaitGraph two = disjoint_union(graph(3, {{0, 1, Sign::Plus, Location::Off}, {1, 2, Sign::Minus, Location::Off}}),
                                         graph(3, {{0, 2, Sign::Plus, Location::Off}}));
    CHECK_NOTHROW(partition_naive(two, r, cap));
  }
}

TEST_CASE("disconnected graphs multiply") {
  const auto r = make_pentagonal_family(1.0, 0.3, -0.2);
  const TaitGraph a = fixture_graph("d89"), b = fixture_graph("plat4_twist3");
  const Complex za = normalized_invariant(a, r).z, zb = normalized_invariant(b, r).z;
  const auto u = normalized_invariant(disjoint_union(a, b), r);
  CHECK(std::abs(u.z - za * zb) < kTolNum * (1 + std::abs(u.z)));
  const auto n = normalized_invariant(disjoint_union(graph(2, {{0, 1, Sign::Plus, Location::Off}}), graph(1, {})), r,
                                      Method::Naive);
  CHECK(std::abs(n.z - normalized_invariant(graph(2, {{0, 1, Sign::Plus, Location::Off}}), r).z * std::sqrt(5.0)) <
        kTolNum);
}

TEST_CASE("thread count does not change the naive sum") {
  const TaitGraph g = fixture_graph("d1042");
  const auto& r = potts3();
  EngineConfig one, many;
  one.threads = 1;
  many.threads = 7;
  CHECK(one.worker_count() == 1);
  CHECK(many.worker_count() == 7);
  const Complex a = partition_naive(g, r, one), b = partition_naive(g, r, many);
  CHECK(std::abs(a - b) < kTolNum * (1 + std::abs(a)));
}

TEST_CASE("method names") {
  for (Method m : {Method::Naive, Method::Eliminate, Method::Auto}) CHECK(parse_method(to_string(m)) == m);
  CHECK(code_of([] { parse_method("fast"); }) == ErrorCode::SyntaxError);
}

TEST_CASE("both colorings agree on the corpus") {
  const RefinedSpinModel models[] = {potts3(), make_potts_family(0.7, 0.3), make_pentagonal_family(1.0, 0.3, -0.2)};
  for (const auto& r : models)
    for (const auto& f : fixtures()) {
      const auto d = parse_sud(f.sud);
      const auto [c1, c2] = invariant_both_colorings(d, r);
      CHECK_MESSAGE(std::abs(c1.i - c2.i) < kTolNum * (1 + std::abs(c1.i)), f.name);
    }
}

TEST_CASE("coloring mismatch is reported") {
  const auto d = fixture_diagram("d89");
  CHECK(code_of([&] { invariant_of_diagram(d, potts3(), Method::Auto, {}, -1.0); }) == ErrorCode::ColoringMismatch);
}

TEST_CASE("D1042 against its sibling") {
  const TaitGraph a = fixture_graph("d1042"), b = fixture_graph("d1042p");
  // A type II refinement cannot separate the pair.
  const auto& r = potts3();
  CHECK(std::abs(value_i(a, r) - value_i(b, r)) < kTolNum);
  CHECK(std::abs(value_i(a, r) - Complex(0, -3)) < kTolNum);
  // The identity refinement over the Potts base does.
  const auto m10 = make_potts_family(1.0, 0.0);
  CHECK(std::abs(value_i(a, m10) - (-std::sqrt(3.0))) < kTolNum);
  CHECK(std::abs(value_i(b, m10) - (-3 * std::sqrt(3.0))) < kTolNum);
}
