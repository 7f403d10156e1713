#include "refspin/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>
#include <thread>

namespace refspin {

int EngineConfig::worker_count() const {
  if (threads > 0) return threads;
  if (const char* env = std::getenv("REFSPIN_THREADS")) {
    const int t = std::atoi(env);
    if (t > 0) return t;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::Naive: return "naive";
    case Method::Eliminate: return "eliminate";
    case Method::Auto: return "auto";
  }
  return "?";
}

Method parse_method(std::string_view text) {
  if (text == "naive") return Method::Naive;
  if (text == "eliminate") return Method::Eliminate;
  if (text == "auto") return Method::Auto;
  throw Error(ErrorCode::SyntaxError, "unknown method '" + std::string(text) + "'");
}

const CMatrix& edge_weight(const TaitEdge& e, const RefinedSpinModel& r) {
  if (e.on_axis()) return e.sign == Sign::Plus ? r.v_plus : r.v_minus;
  return e.sign == Sign::Plus ? r.base.w_plus : r.base.w_minus;
}

namespace {

void check_vertices(const TaitGraph& g) {
  for (const auto& e : g.edges)
    if (e.u < 0 || e.u >= g.vertex_count || e.v < 0 || e.v >= g.vertex_count)
      throw Error(ErrorCode::BadVertex, "edge endpoint outside 0.." + std::to_string(g.vertex_count - 1));
}

struct LocalEdge {
  int u, v;
  const CMatrix* w;
};

// Sum over colorings of `vars` local vertices of the edge-weight product;
// state k is split across workers in contiguous blocks.
Complex enumerate(int vars, const std::vector<LocalEdge>& edges, std::size_t n, int workers, int pinned = -1,
                  std::size_t pinned_value = 0) {
  const int free_vars = vars - (pinned >= 0 ? 1 : 0);
  std::size_t total = 1;
  for (int k = 0; k < free_vars; ++k) total *= n;
  workers = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(std::max(1, workers)), total));
  auto block = [&](std::size_t lo, std::size_t hi) {
    std::vector<std::size_t> sigma(static_cast<std::size_t>(vars), 0);
    std::vector<int> free_index;
    for (int v = 0; v < vars; ++v)
      if (v != pinned) free_index.push_back(v);
    std::size_t rest = lo;
    for (int f : free_index) {
      sigma[static_cast<std::size_t>(f)] = rest % n;
      rest /= n;
    }
    if (pinned >= 0) sigma[static_cast<std::size_t>(pinned)] = pinned_value;
    Complex sum = 0.0;
    for (std::size_t k = lo; k < hi; ++k) {
      Complex prod = 1.0;
      for (const auto& e : edges) prod *= (*e.w)(sigma[static_cast<std::size_t>(e.u)], sigma[static_cast<std::size_t>(e.v)]);
      sum += prod;
      for (int f : free_index) {
        auto& s = sigma[static_cast<std::size_t>(f)];
        if (++s < n) break;
        s = 0;
      }
    }
    return sum;
  };
  if (workers == 1) return block(0, total);
  std::vector<Complex> partial(static_cast<std::size_t>(workers));
  std::vector<std::thread> pool;
  const std::size_t chunk = (total + static_cast<std::size_t>(workers) - 1) / static_cast<std::size_t>(workers);
  for (int t = 0; t < workers; ++t) {
    const std::size_t lo = std::min(total, chunk * static_cast<std::size_t>(t));
    const std::size_t hi = std::min(total, lo + chunk);
    pool.emplace_back([&, t, lo, hi] { partial[static_cast<std::size_t>(t)] = block(lo, hi); });
  }
  for (auto& th : pool) th.join();
  Complex sum = 0.0;
  for (const auto& p : partial) sum += p;
  return sum;
}

// Per component: local vertex numbering and edges.
struct Piece {
  std::vector<int> vertices;
  std::vector<LocalEdge> edges;
};

std::vector<Piece> split(const TaitGraph& g, const RefinedSpinModel& r) {
  const auto comp = vertex_components(g);
  const int count = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  std::vector<Piece> pieces(static_cast<std::size_t>(count));
  std::vector<int> local(static_cast<std::size_t>(g.vertex_count));
  for (int v = 0; v < g.vertex_count; ++v) {
    auto& p = pieces[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])];
    local[static_cast<std::size_t>(v)] = static_cast<int>(p.vertices.size());
    p.vertices.push_back(v);
  }
  for (const auto& e : g.edges) {
    pieces[static_cast<std::size_t>(comp[static_cast<std::size_t>(e.u)])].edges.push_back(
        {local[static_cast<std::size_t>(e.u)], local[static_cast<std::size_t>(e.v)], &edge_weight(e, r)});
  }
  return pieces;
}

void check_cap(std::size_t n, std::size_t vars, const EngineConfig& cfg) {
  const double states = std::pow(static_cast<double>(n), static_cast<double>(vars));
  if (states > cfg.enum_cap) {
    throw Error(ErrorCode::TooLarge, std::to_string(n) + "^" + std::to_string(vars) + " states exceed the enumeration cap");
  }
}

struct Factor {
  std::vector<int> vars;  // sorted; vars[0] is the most significant digit
  std::vector<Complex> table;
};

// Sums out every variable of the factor graph. `clamp` fixes one vertex to a
// color and removes it from the variable set.
Complex eliminate(const TaitGraph& g, const RefinedSpinModel& r, const EliminationOrder* given, const EngineConfig& cfg,
                  int* width_out, double* states_out, std::optional<std::pair<int, std::size_t>> clamp) {
  const std::size_t n = r.n();
  std::vector<Factor> factors;
  Complex scalar = 1.0;
  for (const auto& e : g.edges) {
    const CMatrix& w = edge_weight(e, r);
    const bool cu = clamp && e.u == clamp->first;
    const bool cv = clamp && e.v == clamp->first;
    if (cu && cv) {
      scalar *= w(clamp->second, clamp->second);
    } else if (cu || cv) {
      Factor f{{cu ? e.v : e.u}, std::vector<Complex>(n)};
      for (std::size_t x = 0; x < n; ++x) f.table[x] = cu ? w(clamp->second, x) : w(x, clamp->second);
      factors.push_back(std::move(f));
    } else if (e.u == e.v) {
      Factor f{{e.u}, std::vector<Complex>(n)};
      for (std::size_t x = 0; x < n; ++x) f.table[x] = w(x, x);
      factors.push_back(std::move(f));
    } else {
      Factor f{{std::min(e.u, e.v), std::max(e.u, e.v)}, std::vector<Complex>(n * n)};
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) f.table[x * n + y] = e.u < e.v ? w(x, y) : w(y, x);
      factors.push_back(std::move(f));
    }
  }

  const std::size_t nv = static_cast<std::size_t>(g.vertex_count);
  std::vector<bool> done(nv, false);
  if (clamp) done[static_cast<std::size_t>(clamp->first)] = true;
  std::vector<bool> alive(factors.size(), true);
  std::vector<std::vector<std::size_t>> var_factors(nv);
  std::vector<std::set<int>> nb(nv);
  auto attach = [&](std::size_t id) {
    const auto& vars = factors[id].vars;
    for (int v : vars) {
      var_factors[static_cast<std::size_t>(v)].push_back(id);
      for (int w : vars)
        if (w != v) nb[static_cast<std::size_t>(v)].insert(w);
    }
  };
  for (std::size_t id = 0; id < factors.size(); ++id) attach(id);
  int width = 0;
  double states = 0;

  auto eliminate_one = [&](int x) {
    const std::size_t xs = static_cast<std::size_t>(x);
    std::vector<int> scope(nb[xs].begin(), nb[xs].end());
    scope.insert(std::lower_bound(scope.begin(), scope.end(), x), x);
    const int arity = static_cast<int>(scope.size());
    if (arity > cfg.arity_cap) {
      throw Error(ErrorCode::WidthOverflow, "eliminating vertex " + std::to_string(x) + " needs a factor over " +
                                                std::to_string(arity) + " variables (cap " +
                                                std::to_string(cfg.arity_cap) + ")");
    }
    width = std::max(width, arity);
    std::vector<std::size_t> touched;
    for (std::size_t id : var_factors[xs])
      if (alive[id]) {
        touched.push_back(id);
        alive[id] = false;
      }
    var_factors[xs].clear();
    done[xs] = true;
    for (int u : nb[xs]) {
      auto& s = nb[static_cast<std::size_t>(u)];
      s.erase(x);
      for (int w : nb[xs])
        if (w != u) s.insert(w);
    }
    nb[xs].clear();

    // Position of each touched factor's variables inside the scope.
    std::vector<std::vector<std::size_t>> pos(touched.size());
    for (std::size_t t = 0; t < touched.size(); ++t)
      for (int v : factors[touched[t]].vars)
        pos[t].push_back(static_cast<std::size_t>(std::lower_bound(scope.begin(), scope.end(), v) - scope.begin()));
    const std::size_t xpos = static_cast<std::size_t>(std::lower_bound(scope.begin(), scope.end(), x) - scope.begin());

    Factor out;
    for (int v : scope)
      if (v != x) out.vars.push_back(v);
    std::size_t out_size = 1;
    for (std::size_t k = 0; k < out.vars.size(); ++k) out_size *= n;
    out.table.assign(out_size, 0.0);

    std::vector<std::size_t> digit(scope.size(), 0);
    const std::size_t total = out_size * n;
    states += static_cast<double>(total);
    for (std::size_t k = 0; k < total; ++k) {
      Complex prod = 1.0;
      for (std::size_t t = 0; t < touched.size(); ++t) {
        std::size_t idx = 0;
        for (std::size_t p : pos[t]) idx = idx * n + digit[p];
        prod *= factors[touched[t]].table[idx];
      }
      std::size_t oidx = 0;
      for (std::size_t p = 0; p < scope.size(); ++p)
        if (p != xpos) oidx = oidx * n + digit[p];
      out.table[oidx] += prod;
      for (std::size_t p = scope.size(); p-- > 0;) {
        if (++digit[p] < n) break;
        digit[p] = 0;
      }
    }
    for (std::size_t id : touched) factors[id].table = {};
    if (out.vars.empty()) {
      scalar *= out.table[0];
    } else {
      factors.push_back(std::move(out));
      alive.push_back(true);
      attach(factors.size() - 1);
    }
  };

  if (given) {
    for (int x : given->order) {
      if (x < 0 || x >= g.vertex_count) throw Error(ErrorCode::BadVertex, "elimination order names vertex " + std::to_string(x));
      if (!done[static_cast<std::size_t>(x)]) eliminate_one(x);
    }
  }
  // Min-degree on whatever is left (everything when no order is given).
  while (true) {
    int best = -1;
    for (int v = 0; v < g.vertex_count; ++v)
      if (!done[static_cast<std::size_t>(v)] &&
          (best < 0 || nb[static_cast<std::size_t>(v)].size() < nb[static_cast<std::size_t>(best)].size()))
        best = v;
    if (best < 0) break;
    eliminate_one(best);
  }
  if (width_out) *width_out = width;
  if (states_out) *states_out = states;
  return scalar;
}

}  // namespace

Complex partition_naive(const TaitGraph& g, const RefinedSpinModel& r, const EngineConfig& cfg) {
  check_vertices(g);
  const auto pieces = split(g, r);
  for (const auto& p : pieces) check_cap(r.n(), p.vertices.size(), cfg);
  Complex z = 1.0;
  for (const auto& p : pieces) {
    const Complex s = enumerate(static_cast<int>(p.vertices.size()), p.edges, r.n(), cfg.worker_count());
    z *= s * std::pow(r.d(), -static_cast<double>(p.vertices.size()));
  }
  return z;
}

EliminationOrder min_degree_order(const TaitGraph& g) {
  check_vertices(g);
  std::vector<std::set<int>> adj(static_cast<std::size_t>(g.vertex_count));
  for (const auto& e : g.edges) {
    if (e.u == e.v) continue;
    adj[static_cast<std::size_t>(e.u)].insert(e.v);
    adj[static_cast<std::size_t>(e.v)].insert(e.u);
  }
  EliminationOrder out;
  std::vector<bool> done(static_cast<std::size_t>(g.vertex_count), false);
  for (int step = 0; step < g.vertex_count; ++step) {
    int best = -1;
    for (int v = 0; v < g.vertex_count; ++v)
      if (!done[static_cast<std::size_t>(v)] &&
          (best < 0 || adj[static_cast<std::size_t>(v)].size() < adj[static_cast<std::size_t>(best)].size()))
        best = v;
    const auto nb = adj[static_cast<std::size_t>(best)];
    out.width = std::max(out.width, static_cast<int>(nb.size()) + 1);
    for (int a : nb) {
      adj[static_cast<std::size_t>(a)].erase(best);
      for (int b : nb)
        if (a != b) adj[static_cast<std::size_t>(a)].insert(b);
    }
    adj[static_cast<std::size_t>(best)].clear();
    done[static_cast<std::size_t>(best)] = true;
    out.order.push_back(best);
  }
  return out;
}

Complex partition_eliminate(const TaitGraph& g, const RefinedSpinModel& r, const EliminationOrder* order,
                            const EngineConfig& cfg, int* width, double* n_states) {
  check_vertices(g);
  const Complex sum = eliminate(g, r, order, cfg, width, n_states, std::nullopt);
  return sum * std::pow(r.d(), -static_cast<double>(g.vertex_count));
}

InvariantValue normalized_invariant(const TaitGraph& g, const RefinedSpinModel& r, Method method,
                                    const EngineConfig& cfg) {
  InvariantValue out;
  auto naive = [&] {
    out.z = partition_naive(g, r, cfg);
    out.method = Method::Naive;
    out.width = 0;
    out.n_states = 0;
    for (const auto& p : split(g, r)) out.n_states += std::pow(static_cast<double>(r.n()), static_cast<double>(p.vertices.size()));
  };
  auto elim = [&] {
    out.z = partition_eliminate(g, r, nullptr, cfg, &out.width, &out.n_states);
    out.method = Method::Eliminate;
  };
  if (method == Method::Naive) naive();
  else if (method == Method::Eliminate) elim();
  else {
    try {
      elim();
    } catch (const Error& e) {
      if (e.code() != ErrorCode::WidthOverflow) throw;
      naive();
    }
  }
  out.i = std::pow(r.alpha_vp, -g.p_b) * std::pow(r.alpha_vm, -g.n_b) * out.z;
  return out;
}

Complex pinned_sum(const TaitGraph& g, const RefinedSpinModel& r, int v0, std::size_t a, Method method,
                   const EngineConfig& cfg) {
  check_vertices(g);
  if (v0 < 0 || v0 >= g.vertex_count) throw Error(ErrorCode::BadVertex, "v0 = " + std::to_string(v0));
  if (a >= r.n()) throw Error(ErrorCode::DimensionMismatch, "color " + std::to_string(a) + " outside the index set");
  auto naive = [&] {
    check_cap(r.n(), static_cast<std::size_t>(g.vertex_count - 1), cfg);
    std::vector<LocalEdge> edges;
    for (const auto& e : g.edges) edges.push_back({e.u, e.v, &edge_weight(e, r)});
    return enumerate(g.vertex_count, edges, r.n(), cfg.worker_count(), v0, a);
  };
  auto elim = [&] { return eliminate(g, r, nullptr, cfg, nullptr, nullptr, std::pair{v0, a}); };
  if (method == Method::Naive) return naive();
  if (method == Method::Eliminate) return elim();
  try {
    return elim();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::WidthOverflow) throw;
    return naive();
  }
}

std::pair<InvariantValue, InvariantValue> invariant_both_colorings(const SymmetricDiagram& d,
                                                                   const RefinedSpinModel& r, Method method,
                                                                   const EngineConfig& cfg) {
  const auto [c1, c2] = checkerboard(d);
  return {normalized_invariant(tait_graph(d, c1), r, method, cfg), normalized_invariant(tait_graph(d, c2), r, method, cfg)};
}

InvariantValue invariant_of_diagram(const SymmetricDiagram& d, const RefinedSpinModel& r, Method method,
                                    const EngineConfig& cfg, double tol) {
  const auto [first, second] = invariant_both_colorings(d, r, method, cfg);
  if (std::abs(first.i - second.i) > tol) {
    throw Error(ErrorCode::ColoringMismatch, "colorings give " + format_complex(first.i) + " and " +
                                                 format_complex(second.i));
  }
  return first;
}

}  // namespace refspin
