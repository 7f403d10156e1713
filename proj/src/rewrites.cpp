#include "refspin/rewrites.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace refspin {

std::string_view to_string(RewriteKind k) {
  switch (k) {
    case RewriteKind::StarTriangle: return "star_triangle";
    case RewriteKind::TriangleStar: return "triangle_star";
    case RewriteKind::ParallelPair: return "parallel_pair";
    case RewriteKind::PendantAxis: return "pendant_axis";
    case RewriteKind::PendantMirrorPair: return "pendant_mirror_pair";
    case RewriteKind::S4Gadget: return "s4_gadget";
  }
  return "?";
}

namespace {

[[noreturn]] void mismatch(RewriteKind k, const std::string& why) {
  throw Error(ErrorCode::PatternMismatch, std::string(to_string(k)) + ": " + why);
}

void expect_shape(const TaitGraph& g, const RewriteSite& s, RewriteKind kind, std::size_t nv, std::size_t ne) {
  if (s.kind != kind) mismatch(kind, "site is of kind " + std::string(to_string(s.kind)));
  if (s.vertices.size() != nv || s.edges.size() != ne) mismatch(kind, "wrong number of vertices or edges in site");
  for (int v : s.vertices)
    if (v < 0 || v >= g.vertex_count) mismatch(kind, "vertex " + std::to_string(v) + " does not exist");
  std::set<std::size_t> seen;
  for (std::size_t e : s.edges) {
    if (e >= g.edges.size()) mismatch(kind, "edge " + std::to_string(e) + " does not exist");
    if (!seen.insert(e).second) mismatch(kind, "edge " + std::to_string(e) + " listed twice");
  }
}

void expect_edge(RewriteKind kind, const TaitEdge& e, int a, int b, Location loc, Sign sign, const char* what) {
  if (!e.joins(a, b) || e.location != loc || e.sign != sign) mismatch(kind, std::string("edge ") + what + " does not match");
}

// Drops the listed edges, then the listed vertices (which must be isolated by
// then), renumbering the rest in order.
TaitGraph remove(const TaitGraph& g, std::vector<std::size_t> edges, std::vector<int> vertices) {
  std::sort(edges.begin(), edges.end());
  std::sort(vertices.begin(), vertices.end());
  TaitGraph out = g;
  out.edges.clear();
  std::vector<int> renum(static_cast<std::size_t>(g.vertex_count));
  int next = 0;
  for (int v = 0; v < g.vertex_count; ++v)
    renum[static_cast<std::size_t>(v)] = std::binary_search(vertices.begin(), vertices.end(), v) ? -1 : next++;
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    if (std::binary_search(edges.begin(), edges.end(), k)) continue;
    TaitEdge e = g.edges[k];
    e.u = renum[static_cast<std::size_t>(e.u)];
    e.v = renum[static_cast<std::size_t>(e.v)];
    out.edges.push_back(e);
  }
  out.vertex_count = next;
  return out;
}

bool pendant(const TaitGraph& g, int x) { return g.degree(x) == 1; }

}  // namespace

TaitGraph apply_star_triangle(const TaitGraph& g, const RewriteSite& s) {
  const auto kind = RewriteKind::StarTriangle;
  expect_shape(g, s, kind, 4, 3);
  const int x = s.vertices[0], a = s.vertices[1], b = s.vertices[2], c = s.vertices[3];
  if (x == a || x == b || x == c) mismatch(kind, "centre coincides with a leaf");
  if (g.degree(x) != 3) mismatch(kind, "centre does not have degree 3");
  expect_edge(kind, g.edges[s.edges[0]], x, c, Location::Axis, s.eps1, "x-c");
  expect_edge(kind, g.edges[s.edges[1]], x, b, Location::Off, s.eps2, "x-b");
  expect_edge(kind, g.edges[s.edges[2]], x, a, Location::Off, -s.eps2, "x-a");
  TaitGraph out = g;
  out.edges.push_back({a, b, -s.eps1, Location::Axis});
  out.edges.push_back({c, a, -s.eps2, Location::Off});
  out.edges.push_back({b, c, s.eps2, Location::Off});
  return remove(out, s.edges, {x});
}

TaitGraph apply_triangle_star(const TaitGraph& g, const RewriteSite& s) {
  const auto kind = RewriteKind::TriangleStar;
  expect_shape(g, s, kind, 3, 3);
  const int a = s.vertices[0], b = s.vertices[1], c = s.vertices[2];
  expect_edge(kind, g.edges[s.edges[0]], a, b, Location::Axis, -s.eps1, "a-b");
  expect_edge(kind, g.edges[s.edges[1]], c, a, Location::Off, -s.eps2, "c-a");
  expect_edge(kind, g.edges[s.edges[2]], b, c, Location::Off, s.eps2, "b-c");
  TaitGraph out = remove(g, s.edges, {});
  const int x = out.vertex_count++;
  out.edges.push_back({x, c, s.eps1, Location::Axis});
  out.edges.push_back({x, b, s.eps2, Location::Off});
  out.edges.push_back({x, a, -s.eps2, Location::Off});
  return out;
}

TaitGraph cancel_parallel(const TaitGraph& g, const RewriteSite& s, bool model_is_type_ii) {
  const auto kind = RewriteKind::ParallelPair;
  expect_shape(g, s, kind, 2, 2);
  const int u = s.vertices[0], v = s.vertices[1];
  const TaitEdge& e1 = g.edges[s.edges[0]];
  const TaitEdge& e2 = g.edges[s.edges[1]];
  if (!e1.joins(u, v) || !e2.joins(u, v)) mismatch(kind, "edges are not parallel on u-v");
  if (e1.location != e2.location) mismatch(kind, "one edge on the axis and one off it");
  if (e1.sign == e2.sign) mismatch(kind, "edges have the same sign");
  TaitGraph out = remove(g, s.edges, {});
  if (e1.on_axis()) {
    if (!model_is_type_ii) throw Error(ErrorCode::TypeIIRequired, "cancelling an axis pair needs a type II refinement");
    if (g.p_b < 1 || g.n_b < 1) mismatch(kind, "no on-axis crossings left to remove");
    --out.p_b;
    --out.n_b;
  }
  return out;
}

TaitGraph remove_pendant_axis(const TaitGraph& g, const RewriteSite& s) {
  const auto kind = RewriteKind::PendantAxis;
  expect_shape(g, s, kind, 2, 1);
  const int x = s.vertices[0], v = s.vertices[1];
  const TaitEdge& e = g.edges[s.edges[0]];
  if (x == v || !e.joins(x, v) || !e.on_axis()) mismatch(kind, "edge is not an axis edge x-v");
  if (!pendant(g, x)) mismatch(kind, "x is not a degree-1 vertex");
  TaitGraph out = remove(g, s.edges, {x});
  int& counter = e.sign == Sign::Plus ? out.n_b : out.p_b;
  if (counter < 1) mismatch(kind, "no on-axis crossing of the matching sign left");
  --counter;
  return out;
}

TaitGraph remove_pendant_mirror_pair(const TaitGraph& g, const RewriteSite& s) {
  const auto kind = RewriteKind::PendantMirrorPair;
  expect_shape(g, s, kind, 4, 2);
  const int x1 = s.vertices[0], v1 = s.vertices[1], x2 = s.vertices[2], v2 = s.vertices[3];
  const TaitEdge& e1 = g.edges[s.edges[0]];
  const TaitEdge& e2 = g.edges[s.edges[1]];
  if (x1 == x2 || x1 == v1 || x2 == v2) mismatch(kind, "degenerate pair");
  if (!e1.joins(x1, v1) || !e2.joins(x2, v2) || e1.on_axis() || e2.on_axis()) mismatch(kind, "edges are not off-axis pendants");
  if (!pendant(g, x1) || !pendant(g, x2)) mismatch(kind, "pendant vertex has degree above 1");
  if (e1.sign == e2.sign) mismatch(kind, "pendant edges have the same sign");
  return remove(g, s.edges, {x1, x2});
}

TaitGraph apply_s4(const TaitGraph& g, const RewriteSite& s) {
  const auto kind = RewriteKind::S4Gadget;
  expect_shape(g, s, kind, 8, 10);
  const auto& V = s.vertices;
  const int a = V[0], b = V[1], c = V[2], d = V[3], x = V[4], t = V[5], y = V[6], z = V[7];
  const std::set<int> inner{x, t, y, z};
  if (inner.size() != 4) mismatch(kind, "internal vertices are not distinct");
  for (int w : {a, b, c, d})
    if (inner.count(w)) mismatch(kind, "boundary vertex coincides with an internal one");
  for (int w : inner)
    if (g.degree(w) != 3) mismatch(kind, "internal vertex without degree 3");
  const auto& E = s.edges;
  const auto P = Sign::Plus, M = Sign::Minus;
  expect_edge(kind, g.edges[E[0]], x, t, Location::Axis, s.eps2, "x-t");
  expect_edge(kind, g.edges[E[1]], y, z, Location::Axis, s.eps1, "y-z");
  expect_edge(kind, g.edges[E[2]], a, x, Location::Off, P, "a-x");
  expect_edge(kind, g.edges[E[3]], b, y, Location::Off, P, "b-y");
  expect_edge(kind, g.edges[E[4]], t, d, Location::Off, M, "t-d");
  expect_edge(kind, g.edges[E[5]], z, c, Location::Off, M, "z-c");
  expect_edge(kind, g.edges[E[6]], x, y, Location::Off, M, "x-y");
  expect_edge(kind, g.edges[E[7]], t, z, Location::Off, P, "t-z");
  expect_edge(kind, g.edges[E[8]], a, b, Location::Off, M, "a-b");
  expect_edge(kind, g.edges[E[9]], c, d, Location::Off, P, "c-d");
  TaitGraph out = g;
  out.edges.push_back({a, d, s.eps1, Location::Axis});
  out.edges.push_back({b, c, s.eps2, Location::Axis});
  return remove(out, E, {x, t, y, z});
}

TaitGraph insert_pendant_axis(const TaitGraph& g, int v, Sign sign) {
  if (v < 0 || v >= g.vertex_count) throw Error(ErrorCode::BadVertex, "v = " + std::to_string(v));
  TaitGraph out = g;
  const int x = out.vertex_count++;
  out.edges.push_back({x, v, sign, Location::Axis});
  ++(sign == Sign::Plus ? out.n_b : out.p_b);
  return out;
}

TaitGraph insert_pendant_mirror_pair(const TaitGraph& g, int v1, int v2, Sign sign) {
  if (v1 < 0 || v1 >= g.vertex_count || v2 < 0 || v2 >= g.vertex_count) throw Error(ErrorCode::BadVertex, "bad anchor");
  TaitGraph out = g;
  const int x1 = out.vertex_count++;
  const int x2 = out.vertex_count++;
  out.edges.push_back({x1, v1, sign, Location::Off});
  out.edges.push_back({x2, v2, -sign, Location::Off});
  return out;
}

TaitGraph insert_parallel_pair(const TaitGraph& g, int u, int v, Location location) {
  if (u < 0 || u >= g.vertex_count || v < 0 || v >= g.vertex_count) throw Error(ErrorCode::BadVertex, "bad endpoint");
  TaitGraph out = g;
  out.edges.push_back({u, v, Sign::Plus, location});
  out.edges.push_back({u, v, Sign::Minus, location});
  if (location == Location::Axis) {
    ++out.p_b;
    ++out.n_b;
  }
  return out;
}

TaitGraph insert_s4(const TaitGraph& g, std::size_t edge_ad, std::size_t edge_bc) {
  if (edge_ad >= g.edges.size() || edge_bc >= g.edges.size() || edge_ad == edge_bc)
    mismatch(RewriteKind::S4Gadget, "need two distinct edges");
  const TaitEdge ad = g.edges[edge_ad], bc = g.edges[edge_bc];
  if (!ad.on_axis() || !bc.on_axis()) mismatch(RewriteKind::S4Gadget, "both edges must lie on the axis");
  const int a = ad.u, d = ad.v, b = bc.u, c = bc.v;
  TaitGraph out = remove(g, {edge_ad, edge_bc}, {});
  const int x = out.vertex_count, t = x + 1, y = x + 2, z = x + 3;
  out.vertex_count += 4;
  const auto P = Sign::Plus, M = Sign::Minus;
  const auto Ax = Location::Axis, Off = Location::Off;
  out.edges.insert(out.edges.end(), {{x, t, bc.sign, Ax}, {y, z, ad.sign, Ax}, {a, x, P, Off}, {b, y, P, Off},
                                     {t, d, M, Off}, {z, c, M, Off}, {x, y, M, Off}, {t, z, P, Off},
                                     {a, b, M, Off}, {c, d, P, Off}});
  return out;
}

std::vector<RewriteSite> find_sites(const TaitGraph& g, RewriteKind kind) {
  std::vector<RewriteSite> out;
  const auto& E = g.edges;
  switch (kind) {
    case RewriteKind::StarTriangle:
      for (int x = 0; x < g.vertex_count; ++x) {
        if (g.degree(x) != 3) continue;
        const auto inc = g.incident(x);
        if (inc.size() != 3) continue;
        std::vector<std::size_t> axis, plus, minus;
        for (std::size_t k : inc) {
          if (E[k].u == E[k].v) continue;
          if (E[k].on_axis()) axis.push_back(k);
          else (E[k].sign == Sign::Plus ? plus : minus).push_back(k);
        }
        if (axis.size() != 1 || plus.size() != 1 || minus.size() != 1) continue;
        const int c = E[axis[0]].other(x);
        for (Sign eps2 : {Sign::Plus, Sign::Minus}) {
          const std::size_t eb = eps2 == Sign::Plus ? plus[0] : minus[0];
          const std::size_t ea = eps2 == Sign::Plus ? minus[0] : plus[0];
          out.push_back({kind, {x, E[ea].other(x), E[eb].other(x), c}, {axis[0], eb, ea}, E[axis[0]].sign, eps2});
        }
      }
      break;
    case RewriteKind::TriangleStar:
      for (std::size_t e0 = 0; e0 < E.size(); ++e0) {
        if (!E[e0].on_axis()) continue;
        for (int flip = 0; flip < 2; ++flip) {
          const int a = flip ? E[e0].v : E[e0].u;
          const int b = flip ? E[e0].u : E[e0].v;
          if (flip && a == b) continue;
          for (std::size_t e1 = 0; e1 < E.size(); ++e1) {
            if (e1 == e0 || E[e1].on_axis() || !E[e1].touches(a)) continue;
            const int c = E[e1].other(a);
            for (std::size_t e2 = 0; e2 < E.size(); ++e2) {
              if (e2 == e0 || e2 == e1 || E[e2].on_axis() || !E[e2].joins(b, c) || E[e2].sign == E[e1].sign) continue;
              out.push_back({kind, {a, b, c}, {e0, e1, e2}, -E[e0].sign, E[e2].sign});
            }
          }
        }
      }
      break;
    case RewriteKind::ParallelPair:
      for (std::size_t i = 0; i < E.size(); ++i)
        for (std::size_t j = i + 1; j < E.size(); ++j)
          if (E[j].joins(E[i].u, E[i].v) && E[i].location == E[j].location && E[i].sign != E[j].sign)
            out.push_back({kind, {E[i].u, E[i].v}, {i, j}});
      break;
    case RewriteKind::PendantAxis:
      for (int x = 0; x < g.vertex_count; ++x) {
        if (!pendant(g, x)) continue;
        const std::size_t k = g.incident(x)[0];
        if (!E[k].on_axis()) continue;
        if ((E[k].sign == Sign::Plus ? g.n_b : g.p_b) < 1) continue;
        out.push_back({kind, {x, E[k].other(x)}, {k}});
      }
      break;
    case RewriteKind::PendantMirrorPair: {
      std::vector<std::pair<int, std::size_t>> leaves;
      for (int x = 0; x < g.vertex_count; ++x)
        if (pendant(g, x) && !E[g.incident(x)[0]].on_axis()) leaves.emplace_back(x, g.incident(x)[0]);
      for (std::size_t i = 0; i < leaves.size(); ++i)
        for (std::size_t j = i + 1; j < leaves.size(); ++j) {
          const auto [x1, k1] = leaves[i];
          const auto [x2, k2] = leaves[j];
          if (E[k1].sign != E[k2].sign && k1 != k2) out.push_back({kind, {x1, E[k1].other(x1), x2, E[k2].other(x2)}, {k1, k2}});
        }
      break;
    }
    case RewriteKind::S4Gadget: {
      // Off-axis edge of the given sign joining w to something, excluding `skip`.
      auto off_edges = [&](int w, Sign sign) {
        std::vector<std::size_t> r;
        for (std::size_t k : g.incident(w))
          if (!E[k].on_axis() && E[k].sign == sign && E[k].u != E[k].v) r.push_back(k);
        return r;
      };
      for (std::size_t ext = 0; ext < E.size(); ++ext) {
        if (!E[ext].on_axis()) continue;
        for (std::size_t eyz = 0; eyz < E.size(); ++eyz) {
          if (eyz == ext || !E[eyz].on_axis()) continue;
          for (int f1 = 0; f1 < 2; ++f1)
            for (int f2 = 0; f2 < 2; ++f2) {
              const int x = f1 ? E[ext].v : E[ext].u, t = f1 ? E[ext].u : E[ext].v;
              const int y = f2 ? E[eyz].v : E[eyz].u, z = f2 ? E[eyz].u : E[eyz].v;
              const std::set<int> inner{x, t, y, z};
              if (inner.size() != 4) continue;
              if (g.degree(x) != 3 || g.degree(t) != 3 || g.degree(y) != 3 || g.degree(z) != 3) continue;
              for (std::size_t exy : off_edges(x, Sign::Minus)) {
                if (!E[exy].joins(x, y)) continue;
                for (std::size_t etz : off_edges(t, Sign::Plus)) {
                  if (!E[etz].joins(t, z)) continue;
                  for (std::size_t eax : off_edges(x, Sign::Plus))
                    for (std::size_t eby : off_edges(y, Sign::Plus))
                      for (std::size_t etd : off_edges(t, Sign::Minus))
                        for (std::size_t ezc : off_edges(z, Sign::Minus)) {
                          const int a = E[eax].other(x), b = E[eby].other(y);
                          const int d = E[etd].other(t), c = E[ezc].other(z);
                          if (inner.count(a) || inner.count(b) || inner.count(c) || inner.count(d)) continue;
                          const std::set<std::size_t> used{ext, eyz, exy, etz, eax, eby, etd, ezc};
                          if (used.size() != 8) continue;
                          for (std::size_t eab = 0; eab < E.size(); ++eab) {
                            if (used.count(eab) || E[eab].on_axis() || E[eab].sign != Sign::Minus || !E[eab].joins(a, b)) continue;
                            for (std::size_t ecd = 0; ecd < E.size(); ++ecd) {
                              if (ecd == eab || used.count(ecd) || E[ecd].on_axis() || E[ecd].sign != Sign::Plus ||
                                  !E[ecd].joins(c, d))
                                continue;
                              out.push_back({kind, {a, b, c, d, x, t, y, z},
                                             {ext, eyz, eax, eby, etd, ezc, exy, etz, eab, ecd}, E[eyz].sign, E[ext].sign});
                            }
                          }
                        }
                }
              }
            }
        }
      }
      break;
    }
  }
  return out;
}

TaitGraph random_equivalent(const TaitGraph& g, std::uint64_t seed, int steps, bool axis_pairs_allowed) {
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t size) { return std::uniform_int_distribution<std::size_t>(0, size - 1)(rng); };
  auto coin = [&] { return pick(2) == 0 ? Sign::Plus : Sign::Minus; };
  TaitGraph cur = g;
  for (int step = 0; step < steps; ++step) {
    const std::size_t op = pick(11);
    auto apply_found = [&](RewriteKind kind, auto&& fn) {
      auto sites = find_sites(cur, kind);
      if (kind == RewriteKind::ParallelPair && !axis_pairs_allowed) {
        std::erase_if(sites, [&](const RewriteSite& s) { return cur.edges[s.edges[0]].on_axis(); });
      }
      if (!sites.empty()) cur = fn(cur, sites[pick(sites.size())]);
    };
    switch (op) {
      case 0: apply_found(RewriteKind::StarTriangle, apply_star_triangle); break;
      case 1: apply_found(RewriteKind::TriangleStar, apply_triangle_star); break;
      case 2:
        apply_found(RewriteKind::ParallelPair,
                    [&](const TaitGraph& h, const RewriteSite& s) { return cancel_parallel(h, s, axis_pairs_allowed); });
        break;
      case 3:
      case 4: {
        // Parallel pairs go on existing edges so the graph's shape is kept.
        if (cur.edges.empty() || (op == 4 && !axis_pairs_allowed)) break;
        const TaitEdge& e = cur.edges[pick(cur.edges.size())];
        cur = insert_parallel_pair(cur, e.u, e.v, op == 4 ? Location::Axis : Location::Off);
        break;
      }
      case 5: apply_found(RewriteKind::PendantAxis, remove_pendant_axis); break;
      case 6:
        if (cur.vertex_count > 0) cur = insert_pendant_axis(cur, static_cast<int>(pick(static_cast<std::size_t>(cur.vertex_count))), coin());
        break;
      case 7: apply_found(RewriteKind::PendantMirrorPair, remove_pendant_mirror_pair); break;
      case 8:
        if (cur.vertex_count > 0) {
          const int v1 = static_cast<int>(pick(static_cast<std::size_t>(cur.vertex_count)));
          const int v2 = static_cast<int>(pick(static_cast<std::size_t>(cur.vertex_count)));
          cur = insert_pendant_mirror_pair(cur, v1, v2, coin());
        }
        break;
      case 9: apply_found(RewriteKind::S4Gadget, apply_s4); break;
      case 10: {
        std::vector<std::size_t> axis;
        for (std::size_t k = 0; k < cur.edges.size(); ++k)
          if (cur.edges[k].on_axis()) axis.push_back(k);
        if (axis.size() < 2) break;
        const std::size_t i = pick(axis.size());
        std::size_t j = pick(axis.size() - 1);
        if (j >= i) ++j;
        cur = insert_s4(cur, axis[i], axis[j]);
        break;
      }
    }
  }
  return cur;
}

}  // namespace refspin
