#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "refspin/diagram.hpp"

namespace refspin {

enum class RewriteKind { StarTriangle, TriangleStar, ParallelPair, PendantAxis, PendantMirrorPair, S4Gadget };

std::string_view to_string(RewriteKind k);

/// A located pattern. Vertex and edge roles per kind:
///   StarTriangle       vertices {x, a, b, c}; edges {x-c axis eps1, x-b off eps2, x-a off -eps2}
///   TriangleStar       vertices {a, b, c};    edges {a-b axis -eps1, c-a off -eps2, b-c off eps2}
///   ParallelPair       vertices {u, v};       edges {e+, e-}
///   PendantAxis        vertices {x, v};       edges {x-v}
///   PendantMirrorPair  vertices {x1, v1, x2, v2}; edges {x1-v1, x2-v2}
///   S4Gadget           vertices {a, b, c, d, x, t, y, z};
///                      edges {x-t, y-z, a-x, b-y, t-d, z-c, x-y, t-z, a-b, c-d}
struct RewriteSite {
  RewriteKind kind = RewriteKind::StarTriangle;
  std::vector<int> vertices;
  std::vector<std::size_t> edges;
  Sign eps1 = Sign::Plus;
  Sign eps2 = Sign::Plus;
};

/// Every site of the given kind present in g.
std::vector<RewriteSite> find_sites(const TaitGraph& g, RewriteKind kind);

/// Removes x and adds the triangle a-b axis -eps1, c-a off -eps2, b-c off eps2.
TaitGraph apply_star_triangle(const TaitGraph& g, const RewriteSite& s);
/// Inverse of apply_star_triangle; the new vertex gets the next free id.
TaitGraph apply_triangle_star(const TaitGraph& g, const RewriteSite& s);
/// Removes two opposite-sign parallel edges. An axis pair needs a type II model
/// and lowers both p_b and n_b.
TaitGraph cancel_parallel(const TaitGraph& g, const RewriteSite& s, bool model_is_type_ii);
/// A + edge lowers n_b, a - edge lowers p_b.
TaitGraph remove_pendant_axis(const TaitGraph& g, const RewriteSite& s);
TaitGraph remove_pendant_mirror_pair(const TaitGraph& g, const RewriteSite& s);
/// Replaces the gadget by axis edges a-d (eps1) and b-c (eps2).
TaitGraph apply_s4(const TaitGraph& g, const RewriteSite& s);

// Insertions used by the fuzzer.
TaitGraph insert_pendant_axis(const TaitGraph& g, int v, Sign sign);
TaitGraph insert_pendant_mirror_pair(const TaitGraph& g, int v1, int v2, Sign sign);
TaitGraph insert_parallel_pair(const TaitGraph& g, int u, int v, Location location);
/// Replaces axis edges a-d (sign eps1) and b-c (sign eps2) by the gadget.
TaitGraph insert_s4(const TaitGraph& g, std::size_t edge_ad, std::size_t edge_bc);

/// Seeded random walk through the rewrites above, in both directions.
/// Inapplicable choices are skipped. Axis-pair moves only when allowed.
TaitGraph random_equivalent(const TaitGraph& g, std::uint64_t seed, int steps, bool axis_pairs_allowed);

}  // namespace refspin
