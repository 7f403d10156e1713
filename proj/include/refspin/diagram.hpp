#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "refspin/error.hpp"

namespace refspin {

enum class AxisFlag { None, Pos, Neg };

/// One crossing of a planar diagram code. `arcs` lists the four incident arc
/// labels counterclockwise, starting at the incoming under-strand.
struct Crossing {
  int id = 0;
  std::array<int, 4> arcs{};
  AxisFlag axis = AxisFlag::None;
};

/// Inclusive range of arc labels traversed by one link component, in orientation order.
struct ArcRange {
  int first = 0;
  int last = 0;
};

struct SymmetricDiagram {
  std::string name;
  std::vector<Crossing> crossings;
  std::vector<ArcRange> components;

  int axis_count(AxisFlag flag) const;
};

/// Parses and validates a .sud file. When no `comp` line is present the arcs
/// 1..max form a single component.
SymmetricDiagram parse_sud(std::string_view text);
std::string format_sud(const SymmetricDiagram& d);

/// Orientation sign (+1 / -1) of crossing `index`, read off the arc numbering.
int crossing_sign(const SymmetricDiagram& d, std::size_t index);

/// Switches every crossing on the axis and flips its pos/neg annotation.
SymmetricDiagram switch_axis_crossings(const SymmetricDiagram& d);

/// Faces of the planar map. Corner k of a crossing lies between slots k and k+1.
struct FaceMap {
  int face_count = 0;
  std::vector<std::array<int, 4>> corner_face;
  std::vector<int> corner_count;   // corners per face
  std::vector<int> piece_of_face;  // connected piece of the diagram owning each face
  std::vector<int> unbounded;      // unbounded face of each piece
};

FaceMap faces(const SymmetricDiagram& d);

enum class FaceColor { White, Black };

struct Coloring {
  std::vector<FaceColor> face_color;
  int which = 0;  // 0: unbounded faces white, 1: complement
};

/// Both checkerboard colorings; the one with white unbounded faces comes first.
std::pair<Coloring, Coloring> checkerboard(const SymmetricDiagram& d);

enum class Sign : int { Minus = -1, Plus = 1 };
enum class Location { Off, Axis };

inline Sign operator-(Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }
inline char sign_char(Sign s) { return s == Sign::Plus ? '+' : '-'; }

struct TaitEdge {
  int u = 0;
  int v = 0;
  Sign sign = Sign::Plus;
  Location location = Location::Off;

  bool on_axis() const noexcept { return location == Location::Axis; }
  bool joins(int a, int b) const noexcept { return (u == a && v == b) || (u == b && v == a); }
  bool touches(int x) const noexcept { return u == x || v == x; }
  int other(int x) const noexcept { return u == x ? v : u; }
};

/// Signed graph with axis-marked edges. Vertices are 0-based in the API and
/// 1-based in .smg files.
struct TaitGraph {
  std::string name;
  int vertex_count = 0;
  std::vector<TaitEdge> edges;
  int p_b = 0;
  int n_b = 0;

  int axis_edge_count() const;
  int degree(int v) const;  // self-loops count twice
  std::vector<std::size_t> incident(int v) const;
};

// A-region convention: an edge is + when its black corners are the ones swept
// by rotating the over-strand counterclockwise. Flipping this flag negates
// every edge sign.
inline constexpr bool kTaitSignFlip = false;

TaitGraph tait_graph(const SymmetricDiagram& d, const Coloring& c);

/// Component id of every vertex, ids numbered by lowest member.
std::vector<int> vertex_components(const TaitGraph& g);
int component_count(const TaitGraph& g);

/// Identifies v1 in g1 with v2 in g2. Vertices of g2 other than v2 follow those of g1.
TaitGraph connected_sum(const TaitGraph& g1, const TaitGraph& g2, int v1, int v2);
TaitGraph disjoint_union(const TaitGraph& g1, const TaitGraph& g2);

TaitGraph parse_smg(std::string_view text);
std::string format_smg(const TaitGraph& g);

}  // namespace refspin
