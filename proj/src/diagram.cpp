#include "refspin/diagram.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <queue>

namespace refspin {

namespace {

struct Token {
  std::string text;
  int column = 0;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t k = 0;
  while (k < line.size()) {
    while (k < line.size() && (line[k] == ' ' || line[k] == '\t' || line[k] == '\r')) ++k;
    if (k >= line.size()) break;
    const std::size_t start = k;
    while (k < line.size() && line[k] != ' ' && line[k] != '\t' && line[k] != '\r') ++k;
    out.push_back({std::string(line.substr(start, k - start)), static_cast<int>(start) + 1});
  }
  return out;
}

[[noreturn]] void syntax_error(int line, int column, const std::string& msg) {
  throw Error(ErrorCode::SyntaxError, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg);
}

int parse_int(const Token& t, int line) {
  char* stop = nullptr;
  const long v = std::strtol(t.text.c_str(), &stop, 10);
  if (t.text.empty() || *stop != '\0') syntax_error(line, t.column, "expected an integer, got '" + t.text + "'");
  return static_cast<int>(v);
}

// Splits text into (line number, statement) pairs; '#' starts a comment and
// ';' separates statements on one line.
std::vector<std::pair<int, std::string>> statements(std::string_view text) {
  std::vector<std::pair<int, std::string>> out;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    ++line_no;
    std::string line(text.substr(pos, nl - pos));
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::size_t start = 0;
    while (start <= line.size()) {
      std::size_t semi = line.find(';', start);
      if (semi == std::string::npos) semi = line.size();
      // Blank out everything but this statement so token columns stay true.
      std::string stmt(line.size(), ' ');
      std::copy(line.begin() + static_cast<long>(start), line.begin() + static_cast<long>(semi),
                stmt.begin() + static_cast<long>(start));
      if (stmt.find_first_not_of(" \t\r") != std::string::npos) out.emplace_back(line_no, stmt);
      start = semi + 1;
    }
    pos = nl + 1;
  }
  return out;
}

struct Slot {
  std::size_t crossing;
  int slot;
};

std::map<int, std::vector<Slot>> occurrences(const SymmetricDiagram& d) {
  std::map<int, std::vector<Slot>> occ;
  for (std::size_t c = 0; c < d.crossings.size(); ++c)
    for (int k = 0; k < 4; ++k) occ[d.crossings[c].arcs[static_cast<std::size_t>(k)]].push_back({c, k});
  return occ;
}

int successor(const SymmetricDiagram& d, int arc) {
  for (const auto& r : d.components)
    if (arc >= r.first && arc <= r.last) return arc == r.last ? r.first : arc + 1;
  throw Error(ErrorCode::SyntaxError, "arc " + std::to_string(arc) + " lies in no component");
}

// For each crossing, the slot (1 or 3) where the over-strand enters.
std::vector<int> over_entry_slots(const SymmetricDiagram& d) {
  const auto occ = occurrences(d);
  const std::size_t nc = d.crossings.size();
  // role[c][k]: 0 unknown, 1 entering the crossing, 2 leaving it.
  std::vector<std::array<int, 4>> role(nc, {0, 0, 0, 0});
  for (std::size_t c = 0; c < nc; ++c) {
    role[c][0] = 1;
    role[c][2] = 2;
  }
  auto propagate = [&]() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& [arc, slots] : occ) {
        auto& r0 = role[slots[0].crossing][static_cast<std::size_t>(slots[0].slot)];
        auto& r1 = role[slots[1].crossing][static_cast<std::size_t>(slots[1].slot)];
        if (r0 && !r1) { r1 = 3 - r0; changed = true; }
        if (r1 && !r0) { r0 = 3 - r1; changed = true; }
      }
      for (std::size_t c = 0; c < nc; ++c) {
        auto& r = role[c];
        if (r[1] && !r[3]) { r[3] = 3 - r[1]; changed = true; }
        if (r[3] && !r[1]) { r[1] = 3 - r[3]; changed = true; }
      }
    }
  };
  propagate();
  for (std::size_t c = 0; c < nc; ++c) {
    if (role[c][1]) continue;
    // Over-only chains: fall back on the arc numbering.
    const auto& a = d.crossings[c].arcs;
    const bool l_in = successor(d, a[3]) == a[1];
    role[c][3] = l_in ? 1 : 2;
    role[c][1] = l_in ? 2 : 1;
    propagate();
  }
  std::vector<int> out(nc);
  for (std::size_t c = 0; c < nc; ++c) out[c] = role[c][3] == 1 ? 3 : 1;
  return out;
}

void validate_orientation(const SymmetricDiagram& d) {
  const auto entry = over_entry_slots(d);
  for (std::size_t c = 0; c < d.crossings.size(); ++c) {
    const auto& a = d.crossings[c].arcs;
    const int over_in = a[static_cast<std::size_t>(entry[c])];
    const int over_out = a[static_cast<std::size_t>(entry[c] == 3 ? 1 : 3)];
    if (successor(d, a[0]) != a[2] || successor(d, over_in) != over_out) {
      throw Error(ErrorCode::SyntaxError,
                  "crossing " + std::to_string(d.crossings[c].id) + ": arc numbering does not follow the strands");
    }
  }
}

// Connected pieces of the 4-valent graph, by crossing.
std::vector<int> crossing_pieces(const SymmetricDiagram& d) {
  std::vector<int> parent(d.crossings.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  for (const auto& [arc, slots] : occurrences(d)) {
    const int a = find(static_cast<int>(slots[0].crossing));
    const int b = find(static_cast<int>(slots[1].crossing));
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
  std::vector<int> piece(d.crossings.size());
  std::map<int, int> ids;
  for (std::size_t c = 0; c < d.crossings.size(); ++c) {
    const int root = find(static_cast<int>(c));
    auto [it, inserted] = ids.emplace(root, static_cast<int>(ids.size()));
    piece[c] = it->second;
  }
  return piece;
}

}  // namespace

int SymmetricDiagram::axis_count(AxisFlag flag) const {
  return static_cast<int>(std::count_if(crossings.begin(), crossings.end(), [&](const Crossing& c) { return c.axis == flag; }));
}

SymmetricDiagram parse_sud(std::string_view text) {
  SymmetricDiagram d;
  bool have_header = false;
  for (const auto& [line_no, stmt] : statements(text)) {
    const auto toks = tokenize(stmt);
    const std::string& key = toks[0].text;
    if (!have_header) {
      if (key != "sud" || toks.size() != 2) syntax_error(line_no, toks[0].column, "expected header 'sud <name>'");
      d.name = toks[1].text;
      have_header = true;
      continue;
    }
    if (key == "x") {
      if (toks.size() != 6 && toks.size() != 7) syntax_error(line_no, toks[0].column, "crossing line needs id, four arcs and axis=");
      Crossing c;
      c.id = parse_int(toks[1], line_no);
      for (std::size_t k = 0; k < 4; ++k) {
        c.arcs[k] = parse_int(toks[2 + k], line_no);
        if (c.arcs[k] <= 0) syntax_error(line_no, toks[2 + k].column, "arc labels must be positive");
      }
      if (toks.size() == 7) {
        const auto& t = toks[6];
        if (t.text == "axis=none") c.axis = AxisFlag::None;
        else if (t.text == "axis=pos") c.axis = AxisFlag::Pos;
        else if (t.text == "axis=neg") c.axis = AxisFlag::Neg;
        else syntax_error(line_no, t.column, "expected axis=<none|pos|neg>, got '" + t.text + "'");
      }
      d.crossings.push_back(c);
    } else if (key == "comp") {
      if (toks.size() != 2) syntax_error(line_no, toks[0].column, "expected 'comp <first>..<last>'");
      const auto& t = toks[1];
      const auto dots = t.text.find("..");
      if (dots == std::string::npos) syntax_error(line_no, t.column, "expected <first>..<last>");
      const Token lo{t.text.substr(0, dots), t.column};
      const Token hi{t.text.substr(dots + 2), t.column + static_cast<int>(dots) + 2};
      ArcRange r{parse_int(lo, line_no), parse_int(hi, line_no)};
      if (r.first <= 0 || r.last < r.first) syntax_error(line_no, t.column, "empty or invalid arc range");
      d.components.push_back(r);
    } else {
      syntax_error(line_no, toks[0].column, "unknown statement '" + key + "'");
    }
  }
  if (!have_header) throw Error(ErrorCode::SyntaxError, "missing 'sud <name>' header");

  const auto occ = occurrences(d);
  for (const auto& [arc, slots] : occ) {
    if (slots.size() != 2) {
      throw Error(ErrorCode::OpenArc, "arc " + std::to_string(arc) + " appears " + std::to_string(slots.size()) + " times");
    }
  }
  if (d.crossings.empty()) return d;
  const int max_arc = occ.rbegin()->first;
  if (d.components.empty()) d.components.push_back({1, max_arc});
  std::vector<int> owner(static_cast<std::size_t>(max_arc) + 1, 0);
  for (const auto& r : d.components) {
    if (r.last > max_arc) throw Error(ErrorCode::OpenArc, "component range reaches unused arc " + std::to_string(r.last));
    for (int a = r.first; a <= r.last; ++a) {
      if (owner[static_cast<std::size_t>(a)]++) throw Error(ErrorCode::SyntaxError, "arc " + std::to_string(a) + " lies in two components");
    }
  }
  for (int a = 1; a <= max_arc; ++a) {
    const bool used = occ.count(a) > 0;
    const bool owned = owner[static_cast<std::size_t>(a)] > 0;
    if (used != owned) throw Error(ErrorCode::OpenArc, "arc " + std::to_string(a) + (used ? " lies in no component" : " is never used"));
  }
  validate_orientation(d);
  faces(d);  // Euler check
  return d;
}

std::string format_sud(const SymmetricDiagram& d) {
  std::string out = "sud " + d.name + "\n";
  for (const auto& c : d.crossings) {
    out += "x " + std::to_string(c.id);
    for (int a : c.arcs) out += " " + std::to_string(a);
    out += c.axis == AxisFlag::None ? " axis=none\n" : c.axis == AxisFlag::Pos ? " axis=pos\n" : " axis=neg\n";
  }
  for (const auto& r : d.components) out += "comp " + std::to_string(r.first) + ".." + std::to_string(r.last) + "\n";
  return out;
}

int crossing_sign(const SymmetricDiagram& d, std::size_t index) {
  return over_entry_slots(d).at(index) == 3 ? 1 : -1;
}

SymmetricDiagram switch_axis_crossings(const SymmetricDiagram& d) {
  const auto entry = over_entry_slots(d);
  SymmetricDiagram out = d;
  for (std::size_t c = 0; c < d.crossings.size(); ++c) {
    auto& x = out.crossings[c];
    if (x.axis == AxisFlag::None) continue;
    const auto [i, j, k, l] = d.crossings[c].arcs;
    x.arcs = entry[c] == 3 ? std::array<int, 4>{l, i, j, k} : std::array<int, 4>{j, k, l, i};
    x.axis = x.axis == AxisFlag::Pos ? AxisFlag::Neg : AxisFlag::Pos;
  }
  return out;
}

FaceMap faces(const SymmetricDiagram& d) {
  const auto occ = occurrences(d);
  const std::size_t nc = d.crossings.size();
  FaceMap fm;
  fm.corner_face.assign(nc, {-1, -1, -1, -1});
  auto other = [&](std::size_t c, int k) {
    const auto& slots = occ.at(d.crossings[c].arcs[static_cast<std::size_t>(k)]);
    return (slots[0].crossing == c && slots[0].slot == k) ? slots[1] : slots[0];
  };
  for (std::size_t c = 0; c < nc; ++c) {
    for (int k = 0; k < 4; ++k) {
      if (fm.corner_face[c][static_cast<std::size_t>(k)] >= 0) continue;
      const int f = fm.face_count++;
      fm.corner_count.push_back(0);
      Slot cur{c, k};
      while (fm.corner_face[cur.crossing][static_cast<std::size_t>(cur.slot)] < 0) {
        fm.corner_face[cur.crossing][static_cast<std::size_t>(cur.slot)] = f;
        ++fm.corner_count[static_cast<std::size_t>(f)];
        cur = other(cur.crossing, (cur.slot + 1) % 4);
      }
    }
  }
  const auto piece = crossing_pieces(d);
  const int pieces = nc ? *std::max_element(piece.begin(), piece.end()) + 1 : 0;
  fm.piece_of_face.assign(static_cast<std::size_t>(fm.face_count), -1);
  std::vector<int> crossings_in(static_cast<std::size_t>(pieces), 0);
  std::vector<int> faces_in(static_cast<std::size_t>(pieces), 0);
  for (std::size_t c = 0; c < nc; ++c) {
    ++crossings_in[static_cast<std::size_t>(piece[c])];
    for (int f : fm.corner_face[c]) {
      if (fm.piece_of_face[static_cast<std::size_t>(f)] < 0) {
        fm.piece_of_face[static_cast<std::size_t>(f)] = piece[c];
        ++faces_in[static_cast<std::size_t>(piece[c])];
      }
    }
  }
  for (int p = 0; p < pieces; ++p) {
    const int v = crossings_in[static_cast<std::size_t>(p)];
    const int f = faces_in[static_cast<std::size_t>(p)];
    if (v - 2 * v + f != 2) {
      throw Error(ErrorCode::NonPlanar, "piece " + std::to_string(p) + ": V - E + F = " + std::to_string(f - v) + ", expected 2");
    }
  }
  fm.unbounded.assign(static_cast<std::size_t>(pieces), -1);
  for (int f = 0; f < fm.face_count; ++f) {
    auto& u = fm.unbounded[static_cast<std::size_t>(fm.piece_of_face[static_cast<std::size_t>(f)])];
    if (u < 0 || fm.corner_count[static_cast<std::size_t>(f)] > fm.corner_count[static_cast<std::size_t>(u)]) u = f;
  }
  return fm;
}

std::pair<Coloring, Coloring> checkerboard(const SymmetricDiagram& d) {
  const FaceMap fm = faces(d);
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(fm.face_count));
  for (const auto& corners : fm.corner_face)
    for (std::size_t k = 0; k < 4; ++k) {
      adj[static_cast<std::size_t>(corners[k])].push_back(corners[(k + 1) % 4]);
      adj[static_cast<std::size_t>(corners[(k + 1) % 4])].push_back(corners[k]);
    }
  std::vector<int> color(static_cast<std::size_t>(fm.face_count), -1);
  for (int start : fm.unbounded) {
    color[static_cast<std::size_t>(start)] = 0;
    std::queue<int> q;
    q.push(start);
    while (!q.empty()) {
      const int f = q.front();
      q.pop();
      for (int g : adj[static_cast<std::size_t>(f)]) {
        auto& cg = color[static_cast<std::size_t>(g)];
        if (cg < 0) {
          cg = 1 - color[static_cast<std::size_t>(f)];
          q.push(g);
        } else if (cg == color[static_cast<std::size_t>(f)]) {
          throw Error(ErrorCode::NotBipartite, "faces " + std::to_string(f) + " and " + std::to_string(g) + " share an arc and a color");
        }
      }
    }
  }
  Coloring first, second;
  first.which = 0;
  second.which = 1;
  for (int c : color) {
    first.face_color.push_back(c == 0 ? FaceColor::White : FaceColor::Black);
    second.face_color.push_back(c == 0 ? FaceColor::Black : FaceColor::White);
  }
  return {first, second};
}

int TaitGraph::axis_edge_count() const {
  return static_cast<int>(std::count_if(edges.begin(), edges.end(), [](const TaitEdge& e) { return e.on_axis(); }));
}

int TaitGraph::degree(int v) const {
  int deg = 0;
  for (const auto& e : edges) deg += (e.u == v) + (e.v == v);
  return deg;
}

std::vector<std::size_t> TaitGraph::incident(int v) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < edges.size(); ++k)
    if (edges[k].touches(v)) out.push_back(k);
  return out;
}

TaitGraph tait_graph(const SymmetricDiagram& d, const Coloring& c) {
  const FaceMap fm = faces(d);
  if (static_cast<int>(c.face_color.size()) != fm.face_count) {
    throw Error(ErrorCode::DimensionMismatch, "coloring does not match the diagram's faces");
  }
  std::vector<int> vertex_of(static_cast<std::size_t>(fm.face_count), -1);
  TaitGraph g;
  g.name = d.name;
  for (int f = 0; f < fm.face_count; ++f)
    if (c.face_color[static_cast<std::size_t>(f)] == FaceColor::Black) vertex_of[static_cast<std::size_t>(f)] = g.vertex_count++;
  for (std::size_t x = 0; x < d.crossings.size(); ++x) {
    const auto& corners = fm.corner_face[x];
    const bool a_black = c.face_color[static_cast<std::size_t>(corners[1])] == FaceColor::Black;
    TaitEdge e;
    if (a_black) {
      e.u = vertex_of[static_cast<std::size_t>(corners[1])];
      e.v = vertex_of[static_cast<std::size_t>(corners[3])];
    } else {
      e.u = vertex_of[static_cast<std::size_t>(corners[0])];
      e.v = vertex_of[static_cast<std::size_t>(corners[2])];
    }
    e.sign = (a_black != kTaitSignFlip) ? Sign::Plus : Sign::Minus;
    e.location = d.crossings[x].axis == AxisFlag::None ? Location::Off : Location::Axis;
    g.edges.push_back(e);
  }
  g.p_b = d.axis_count(AxisFlag::Pos);
  g.n_b = d.axis_count(AxisFlag::Neg);
  return g;
}

std::vector<int> vertex_components(const TaitGraph& g) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.vertex_count));
  for (const auto& e : g.edges) {
    adj[static_cast<std::size_t>(e.u)].push_back(e.v);
    adj[static_cast<std::size_t>(e.v)].push_back(e.u);
  }
  std::vector<int> comp(static_cast<std::size_t>(g.vertex_count), -1);
  int next = 0;
  for (int s = 0; s < g.vertex_count; ++s) {
    if (comp[static_cast<std::size_t>(s)] >= 0) continue;
    std::vector<int> stack{s};
    comp[static_cast<std::size_t>(s)] = next;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : adj[static_cast<std::size_t>(v)])
        if (comp[static_cast<std::size_t>(w)] < 0) {
          comp[static_cast<std::size_t>(w)] = next;
          stack.push_back(w);
        }
    }
    ++next;
  }
  return comp;
}

int component_count(const TaitGraph& g) {
  const auto comp = vertex_components(g);
  return comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
}

TaitGraph connected_sum(const TaitGraph& g1, const TaitGraph& g2, int v1, int v2) {
  if (v1 < 0 || v1 >= g1.vertex_count) throw Error(ErrorCode::BadVertex, "v1 = " + std::to_string(v1));
  if (v2 < 0 || v2 >= g2.vertex_count) throw Error(ErrorCode::BadVertex, "v2 = " + std::to_string(v2));
  TaitGraph g = g1;
  g.name = g1.name + "#" + g2.name;
  auto map = [&](int w) { return w == v2 ? v1 : g1.vertex_count + (w < v2 ? w : w - 1); };
  for (auto e : g2.edges) {
    e.u = map(e.u);
    e.v = map(e.v);
    g.edges.push_back(e);
  }
  g.vertex_count = g1.vertex_count + g2.vertex_count - 1;
  g.p_b += g2.p_b;
  g.n_b += g2.n_b;
  return g;
}

TaitGraph disjoint_union(const TaitGraph& g1, const TaitGraph& g2) {
  TaitGraph g = g1;
  g.name = g1.name + "+" + g2.name;
  for (auto e : g2.edges) {
    e.u += g1.vertex_count;
    e.v += g1.vertex_count;
    g.edges.push_back(e);
  }
  g.vertex_count += g2.vertex_count;
  g.p_b += g2.p_b;
  g.n_b += g2.n_b;
  return g;
}

TaitGraph parse_smg(std::string_view text) {
  TaitGraph g;
  bool have_header = false;
  std::optional<int> n, pb, nb;
  struct Pending {
    TaitEdge edge;
    int line;
    int col_u, col_v;
  };
  std::vector<Pending> pending;
  for (const auto& [line_no, stmt] : statements(text)) {
    const auto toks = tokenize(stmt);
    const std::string& key = toks[0].text;
    if (!have_header) {
      if (key != "smg" || toks.size() != 2) syntax_error(line_no, toks[0].column, "expected header 'smg <name>'");
      g.name = toks[1].text;
      have_header = true;
      continue;
    }
    auto single = [&](std::optional<int>& slot) {
      if (toks.size() != 2) syntax_error(line_no, toks[0].column, key + " takes one integer");
      if (slot) syntax_error(line_no, toks[0].column, "duplicate " + key);
      slot = parse_int(toks[1], line_no);
      if (*slot < 0) syntax_error(line_no, toks[1].column, key + " must be non-negative");
    };
    if (key == "N") single(n);
    else if (key == "PB") single(pb);
    else if (key == "NB") single(nb);
    else if (key == "e") {
      if (toks.size() != 5) syntax_error(line_no, toks[0].column, "edge line is 'e <u> <v> <+|-> <axis|off>'");
      Pending p;
      p.edge.u = parse_int(toks[1], line_no) - 1;
      p.edge.v = parse_int(toks[2], line_no) - 1;
      if (toks[3].text == "+") p.edge.sign = Sign::Plus;
      else if (toks[3].text == "-") p.edge.sign = Sign::Minus;
      else syntax_error(line_no, toks[3].column, "edge sign must be + or -");
      if (toks[4].text == "axis") p.edge.location = Location::Axis;
      else if (toks[4].text == "off") p.edge.location = Location::Off;
      else syntax_error(line_no, toks[4].column, "edge location must be axis or off");
      p.line = line_no;
      p.col_u = toks[1].column;
      p.col_v = toks[2].column;
      pending.push_back(p);
    } else {
      syntax_error(line_no, toks[0].column, "unknown statement '" + key + "'");
    }
  }
  if (!have_header) throw Error(ErrorCode::SyntaxError, "missing 'smg <name>' header");
  if (!n || !pb || !nb) throw Error(ErrorCode::SyntaxError, "N, PB and NB are all required");
  g.vertex_count = *n;
  g.p_b = *pb;
  g.n_b = *nb;
  for (const auto& p : pending) {
    if (p.edge.u < 0 || p.edge.u >= g.vertex_count) syntax_error(p.line, p.col_u, "vertex out of range 1..N");
    if (p.edge.v < 0 || p.edge.v >= g.vertex_count) syntax_error(p.line, p.col_v, "vertex out of range 1..N");
    g.edges.push_back(p.edge);
  }
  if (g.axis_edge_count() != g.p_b + g.n_b) {
    throw Error(ErrorCode::AxisCountMismatch, std::to_string(g.axis_edge_count()) + " axis edges but PB+NB = " +
                                                  std::to_string(g.p_b + g.n_b));
  }
  return g;
}

std::string format_smg(const TaitGraph& g) {
  std::string out = "smg " + g.name + "\nN " + std::to_string(g.vertex_count) + "\nPB " + std::to_string(g.p_b) +
                    "\nNB " + std::to_string(g.n_b) + "\n";
  for (const auto& e : g.edges) {
    out += "e " + std::to_string(e.u + 1) + " " + std::to_string(e.v + 1) + " " + sign_char(e.sign) + " " +
           (e.on_axis() ? "axis" : "off") + "\n";
  }
  return out;
}

}  // namespace refspin
