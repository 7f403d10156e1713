#include "refspin/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "refspin/repro.hpp"

namespace refspin {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError:
    case ErrorCode::NonPlanar:
    case ErrorCode::OpenArc:
    case ErrorCode::NotBipartite:
    case ErrorCode::AxisCountMismatch:
    case ErrorCode::BadVertex:
    case ErrorCode::Io:
      return kExitParse;
    case ErrorCode::ZeroEntry:
    case ErrorCode::NotSymmetric:
    case ErrorCode::TypeIIIFailure:
    case ErrorCode::BadLoopValue:
    case ErrorCode::NotInNomura:
    case ErrorCode::ZeroModulus:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::BadModelSpec:
      return kExitModelInvalid;
    case ErrorCode::TooLarge:
    case ErrorCode::WidthOverflow:
      return kExitResource;
    case ErrorCode::ColoringMismatch:
    case ErrorCode::PatternMismatch:
    case ErrorCode::TypeIIRequired:
      return kExitCheckFailed;
  }
  return kExitCheckFailed;
}

namespace {

using json = nlohmann::ordered_json;

std::string format_number(double x, const char* fmt = "%.17g") {
  char buf[32];
  std::snprintf(buf, sizeof buf, fmt, x);
  return buf;
}

// Collects results and prints them as text lines or one JSON object.
class Report {
 public:
  Report(std::string command, double tol, bool as_json)
      : command_(std::move(command)), tol_(tol), json_(as_json), start_(std::chrono::steady_clock::now()) {}

  void input(const std::string& key, const std::string& value) { inputs_[key] = value; }

  void value(const std::string& label, Complex z) {
    results_.push_back({{"label", label}, {"value", format_complex(z)}});
  }
  void text(const std::string& label, const std::string& v) { results_.push_back({{"label", label}, {"text", v}}); }
  void number(const std::string& label, double v) { results_.push_back({{"label", label}, {"number", v}}); }
  bool check(const std::string& label, bool pass, double tol) {
    results_.push_back({{"label", label}, {"pass", pass}, {"tol", tol}});
    all_pass_ &= pass;
    return pass;
  }
  bool all_pass() const { return all_pass_; }

  void print(std::ostream& out) const {
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    if (json_) {
      json j;
      j["command"] = command_;
      j["inputs"] = inputs_;
      j["results"] = results_;
      j["tolerance"] = tol_;
      j["wall_time"] = wall;
      j["ok"] = all_pass_;
      out << j.dump(2) << "\n";
      return;
    }
    for (const auto& r : results_) {
      const std::string label = r["label"];
      if (r.contains("value")) out << label << ": " << r["value"].get<std::string>() << "\n";
      else if (r.contains("text")) out << label << ": " << r["text"].get<std::string>() << "\n";
      else if (r.contains("number")) out << label << ": " << format_number(r["number"].get<double>()) << "\n";
      else
        out << (r["pass"].get<bool>() ? "PASS " : "FAIL ") << label << " (tol " << format_number(r["tol"].get<double>(), "%g")
            << ")\n";
    }
  }

 private:
  std::string command_;
  double tol_;
  bool json_;
  std::chrono::steady_clock::time_point start_;
  json inputs_ = json::object();
  json results_ = json::array();
  bool all_pass_ = true;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string first_word(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string w;
    if (words >> w) return w.substr(0, w.find(';'));
  }
  return {};
}

// A diagram file, or a Tait graph given directly.
struct Input {
  std::string path;
  bool is_diagram = false;
  SymmetricDiagram diagram;
  TaitGraph graph;  // white-unbounded coloring for diagrams
};

Input load(const std::string& path) {
  Input in;
  in.path = path;
  const std::string text = read_text(path);
  const std::string head = first_word(text);
  if (head == "sud") {
    in.is_diagram = true;
    in.diagram = parse_sud(text);
    in.graph = tait_graph(in.diagram, checkerboard(in.diagram).first);
  } else if (head == "smg") {
    in.graph = parse_smg(text);
  } else {
    throw Error(ErrorCode::SyntaxError, path + ": expected a 'sud' or 'smg' header");
  }
  return in;
}

struct Globals {
  double tol = kTolNum;
  std::string method = "auto";
  bool json = false;
};

// I of an input; for diagrams both colorings are reported and compared.
Complex evaluate(const Input& in, const RefinedSpinModel& r, const Globals& g, Report& rep, const std::string& tag) {
  const Method m = parse_method(g.method);
  if (!in.is_diagram) {
    const auto v = normalized_invariant(in.graph, r, m);
    rep.value("Z" + tag, v.z);
    rep.value("I" + tag, v.i);
    rep.text("method" + tag, std::string(to_string(v.method)));
    return v.i;
  }
  const auto [c1, c2] = invariant_both_colorings(in.diagram, r, m);
  rep.value("Z" + tag + " coloring 1", c1.z);
  rep.value("I" + tag + " coloring 1", c1.i);
  rep.value("Z" + tag + " coloring 2", c2.z);
  rep.value("I" + tag + " coloring 2", c2.i);
  rep.check("colorings agree" + tag, std::abs(c1.i - c2.i) <= g.tol, g.tol);
  return c1.i;
}

void validate_model(const std::string& spec, const Globals& g, Report& rep) {
  rep.input("model", spec);
  const RefinedSpinModel r = parse_model_spec(spec);
  const SpinModel& m = r.base;
  rep.number("n", static_cast<double>(m.n));
  rep.number("d", m.d);
  rep.value("alpha_W", m.alpha_w);
  // verify_spin_model already threw on failure; restate the checks.
  rep.check("W+ symmetric", is_symmetric(m.w_plus, g.tol), g.tol);
  rep.check("type II: W+ o W- = J", approx_equal(m.w_plus.hadamard(m.w_minus), CMatrix::ones(m.n), g.tol), g.tol);
  rep.check("type III: W+ Y_ab = d W-(a,b) Y_ab", is_in_nomura(m.w_plus, m) &&
                                                       approx_equal(psi_image(m.w_plus, m), m.d * m.w_minus, g.tol),
            g.tol);
  bool type_i = true;
  for (std::size_t y = 0; y < m.n; ++y) {
    Complex s = 0.0;
    for (std::size_t x = 0; x < m.n; ++x) s += m.w_plus(y, x);
    type_i &= std::abs(s / m.d - m.w_minus(0, 0)) <= g.tol;
  }
  rep.check("type I: (1/d) sum_x W+(y,x) = W-(a,a)", type_i, g.tol);
  rep.check("V+ symmetric", is_symmetric(r.v_plus, g.tol), g.tol);
  rep.check("V+ in the Nomura algebra", is_in_nomura(r.v_plus, m), g.tol);
  rep.value("alpha_V+", r.alpha_vp);
  rep.value("alpha_V-", r.alpha_vm);
  rep.text("type II refinement", r.type_ii ? "yes" : "no");
  rep.text("translation invariant", is_translation_invariant(r, g.tol) ? "yes" : "no");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Refined spin-model invariants of symmetric union diagrams", "refspin"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--tol", g.tol, "comparison tolerance")->default_val(kTolNum);
  app.add_option("--method", g.method, "naive, eliminate or auto")->check(CLI::IsMember({"naive", "eliminate", "auto"}));
  app.add_flag("--json", g.json, "machine-readable report");

  std::string model, file_a, file_b, file;
  std::uint64_t seed = 0;
  int steps = 10, v1 = 1, v2 = 1, coloring = 1;

  auto* validate = app.add_subcommand("validate-model", "check the spin-model axioms of a model spec");
  validate->add_option("--model", model, "model spec")->required();

  auto* invariant = app.add_subcommand("invariant", "print Z and I of a diagram or Tait graph");
  invariant->add_option("--model", model, "model spec")->required();
  invariant->add_option("file", file, ".sud or .smg file")->required();

  auto* compare = app.add_subcommand("compare", "compare I on two inputs");
  compare->add_option("--model", model, "model spec")->required();
  compare->add_option("a", file_a)->required();
  compare->add_option("b", file_b)->required();

  auto* glue = app.add_subcommand("gluing-check", "check I(A#B) = I(A) I(B) / d");
  glue->add_option("--model", model, "model spec")->required();
  glue->add_option("--v1", v1, "gluing vertex of A (1-based)");
  glue->add_option("--v2", v2, "gluing vertex of B (1-based)");
  glue->add_option("a", file_a)->required();
  glue->add_option("b", file_b)->required();

  auto* fuzz = app.add_subcommand("rewrite-fuzz", "check that random rewrites preserve I");
  fuzz->add_option("--model", model, "model spec")->required();
  fuzz->add_option("--seed", seed, "random seed")->required();
  fuzz->add_option("--steps", steps, "rewrite steps")->required()->check(CLI::NonNegativeNumber);
  fuzz->add_option("file", file)->required();

  auto* repro = app.add_subcommand("paper-repro", "run the reproduction table and acceptance suite");

  auto* tait = app.add_subcommand("tait", "write the Tait graph of a diagram as .smg");
  tait->add_option("--coloring", coloring, "1: white unbounded face, 2: complement")->check(CLI::Range(1, 2));
  tait->add_option("file", file, ".sud file")->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  CLI::App* sub = app.get_subcommands().front();
  Report rep(sub->get_name(), g.tol, g.json);
  rep.input("tol", format_number(g.tol, "%g"));
  rep.input("method", g.method);
  try {
    if (sub == validate) {
      validate_model(model, g, rep);
    } else if (sub == invariant) {
      rep.input("model", model);
      rep.input("file", file);
      const RefinedSpinModel r = parse_model_spec(model);
      const Input in = load(file);
      evaluate(in, r, g, rep, "");
    } else if (sub == compare) {
      rep.input("model", model);
      rep.input("a", file_a);
      rep.input("b", file_b);
      const RefinedSpinModel r = parse_model_spec(model);
      const Complex ia = evaluate(load(file_a), r, g, rep, "(A)");
      const Complex ib = evaluate(load(file_b), r, g, rep, "(B)");
      const double gap = std::abs(ia - ib);
      rep.number("|I(A) - I(B)|", gap);
      rep.text("verdict", gap > 10 * g.tol ? "DISTINGUISHED" : "NOT DISTINGUISHED");
    } else if (sub == glue) {
      rep.input("model", model);
      rep.input("a", file_a);
      rep.input("b", file_b);
      const RefinedSpinModel r = parse_model_spec(model);
      const Input a = load(file_a), b = load(file_b);
      const Method m = parse_method(g.method);
      const Complex ia = normalized_invariant(a.graph, r, m).i;
      const Complex ib = normalized_invariant(b.graph, r, m).i;
      const TaitGraph glued = connected_sum(a.graph, b.graph, v1 - 1, v2 - 1);
      const Complex iab = normalized_invariant(glued, r, m).i;
      rep.value("I(A)", ia);
      rep.value("I(B)", ib);
      rep.value("I(A#B)", iab);
      rep.value("I(A) I(B) / d", ia * ib / r.d());
      rep.text("translation invariant", is_translation_invariant(r, g.tol) ? "yes" : "no");
      rep.check("I(A#B) = I(A) I(B) / d", std::abs(iab - ia * ib / r.d()) <= g.tol, g.tol);
    } else if (sub == fuzz) {
      rep.input("model", model);
      rep.input("file", file);
      rep.input("seed", std::to_string(seed));
      rep.input("steps", std::to_string(steps));
      const RefinedSpinModel r = parse_model_spec(model);
      const Input in = load(file);
      const Method m = parse_method(g.method);
      const TaitGraph h = random_equivalent(in.graph, seed, steps, r.type_ii);
      const Complex before = normalized_invariant(in.graph, r, m).i;
      const Complex after = normalized_invariant(h, r, m).i;
      rep.number("N before", in.graph.vertex_count);
      rep.number("N after", h.vertex_count);
      rep.text("axis pair moves", r.type_ii ? "on" : "off");
      rep.value("I before", before);
      rep.value("I after", after);
      rep.check("I preserved", std::abs(before - after) <= g.tol, g.tol);
    } else if (sub == repro) {
      for (const auto& row : repro_table()) {
        rep.value(row.label, row.value);
        rep.value(row.label + " expected", row.expected);
        rep.check(row.label, row.pass, row.tol);
      }
      for (const auto& c : run_acceptance()) {
        rep.check("criterion " + std::to_string(c.id) + ": " + c.title + " [" + c.detail + "]", c.pass, c.tol);
      }
    } else if (sub == tait) {
      const Input in = load(file);
      if (!in.is_diagram) throw Error(ErrorCode::SyntaxError, file + " is not a .sud diagram");
      const auto [c1, c2] = checkerboard(in.diagram);
      out << format_smg(tait_graph(in.diagram, coloring == 1 ? c1 : c2));
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  rep.print(out);
  return rep.all_pass() ? kExitOk : kExitCheckFailed;
}

}  // namespace refspin
