#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "refspin/engine.hpp"
#include "refspin/rewrites.hpp"

namespace refspin {

/// Diagram codes compiled into the library from data/diagrams.
struct Fixture {
  std::string name;
  std::string sud;
};

const std::vector<Fixture>& fixtures();
SymmetricDiagram fixture_diagram(std::string_view name);
/// Tait graph of a fixture for the coloring with white unbounded faces.
TaitGraph fixture_graph(std::string_view name);

/// The k-fold connected sum of g with itself, glued at vertex 0 each time.
TaitGraph iterated_sum(const TaitGraph& g, int k);

/// Type II refinement a I + b (J - I) over the default Potts base, from the
/// root-th solution (0..3) of a(a+2b) = d, b(a-b) = d.
RefinedSpinModel potts_family_type_ii(int root);

/// Row of the reproduction table: a computed value against its closed form.
struct ReproRow {
  std::string label;
  Complex value;
  Complex expected;
  double tol = kTolNum;
  bool pass = false;
};

std::vector<ReproRow> repro_table(const EngineConfig& cfg = {});

struct CriterionResult {
  int id = 0;
  std::string title;
  double tol = kTolNum;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

/// Runs acceptance criterion `id` (1..10).
CriterionResult run_criterion(int id, const EngineConfig& cfg = {});
std::vector<CriterionResult> run_acceptance(const EngineConfig& cfg = {});

}  // namespace refspin
