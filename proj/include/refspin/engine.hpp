#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "refspin/diagram.hpp"
#include "refspin/models.hpp"

namespace refspin {

struct EngineConfig {
  double enum_cap = 1e8;  // max weighted states per component for naive enumeration
  int arity_cap = 12;     // max variables in an intermediate factor
  int threads = 0;        // 0: REFSPIN_THREADS if set, else hardware concurrency

  int worker_count() const;
};

enum class Method { Naive, Eliminate, Auto };

std::string_view to_string(Method m);
Method parse_method(std::string_view text);

struct EliminationOrder {
  std::vector<int> order;
  int width = 0;
};

struct InvariantValue {
  Complex z;
  Complex i;
  double n_states = 0;  // states enumerated, or table entries touched when eliminating
  Method method = Method::Naive;
  int width = 0;        // elimination width; 0 for naive
};

/// The weight matrix carried by an edge: V^s on the axis, W^s off it.
const CMatrix& edge_weight(const TaitEdge& e, const RefinedSpinModel& r);

/// Z by direct enumeration, one connected component at a time.
Complex partition_naive(const TaitGraph& g, const RefinedSpinModel& r, const EngineConfig& cfg = {});

/// Repeated minimum-degree order (ties to the lowest id) and its width.
EliminationOrder min_degree_order(const TaitGraph& g);

/// Z by variable elimination. The achieved width is written to `width` when given.
Complex partition_eliminate(const TaitGraph& g, const RefinedSpinModel& r, const EliminationOrder* order = nullptr,
                            const EngineConfig& cfg = {}, int* width = nullptr, double* n_states = nullptr);

InvariantValue normalized_invariant(const TaitGraph& g, const RefinedSpinModel& r, Method method = Method::Auto,
                                    const EngineConfig& cfg = {});

/// Unnormalized sum over states with sigma(v0) = a.
Complex pinned_sum(const TaitGraph& g, const RefinedSpinModel& r, int v0, std::size_t a, Method method = Method::Auto,
                   const EngineConfig& cfg = {});

/// I for both checkerboard colorings, white-unbounded first.
std::pair<InvariantValue, InvariantValue> invariant_both_colorings(const SymmetricDiagram& d, const RefinedSpinModel& r,
                                                                   Method method = Method::Auto,
                                                                   const EngineConfig& cfg = {});

/// I via both colorings; throws ColoringMismatch when they differ by more than tol.
InvariantValue invariant_of_diagram(const SymmetricDiagram& d, const RefinedSpinModel& r, Method method = Method::Auto,
                                    const EngineConfig& cfg = {}, double tol = kTolNum);

}  // namespace refspin
