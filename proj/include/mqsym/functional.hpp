#pragma once

#include <cstddef>
#include <map>
#include <optional>

#include "mqsym/tree.hpp"

namespace mqsym {

/// Tr{M(b<-a)} = <a|b>, Tr{I} = dimension. Linear.
/// Throws MissingDimension when `x` has an I term and no dimension is given.
ScalarExpr trace(const AlgebraExpr& x, std::optional<std::size_t> dimension = std::nullopt);
ScalarExpr trace(const Value& x, std::optional<std::size_t> dimension = std::nullopt);

/// p(a|b) = <b|a><a|b>; the Kronecker delta when a and b share an observable.
ScalarExpr probability_symbolic(StateRef a, StateRef b);

/// <A>_b = sum_a value(a) p(a|b). Throws MissingEigenvalues.
ScalarExpr expectation_symbolic(const Registry& registry, ObservableId observable, StateRef b);

/// Per-state gauge angles phi[a] (radians); unassigned states have phi = 0.
struct GaugeAssignment {
  std::map<StateRef, double> phases;

  double phase(StateRef state) const;
  /// States that carry a nonzero angle and therefore a symbolic phase.
  bool is_active(StateRef state) const;
  void validate(const Registry& registry) const;
};

/// M(a<-b) -> exp(i(phi[a]-phi[b])) M(a<-b) and <a|b> -> exp(i(phi[b]-phi[a])) <a|b>.
/// Phases are attached as exact exponent vectors; numeric values are only
/// substituted by the realization.
AlgebraExpr gauge_transform(const AlgebraExpr& x, const GaugeAssignment& gauge);
ScalarExpr gauge_transform(const ScalarExpr& s, const GaugeAssignment& gauge);

}  // namespace mqsym
