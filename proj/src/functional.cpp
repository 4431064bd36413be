#include "mqsym/functional.hpp"

#include "mqsym/error.hpp"

namespace mqsym {

ScalarExpr trace(const AlgebraExpr& x, std::optional<std::size_t> dimension) {
  ScalarExpr out;
  for (const auto& [w, s] : x.terms()) {
    if (w.is_identity()) {
      if (!dimension)
        throw Error(ErrorCode::MissingDimension, "trace of an expression containing I needs a dimension");
      out += s * ScalarExpr(ComplexRational(Rational(static_cast<unsigned long>(*dimension))));
    } else if (w.is_conjugated()) {
      out += s * ScalarExpr::transform(w.out(), w.in());
    } else {
      out += s * ScalarExpr::transform(w.in(), w.out());
    }
  }
  return out;
}

ScalarExpr trace(const Value& x, std::optional<std::size_t> dimension) {
  if (const auto* s = std::get_if<ScalarExpr>(&x)) {
    // A bare scalar is s * I.
    if (s->is_zero()) return {};
    return trace(AlgebraExpr::identity(*s), dimension);
  }
  return trace(std::get<AlgebraExpr>(x), dimension);
}

ScalarExpr probability_symbolic(StateRef a, StateRef b) {
  return ScalarExpr::transform(b, a) * ScalarExpr::transform(a, b);
}

ScalarExpr expectation_symbolic(const Registry& registry, ObservableId observable, StateRef b) {
  const auto& def = registry.observable(observable);
  registry.validate(b);
  if (!def.values)
    throw Error(ErrorCode::MissingEigenvalues, "observable '" + def.name + "' has no eigenvalues");
  ScalarExpr out;
  for (std::uint32_t k = 0; k < def.size(); ++k)
    out += ScalarExpr(ComplexRational((*def.values)[k])) * probability_symbolic({observable, k}, b);
  return out;
}

double GaugeAssignment::phase(StateRef state) const {
  auto it = phases.find(state);
  return it == phases.end() ? 0.0 : it->second;
}

bool GaugeAssignment::is_active(StateRef state) const { return phase(state) != 0.0; }

void GaugeAssignment::validate(const Registry& registry) const {
  for (const auto& [state, phi] : phases) registry.validate(state);
}

namespace {

void shift(PhaseExponents& phase, const GaugeAssignment& gauge, StateRef state, long n) {
  if (gauge.is_active(state)) add_phase(phase, state, n);
}

}  // namespace

ScalarExpr gauge_transform(const ScalarExpr& s, const GaugeAssignment& gauge) {
  ScalarExpr out;
  for (const auto& [m, c] : s.terms()) {
    Monomial g = m;
    for (const auto& f : m.factors) {
      shift(g.phase, gauge, f.bra, -1);
      shift(g.phase, gauge, f.ket, +1);
    }
    out.add_term(g, c);
  }
  return out;
}

AlgebraExpr gauge_transform(const AlgebraExpr& x, const GaugeAssignment& gauge) {
  AlgebraExpr out;
  for (const auto& [w, s] : x.terms()) {
    ScalarExpr coeff = gauge_transform(s, gauge);
    if (!w.is_identity()) {
      // Entrywise conjugation flips the sign of the column phases.
      const long sign = w.is_conjugated() ? -1 : 1;
      Monomial phase;
      shift(phase.phase, gauge, w.out(), sign);
      shift(phase.phase, gauge, w.in(), -sign);
      coeff = coeff * ScalarExpr::monomial(phase);
    }
    out.add_term(w, coeff);
  }
  return out;
}

}  // namespace mqsym
