#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "mqsym/functional.hpp"
#include "mqsym/tree.hpp"

namespace mqsym {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kDefaultTolerance = 1e-10;
inline constexpr double kOracleTolerance = 1e-9;

/// Numeric phase angle per state, used to evaluate gauge phases.
using PhaseValues = std::map<StateRef, double>;

/// Orthonormal basis per atomic observable in a fixed N-dimensional complex
/// space. Column k of an observable's matrix is the ket of its label k.
/// Immutable once constructed.
class Realization {
 public:
  /// Validates every basis: atomic observable, N labels, N x N, unitary
  /// within `tolerance`. Throws NotRealizable, DimensionMismatch, NotUnitary.
  Realization(Registry registry, std::size_t dimension, double tolerance,
              std::map<ObservableId, ComplexMatrix> bases);

  const Registry& registry() const { return registry_; }
  std::size_t dimension() const { return dimension_; }
  double tolerance() const { return tolerance_; }

  bool is_mapped(ObservableId id) const { return bases_.contains(id); }
  std::vector<ObservableId> mapped() const;
  /// Throws UnknownObservable when `id` has no basis.
  const ComplexMatrix& basis(ObservableId id) const;
  ComplexVector ket(StateRef state) const;

  /// Same realization with each ket |a> replaced by exp(i*phi[a]) |a>.
  Realization with_gauge(const GaugeAssignment& gauge) const;

 private:
  Registry registry_;
  std::size_t dimension_;
  double tolerance_;
  std::map<ObservableId, ComplexMatrix> bases_;
};

/// Max-entry norm of U^dagger U - I.
double unitarity_residual(const ComplexMatrix& u);
double max_abs_entry(const ComplexMatrix& m);

// ------------------------------------------------------------ basis files
//
// {"dimension": N, "tolerance": t,
//  "observables": {"<name>": {"labels": [...], "values": [...] | null,
//                             "matrix": [[[re, im], ...], ...]}}}
// The matrix is row-major, N rows of N [re, im] pairs.

struct BasisDeclaration {
  std::string name;
  std::vector<std::string> labels;
  std::optional<std::vector<Rational>> values;
};

/// Observable declarations carried by a basis file, in file order.
std::vector<BasisDeclaration> read_basis_declarations(std::string_view json_text);

/// Throws ParseError, DimensionMismatch or NotUnitary. Every observable in the
/// file must already exist in `registry` with the same labels.
Realization load_realization(std::string_view json_text, const Registry& registry);
/// Uses the file's tolerance unless `tolerance_override` is given.
Realization load_realization(std::string_view json_text, const Registry& registry,
                             std::optional<double> tolerance_override);
std::string dump_realization(const Realization& realization);

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
/// of R's diagonal moved into Q.
ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& rng);

/// Deterministic for a fixed seed; bases are drawn in the order given.
Realization random_realization(const Registry& registry, std::size_t dimension,
                               const std::vector<ObservableId>& observables, std::uint64_t seed,
                               double tolerance = kDefaultTolerance);

// ------------------------------------------------------------ evaluation

/// <x|y>, conjugate-linear in x.
Complex eval_tf(const Realization& r, StateRef x, StateRef y);
Complex eval_scalar(const Realization& r, const ScalarExpr& s, const PhaseValues& phases = {});

ComplexMatrix matrix_of(const Realization& r, const AlgebraExpr& x, const PhaseValues& phases = {});
/// Scalars map to s * I.
ComplexMatrix matrix_of(const Realization& r, const Value& x, const PhaseValues& phases = {});

/// Matrix of an unreduced tree by direct matrix sums and products.
/// Throws NotRealizable for joint observables.
ComplexMatrix direct_matrix(const Realization& r, const Tree& tree);

struct VerifyReport {
  bool skipped = false;
  std::string reason;
  double deviation = 0.0;
  double tolerance = kOracleTolerance;

  bool passed() const { return !skipped && deviation <= tolerance; }
};

/// Compares direct_matrix(raw) against matrix_of(normal form of raw).
/// Trees that cannot be realized are reported as skipped.
VerifyReport verify_normal_form(const Realization& r, const Tree& raw, double tolerance = kOracleTolerance);

// ------------------------------------------------------------ spectral layer

/// sum_k value_k |a_k><a_k|. Throws MissingEigenvalues.
ComplexMatrix operator_from_spectrum(const Realization& r, ObservableId observable);

/// sum_k f(value_k) |a_k><a_k| for f(t) = sum_j coeffs[j] t^j.
ComplexMatrix spectral_function(const Realization& r, ObservableId observable, const std::vector<Complex>& coeffs);
/// f(X) by Horner's rule on the matrix.
ComplexMatrix polynomial_of_matrix(const ComplexMatrix& x, const std::vector<Complex>& coeffs);

struct CharPolyReport {
  double residual = 0.0;
  double tolerance = kOracleTolerance;
  bool passed() const { return residual <= tolerance; }
};

/// Max-entry magnitude of prod_k (A - value_k I).
CharPolyReport char_poly_check(const Realization& r, ObservableId observable, double tolerance = kOracleTolerance);

// ------------------------------------------------------------ wave functions

struct WaveFunction {
  ObservableId basis;
  /// components[k] = <b_k|psi>
  std::vector<Complex> components;
};

WaveFunction basis_state(const Realization& r, StateRef state);
double norm(const WaveFunction& psi);

/// Matrix with entries <a_i|b_j>.
ComplexMatrix transformation_matrix(const Realization& r, ObservableId a, ObservableId b);

/// psi(a) = sum_b <a|b> psi(b).
WaveFunction change_basis(const Realization& r, const WaveFunction& psi, ObservableId to);

/// |psi(a)|^2 after moving psi into a's basis.
double born_probability(const Realization& r, StateRef a, const WaveFunction& psi);

/// p(a|b) = <b|a><a|b>.
double probability(const Realization& r, StateRef a, StateRef b);
/// sum_a value(a) p(a|b) with double eigenvalues.
double expectation(const Realization& r, ObservableId observable, StateRef b);

/// <a|X|b> computed directly.
Complex matrix_element(const Realization& r, StateRef a, const ComplexMatrix& x, StateRef b);
/// Tr{M(b<-a) X}; must agree with matrix_element.
Complex matrix_element_via_trace(const Realization& r, StateRef a, const ComplexMatrix& x, StateRef b);

}  // namespace mqsym
