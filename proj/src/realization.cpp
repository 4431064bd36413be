#include "mqsym/realization.hpp"

#include <cmath>
#include <limits>

#include "json.hpp"

#include "mqsym/error.hpp"
#include "mqsym/render.hpp"

namespace mqsym {

using json = nlohmann::ordered_json;

// ------------------------------------------------------------ Realization

Realization::Realization(Registry registry, std::size_t dimension, double tolerance,
                         std::map<ObservableId, ComplexMatrix> bases)
    : registry_(std::move(registry)), dimension_(dimension), tolerance_(tolerance), bases_(std::move(bases)) {
  if (dimension_ == 0) throw Error(ErrorCode::DimensionMismatch, "dimension must be positive");
  if (!(tolerance_ > 0)) throw Error(ErrorCode::ConfigError, "tolerance must be positive");
  const auto n = static_cast<Eigen::Index>(dimension_);
  for (const auto& [id, u] : bases_) {
    const auto& def = registry_.observable(id);
    if (def.is_joint())
      throw Error(ErrorCode::NotRealizable, "joint observable '" + def.name + "' cannot be given a basis");
    if (def.size() != dimension_)
      throw Error(ErrorCode::DimensionMismatch, "observable '" + def.name + "' has " + std::to_string(def.size()) +
                                                    " labels but the space has dimension " +
                                                    std::to_string(dimension_));
    if (u.rows() != n || u.cols() != n)
      throw Error(ErrorCode::DimensionMismatch, "basis of '" + def.name + "' is not " + std::to_string(dimension_) +
                                                    "x" + std::to_string(dimension_));
    double residual = unitarity_residual(u);
    if (!(residual <= tolerance_))
      throw Error(ErrorCode::NotUnitary,
                  "basis of '" + def.name + "' is not unitary (residual " + std::to_string(residual) + ")");
  }
}

std::vector<ObservableId> Realization::mapped() const {
  std::vector<ObservableId> out;
  for (const auto& [id, u] : bases_) out.push_back(id);
  return out;
}

const ComplexMatrix& Realization::basis(ObservableId id) const {
  auto it = bases_.find(id);
  if (it == bases_.end())
    throw Error(ErrorCode::UnknownObservable,
                "observable '" + registry_.observable(id).name + "' has no basis in this realization");
  return it->second;
}

ComplexVector Realization::ket(StateRef state) const {
  registry_.validate(state);
  return basis(state.observable).col(state.index);
}

Realization Realization::with_gauge(const GaugeAssignment& gauge) const {
  auto bases = bases_;
  for (auto& [id, u] : bases)
    for (Eigen::Index k = 0; k < u.cols(); ++k)
      u.col(k) *= std::polar(1.0, gauge.phase({id, static_cast<std::uint32_t>(k)}));
  return Realization(registry_, dimension_, tolerance_, std::move(bases));
}

double max_abs_entry(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double unitarity_residual(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  return max_abs_entry(u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols()));
}

// ------------------------------------------------------------ basis files

namespace {

[[noreturn]] void bad_file(const std::string& what) {
  throw Error(ErrorCode::ParseError, "basis file: " + what);
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    bad_file(e.what());
  }
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) bad_file(where + " lacks \"" + key + "\"");
  return obj.at(key);
}

std::optional<std::vector<Rational>> read_values(const json& v, const std::string& name) {
  if (v.is_null()) return std::nullopt;
  if (!v.is_array()) bad_file("values of '" + name + "' must be an array or null");
  std::vector<Rational> out;
  for (const auto& x : v) {
    if (!x.is_number()) bad_file("values of '" + name + "' must be numbers");
    out.push_back(rational_from_double(x.get<double>()));
  }
  return out;
}

ComplexMatrix read_matrix(const json& m, std::size_t n, const std::string& name) {
  if (!m.is_array() || m.size() != n)
    throw Error(ErrorCode::DimensionMismatch, "matrix of '" + name + "' must have " + std::to_string(n) + " rows");
  ComplexMatrix out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = m[i];
    if (!row.is_array() || row.size() != n)
      throw Error(ErrorCode::DimensionMismatch,
                  "row " + std::to_string(i) + " of '" + name + "' must have " + std::to_string(n) + " entries");
    for (std::size_t j = 0; j < n; ++j) {
      const auto& e = row[j];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        bad_file("entry (" + std::to_string(i) + "," + std::to_string(j) + ") of '" + name +
                 "' must be a [re, im] pair");
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return out;
}

const json& observables_of(const json& doc) {
  const auto& obs = field(doc, "observables", "document");
  if (!obs.is_object()) bad_file("\"observables\" must be an object");
  return obs;
}

}  // namespace

std::vector<BasisDeclaration> read_basis_declarations(std::string_view json_text) {
  json doc = parse_json(json_text);
  std::vector<BasisDeclaration> out;
  for (const auto& [name, entry] : observables_of(doc).items()) {
    BasisDeclaration d;
    d.name = name;
    const auto& labels = field(entry, "labels", "observable '" + name + "'");
    if (!labels.is_array()) bad_file("labels of '" + name + "' must be an array");
    for (const auto& l : labels) {
      if (!l.is_string()) bad_file("labels of '" + name + "' must be strings");
      d.labels.push_back(l.get<std::string>());
    }
    d.values = entry.contains("values") ? read_values(entry.at("values"), name) : std::nullopt;
    out.push_back(std::move(d));
  }
  return out;
}

Realization load_realization(std::string_view json_text, const Registry& registry) {
  return load_realization(json_text, registry, std::nullopt);
}

Realization load_realization(std::string_view json_text, const Registry& registry,
                             std::optional<double> tolerance_override) {
  json doc = parse_json(json_text);
  const auto& dim = field(doc, "dimension", "document");
  if (!dim.is_number_integer() || dim.get<long long>() < 1) bad_file("\"dimension\" must be a positive integer");
  const auto n = static_cast<std::size_t>(dim.get<long long>());

  double tolerance = kDefaultTolerance;
  if (doc.contains("tolerance")) {
    if (!doc["tolerance"].is_number() || !(doc["tolerance"].get<double>() > 0))
      bad_file("\"tolerance\" must be a positive number");
    tolerance = doc["tolerance"].get<double>();
  }
  if (tolerance_override) tolerance = *tolerance_override;

  std::map<ObservableId, ComplexMatrix> bases;
  for (const auto& [name, entry] : observables_of(doc).items()) {
    auto id = registry.find(name);
    if (!id) throw Error(ErrorCode::UnknownObservable, "basis file names unknown observable '" + name + "'");
    const auto& def = registry.observable(*id);
    std::vector<std::string> labels;
    for (const auto& l : field(entry, "labels", "observable '" + name + "'")) labels.push_back(l.get<std::string>());
    if (labels != def.labels) bad_file("labels of '" + name + "' do not match its declaration");
    if (entry.contains("values")) {
      auto values = read_values(entry.at("values"), name);
      if (values && def.values && *values != *def.values)
        bad_file("values of '" + name + "' do not match its declaration");
    }
    if (def.size() != n)
      throw Error(ErrorCode::DimensionMismatch, "observable '" + name + "' has " + std::to_string(def.size()) +
                                                    " labels but dimension is " + std::to_string(n));
    bases.emplace(*id, read_matrix(field(entry, "matrix", "observable '" + name + "'"), n, name));
  }
  return Realization(registry, n, tolerance, std::move(bases));
}

std::string dump_realization(const Realization& r) {
  json doc;
  doc["dimension"] = r.dimension();
  doc["tolerance"] = r.tolerance();
  json obs = json::object();
  for (auto id : r.mapped()) {
    const auto& def = r.registry().observable(id);
    json entry;
    entry["labels"] = def.labels;
    if (def.values) {
      json values = json::array();
      for (const auto& v : *def.values) values.push_back(v.get_d());
      entry["values"] = values;
    } else {
      entry["values"] = nullptr;
    }
    const auto& u = r.basis(id);
    json rows = json::array();
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index j = 0; j < u.cols(); ++j) row.push_back({u(i, j).real(), u(i, j).imag()});
      rows.push_back(row);
    }
    entry["matrix"] = rows;
    obs[def.name] = entry;
  }
  doc["observables"] = obs;
  return doc.dump(2);
}

// ------------------------------------------------------------ random bases

ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto dim = static_cast<Eigen::Index>(n);
  ComplexMatrix z(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j)
    for (Eigen::Index i = 0; i < dim; ++i) {
      double re = gauss(rng);
      double im = gauss(rng);
      z(i, j) = Complex(re, im) / std::sqrt(2.0);
    }
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& packed = qr.matrixQR();
  for (Eigen::Index k = 0; k < dim; ++k) {
    Complex d = packed(k, k);
    double mag = std::abs(d);
    q.col(k) *= mag > 0 ? d / mag : Complex(1.0);
  }
  return q;
}

Realization random_realization(const Registry& registry, std::size_t dimension,
                               const std::vector<ObservableId>& observables, std::uint64_t seed, double tolerance) {
  std::mt19937_64 rng(seed);
  std::map<ObservableId, ComplexMatrix> bases;
  for (auto id : observables) bases[id] = random_unitary(dimension, rng);
  return Realization(registry, dimension, tolerance, std::move(bases));
}

// ------------------------------------------------------------ evaluation

Complex eval_tf(const Realization& r, StateRef x, StateRef y) { return r.ket(x).dot(r.ket(y)); }

Complex eval_scalar(const Realization& r, const ScalarExpr& s, const PhaseValues& phases) {
  Complex total = 0.0;
  for (const auto& [m, c] : s.terms()) {
    Complex term = c.to_complex();
    for (const auto& f : m.factors) term *= eval_tf(r, f.bra, f.ket);
    double angle = 0.0;
    for (const auto& [state, n] : m.phase) {
      auto it = phases.find(state);
      if (it != phases.end()) angle += static_cast<double>(n) * it->second;
    }
    if (angle != 0.0) term *= std::polar(1.0, angle);
    total += term;
  }
  return total;
}

ComplexMatrix matrix_of(const Realization& r, const AlgebraExpr& x, const PhaseValues& phases) {
  const auto n = static_cast<Eigen::Index>(r.dimension());
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (const auto& [w, s] : x.terms()) {
    Complex c = eval_scalar(r, s, phases);
    if (w.is_identity())
      out.diagonal().array() += c;
    else if (w.is_conjugated())
      out.noalias() += c * (r.ket(w.out()) * r.ket(w.in()).adjoint()).conjugate();
    else
      out.noalias() += c * (r.ket(w.out()) * r.ket(w.in()).adjoint());
  }
  return out;
}

ComplexMatrix matrix_of(const Realization& r, const Value& x, const PhaseValues& phases) {
  return matrix_of(r, to_algebra(x), phases);
}

namespace {

// Either a number or a matrix; numbers stand for multiples of the identity.
struct Numeric {
  bool is_scalar = true;
  Complex scalar = 0.0;
  ComplexMatrix matrix;
};

ComplexMatrix as_matrix(const Numeric& v, Eigen::Index n) {
  if (!v.is_scalar) return v.matrix;
  return v.scalar * ComplexMatrix::Identity(n, n);
}

Numeric matrix_value(ComplexMatrix m) { return {false, 0.0, std::move(m)}; }

Numeric direct(const Realization& r, const Tree& t) {
  using K = Tree::Kind;
  const auto n = static_cast<Eigen::Index>(r.dimension());
  switch (t.kind()) {
    case K::Literal: return {true, t.value().to_complex(), {}};
    case K::Transform: return {true, eval_tf(r, t.out(), t.in()), {}};
    case K::Symbol: return matrix_value(r.ket(t.out()) * r.ket(t.in()).adjoint());
    case K::Identity: return matrix_value(ComplexMatrix::Identity(n, n));
    case K::Negate: {
      Numeric a = direct(r, t.arg(0));
      if (a.is_scalar) return {true, -a.scalar, {}};
      return matrix_value(-a.matrix);
    }
    case K::Adjoint: {
      Numeric a = direct(r, t.arg(0));
      if (a.is_scalar) return {true, std::conj(a.scalar), {}};
      return matrix_value(a.matrix.adjoint());
    }
    case K::Sum:
    case K::Difference: {
      Numeric a = direct(r, t.arg(0));
      Numeric b = direct(r, t.arg(1));
      const double sign = t.kind() == K::Sum ? 1.0 : -1.0;
      if (a.is_scalar && b.is_scalar) return {true, a.scalar + sign * b.scalar, {}};
      return matrix_value(as_matrix(a, n) + sign * as_matrix(b, n));
    }
    case K::Product: {
      Numeric a = direct(r, t.arg(0));
      Numeric b = direct(r, t.arg(1));
      if (a.is_scalar && b.is_scalar) return {true, a.scalar * b.scalar, {}};
      if (a.is_scalar) return matrix_value(a.scalar * b.matrix);
      if (b.is_scalar) return matrix_value(b.scalar * a.matrix);
      return matrix_value(a.matrix * b.matrix);
    }
    // The conjugate algebra is realized by entrywise conjugation in the reference frame.
    case K::Conjugate: {
      Numeric a = direct(r, t.arg(0));
      if (a.is_scalar) return {true, std::conj(a.scalar), {}};
      return matrix_value(a.matrix.conjugate());
    }
    case K::Transpose: {
      Numeric a = direct(r, t.arg(0));
      if (a.is_scalar) return a;
      return matrix_value(a.matrix.transpose());
    }
  }
  throw Error(ErrorCode::TypeError, "unknown tree node");
}

std::optional<std::string> unrealizable_reason(const Realization& r, const Tree& raw) {
  for (auto s : raw.states()) {
    if (s.observable.value >= r.registry().size()) return "unknown observable";
    const auto& def = r.registry().observable(s.observable);
    if (def.is_joint()) return "joint observable '" + def.name + "' is not realizable";
    if (!r.is_mapped(s.observable)) return "observable '" + def.name + "' has no basis";
  }
  return std::nullopt;
}

}  // namespace

ComplexMatrix direct_matrix(const Realization& r, const Tree& tree) {
  if (auto reason = unrealizable_reason(r, tree)) throw Error(ErrorCode::NotRealizable, *reason);
  return as_matrix(direct(r, tree), static_cast<Eigen::Index>(r.dimension()));
}

VerifyReport verify_normal_form(const Realization& r, const Tree& raw, double tolerance) {
  VerifyReport report;
  report.tolerance = tolerance;
  if (auto reason = unrealizable_reason(r, raw)) {
    report.skipped = true;
    report.reason = *reason;
    return report;
  }
  ComplexMatrix direct_m = as_matrix(direct(r, raw), static_cast<Eigen::Index>(r.dimension()));
  ComplexMatrix symbolic_m = matrix_of(r, evaluate(r.registry(), raw));
  report.deviation = max_abs_entry(direct_m - symbolic_m);
  return report;
}

// ------------------------------------------------------------ spectral layer

namespace {

std::vector<double> eigenvalues(const Realization& r, ObservableId id) {
  const auto& def = r.registry().observable(id);
  if (!def.values) throw Error(ErrorCode::MissingEigenvalues, "observable '" + def.name + "' has no eigenvalues");
  std::vector<double> out;
  for (const auto& v : *def.values) out.push_back(v.get_d());
  return out;
}

}  // namespace

ComplexMatrix operator_from_spectrum(const Realization& r, ObservableId observable) {
  return spectral_function(r, observable, {0.0, 1.0});
}

ComplexMatrix spectral_function(const Realization& r, ObservableId observable, const std::vector<Complex>& coeffs) {
  const auto values = eigenvalues(r, observable);
  const auto& u = r.basis(observable);
  const auto n = static_cast<Eigen::Index>(r.dimension());
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    Complex f = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) f = f * values[static_cast<std::size_t>(k)] + *it;
    out.noalias() += f * (u.col(k) * u.col(k).adjoint());
  }
  return out;
}

ComplexMatrix polynomial_of_matrix(const ComplexMatrix& x, const std::vector<Complex>& coeffs) {
  ComplexMatrix acc = ComplexMatrix::Zero(x.rows(), x.cols());
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = (acc * x).eval();
    acc.diagonal().array() += *it;
  }
  return acc;
}

CharPolyReport char_poly_check(const Realization& r, ObservableId observable, double tolerance) {
  const auto values = eigenvalues(r, observable);
  ComplexMatrix a = operator_from_spectrum(r, observable);
  const auto n = a.rows();
  ComplexMatrix product = ComplexMatrix::Identity(n, n);
  for (double v : values) product = (product * (a - v * ComplexMatrix::Identity(n, n))).eval();
  return {max_abs_entry(product), tolerance};
}

// ------------------------------------------------------------ wave functions

WaveFunction basis_state(const Realization& r, StateRef state) {
  r.registry().validate(state);
  WaveFunction psi{state.observable, std::vector<Complex>(r.dimension(), 0.0)};
  psi.components[state.index] = 1.0;
  return psi;
}

double norm(const WaveFunction& psi) {
  double sum = 0.0;
  for (auto c : psi.components) sum += std::norm(c);
  return std::sqrt(sum);
}

ComplexMatrix transformation_matrix(const Realization& r, ObservableId a, ObservableId b) {
  const auto n = static_cast<Eigen::Index>(r.dimension());
  ComplexMatrix u(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      u(i, j) = eval_tf(r, {a, static_cast<std::uint32_t>(i)}, {b, static_cast<std::uint32_t>(j)});
  return u;
}

WaveFunction change_basis(const Realization& r, const WaveFunction& psi, ObservableId to) {
  if (psi.components.size() != r.dimension())
    throw Error(ErrorCode::DimensionMismatch, "wave function has " + std::to_string(psi.components.size()) +
                                                  " components, expected " + std::to_string(r.dimension()));
  r.basis(psi.basis);
  r.basis(to);
  if (psi.basis == to) return psi;
  WaveFunction out{to, std::vector<Complex>(r.dimension(), 0.0)};
  for (std::uint32_t i = 0; i < r.dimension(); ++i)
    for (std::uint32_t j = 0; j < r.dimension(); ++j)
      out.components[i] += eval_tf(r, {to, i}, {psi.basis, j}) * psi.components[j];
  return out;
}

double born_probability(const Realization& r, StateRef a, const WaveFunction& psi) {
  r.registry().validate(a);
  return std::norm(change_basis(r, psi, a.observable).components[a.index]);
}

double probability(const Realization& r, StateRef a, StateRef b) {
  return (eval_tf(r, b, a) * eval_tf(r, a, b)).real();
}

double expectation(const Realization& r, ObservableId observable, StateRef b) {
  const auto values = eigenvalues(r, observable);
  double sum = 0.0;
  for (std::uint32_t k = 0; k < values.size(); ++k) sum += values[k] * probability(r, {observable, k}, b);
  return sum;
}

Complex matrix_element(const Realization& r, StateRef a, const ComplexMatrix& x, StateRef b) {
  if (x.rows() != static_cast<Eigen::Index>(r.dimension()) || x.cols() != x.rows())
    throw Error(ErrorCode::DimensionMismatch, "operator does not match the realization dimension");
  return r.ket(a).dot(x * r.ket(b));
}

Complex matrix_element_via_trace(const Realization& r, StateRef a, const ComplexMatrix& x, StateRef b) {
  if (x.rows() != static_cast<Eigen::Index>(r.dimension()) || x.cols() != x.rows())
    throw Error(ErrorCode::DimensionMismatch, "operator does not match the realization dimension");
  ComplexMatrix symbol_matrix = matrix_of(r, AlgebraExpr::word(Word::symbol(b, a)));
  return (symbol_matrix * x).trace();
}

}  // namespace mqsym
