#include <set>

#include "mqsym/dsl.hpp"

namespace mqsym::dsl {
namespace {

struct ObservableInfo {
  enum class Origin { Basis, Script, Implicit, Joint };
  Origin origin = Origin::Script;
  std::vector<std::string> labels;
  std::optional<std::vector<Rational>> values;
  std::vector<std::string> components;
  bool declared_in_script = false;
  std::optional<Span> span;
};

class Analyzer {
 public:
  explicit Analyzer(const ParseOptions& options) : options_(options) {
    for (const auto& d : options.predeclared) {
      ObservableInfo info;
      info.origin = ObservableInfo::Origin::Basis;
      info.labels = d.labels;
      info.values = d.values;
      add(d.name, std::move(info));
    }
  }

  Registry run(const Program& program) {
    for (const auto& s : program) statement(s);
    return build();
  }

 private:
  void add(const std::string& name, ObservableInfo info) {
    order_.push_back(name);
    observables_.emplace(name, std::move(info));
  }

  void statement(const Stmt& s) {
    switch (s.kind) {
      case Stmt::Kind::ObservableDecl: observable_decl(s); break;
      case Stmt::Kind::JointDecl: joint_decl(s); break;
      case Stmt::Kind::LetBinding:
        expr(*s.expr);
        variables_.insert(s.name);
        break;
      case Stmt::Kind::Query: query(s); break;
    }
  }

  void observable_decl(const Stmt& s) {
    std::vector<std::string> labels;
    std::set<std::string> seen;
    std::size_t valued = 0;
    for (const auto& e : s.labels) {
      if (!seen.insert(e.label).second)
        throw Error(ErrorCode::DuplicateLabel, "observable '" + s.name + "' repeats label '" + e.label + "'", e.span);
      labels.push_back(e.label);
      if (e.value) ++valued;
    }
    if (valued != 0 && valued != s.labels.size())
      throw Error(ErrorCode::ValueCountMismatch,
                  "observable '" + s.name + "' gives values for only some of its labels", s.span);
    std::optional<std::vector<Rational>> values;
    if (valued) {
      values.emplace();
      for (const auto& e : s.labels) values->push_back(*e.value);
    }

    if (auto it = observables_.find(s.name); it != observables_.end()) {
      auto& info = it->second;
      if (info.origin != ObservableInfo::Origin::Basis || info.declared_in_script)
        throw Error(ErrorCode::DuplicateName, "observable '" + s.name + "' is already declared", s.name_span);
      if (info.labels != labels)
        throw Error(ErrorCode::DuplicateName,
                    "observable '" + s.name + "' is declared with labels that differ from the basis file",
                    s.name_span);
      if (values && info.values && *values != *info.values)
        throw Error(ErrorCode::DuplicateName,
                    "observable '" + s.name + "' is declared with values that differ from the basis file",
                    s.name_span);
      if (values) info.values = values;
      info.declared_in_script = true;
      info.span = s.span;
      return;
    }
    ObservableInfo info;
    info.labels = std::move(labels);
    info.values = std::move(values);
    info.declared_in_script = true;
    info.span = s.span;
    add(s.name, std::move(info));
  }

  void joint_decl(const Stmt& s) {
    if (observables_.contains(s.name))
      throw Error(ErrorCode::DuplicateName, "observable '" + s.name + "' is already declared", s.name_span);
    std::set<std::string> seen;
    std::vector<std::string> labels{""};
    for (std::size_t k = 0; k < s.components.size(); ++k) {
      const auto& c = s.components[k];
      auto it = observables_.find(c);
      if (it == observables_.end() || it->second.origin == ObservableInfo::Origin::Joint)
        throw Error(ErrorCode::UnknownComponent, "'" + c + "' is not an atomic observable", s.component_spans[k]);
      if (!seen.insert(c).second)
        throw Error(ErrorCode::DuplicateComponent, "joint '" + s.name + "' repeats component '" + c + "'",
                    s.component_spans[k]);
      std::vector<std::string> next;
      for (const auto& prefix : labels)
        for (const auto& l : it->second.labels)
          next.push_back(prefix.empty() ? l : prefix + kJointLabelSeparator + l);
      labels = std::move(next);
    }
    ObservableInfo info;
    info.origin = ObservableInfo::Origin::Joint;
    info.labels = std::move(labels);
    info.components = s.components;
    info.declared_in_script = true;
    info.span = s.span;
    add(s.name, std::move(info));
  }

  void query(const Stmt& s) {
    using Q = Stmt::QueryKind;
    switch (s.query) {
      case Q::Normalize:
      case Q::Trace:
      case Q::Verify: expr(*s.expr); break;
      case Q::Prob:
        state(s.first);
        state(s.second);
        break;
      case Q::Expect:
        observable(s.name, s.name_span);
        state(s.second);
        break;
      case Q::Spectrum: observable(s.name, s.name_span); break;
    }
  }

  void observable(const std::string& name, const Span& span) const {
    if (!observables_.contains(name))
      throw Error(ErrorCode::UnknownObservable, "unknown observable '" + name + "'", span);
  }

  void state(const StateName& st) {
    auto it = observables_.find(st.observable);
    if (it == observables_.end()) {
      if (!options_.implicit_observables)
        throw Error(ErrorCode::UnknownObservable, "unknown observable '" + st.observable + "'", st.observable_span);
      ObservableInfo info;
      info.origin = ObservableInfo::Origin::Implicit;
      info.labels = {st.label};
      info.span = st.span;
      add(st.observable, std::move(info));
      return;
    }
    auto& info = it->second;
    for (const auto& l : info.labels)
      if (l == st.label) return;
    if (info.origin == ObservableInfo::Origin::Implicit) {
      info.labels.push_back(st.label);
      return;
    }
    throw Error(ErrorCode::UnknownLabel, "observable '" + st.observable + "' has no label '" + st.label + "'",
                st.label_span);
  }

  void expr(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::VarRef:
        if (!variables_.contains(e.name))
          throw Error(ErrorCode::UnboundVariable, "unbound variable '" + e.name + "'", e.span);
        break;
      case Expr::Kind::Symbol:
      case Expr::Kind::TF:
        state(e.out);
        state(e.in);
        break;
      case Expr::Kind::Filter: state(e.out); break;
      default: break;
    }
    for (const auto& a : e.args) expr(*a);
  }

  Registry build() const {
    RegistryBuilder builder;
    for (const auto& name : order_) {
      const auto& info = observables_.at(name);
      try {
        if (info.origin == ObservableInfo::Origin::Joint) {
          std::vector<ObservableId> ids;
          for (const auto& c : info.components) ids.push_back(*builder.find(c));
          builder.joint_observable(name, ids);
        } else {
          builder.define_observable(name, info.labels, info.values);
        }
      } catch (const Error& e) {
        if (e.span() || !info.span) throw;
        throw Error(e.code(), e.what(), info.span);
      }
    }
    return builder.freeze();
  }

  const ParseOptions& options_;
  std::vector<std::string> order_;
  std::map<std::string, ObservableInfo> observables_;
  std::set<std::string> variables_;
};

}  // namespace

Registry analyze(const Program& program, const ParseOptions& options) { return Analyzer(options).run(program); }

StateRef resolve(const Registry& registry, const StateName& st) {
  auto id = registry.find(st.observable);
  if (!id) throw Error(ErrorCode::UnknownObservable, "unknown observable '" + st.observable + "'", st.observable_span);
  auto idx = registry.observable(*id).find_label(st.label);
  if (!idx)
    throw Error(ErrorCode::UnknownLabel, "observable '" + st.observable + "' has no label '" + st.label + "'",
                st.label_span);
  return {*id, static_cast<std::uint32_t>(*idx)};
}

Tree lower(const Expr& e, const Registry& registry, const Environment& env) {
  using K = Expr::Kind;
  auto sub = [&](std::size_t i) { return lower(*e.args.at(i), registry, env); };
  switch (e.kind) {
    case K::Sum: return Tree::sum(sub(0), sub(1));
    case K::Difference: return Tree::difference(sub(0), sub(1));
    case K::Product:
    case K::Scaled: return Tree::product(sub(0), sub(1));
    case K::Negate: return Tree::negate(sub(0));
    case K::Adjoint: return Tree::adjoint(sub(0));
    case K::Conjugate: return Tree::conjugate(sub(0));
    case K::Transpose: return Tree::transpose(sub(0));
    case K::Identity: return Tree::identity();
    case K::ComplexLiteral: return Tree::literal(e.literal);
    case K::Filter: return Tree::filter(resolve(registry, e.out));
    case K::Symbol: return Tree::symbol(resolve(registry, e.out), resolve(registry, e.in));
    case K::TF: return Tree::transform(resolve(registry, e.out), resolve(registry, e.in));
    case K::VarRef: {
      auto it = env.find(e.name);
      if (it == env.end()) throw Error(ErrorCode::UnboundVariable, "unbound variable '" + e.name + "'", e.span);
      return it->second;
    }
  }
  throw Error(ErrorCode::TypeError, "unknown expression node", e.span);
}

}  // namespace mqsym::dsl
