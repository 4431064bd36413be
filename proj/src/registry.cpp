#include "mqsym/registry.hpp"

#include <set>

#include "mqsym/error.hpp"

namespace mqsym {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::ValueCountMismatch: return "ValueCountMismatch";
    case ErrorCode::EmptySpectrum: return "EmptySpectrum";
    case ErrorCode::UnknownComponent: return "UnknownComponent";
    case ErrorCode::DuplicateComponent: return "DuplicateComponent";
    case ErrorCode::TooFewComponents: return "TooFewComponents";
    case ErrorCode::UnknownObservable: return "UnknownObservable";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::RegistryFrozen: return "RegistryFrozen";
    case ErrorCode::MissingDimension: return "MissingDimension";
    case ErrorCode::MissingEigenvalues: return "MissingEigenvalues";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NotRealizable: return "NotRealizable";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::TypeError: return "TypeError";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Error";
}

std::optional<std::size_t> ObservableDef::find_label(std::string_view label) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return i;
  return std::nullopt;
}

// ---------------------------------------------------------------- Registry

Registry::Registry() : data_(std::make_shared<const Data>()) {}

std::size_t Registry::size() const { return data_->observables.size(); }

const std::vector<ObservableDef>& Registry::observables() const { return data_->observables; }

const ObservableDef& Registry::observable(ObservableId id) const {
  if (id.value >= data_->observables.size())
    throw Error(ErrorCode::UnknownObservable, "unknown observable id " + std::to_string(id.value));
  return data_->observables[id.value];
}

std::optional<ObservableId> Registry::find(std::string_view name) const {
  auto it = data_->by_name.find(name);
  if (it == data_->by_name.end()) return std::nullopt;
  return it->second;
}

ObservableId Registry::id_of(std::string_view name) const {
  if (auto id = find(name)) return *id;
  throw Error(ErrorCode::UnknownObservable, "unknown observable '" + std::string(name) + "'");
}

std::vector<SpectrumEntry> Registry::spectrum(ObservableId id) const {
  const auto& def = observable(id);
  std::vector<SpectrumEntry> out;
  out.reserve(def.size());
  for (std::size_t i = 0; i < def.size(); ++i)
    out.push_back({def.labels[i], def.values ? std::optional<Rational>((*def.values)[i]) : std::nullopt});
  return out;
}

void Registry::validate(StateRef state) const {
  const auto& def = observable(state.observable);
  if (state.index >= def.size())
    throw Error(ErrorCode::IndexOutOfRange, "index " + std::to_string(state.index) + " out of range for '" +
                                                def.name + "' (" + std::to_string(def.size()) + " labels)");
}

StateRef Registry::state(ObservableId id, std::size_t index) const {
  StateRef s{id, static_cast<std::uint32_t>(index)};
  validate(s);
  return s;
}

StateRef Registry::state(std::string_view observable_name, std::string_view label) const {
  const auto& def = observable(id_of(observable_name));
  auto idx = def.find_label(label);
  if (!idx)
    throw Error(ErrorCode::UnknownLabel,
                "observable '" + def.name + "' has no label '" + std::string(label) + "'");
  return {def.id, static_cast<std::uint32_t>(*idx)};
}

std::vector<StateRef> Registry::states(ObservableId id) const {
  const auto& def = observable(id);
  std::vector<StateRef> out;
  for (std::uint32_t i = 0; i < def.size(); ++i) out.push_back({id, i});
  return out;
}

std::string Registry::state_name(StateRef state) const {
  validate(state);
  const auto& def = observable(state.observable);
  return def.name + ":" + def.labels[state.index];
}

std::vector<std::size_t> Registry::component_indices(StateRef state) const {
  validate(state);
  const auto& def = observable(state.observable);
  if (!def.is_joint()) return {state.index};
  std::vector<std::size_t> out(def.components.size());
  std::size_t rest = state.index;
  for (std::size_t k = def.components.size(); k-- > 0;) {
    std::size_t n = observable(def.components[k]).size();
    out[k] = rest % n;
    rest /= n;
  }
  return out;
}

StateRef Registry::joint_state(ObservableId joint, const std::vector<std::size_t>& indices) const {
  const auto& def = observable(joint);
  if (!def.is_joint() || indices.size() != def.components.size())
    throw Error(ErrorCode::IndexOutOfRange, "component index tuple does not match '" + def.name + "'");
  std::size_t flat = 0;
  for (std::size_t k = 0; k < indices.size(); ++k) {
    std::size_t n = observable(def.components[k]).size();
    if (indices[k] >= n) throw Error(ErrorCode::IndexOutOfRange, "component index out of range");
    flat = flat * n + indices[k];
  }
  return {joint, static_cast<std::uint32_t>(flat)};
}

// --------------------------------------------------------- RegistryBuilder

void RegistryBuilder::check_open() const {
  if (frozen_) throw Error(ErrorCode::RegistryFrozen, "registry is frozen");
}

ObservableId RegistryBuilder::next_id() const {
  return ObservableId{static_cast<std::uint32_t>(data_.observables.size())};
}

const ObservableDef& RegistryBuilder::insert(ObservableDef def) {
  data_.by_name.emplace(def.name, def.id);
  data_.observables.push_back(std::move(def));
  return data_.observables.back();
}

bool RegistryBuilder::contains(std::string_view name) const { return data_.by_name.contains(name); }

std::optional<ObservableId> RegistryBuilder::find(std::string_view name) const {
  auto it = data_.by_name.find(name);
  if (it == data_.by_name.end()) return std::nullopt;
  return it->second;
}

const ObservableDef& RegistryBuilder::observable(ObservableId id) const {
  if (id.value >= data_.observables.size())
    throw Error(ErrorCode::UnknownObservable, "unknown observable id " + std::to_string(id.value));
  return data_.observables[id.value];
}

const ObservableDef& RegistryBuilder::define_observable(std::string name, std::vector<std::string> labels,
                                                       std::optional<std::vector<Rational>> values) {
  check_open();
  if (contains(name)) throw Error(ErrorCode::DuplicateName, "observable '" + name + "' already defined");
  if (labels.empty()) throw Error(ErrorCode::EmptySpectrum, "observable '" + name + "' has no labels");
  std::set<std::string_view> seen;
  for (const auto& l : labels)
    if (!seen.insert(l).second)
      throw Error(ErrorCode::DuplicateLabel, "observable '" + name + "' repeats label '" + l + "'");
  if (values && values->size() != labels.size())
    throw Error(ErrorCode::ValueCountMismatch, "observable '" + name + "' has " + std::to_string(labels.size()) +
                                                   " labels but " + std::to_string(values->size()) + " values");

  ObservableDef def;
  def.id = next_id();
  def.name = std::move(name);
  def.labels = std::move(labels);
  def.values = std::move(values);
  return insert(std::move(def));
}

const ObservableDef& RegistryBuilder::joint_observable(std::string name,
                                                      const std::vector<ObservableId>& components) {
  check_open();
  if (contains(name)) throw Error(ErrorCode::DuplicateName, "observable '" + name + "' already defined");
  std::set<ObservableId> seen;
  for (auto c : components) {
    if (c.value >= data_.observables.size() || data_.observables[c.value].is_joint())
      throw Error(ErrorCode::UnknownComponent,
                  "joint '" + name + "': component " + std::to_string(c.value) + " is not an atomic observable");
    if (!seen.insert(c).second)
      throw Error(ErrorCode::DuplicateComponent,
                  "joint '" + name + "' repeats component '" + data_.observables[c.value].name + "'");
  }
  if (components.size() < 2)
    throw Error(ErrorCode::TooFewComponents, "joint '" + name + "' needs at least two components");

  std::vector<std::string> labels{""};
  for (auto c : components) {
    std::vector<std::string> next;
    for (const auto& prefix : labels)
      for (const auto& l : data_.observables[c.value].labels)
        next.push_back(prefix.empty() ? l : prefix + kJointLabelSeparator + l);
    labels = std::move(next);
  }
  std::set<std::string_view> distinct(labels.begin(), labels.end());
  if (distinct.size() != labels.size())
    throw Error(ErrorCode::DuplicateLabel, "joint '" + name + "' produces ambiguous labels");

  ObservableDef def;
  def.id = next_id();
  def.name = std::move(name);
  def.labels = std::move(labels);
  def.kind = ObservableKind::Joint;
  def.components = components;
  return insert(std::move(def));
}

Registry RegistryBuilder::freeze() {
  check_open();
  frozen_ = true;
  return Registry(std::make_shared<const Registry::Data>(data_));
}

}  // namespace mqsym
