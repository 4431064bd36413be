#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mqsym/rational.hpp"

namespace mqsym {

/// Observable handle; the value is the insertion position in the registry.
struct ObservableId {
  std::uint32_t value = 0;
  auto operator<=>(const ObservableId&) const = default;
};

/// One outcome of one observable: the state selected by the filter M_a.
struct StateRef {
  ObservableId observable;
  std::uint32_t index = 0;
  auto operator<=>(const StateRef&) const = default;
};

enum class ObservableKind { Atomic, Joint };

struct ObservableDef {
  ObservableId id;
  std::string name;
  std::vector<std::string> labels;
  /// Eigenvalues, one per label. Repeated values are allowed.
  std::optional<std::vector<Rational>> values;
  ObservableKind kind = ObservableKind::Atomic;
  /// For joint observables, the atomic components in declaration order.
  std::vector<ObservableId> components;

  bool is_joint() const { return kind == ObservableKind::Joint; }
  std::size_t size() const { return labels.size(); }
  std::optional<std::size_t> find_label(std::string_view label) const;
};

struct SpectrumEntry {
  std::string label;
  std::optional<Rational> value;
  friend bool operator==(const SpectrumEntry&, const SpectrumEntry&) = default;
};

/// Separator between component labels inside a joint label, e.g. `a1.b2`.
inline constexpr char kJointLabelSeparator = '.';

/// Frozen catalog of observables. Copies share the same immutable data.
class Registry {
 public:
  Registry();

  std::size_t size() const;
  const std::vector<ObservableDef>& observables() const;
  const ObservableDef& observable(ObservableId id) const;
  std::optional<ObservableId> find(std::string_view name) const;
  ObservableId id_of(std::string_view name) const;

  std::vector<SpectrumEntry> spectrum(ObservableId id) const;

  /// Throws UnknownObservable or IndexOutOfRange.
  void validate(StateRef state) const;
  StateRef state(ObservableId id, std::size_t index) const;
  StateRef state(std::string_view observable, std::string_view label) const;
  std::vector<StateRef> states(ObservableId id) const;

  /// `Name:label`
  std::string state_name(StateRef state) const;

  /// Per-component label indices of a joint state, slowest-varying first.
  std::vector<std::size_t> component_indices(StateRef state) const;
  /// Joint state whose component indices are `indices`.
  StateRef joint_state(ObservableId joint, const std::vector<std::size_t>& indices) const;

 private:
  friend class RegistryBuilder;
  struct Data {
    std::vector<ObservableDef> observables;
    std::map<std::string, ObservableId, std::less<>> by_name;
  };
  explicit Registry(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  std::shared_ptr<const Data> data_;
};

class RegistryBuilder {
 public:
  const ObservableDef& define_observable(std::string name, std::vector<std::string> labels,
                                         std::optional<std::vector<Rational>> values = std::nullopt);

  /// Declares the compatible family `components`; its labels are the
  /// Cartesian product of the component labels, first component slowest.
  const ObservableDef& joint_observable(std::string name, const std::vector<ObservableId>& components);

  bool contains(std::string_view name) const;
  std::optional<ObservableId> find(std::string_view name) const;
  const ObservableDef& observable(ObservableId id) const;

  /// Ends construction. Further definitions throw RegistryFrozen.
  Registry freeze();

 private:
  void check_open() const;
  ObservableId next_id() const;
  const ObservableDef& insert(ObservableDef def);

  Registry::Data data_;
  bool frozen_ = false;
};

}  // namespace mqsym
