#pragma once

#include "cfsem/graph.hpp"
#include "cfsem/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace cfsem {

/// A domain element: an integer or a string, compared by kind and content.
class Value {
 public:
  Value() = default;
  Value(std::int64_t v) : data_(v) {}  // NOLINT(google-explicit-constructor)
  Value(int v) : data_(static_cast<std::int64_t>(v)) {}  // NOLINT
  Value(std::string v) : data_(std::move(v)) {}  // NOLINT
  Value(const char* v) : data_(std::string(v)) {}  // NOLINT

  bool is_integer() const { return std::holds_alternative<std::int64_t>(data_); }
  std::int64_t as_integer() const { return std::get<std::int64_t>(data_); }
  const std::string& as_string() const { return std::get<std::string>(data_); }

  // Textual form used by reports and the query grammar.
  std::string text() const;

  friend bool operator==(const Value&, const Value&) = default;

 private:
  std::variant<std::int64_t, std::string> data_;
};

using Domain = std::vector<Value>;

// Value indices, one per node id: a node assignment, or a disturbance tuple
// when indexing the disturbance supports.
using State = std::vector<std::size_t>;

/// Extensional structural function f_i: (parent values) x (disturbance) -> value.
///
/// Rows are stored row-major over the parents in ascending id order, with the
/// disturbance as the fastest-varying coordinate. Entries are value indices.
class StructFn {
 public:
  StructFn() = default;
  StructFn(std::vector<NodeId> parents, std::vector<std::size_t> parent_sizes, std::size_t u_size,
           std::size_t out_size, std::vector<std::size_t> table);

  static StructFn constant(std::vector<NodeId> parents, std::vector<std::size_t> parent_sizes,
                           std::size_t u_size, std::size_t out_size, std::size_t value);

  const std::vector<NodeId>& parents() const { return parents_; }
  const std::vector<std::size_t>& parent_sizes() const { return parent_sizes_; }
  std::size_t u_size() const { return u_size_; }
  std::size_t out_size() const { return out_size_; }
  const std::vector<std::size_t>& table() const { return table_; }
  std::size_t row_count() const { return table_.size(); }

  // Reads parent values out of a full node state.
  std::size_t operator()(const State& nodes, std::size_t u) const;
  // Parent values given in parents() order.
  std::size_t at(std::span<const std::size_t> parent_values, std::size_t u) const;

  // Partial application: the parent `parent` is fixed at `value` and dropped
  // from the signature.
  StructFn fix(NodeId parent, std::size_t value) const;

  bool ignores_disturbance() const;

  friend bool operator==(const StructFn&, const StructFn&) = default;

 private:
  std::vector<NodeId> parents_;
  std::vector<std::size_t> parent_sizes_;
  std::size_t u_size_ = 1;
  std::size_t out_size_ = 1;
  std::vector<std::size_t> table_;
};

/// Law of the disturbance vector U = (U_1, ..., U_n).
class DisturbanceModel {
 public:
  enum class Kind { independent, joint };

  struct JointEntry {
    State u;
    Rational p;
    friend bool operator==(const JointEntry&, const JointEntry&) = default;
  };

  DisturbanceModel() = default;
  static DisturbanceModel independent(std::vector<Domain> supports,
                                      std::vector<std::vector<Rational>> pmfs);
  // Unlisted tuples have probability zero; duplicates are merged.
  static DisturbanceModel joint(std::vector<Domain> supports, std::vector<JointEntry> entries);

  Kind kind() const { return kind_; }
  const std::vector<Domain>& supports() const { return supports_; }
  const Domain& support(NodeId i) const { return supports_.at(i); }
  const std::vector<std::vector<Rational>>& pmfs() const { return pmfs_; }
  const std::vector<JointEntry>& entries() const { return entries_; }

  // |U_1| x ... x |U_n| (saturating).
  std::size_t tuple_count() const;
  // Tuples carrying mass: the product for independent laws, listed entries for joint ones.
  std::size_t weighted_count() const;

  // Every tuple of the product space, probability ignored.
  void for_each_tuple(const std::function<void(const State&)>& fn) const;
  // Tuples with positive probability.
  void for_each_weighted(const std::function<void(const State&, const Rational&)>& fn) const;

  friend bool operator==(const DisturbanceModel&, const DisturbanceModel&) = default;

 private:
  Kind kind_ = Kind::independent;
  std::vector<Domain> supports_;
  std::vector<std::vector<Rational>> pmfs_;
  std::vector<JointEntry> entries_;
};

enum class ModelClass { npsem_ie, ffrcistg_candidate };

std::string_view to_string(ModelClass c);

inline constexpr std::size_t kDefaultEnumerationCap = 10'000'000;

struct EnumerationLimits {
  std::size_t max_tuples = kDefaultEnumerationCap;
};

/// Finite structural model M = (F, U) over a Dag. Immutable after construction.
class SemModel {
 public:
  SemModel() = default;
  // Validates every invariant (signatures match parent sets, outputs lie in
  // domains, disturbance law is a pmf, NPSEM-IE requires independence).
  SemModel(Dag dag, std::vector<Domain> domains, std::vector<StructFn> functions,
           DisturbanceModel disturbances, ModelClass model_class);

  const Dag& dag() const { return dag_; }
  std::size_t size() const { return dag_.size(); }
  const std::vector<Domain>& domains() const { return domains_; }
  const Domain& domain(NodeId i) const { return domains_.at(i); }
  const std::vector<StructFn>& functions() const { return functions_; }
  const StructFn& function(NodeId i) const { return functions_.at(i); }
  const DisturbanceModel& disturbances() const { return disturbances_; }
  ModelClass model_class() const { return class_; }

  // Recursion V_i = f_i(PA_i, U_i) in topological order.
  State evaluate(const State& u) const;

  std::size_t value_index(NodeId node, std::string_view text) const;

  friend bool operator==(const SemModel&, const SemModel&) = default;

 private:
  Dag dag_;
  std::vector<Domain> domains_;
  std::vector<StructFn> functions_;
  DisturbanceModel disturbances_;
  ModelClass class_ = ModelClass::npsem_ie;
};

/// do(A_1 = a_1, ..., A_k = a_k), values given in textual form.
struct Intervention {
  std::vector<std::pair<std::string, std::string>> settings;

  // "A=1,B=0"
  static Intervention parse(std::string_view text);
  NodeSet nodes() const;
  std::string to_string() const;
};

/// An intervention resolved against a model: ascending node ids and value indices.
struct BoundIntervention {
  std::vector<NodeId> nodes;
  std::vector<std::size_t> values;

  std::size_t value_for(NodeId node) const;
  bool contains(NodeId node) const;
};

BoundIntervention bind(const SemModel& m, const Intervention& iv);

State evaluate_factual(const SemModel& m, const State& u);

// M_a: every intervened node's function becomes the constant a_j. Same graph.
SemModel surgery_pearl(const SemModel& m, const Intervention& iv);

// M^a: intervened nodes keep their functions; every child of an intervened
// node gets a_j fixed in place of that parent. Graph loses arrows out of a_set.
SemModel surgery_new(const SemModel& m, const Intervention& iv);

struct TripleEvaluation {
  State factual;
  State pearl;
  State partial;  // under surgery_new
};

TripleEvaluation evaluate_triple(const SemModel& m, const Intervention& iv, const State& u);

// "L=1, A=0, Y=1" over all nodes (or the listed ids).
std::string format_state(const SemModel& m, const State& s);
std::string format_disturbance(const SemModel& m, const State& u);

}  // namespace cfsem
