#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kclab/bigint.hpp"
#include "kclab/boolfun.hpp"
#include "kclab/rect.hpp"

namespace kclab::nnf {

enum class GateKind { True, False, Literal, And, Or };

/// Gates allow arbitrary fanin (file interoperability); semantically a
/// multi-child gate is its left fold, and determinism of a multi-child OR
/// means pairwise disjoint children.
struct Gate {
  GateKind kind = GateKind::True;
  unsigned var = 0;        // 1-based, literals only
  bool positive = true;    // literals only
  std::vector<std::uint32_t> children;
  unsigned or_hint = 0;    // the j field of "O j c ...", preserved for round trips
};

/// DAG in topological storage: children always precede parents; the root is
/// the last gate. Per-gate variable sets are cached at construction.
class Circuit {
 public:
  Circuit(unsigned n, std::vector<Gate> gates);

  unsigned vars() const { return n_; }
  std::uint32_t root() const { return static_cast<std::uint32_t>(gates_.size() - 1); }
  std::size_t size() const { return gates_.size(); }
  const Gate& gate(std::uint32_t i) const { return gates_[i]; }

  /// Sorted variable indices (0-based) mentioned below gate i.
  const std::vector<unsigned>& gate_vars(std::uint32_t i) const { return var_sets_[i]; }

 private:
  unsigned n_;
  std::vector<Gate> gates_;
  std::vector<std::vector<unsigned>> var_sets_;
};

/// Incremental construction for tests and builders; add_* return gate ids.
class Builder {
 public:
  explicit Builder(unsigned n) : n_(n) {}
  std::uint32_t add_true();
  std::uint32_t add_false();
  std::uint32_t add_literal(unsigned var, bool positive);
  std::uint32_t add_and(std::vector<std::uint32_t> children);
  std::uint32_t add_or(std::vector<std::uint32_t> children, unsigned hint = 0);
  /// The given gate becomes the root (it is moved to the end if needed).
  Circuit finish(std::uint32_t root);

 private:
  unsigned n_;
  std::vector<Gate> gates_;
};

/// Text format: header "nnf V E n"; then V lines, one per gate, in child-
/// before-parent order with 0-based gate indices:
///   "L v" / "L -v"    literal on 1-based variable v
///   "A c i1 ... ic"   AND; "A 0" is the true gate
///   "O j c i1 ... ic" OR;  "O j 0" is the false gate
/// E must equal the total number of child references.
Circuit parse(const std::string& text);
std::string emit(const Circuit& c);

struct ValidationReport {
  bool is_nnf = false;           // structural soundness
  bool decomposable = false;
  std::optional<bool> deterministic;  // absent when n exceeds the table cap
  std::optional<std::uint32_t> decomposability_witness;  // offending AND gate
  std::optional<std::uint32_t> determinism_witness_gate;
  std::optional<std::uint64_t> determinism_witness_model;  // shared assignment
  bool is_d_dnnf() const {
    return is_nnf && decomposable && deterministic.has_value() && *deterministic;
  }
};

/// Decomposability: every AND gate's children mention pairwise disjoint
/// variables. Determinism: every OR gate's children accept pairwise disjoint
/// assignment sets over all n variables (the strongest reading); this needs
/// per-gate tables and is skipped with the flag left unset when n exceeds
/// the truth table cap.
ValidationReport validate(const Circuit& c);

/// Exact model count over all n variables without requiring smoothness:
/// OR children are scaled by 2^(|vars(gate)| - |vars(child)|) and the root by
/// 2^(n - |vars(root)|). Requires a validated d-DNNF.
num::BigInt model_count(const Circuit& c, const ValidationReport& validation);

/// Literal substitution plus constant propagation; the result lives on the
/// unassigned variables in their original relative order and stays
/// decomposable and deterministic.
Circuit condition(const Circuit& c, const std::vector<std::pair<unsigned, bool>>& assignment);

/// The circuit's function as an explicit table (n <= cap).
boolfun::TruthTable truth_table(const Circuit& c);

/// Decision-tree style builder: Shannon expansion along the variable order
/// with node sharing per (level, subfunction). Every internal path touches
/// every level, so gate variable sets shrink one variable per level; constant
/// functions collapse to a single terminal gate. Always validates as a
/// d-DNNF and counts exactly.
Circuit from_truth_table(const boolfun::TruthTable& f, std::vector<unsigned> order = {});

/// Balanced disjoint rectangle cover with at most one rectangle per gate:
/// each model descends from the root (unique accepting child at OR gates,
/// largest-variable-set child at AND gates) to the first gate whose variable
/// set has size at most 2n/3; models are grouped by stopping gate and each
/// group is split along (vars(gate), complement). Group product structure,
/// pairwise disjointness and exhaustiveness are verified; a violation throws
/// std::logic_error("not a rectangle ...") naming the gate. Requires
/// a validated d-DNNF with 2 <= n <= cap.
rect::Cover extract_cover(const Circuit& c);

}  // namespace kclab::nnf
