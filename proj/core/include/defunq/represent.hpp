#pragma once

#include <map>
#include <set>
#include <stdexcept>

#include "defunq/ast.hpp"

namespace defunq {

enum class ReprKind { Node, Seq, Auto };

struct ReprChoice {
  ReprKind kind = ReprKind::Node;
};

class NotApplicableError : public std::runtime_error {
 public:
  explicit NotApplicableError(std::string msg) : std::runtime_error(std::move(msg)) {}
};

/// Label dependency graph: an edge l -> l' means a closure labeled l may
/// hold a closure labeled l' in its environment (conservative syntactic
/// over-approximation of runtime nesting).
struct LabelDepGraph {
  std::set<int> nodes;
  std::map<int, std::set<int>> edges;

  bool has_edges() const {
    for (const auto& [from, tos] : edges)
      if (!tos.empty()) return true;
    return false;
  }
};

LabelDepGraph build_label_dep_graph(const Program& p);

enum class EnvPlacement { Inline, Store };

/// Labels on a dependency cycle keep their environments in the store;
/// acyclic labels keep them inline with the closure value.
std::map<int, EnvPlacement> analyze_inlining(const Program& p);

/// Lowers closure constructors to tagged element trees and case-of to
/// typeswitch discrimination; prepends the wrap/unwrap helper declarations
/// when any lowering happened. The result is free of closure constructs.
Program lower_node(const Program& p);

/// Lowers closures to flat sequences `(label, x1, ..., xn)` headed by the
/// reserved label string. Requires applicability_seq(p).
Program lower_seq(const Program& p);

/// True iff every closure environment slot is statically a single non-closure
/// atom and no label participates in dependency edges.
bool applicability_seq(const Program& p);

/// Applies the representation choice; Auto picks Seq when applicable.
Program lower(const Program& p, ReprChoice repr);

}  // namespace defunq
