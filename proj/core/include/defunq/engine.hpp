#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "defunq/ast.hpp"
#include "defunq/value.hpp"

namespace defunq {

enum class EngineKind { Source, Target, Lowered };

enum class ErrorTag {
  UnknownLabel,      // case-of / dispatch default hit (closed-world violation)
  ArityMismatch,     // dynamic call with wrong argument count
  UnboundVariable,   // also: context item used without a context
  TypeError,         // ill-typed operands, mod by zero, overflow
  NotFirstOrder,     // engine received a construct it does not support
  RecursionLimit,    // call depth guard
};

const char* error_tag_name(ErrorTag t);

class EvalError : public std::runtime_error {
 public:
  EvalError(ErrorTag tag, std::string message)
      : std::runtime_error(std::string(error_tag_name(tag)) + ": " + message), tag_(tag) {}

  ErrorTag tag() const { return tag_; }

 private:
  ErrorTag tag_;
};

struct RunStats {
  int64_t dispatched_calls = 0;
  int64_t static_calls = 0;
  int64_t closures_built = 0;
  int64_t nodes_built = 0;
  int64_t env_items_stored = 0;
  int64_t max_closure_depth = 0;

  /// Fixed key set for the flat serialized record.
  std::map<std::string, int64_t> as_record() const;
};

struct EvalOptions {
  bool share_env = false;
  /// Test hook: capture only a literal's free variables instead of the
  /// whole enclosing environment (used by the free-vars soundness check).
  bool restrict_captures = false;
  int max_call_depth = 4096;
};

struct EvalResult {
  Value value;
  RunStats stats;
};

/// Evaluates a program. Source gives native first-class-function semantics,
/// Target interprets closure constructors and case-of directly, Lowered
/// supports only first-order constructs.
EvalResult eval(const Program& p, EngineKind engine, const EvalOptions& opts = {});

}  // namespace defunq
