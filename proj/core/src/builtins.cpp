#include "defunq/builtins.hpp"

#include <unordered_map>

namespace defunq {

namespace {

const std::unordered_map<std::string, BuiltinSig>& table() {
  static const std::unordered_map<std::string, BuiltinSig> t = {
      {"distinct-values", {1, 1}},
      {"head", {1, 1}},
      {"tail", {1, 1}},
      {"empty", {1, 1}},
      {"count", {1, 1}},
      {"concat", {1, -1}},
      {"pow", {2, 2}},
      {"greatest", {2, 2}},
      {"least", {2, 2}},
      {"error", {0, 0}},
      {"to-integer", {1, 1}},
      {"to-boolean", {1, 1}},
      // infix operator spellings
      {"+", {2, 2}},
      {"-", {2, 2}},
      {"*", {2, 2}},
      {"mod", {2, 2}},
      {"=", {2, 2}},
      {"!=", {2, 2}},
  };
  return t;
}

}  // namespace

std::optional<BuiltinSig> builtin_signature(const Name& name) {
  auto it = table().find(name);
  if (it == table().end()) return std::nullopt;
  return it->second;
}

bool builtin_accepts_arity(const Name& name, int arity) {
  auto sig = builtin_signature(name);
  if (!sig) return false;
  if (arity < sig->min_arity) return false;
  return sig->max_arity < 0 || arity <= sig->max_arity;
}

bool is_infix_builtin(const Name& name) {
  return name == "+" || name == "-" || name == "*" || name == "mod" || name == "=" ||
         name == "!=";
}

}  // namespace defunq
