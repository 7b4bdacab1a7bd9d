#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "defunq/ast.hpp"

namespace defunq {

struct TreeNode;
using NodePtr = std::shared_ptr<const TreeNode>;

/// Text content inside an element.
struct TextChunk {
  std::string text;
};

using NodeChild = std::variant<NodePtr, TextChunk>;

struct TreeNode {
  uint64_t id = 0;  // fresh per construction; ignored by structural equality
  Name tag;
  std::vector<NodeChild> children;
};

struct Value;

/// Runtime binding chain used by the source engine's lexical environments.
struct Binding;
using EnvPtr = std::shared_ptr<const Binding>;

/// First-order closure value (target engine only).
struct ClosureData {
  Label label;
  std::vector<Value> env;
  int depth = 1;  // nesting depth, for statistics
};
using ClosurePtr = std::shared_ptr<const ClosureData>;

/// Native function value (source engine only): either a lambda with its
/// captured environment or a reference to a named declared/builtin function.
struct FunData {
  bool is_named = false;
  Name named;  // set when is_named
  int arity = 0;
  std::vector<Name> params;  // lambda
  ExprPtr body;              // lambda
  EnvPtr captured;           // lambda
  int depth = 1;
};
using FunPtr = std::shared_ptr<const FunData>;

struct IntAtom {
  int64_t value = 0;
};
struct StrAtom {
  std::string value;
};
struct BoolAtom {
  bool value = false;
};

using Item = std::variant<IntAtom, StrAtom, BoolAtom, NodePtr, ClosurePtr, FunPtr>;

/// A flat item sequence. Sequence construction always flattens, so a Value
/// can never contain another Value.
struct Value {
  std::vector<Item> items;

  bool empty() const { return items.empty(); }
  size_t size() const { return items.size(); }
};

struct Binding {
  Name name;
  Value value;
  EnvPtr parent;
};

inline Value single(Item i) { return Value{{std::move(i)}}; }

bool items_equal(const Item& a, const Item& b);
bool values_equal(const Value& a, const Value& b);

/// Structural hash consistent with values_equal (node ids ignored).
size_t value_hash(const Value& v);

/// Canonical text form: atoms literally, nodes as <tag>...</tag>,
/// top-level items separated by single spaces.
std::string to_text(const Value& v);
std::string item_text(const Item& i);

/// Element plus text node count over all node items, recursively.
size_t node_count(const Value& v);

/// String value of a node: concatenated descendant text.
std::string string_value(const TreeNode& n);

}  // namespace defunq
