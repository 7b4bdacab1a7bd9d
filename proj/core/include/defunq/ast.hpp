#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace defunq {

using Name = std::string;

/// Code label for a lifted function body, rendered as `ell_<index>`.
struct Label {
  int index = 0;

  std::string render() const { return "ell_" + std::to_string(index); }
  friend bool operator==(const Label&, const Label&) = default;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct NodeTest {
  enum class Kind { Tag, AnyNode, Text };
  Kind kind = Kind::Tag;
  Name tag;  // meaningful for Kind::Tag only

  static NodeTest for_tag(Name t) { return {Kind::Tag, std::move(t)}; }
  static NodeTest any_node() { return {Kind::AnyNode, {}}; }
  static NodeTest text() { return {Kind::Text, {}}; }
  friend bool operator==(const NodeTest&, const NodeTest&) = default;
};

struct TypeTest {
  enum class Kind { Element, Integer, String, Boolean };
  Kind kind = Kind::Integer;
  Name tag;  // meaningful for Kind::Element only

  static TypeTest element(Name t) { return {Kind::Element, std::move(t)}; }
  static TypeTest integer() { return {Kind::Integer, {}}; }
  static TypeTest string() { return {Kind::String, {}}; }
  static TypeTest boolean() { return {Kind::Boolean, {}}; }
  friend bool operator==(const TypeTest&, const TypeTest&) = default;
};

struct IntLit {
  int64_t value = 0;
};
struct StrLit {
  std::string value;
};
struct BoolLit {
  bool value = false;
};
struct VarRef {
  Name name;
};
struct For {
  Name var;
  ExprPtr source;
  ExprPtr body;
};
struct Let {
  Name var;
  ExprPtr def;
  ExprPtr body;
};
struct If {
  ExprPtr cond;
  ExprPtr then_branch;
  ExprPtr else_branch;
};
struct Seq {
  std::vector<ExprPtr> items;
};
struct ChildStep {
  ExprPtr input;
  NodeTest test;
};
struct ElementCtor {
  Name tag;
  ExprPtr content;
};
struct Filter {
  ExprPtr input;
  ExprPtr predicate;
};
struct ContextItem {};
struct StaticCall {
  Name name;
  std::vector<ExprPtr> args;
};
/// Calls to the fixed builtin set; infix operators parse to their
/// operator spelling ("+", "-", "*", "mod", "=", "!=").
struct BuiltinCall {
  Name name;
  std::vector<ExprPtr> args;
};
struct FunctionLiteral {
  std::vector<Name> params;
  ExprPtr body;
};
struct NamedFunRef {
  Name name;
  int arity = 0;
};
struct DynamicCall {
  ExprPtr fun;
  std::vector<ExprPtr> args;
};
struct TsCase {
  TypeTest test;
  Name var;
  ExprPtr body;
};
struct TypeSwitch {
  ExprPtr scrutinee;
  std::vector<TsCase> cases;
  Name default_var;
  ExprPtr default_body;
};
// Target-only forms.
struct ClosureCtor {
  Label label;
  std::vector<ExprPtr> env;
};
struct Branch {
  Label label;
  std::vector<Name> vars;
  ExprPtr body;
};
struct CaseOf {
  ExprPtr scrutinee;
  std::vector<Branch> branches;
};

using ExprNode =
    std::variant<IntLit, StrLit, BoolLit, VarRef, For, Let, If, Seq, ChildStep,
                 ElementCtor, Filter, ContextItem, StaticCall, BuiltinCall,
                 FunctionLiteral, NamedFunRef, DynamicCall, TypeSwitch,
                 ClosureCtor, CaseOf>;

struct Expr {
  ExprNode node;
};

struct FunDecl {
  Name name;
  std::vector<Name> params;
  ExprPtr body;
};

struct Program {
  std::vector<FunDecl> decls;
  ExprPtr main;
};

// --- construction helpers -------------------------------------------------

template <typename T>
ExprPtr make_expr(T&& n) {
  return std::make_shared<Expr>(Expr{ExprNode{std::forward<T>(n)}});
}

inline ExprPtr make_int(int64_t v) { return make_expr(IntLit{v}); }
inline ExprPtr make_str(std::string v) { return make_expr(StrLit{std::move(v)}); }
inline ExprPtr make_bool(bool v) { return make_expr(BoolLit{v}); }
inline ExprPtr make_var(Name n) { return make_expr(VarRef{std::move(n)}); }

/// Sequence constructor that keeps ASTs in printable normal form:
/// zero items yield `()`, one item yields the item itself.
inline ExprPtr make_seq(std::vector<ExprPtr> items) {
  if (items.size() == 1) return items.front();
  return make_expr(Seq{std::move(items)});
}

template <typename T>
const T* expr_as(const ExprPtr& e) {
  return e ? std::get_if<T>(&e->node) : nullptr;
}

template <typename T>
bool expr_is(const ExprPtr& e) {
  return expr_as<T>(e) != nullptr;
}

// --- structural equality ----------------------------------------------------

bool equal(const ExprPtr& a, const ExprPtr& b);
bool equal(const FunDecl& a, const FunDecl& b);
bool equal(const Program& a, const Program& b);

/// Number of Expr nodes in the tree; used by the optimizer's size accounting.
size_t expr_size(const ExprPtr& e);
size_t program_size(const Program& p);

/// Visit every expression node of a program (declaration bodies first,
/// then the main expression), in syntactic order.
void for_each_expr(const Program& p, const std::function<void(const ExprPtr&)>& fn);
void for_each_expr(const ExprPtr& e, const std::function<void(const ExprPtr&)>& fn);

/// Direct children of an expression node, in syntactic order.
std::vector<ExprPtr> expr_children(const ExprPtr& e);

}  // namespace defunq
