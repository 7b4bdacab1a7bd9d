#include "defunq/ast.hpp"

namespace defunq {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool equal_vec(const std::vector<ExprPtr>& a, const std::vector<ExprPtr>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!equal(a[i], b[i])) return false;
  return true;
}

}  // namespace

bool equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      overloaded{
          [&](const IntLit& x) { return x.value == std::get<IntLit>(b->node).value; },
          [&](const StrLit& x) { return x.value == std::get<StrLit>(b->node).value; },
          [&](const BoolLit& x) { return x.value == std::get<BoolLit>(b->node).value; },
          [&](const VarRef& x) { return x.name == std::get<VarRef>(b->node).name; },
          [&](const For& x) {
            const auto& y = std::get<For>(b->node);
            return x.var == y.var && equal(x.source, y.source) && equal(x.body, y.body);
          },
          [&](const Let& x) {
            const auto& y = std::get<Let>(b->node);
            return x.var == y.var && equal(x.def, y.def) && equal(x.body, y.body);
          },
          [&](const If& x) {
            const auto& y = std::get<If>(b->node);
            return equal(x.cond, y.cond) && equal(x.then_branch, y.then_branch) &&
                   equal(x.else_branch, y.else_branch);
          },
          [&](const Seq& x) { return equal_vec(x.items, std::get<Seq>(b->node).items); },
          [&](const ChildStep& x) {
            const auto& y = std::get<ChildStep>(b->node);
            return x.test == y.test && equal(x.input, y.input);
          },
          [&](const ElementCtor& x) {
            const auto& y = std::get<ElementCtor>(b->node);
            return x.tag == y.tag && equal(x.content, y.content);
          },
          [&](const Filter& x) {
            const auto& y = std::get<Filter>(b->node);
            return equal(x.input, y.input) && equal(x.predicate, y.predicate);
          },
          [&](const ContextItem&) { return true; },
          [&](const StaticCall& x) {
            const auto& y = std::get<StaticCall>(b->node);
            return x.name == y.name && equal_vec(x.args, y.args);
          },
          [&](const BuiltinCall& x) {
            const auto& y = std::get<BuiltinCall>(b->node);
            return x.name == y.name && equal_vec(x.args, y.args);
          },
          [&](const FunctionLiteral& x) {
            const auto& y = std::get<FunctionLiteral>(b->node);
            return x.params == y.params && equal(x.body, y.body);
          },
          [&](const NamedFunRef& x) {
            const auto& y = std::get<NamedFunRef>(b->node);
            return x.name == y.name && x.arity == y.arity;
          },
          [&](const DynamicCall& x) {
            const auto& y = std::get<DynamicCall>(b->node);
            return equal(x.fun, y.fun) && equal_vec(x.args, y.args);
          },
          [&](const TypeSwitch& x) {
            const auto& y = std::get<TypeSwitch>(b->node);
            if (!(equal(x.scrutinee, y.scrutinee) && x.cases.size() == y.cases.size() &&
                  x.default_var == y.default_var && equal(x.default_body, y.default_body)))
              return false;
            for (size_t i = 0; i < x.cases.size(); ++i) {
              if (!(x.cases[i].test == y.cases[i].test && x.cases[i].var == y.cases[i].var &&
                    equal(x.cases[i].body, y.cases[i].body)))
                return false;
            }
            return true;
          },
          [&](const ClosureCtor& x) {
            const auto& y = std::get<ClosureCtor>(b->node);
            return x.label == y.label && equal_vec(x.env, y.env);
          },
          [&](const CaseOf& x) {
            const auto& y = std::get<CaseOf>(b->node);
            if (!(equal(x.scrutinee, y.scrutinee) && x.branches.size() == y.branches.size()))
              return false;
            for (size_t i = 0; i < x.branches.size(); ++i) {
              if (!(x.branches[i].label == y.branches[i].label &&
                    x.branches[i].vars == y.branches[i].vars &&
                    equal(x.branches[i].body, y.branches[i].body)))
                return false;
            }
            return true;
          },
      },
      a->node);
}

bool equal(const FunDecl& a, const FunDecl& b) {
  return a.name == b.name && a.params == b.params && equal(a.body, b.body);
}

bool equal(const Program& a, const Program& b) {
  if (a.decls.size() != b.decls.size()) return false;
  for (size_t i = 0; i < a.decls.size(); ++i)
    if (!equal(a.decls[i], b.decls[i])) return false;
  return equal(a.main, b.main);
}

std::vector<ExprPtr> expr_children(const ExprPtr& e) {
  std::vector<ExprPtr> out;
  if (!e) return out;
  std::visit(
      overloaded{
          [&](const IntLit&) {}, [&](const StrLit&) {}, [&](const BoolLit&) {},
          [&](const VarRef&) {}, [&](const ContextItem&) {}, [&](const NamedFunRef&) {},
          [&](const For& x) { out = {x.source, x.body}; },
          [&](const Let& x) { out = {x.def, x.body}; },
          [&](const If& x) { out = {x.cond, x.then_branch, x.else_branch}; },
          [&](const Seq& x) { out = x.items; },
          [&](const ChildStep& x) { out = {x.input}; },
          [&](const ElementCtor& x) { out = {x.content}; },
          [&](const Filter& x) { out = {x.input, x.predicate}; },
          [&](const StaticCall& x) { out = x.args; },
          [&](const BuiltinCall& x) { out = x.args; },
          [&](const FunctionLiteral& x) { out = {x.body}; },
          [&](const DynamicCall& x) {
            out.push_back(x.fun);
            out.insert(out.end(), x.args.begin(), x.args.end());
          },
          [&](const TypeSwitch& x) {
            out.push_back(x.scrutinee);
            for (const auto& c : x.cases) out.push_back(c.body);
            out.push_back(x.default_body);
          },
          [&](const ClosureCtor& x) { out = x.env; },
          [&](const CaseOf& x) {
            out.push_back(x.scrutinee);
            for (const auto& br : x.branches) out.push_back(br.body);
          },
      },
      e->node);
  return out;
}

void for_each_expr(const ExprPtr& e, const std::function<void(const ExprPtr&)>& fn) {
  if (!e) return;
  fn(e);
  for (const auto& c : expr_children(e)) for_each_expr(c, fn);
}

void for_each_expr(const Program& p, const std::function<void(const ExprPtr&)>& fn) {
  for (const auto& d : p.decls) for_each_expr(d.body, fn);
  for_each_expr(p.main, fn);
}

size_t expr_size(const ExprPtr& e) {
  size_t n = 0;
  for_each_expr(e, [&](const ExprPtr&) { ++n; });
  return n;
}

size_t program_size(const Program& p) {
  size_t n = 0;
  for (const auto& d : p.decls) n += expr_size(d.body);
  return n + expr_size(p.main);
}

}  // namespace defunq
