#include "defunq/analysis.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "defunq/builtins.hpp"
#include "defunq/parser.hpp"

namespace defunq {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void collect_free(const ExprPtr& e, std::set<Name>& bound, std::set<Name>& out) {
  if (!e) return;
  std::visit(
      overloaded{
          [&](const VarRef& x) {
            if (!bound.count(x.name)) out.insert(x.name);
          },
          [&](const For& x) {
            collect_free(x.source, bound, out);
            bool was = bound.count(x.var);
            bound.insert(x.var);
            collect_free(x.body, bound, out);
            if (!was) bound.erase(x.var);
          },
          [&](const Let& x) {
            collect_free(x.def, bound, out);
            bool was = bound.count(x.var);
            bound.insert(x.var);
            collect_free(x.body, bound, out);
            if (!was) bound.erase(x.var);
          },
          [&](const FunctionLiteral& x) {
            std::vector<Name> added;
            for (const auto& p : x.params)
              if (bound.insert(p).second) added.push_back(p);
            collect_free(x.body, bound, out);
            for (const auto& p : added) bound.erase(p);
          },
          [&](const TypeSwitch& x) {
            collect_free(x.scrutinee, bound, out);
            for (const auto& c : x.cases) {
              bool was = bound.count(c.var);
              bound.insert(c.var);
              collect_free(c.body, bound, out);
              if (!was) bound.erase(c.var);
            }
            bool was = bound.count(x.default_var);
            bound.insert(x.default_var);
            collect_free(x.default_body, bound, out);
            if (!was) bound.erase(x.default_var);
          },
          [&](const CaseOf& x) {
            collect_free(x.scrutinee, bound, out);
            for (const auto& br : x.branches) {
              std::vector<Name> added;
              for (const auto& v : br.vars)
                if (bound.insert(v).second) added.push_back(v);
              collect_free(br.body, bound, out);
              for (const auto& v : added) bound.erase(v);
            }
          },
          [&](const auto&) {
            for (const auto& c : expr_children(e)) collect_free(c, bound, out);
          },
      },
      e->node);
}

}  // namespace

std::vector<Name> free_vars(const ExprPtr& e) {
  std::set<Name> bound, out;
  collect_free(e, bound, out);
  return {out.begin(), out.end()};
}

namespace {

void walk_first_order(const ExprPtr& e, const std::string& path,
                      std::vector<FoViolation>& out) {
  if (!e) return;
  std::visit(
      overloaded{
          [&](const FunctionLiteral& x) {
            out.push_back({path, "function literal"});
            walk_first_order(x.body, path + "/body", out);
          },
          [&](const NamedFunRef& x) {
            out.push_back({path + "(" + x.name + "#" + std::to_string(x.arity) + ")",
                           "named function reference"});
          },
          [&](const DynamicCall& x) {
            out.push_back({path, "dynamic call"});
            walk_first_order(x.fun, path + "/fun", out);
            for (size_t i = 0; i < x.args.size(); ++i)
              walk_first_order(x.args[i], path + "/arg" + std::to_string(i + 1), out);
          },
          [&](const auto&) {
            auto kids = expr_children(e);
            for (size_t i = 0; i < kids.size(); ++i)
              walk_first_order(kids[i], path + "/" + std::to_string(i + 1), out);
          },
      },
      e->node);
}

}  // namespace

std::vector<FoViolation> check_first_order(const Program& p) {
  std::vector<FoViolation> out;
  for (const auto& d : p.decls) walk_first_order(d.body, "decl " + d.name, out);
  walk_first_order(p.main, "main", out);
  return out;
}

namespace {

struct ValidateCtx {
  std::unordered_map<Name, int> decl_arity;
  std::vector<Diagnostic>* out;
  bool strict = false;

  void report(std::string msg) { out->push_back({std::move(msg)}); }

  bool call_target_ok(const Name& name, int arity) {
    auto it = decl_arity.find(name);
    if (it != decl_arity.end()) return it->second == arity;
    return builtin_accepts_arity(name, arity);
  }
};

void walk_validate(const ExprPtr& e, std::set<Name>& bound, ValidateCtx& ctx) {
  if (!e) return;
  std::visit(
      overloaded{
          [&](const VarRef& x) {
            if (!bound.count(x.name)) ctx.report("unbound variable $" + x.name);
          },
          [&](const For& x) {
            walk_validate(x.source, bound, ctx);
            bool was = bound.count(x.var);
            bound.insert(x.var);
            walk_validate(x.body, bound, ctx);
            if (!was) bound.erase(x.var);
          },
          [&](const Let& x) {
            walk_validate(x.def, bound, ctx);
            bool was = bound.count(x.var);
            bound.insert(x.var);
            walk_validate(x.body, bound, ctx);
            if (!was) bound.erase(x.var);
          },
          [&](const StaticCall& x) {
            if (!ctx.call_target_ok(x.name, static_cast<int>(x.args.size())))
              ctx.report("call to " + x.name + " with " + std::to_string(x.args.size()) +
                         " argument(s) does not match any declaration or builtin");
            for (const auto& a : x.args) walk_validate(a, bound, ctx);
          },
          [&](const BuiltinCall& x) {
            if (!builtin_accepts_arity(x.name, static_cast<int>(x.args.size())))
              ctx.report("builtin " + x.name + " does not accept " +
                         std::to_string(x.args.size()) + " argument(s)");
            for (const auto& a : x.args) walk_validate(a, bound, ctx);
          },
          [&](const NamedFunRef& x) {
            if (!ctx.call_target_ok(x.name, x.arity))
              ctx.report("function reference " + x.name + "#" + std::to_string(x.arity) +
                         " does not resolve to a declaration or builtin");
          },
          [&](const FunctionLiteral& x) {
            std::set<Name> seen;
            for (const auto& p : x.params)
              if (!seen.insert(p).second)
                ctx.report("duplicate parameter $" + p + " in function literal");
            std::vector<Name> added;
            for (const auto& p : x.params)
              if (bound.insert(p).second) added.push_back(p);
            walk_validate(x.body, bound, ctx);
            for (const auto& p : added) bound.erase(p);
          },
          [&](const TypeSwitch& x) {
            walk_validate(x.scrutinee, bound, ctx);
            for (const auto& c : x.cases) {
              bool was = bound.count(c.var);
              bound.insert(c.var);
              walk_validate(c.body, bound, ctx);
              if (!was) bound.erase(c.var);
            }
            bool was = bound.count(x.default_var);
            bound.insert(x.default_var);
            walk_validate(x.default_body, bound, ctx);
            if (!was) bound.erase(x.default_var);
          },
          [&](const CaseOf& x) {
            walk_validate(x.scrutinee, bound, ctx);
            std::set<int> labels;
            for (const auto& br : x.branches) {
              if (!labels.insert(br.label.index).second)
                ctx.report("duplicate branch label " + br.label.render() + " in case");
              std::set<Name> seen;
              for (const auto& v : br.vars)
                if (!seen.insert(v).second)
                  ctx.report("duplicate branch variable $" + v + " in case " +
                             br.label.render());
              std::vector<Name> added;
              for (const auto& v : br.vars)
                if (bound.insert(v).second) added.push_back(v);
              walk_validate(br.body, bound, ctx);
              for (const auto& v : added) bound.erase(v);
            }
          },
          [&](const StrLit& x) {
            if (ctx.strict && x.value.rfind("ell_", 0) == 0)
              ctx.report("string literal \"" + x.value +
                         "\" uses the reserved closure-label prefix ell_");
          },
          [&](const auto&) {
            for (const auto& c : expr_children(e)) walk_validate(c, bound, ctx);
          },
      },
      e->node);
}

bool reserved_decl_name(const Name& n) {
  if (parse_label(n)) return true;
  if (n.rfind("dispatch_", 0) == 0) {
    auto rest = n.substr(9);
    return !rest.empty() && rest.find_first_not_of("0123456789") == std::string::npos;
  }
  return n == "wrap" || n == "wrap-atom" || n == "unwrap" || n == "unwrap-atom";
}

}  // namespace

std::vector<Diagnostic> validate(const Program& p, ValidateMode mode) {
  std::vector<Diagnostic> out;
  ValidateCtx ctx;
  ctx.out = &out;
  ctx.strict = mode == ValidateMode::SourceStrict;

  for (const auto& d : p.decls) {
    if (ctx.decl_arity.count(d.name))
      out.push_back({"duplicate function declaration " + d.name});
    else
      ctx.decl_arity[d.name] = static_cast<int>(d.params.size());
    if (is_builtin(d.name))
      out.push_back({"function declaration " + d.name + " shadows a builtin"});
    if (ctx.strict && reserved_decl_name(d.name))
      out.push_back({"function name " + d.name + " is reserved for generated code"});
  }
  for (const auto& d : p.decls) {
    std::set<Name> seen, bound;
    for (const auto& prm : d.params) {
      if (!seen.insert(prm).second)
        out.push_back({"duplicate parameter $" + prm + " in function " + d.name});
      bound.insert(prm);
    }
    walk_validate(d.body, bound, ctx);
  }
  std::set<Name> bound;
  walk_validate(p.main, bound, ctx);
  return out;
}

Name fresh_name(const Name& base, const std::vector<Name>& avoid) {
  std::unordered_set<Name> taken(avoid.begin(), avoid.end());
  if (!taken.count(base)) return base;
  for (int i = 2;; ++i) {
    Name cand = base + "_" + std::to_string(i);
    if (!taken.count(cand)) return cand;
  }
}

namespace {

using SubstMap = std::unordered_map<Name, ExprPtr>;

void add_free_names(const ExprPtr& e, std::vector<Name>& out) {
  for (const auto& n : free_vars(e)) out.push_back(n);
}

ExprPtr subst_rec(const ExprPtr& e, const SubstMap& sub);

// Re-binds a binder that would capture free variables of the substituted
// expressions; returns the possibly renamed binder and rewrites `body`.
Name rebind(const Name& var, ExprPtr& body, const SubstMap& sub) {
  bool clash = false;
  for (const auto& [k, v] : sub) {
    (void)k;
    for (const auto& n : free_vars(v))
      if (n == var) clash = true;
  }
  if (!clash) return var;
  std::vector<Name> avoid = free_vars(body);
  for (const auto& [k, v] : sub) {
    avoid.push_back(k);
    add_free_names(v, avoid);
  }
  Name nv = fresh_name(var, avoid);
  body = rename_var(body, var, nv);
  return nv;
}

SubstMap without(const SubstMap& sub, const std::vector<Name>& vars) {
  SubstMap s = sub;
  for (const auto& v : vars) s.erase(v);
  return s;
}

ExprPtr subst_rec(const ExprPtr& e, const SubstMap& sub) {
  if (!e || sub.empty()) return e;
  return std::visit(
      overloaded{
          [&](const VarRef& x) -> ExprPtr {
            auto it = sub.find(x.name);
            return it != sub.end() ? it->second : e;
          },
          [&](const For& x) -> ExprPtr {
            ExprPtr source = subst_rec(x.source, sub);
            SubstMap inner = without(sub, {x.var});
            ExprPtr body = x.body;
            Name var = inner.empty() ? x.var : rebind(x.var, body, inner);
            body = subst_rec(body, inner);
            return make_expr(For{var, std::move(source), std::move(body)});
          },
          [&](const Let& x) -> ExprPtr {
            ExprPtr def = subst_rec(x.def, sub);
            SubstMap inner = without(sub, {x.var});
            ExprPtr body = x.body;
            Name var = inner.empty() ? x.var : rebind(x.var, body, inner);
            body = subst_rec(body, inner);
            return make_expr(Let{var, std::move(def), std::move(body)});
          },
          [&](const FunctionLiteral& x) -> ExprPtr {
            SubstMap inner = without(sub, x.params);
            if (inner.empty()) return e;
            std::vector<Name> params = x.params;
            ExprPtr body = x.body;
            for (auto& p : params) {
              Name np = rebind(p, body, inner);
              if (np != p) p = np;
            }
            body = subst_rec(body, inner);
            return make_expr(FunctionLiteral{std::move(params), std::move(body)});
          },
          [&](const TypeSwitch& x) -> ExprPtr {
            TypeSwitch ts;
            ts.scrutinee = subst_rec(x.scrutinee, sub);
            for (const auto& c : x.cases) {
              SubstMap inner = without(sub, {c.var});
              ExprPtr body = c.body;
              Name var = inner.empty() ? c.var : rebind(c.var, body, inner);
              ts.cases.push_back({c.test, var, subst_rec(body, inner)});
            }
            SubstMap inner = without(sub, {x.default_var});
            ExprPtr dbody = x.default_body;
            ts.default_var = inner.empty() ? x.default_var : rebind(x.default_var, dbody, inner);
            ts.default_body = subst_rec(dbody, inner);
            return make_expr(std::move(ts));
          },
          [&](const CaseOf& x) -> ExprPtr {
            CaseOf co;
            co.scrutinee = subst_rec(x.scrutinee, sub);
            for (const auto& br : x.branches) {
              SubstMap inner = without(sub, br.vars);
              std::vector<Name> vars = br.vars;
              ExprPtr body = br.body;
              if (!inner.empty()) {
                for (auto& v : vars) {
                  Name nv = rebind(v, body, inner);
                  if (nv != v) v = nv;
                }
              }
              co.branches.push_back({br.label, std::move(vars), subst_rec(body, inner)});
            }
            return make_expr(std::move(co));
          },
          [&](const If& x) -> ExprPtr {
            return make_expr(If{subst_rec(x.cond, sub), subst_rec(x.then_branch, sub),
                                subst_rec(x.else_branch, sub)});
          },
          [&](const Seq& x) -> ExprPtr {
            std::vector<ExprPtr> items;
            items.reserve(x.items.size());
            for (const auto& i : x.items) items.push_back(subst_rec(i, sub));
            return make_expr(Seq{std::move(items)});
          },
          [&](const ChildStep& x) -> ExprPtr {
            return make_expr(ChildStep{subst_rec(x.input, sub), x.test});
          },
          [&](const ElementCtor& x) -> ExprPtr {
            return make_expr(ElementCtor{x.tag, subst_rec(x.content, sub)});
          },
          [&](const Filter& x) -> ExprPtr {
            return make_expr(Filter{subst_rec(x.input, sub), subst_rec(x.predicate, sub)});
          },
          [&](const StaticCall& x) -> ExprPtr {
            std::vector<ExprPtr> args;
            args.reserve(x.args.size());
            for (const auto& a : x.args) args.push_back(subst_rec(a, sub));
            return make_expr(StaticCall{x.name, std::move(args)});
          },
          [&](const BuiltinCall& x) -> ExprPtr {
            std::vector<ExprPtr> args;
            args.reserve(x.args.size());
            for (const auto& a : x.args) args.push_back(subst_rec(a, sub));
            return make_expr(BuiltinCall{x.name, std::move(args)});
          },
          [&](const DynamicCall& x) -> ExprPtr {
            std::vector<ExprPtr> args;
            args.reserve(x.args.size());
            for (const auto& a : x.args) args.push_back(subst_rec(a, sub));
            return make_expr(DynamicCall{subst_rec(x.fun, sub), std::move(args)});
          },
          [&](const ClosureCtor& x) -> ExprPtr {
            std::vector<ExprPtr> env;
            env.reserve(x.env.size());
            for (const auto& s : x.env) env.push_back(subst_rec(s, sub));
            return make_expr(ClosureCtor{x.label, std::move(env)});
          },
          [&](const auto&) -> ExprPtr { return e; },
      },
      e->node);
}

}  // namespace

ExprPtr substitute(const ExprPtr& e, const std::vector<std::pair<Name, ExprPtr>>& subst) {
  SubstMap m;
  for (const auto& [k, v] : subst) m.emplace(k, v);
  return subst_rec(e, m);
}

ExprPtr rename_var(const ExprPtr& e, const Name& from, const Name& to) {
  return substitute(e, {{from, make_var(to)}});
}

}  // namespace defunq
