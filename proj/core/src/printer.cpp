#include "defunq/printer.hpp"

#include <sstream>

#include "defunq/builtins.hpp"

namespace defunq {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Precedence: 0 flow (let/for/if/typeswitch/case), 1 comparison,
// 2 additive, 3 multiplicative, 4 postfix, 5 primary.
int op_prec(const Name& op) {
  if (op == "=" || op == "!=") return 1;
  if (op == "+" || op == "-") return 2;
  return 3;  // * mod
}

int expr_prec(const ExprPtr& e) {
  return std::visit(
      overloaded{
          [](const For&) { return 0; },
          [](const Let&) { return 0; },
          [](const If&) { return 0; },
          [](const TypeSwitch&) { return 0; },
          [](const CaseOf&) { return 0; },
          [](const BuiltinCall& b) { return is_infix_builtin(b.name) ? op_prec(b.name) : 5; },
          [](const DynamicCall&) { return 4; },
          [](const Filter&) { return 4; },
          [](const ChildStep&) { return 4; },
          [](const auto&) { return 5; },
      },
      e->node);
}

class Printer {
 public:
  std::string result() { return out_.str(); }

  void program(const Program& p) {
    for (const auto& d : p.decls) {
      decl(d);
      out_ << "\n";
    }
    expr(p.main, 0, 0);
    out_ << "\n";
  }

  void decl(const FunDecl& d) {
    out_ << "declare function " << d.name << "(";
    for (size_t i = 0; i < d.params.size(); ++i) {
      if (i) out_ << ", ";
      out_ << "$" << d.params[i];
    }
    out_ << ") {\n  ";
    expr(d.body, 0, 2);
    out_ << "\n};\n";
  }

  void expr(const ExprPtr& e, int min_prec, int indent) {
    bool parens = expr_prec(e) < min_prec;
    if (parens) out_ << "(";
    std::visit(
        overloaded{
            [&](const IntLit& x) { out_ << x.value; },
            [&](const StrLit& x) { string_lit(x.value); },
            [&](const BoolLit& x) { out_ << (x.value ? "true" : "false"); },
            [&](const VarRef& x) { out_ << "$" << x.name; },
            [&](const ContextItem&) { out_ << "."; },
            [&](const For& x) {
              out_ << "for $" << x.var << " in ";
              expr(x.source, 0, indent);
              newline(indent);
              out_ << "return ";
              expr(x.body, 0, indent);
            },
            [&](const Let& x) {
              out_ << "let $" << x.var << " := ";
              expr(x.def, 0, indent);
              newline(indent);
              out_ << "return ";
              expr(x.body, 0, indent);
            },
            [&](const If& x) {
              out_ << "if (";
              expr(x.cond, 0, indent);
              out_ << ") then ";
              expr(x.then_branch, 0, indent);
              out_ << " else ";
              expr(x.else_branch, 0, indent);
            },
            [&](const Seq& x) {
              out_ << "(";
              for (size_t i = 0; i < x.items.size(); ++i) {
                if (i) out_ << ", ";
                expr(x.items[i], 0, indent);
              }
              out_ << ")";
            },
            [&](const ChildStep& x) {
              if (!expr_is<ContextItem>(x.input)) {
                expr(x.input, 4, indent);
                out_ << "/";
              }
              out_ << "child::";
              node_test(x.test);
            },
            [&](const ElementCtor& x) {
              out_ << "element " << x.tag << " {";
              if (const auto* s = expr_as<Seq>(x.content); s && s->items.empty()) {
                out_ << "}";
                return;
              }
              out_ << " ";
              if (const auto* s = expr_as<Seq>(x.content)) {
                for (size_t i = 0; i < s->items.size(); ++i) {
                  if (i) out_ << ", ";
                  expr(s->items[i], 0, indent);
                }
              } else {
                expr(x.content, 0, indent);
              }
              out_ << " }";
            },
            [&](const Filter& x) {
              expr(x.input, 4, indent);
              out_ << "[";
              expr(x.predicate, 0, indent);
              out_ << "]";
            },
            [&](const StaticCall& x) { call(x.name, x.args, indent); },
            [&](const BuiltinCall& x) {
              if (is_infix_builtin(x.name)) {
                int prec = op_prec(x.name);
                expr(x.args[0], prec, indent);
                out_ << " " << x.name << " ";
                expr(x.args[1], prec + 1, indent);
              } else {
                call(x.name, x.args, indent);
              }
            },
            [&](const FunctionLiteral& x) {
              out_ << "function(";
              for (size_t i = 0; i < x.params.size(); ++i) {
                if (i) out_ << ", ";
                out_ << "$" << x.params[i];
              }
              out_ << ") { ";
              expr(x.body, 0, indent);
              out_ << " }";
            },
            [&](const NamedFunRef& x) { out_ << x.name << "#" << x.arity; },
            [&](const DynamicCall& x) {
              expr(x.fun, 4, indent);
              out_ << "(";
              for (size_t i = 0; i < x.args.size(); ++i) {
                if (i) out_ << ", ";
                expr(x.args[i], 0, indent);
              }
              out_ << ")";
            },
            [&](const TypeSwitch& x) {
              out_ << "typeswitch (";
              expr(x.scrutinee, 0, indent);
              out_ << ")";
              for (const auto& c : x.cases) {
                newline(indent + 2);
                out_ << "case $" << c.var << " as ";
                type_test(c.test);
                out_ << " return ";
                expr(c.body, 0, indent + 2);
              }
              newline(indent + 2);
              out_ << "default $" << x.default_var << " return ";
              expr(x.default_body, 0, indent + 2);
            },
            [&](const ClosureCtor& x) {
              out_ << "closure " << x.label.render() << " [";
              for (size_t i = 0; i < x.env.size(); ++i) {
                if (i) out_ << ", ";
                expr(x.env[i], 0, indent);
              }
              out_ << "]";
            },
            [&](const CaseOf& x) {
              out_ << "case ";
              expr(x.scrutinee, 1, indent);
              out_ << " of {";
              for (size_t i = 0; i < x.branches.size(); ++i) {
                const auto& br = x.branches[i];
                newline(indent + 2);
                out_ << br.label.render() << " [";
                for (size_t j = 0; j < br.vars.size(); ++j) {
                  if (j) out_ << ", ";
                  out_ << "$" << br.vars[j];
                }
                out_ << "] => ";
                expr(br.body, 0, indent + 2);
                if (i + 1 < x.branches.size()) out_ << " ;";
              }
              newline(indent);
              out_ << "}";
            },
        },
        e->node);
    if (parens) out_ << ")";
  }

 private:
  void call(const Name& name, const std::vector<ExprPtr>& args, int indent) {
    out_ << name << "(";
    for (size_t i = 0; i < args.size(); ++i) {
      if (i) out_ << ", ";
      expr(args[i], 0, indent);
    }
    out_ << ")";
  }

  void string_lit(const std::string& v) {
    out_ << '"';
    for (char c : v) {
      out_ << c;
      if (c == '"') out_ << '"';
    }
    out_ << '"';
  }

  void node_test(const NodeTest& t) {
    switch (t.kind) {
      case NodeTest::Kind::Tag: out_ << t.tag; break;
      case NodeTest::Kind::AnyNode: out_ << "node()"; break;
      case NodeTest::Kind::Text: out_ << "text()"; break;
    }
  }

  void type_test(const TypeTest& t) {
    switch (t.kind) {
      case TypeTest::Kind::Element: out_ << "element(" << t.tag << ")"; break;
      case TypeTest::Kind::Integer: out_ << "integer"; break;
      case TypeTest::Kind::String: out_ << "string"; break;
      case TypeTest::Kind::Boolean: out_ << "boolean"; break;
    }
  }

  void newline(int indent) {
    out_ << "\n";
    for (int i = 0; i < indent; ++i) out_ << ' ';
  }

  std::ostringstream out_;
};

}  // namespace

std::string print_program(const Program& p) {
  Printer pr;
  pr.program(p);
  return pr.result();
}

std::string print_expr(const ExprPtr& e) {
  Printer pr;
  pr.expr(e, 0, 0);
  return pr.result();
}

}  // namespace defunq
