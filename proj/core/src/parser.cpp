#include "defunq/parser.hpp"

#include <cctype>
#include <charconv>
#include <unordered_set>

#include "defunq/builtins.hpp"

namespace defunq {

namespace {

enum class Tok {
  End,
  Int,
  Str,
  Name,
  Var,
  LParen,
  RParen,
  LBracket,
  RBracket,
  LBrace,
  RBrace,
  Comma,
  Semicolon,
  Assign,
  Eq,
  Neq,
  Plus,
  Minus,
  Star,
  Slash,
  DoubleColon,
  Hash,
  Dot,
  Arrow,
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::End: return "end of input";
    case Tok::Int: return "integer literal";
    case Tok::Str: return "string literal";
    case Tok::Name: return "name";
    case Tok::Var: return "variable";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Comma: return "','";
    case Tok::Semicolon: return "';'";
    case Tok::Assign: return "':='";
    case Tok::Eq: return "'='";
    case Tok::Neq: return "'!='";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::DoubleColon: return "'::'";
    case Tok::Hash: return "'#'";
    case Tok::Dot: return "'.'";
    case Tok::Arrow: return "'=>'";
  }
  return "?";
}

struct Token {
  Tok kind = Tok::End;
  std::string text;   // Name/Var payload
  int64_t ivalue = 0;
  std::string svalue;
  int line = 1;
  int column = 1;
};

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

const std::unordered_set<std::string>& keywords() {
  static const std::unordered_set<std::string> kw = {
      "declare", "function", "let", "for", "in", "return", "if",
      "then",    "else",     "typeswitch", "default", "of", "closure",
      "element", "child",    "case", "mod", "true", "false", "as",
  };
  return kw;
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_trivia();
    Token t;
    t.line = line_;
    t.column = column_;
    if (eof()) return t;
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) return lex_int(t);
    if (c == '"') return lex_str(t);
    if (c == '$') {
      advance();
      if (eof() || !is_name_start(peek())) fail(t, "expected a name after '$'");
      t.kind = Tok::Var;
      t.text = lex_name_text();
      return t;
    }
    if (is_name_start(c)) {
      t.kind = Tok::Name;
      t.text = lex_name_text();
      return t;
    }
    advance();
    switch (c) {
      case '(': t.kind = Tok::LParen; return t;
      case ')': t.kind = Tok::RParen; return t;
      case '[': t.kind = Tok::LBracket; return t;
      case ']': t.kind = Tok::RBracket; return t;
      case '{': t.kind = Tok::LBrace; return t;
      case '}': t.kind = Tok::RBrace; return t;
      case ',': t.kind = Tok::Comma; return t;
      case ';': t.kind = Tok::Semicolon; return t;
      case '+': t.kind = Tok::Plus; return t;
      case '-': t.kind = Tok::Minus; return t;
      case '*': t.kind = Tok::Star; return t;
      case '/': t.kind = Tok::Slash; return t;
      case '#': t.kind = Tok::Hash; return t;
      case '.': t.kind = Tok::Dot; return t;
      case ':':
        if (!eof() && peek() == '=') { advance(); t.kind = Tok::Assign; return t; }
        if (!eof() && peek() == ':') { advance(); t.kind = Tok::DoubleColon; return t; }
        fail(t, "unexpected ':'");
      case '=':
        if (!eof() && peek() == '>') { advance(); t.kind = Tok::Arrow; return t; }
        t.kind = Tok::Eq;
        return t;
      case '!':
        if (!eof() && peek() == '=') { advance(); t.kind = Tok::Neq; return t; }
        fail(t, "unexpected '!'");
      default: break;
    }
    fail(t, std::string("unexpected character '") + c + "'");
    return t;  // unreachable
  }

 private:
  bool eof() const { return pos_ >= src_.size(); }
  char peek() const { return src_[pos_]; }
  char peek2() const { return pos_ + 1 < src_.size() ? src_[pos_ + 1] : '\0'; }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  [[noreturn]] void fail(const Token& at, std::string msg) {
    throw ParseError(at.line, at.column, std::move(msg));
  }

  void skip_trivia() {
    while (!eof()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '-' && peek2() == '-') {
        while (!eof() && peek() != '\n') advance();
      } else if (c == '(' && peek2() == ':') {
        Token at;
        at.line = line_;
        at.column = column_;
        advance();
        advance();
        int depth = 1;
        while (depth > 0) {
          if (eof()) fail(at, "unterminated block comment");
          if (peek() == '(' && peek2() == ':') {
            advance();
            advance();
            ++depth;
          } else if (peek() == ':' && peek2() == ')') {
            advance();
            advance();
            --depth;
          } else {
            advance();
          }
        }
      } else {
        break;
      }
    }
  }

  std::string lex_name_text() {
    size_t start = pos_;
    while (!eof() && is_name_char(peek())) advance();
    return std::string(src_.substr(start, pos_ - start));
  }

  Token lex_int(Token t) {
    size_t start = pos_;
    while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) advance();
    std::string_view digits = src_.substr(start, pos_ - start);
    auto res = std::from_chars(digits.data(), digits.data() + digits.size(), t.ivalue);
    if (res.ec != std::errc{}) fail(t, "integer literal out of range");
    t.kind = Tok::Int;
    return t;
  }

  Token lex_str(Token t) {
    advance();  // opening quote
    std::string out;
    while (true) {
      if (eof()) fail(t, "unterminated string literal");
      char c = peek();
      advance();
      if (c == '"') {
        if (!eof() && peek() == '"') {  // doubled quote escapes a quote
          out.push_back('"');
          advance();
          continue;
        }
        break;
      }
      out.push_back(c);
    }
    t.kind = Tok::Str;
    t.svalue = std::move(out);
    return t;
  }

  std::string_view src_;
  size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) { cur_ = lex_.next(); }

  Program parse_program() {
    Program p;
    while (at_keyword("declare")) p.decls.push_back(parse_decl());
    p.main = parse_expr_list();
    expect(Tok::End);
    return p;
  }

  ExprPtr parse_single_expr() {
    ExprPtr e = parse_expr_list();
    expect(Tok::End);
    return e;
  }

 private:
  [[noreturn]] void fail(std::string msg) { throw ParseError(cur_.line, cur_.column, std::move(msg)); }

  [[noreturn]] void fail_expected(std::string what) {
    std::string found = tok_name(cur_.kind);
    if (cur_.kind == Tok::Name || cur_.kind == Tok::Var) found += " '" + cur_.text + "'";
    fail("expected " + what + ", found " + found);
  }

  void bump() { cur_ = lex_.next(); }

  bool at(Tok k) const { return cur_.kind == k; }
  bool at_keyword(std::string_view kw) const { return cur_.kind == Tok::Name && cur_.text == kw; }

  bool eat(Tok k) {
    if (!at(k)) return false;
    bump();
    return true;
  }

  bool eat_keyword(std::string_view kw) {
    if (!at_keyword(kw)) return false;
    bump();
    return true;
  }

  void expect(Tok k) {
    if (!eat(k)) fail_expected(tok_name(k));
  }

  void expect_keyword(std::string_view kw) {
    if (!eat_keyword(kw)) fail_expected("'" + std::string(kw) + "'");
  }

  Name expect_name() {
    if (!at(Tok::Name)) fail_expected("name");
    if (keywords().count(cur_.text)) fail("reserved word '" + cur_.text + "' used as a name");
    Name n = cur_.text;
    bump();
    return n;
  }

  Name expect_var() {
    if (!at(Tok::Var)) fail_expected("variable");
    Name n = cur_.text;
    bump();
    return n;
  }

  Label expect_label() {
    if (!at(Tok::Name)) fail_expected("label of the form ell_<k>");
    auto l = parse_label(cur_.text);
    if (!l) fail("expected label of the form ell_<k>, found '" + cur_.text + "'");
    bump();
    return *l;
  }

  FunDecl parse_decl() {
    expect_keyword("declare");
    expect_keyword("function");
    FunDecl d;
    d.name = expect_name();
    expect(Tok::LParen);
    if (!at(Tok::RParen)) {
      d.params.push_back(expect_var());
      while (eat(Tok::Comma)) d.params.push_back(expect_var());
    }
    expect(Tok::RParen);
    expect(Tok::LBrace);
    d.body = parse_expr_list();
    expect(Tok::RBrace);
    expect(Tok::Semicolon);
    return d;
  }

  // Comma-separated list; a bare comma list denotes a sequence.
  ExprPtr parse_expr_list() {
    std::vector<ExprPtr> items;
    items.push_back(parse_expr_single());
    while (eat(Tok::Comma)) items.push_back(parse_expr_single());
    return make_seq(std::move(items));
  }

  ExprPtr parse_expr_single() {
    if (at_keyword("for")) return parse_for();
    if (at_keyword("let")) return parse_let();
    if (at_keyword("if")) return parse_if();
    if (at_keyword("typeswitch")) return parse_typeswitch();
    if (at_keyword("case")) return parse_case_of();
    return parse_comparison();
  }

  ExprPtr parse_for() {
    expect_keyword("for");
    Name var = expect_var();
    expect_keyword("in");
    ExprPtr source = parse_expr_single();
    expect_keyword("return");
    ExprPtr body = parse_expr_single();
    return make_expr(For{var, std::move(source), std::move(body)});
  }

  ExprPtr parse_let() {
    expect_keyword("let");
    Name var = expect_var();
    expect(Tok::Assign);
    ExprPtr def = parse_expr_single();
    expect_keyword("return");
    ExprPtr body = parse_expr_single();
    return make_expr(Let{var, std::move(def), std::move(body)});
  }

  ExprPtr parse_if() {
    expect_keyword("if");
    expect(Tok::LParen);
    ExprPtr cond = parse_expr_list();
    expect(Tok::RParen);
    expect_keyword("then");
    ExprPtr t = parse_expr_single();
    expect_keyword("else");
    ExprPtr e = parse_expr_single();
    return make_expr(If{std::move(cond), std::move(t), std::move(e)});
  }

  TypeTest parse_type_test() {
    if (eat_keyword("element")) {
      expect(Tok::LParen);
      Name tag = expect_name();
      expect(Tok::RParen);
      return TypeTest::element(std::move(tag));
    }
    if (at(Tok::Name)) {
      if (cur_.text == "integer") { bump(); return TypeTest::integer(); }
      if (cur_.text == "string") { bump(); return TypeTest::string(); }
      if (cur_.text == "boolean") { bump(); return TypeTest::boolean(); }
    }
    fail_expected("type test (element(name), integer, string, boolean)");
  }

  ExprPtr parse_typeswitch() {
    expect_keyword("typeswitch");
    expect(Tok::LParen);
    TypeSwitch ts;
    ts.scrutinee = parse_expr_list();
    expect(Tok::RParen);
    while (at_keyword("case")) {
      bump();
      TsCase c;
      c.var = expect_var();
      expect_keyword("as");
      c.test = parse_type_test();
      expect_keyword("return");
      c.body = parse_expr_single();
      ts.cases.push_back(std::move(c));
    }
    if (ts.cases.empty()) fail_expected("'case'");
    expect_keyword("default");
    ts.default_var = expect_var();
    expect_keyword("return");
    ts.default_body = parse_expr_single();
    return make_expr(std::move(ts));
  }

  ExprPtr parse_case_of() {
    expect_keyword("case");
    CaseOf co;
    co.scrutinee = parse_expr_single();
    expect_keyword("of");
    expect(Tok::LBrace);
    while (true) {
      Branch br;
      br.label = expect_label();
      expect(Tok::LBracket);
      if (!at(Tok::RBracket)) {
        br.vars.push_back(expect_var());
        while (eat(Tok::Comma)) br.vars.push_back(expect_var());
      }
      expect(Tok::RBracket);
      expect(Tok::Arrow);
      br.body = parse_expr_single();
      co.branches.push_back(std::move(br));
      if (eat(Tok::Semicolon)) {
        if (at(Tok::RBrace)) break;  // trailing separator
        continue;
      }
      break;
    }
    expect(Tok::RBrace);
    return make_expr(std::move(co));
  }

  ExprPtr parse_comparison() {
    ExprPtr lhs = parse_additive();
    while (at(Tok::Eq) || at(Tok::Neq)) {
      Name op = at(Tok::Eq) ? "=" : "!=";
      bump();
      ExprPtr rhs = parse_additive();
      lhs = make_expr(BuiltinCall{op, {std::move(lhs), std::move(rhs)}});
    }
    return lhs;
  }

  ExprPtr parse_additive() {
    ExprPtr lhs = parse_multiplicative();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      Name op = at(Tok::Plus) ? "+" : "-";
      bump();
      ExprPtr rhs = parse_multiplicative();
      lhs = make_expr(BuiltinCall{op, {std::move(lhs), std::move(rhs)}});
    }
    return lhs;
  }

  ExprPtr parse_multiplicative() {
    ExprPtr lhs = parse_postfix();
    while (at(Tok::Star) || at_keyword("mod")) {
      Name op = at(Tok::Star) ? "*" : "mod";
      bump();
      ExprPtr rhs = parse_postfix();
      lhs = make_expr(BuiltinCall{op, {std::move(lhs), std::move(rhs)}});
    }
    return lhs;
  }

  NodeTest parse_node_test() {
    if (!at(Tok::Name)) fail_expected("node test (a tag name, node(), or text())");
    std::string n = cur_.text;
    bump();
    if ((n == "node" || n == "text") && at(Tok::LParen)) {
      bump();
      expect(Tok::RParen);
      return n == "node" ? NodeTest::any_node() : NodeTest::text();
    }
    if (keywords().count(n)) fail("reserved word '" + n + "' used as a node test");
    return NodeTest::for_tag(std::move(n));
  }

  std::vector<ExprPtr> parse_call_args() {
    std::vector<ExprPtr> args;
    expect(Tok::LParen);
    if (!at(Tok::RParen)) {
      args.push_back(parse_expr_single());
      while (eat(Tok::Comma)) args.push_back(parse_expr_single());
    }
    expect(Tok::RParen);
    return args;
  }

  ExprPtr parse_postfix() {
    ExprPtr e = parse_primary();
    while (true) {
      if (at(Tok::LParen)) {
        auto args = parse_call_args();
        e = make_expr(DynamicCall{std::move(e), std::move(args)});
      } else if (eat(Tok::LBracket)) {
        ExprPtr pred = parse_expr_list();
        expect(Tok::RBracket);
        e = make_expr(Filter{std::move(e), std::move(pred)});
      } else if (at(Tok::Slash)) {
        bump();
        expect_keyword("child");
        expect(Tok::DoubleColon);
        e = make_expr(ChildStep{std::move(e), parse_node_test()});
      } else {
        break;
      }
    }
    return e;
  }

  ExprPtr parse_primary() {
    switch (cur_.kind) {
      case Tok::Int: {
        int64_t v = cur_.ivalue;
        bump();
        return make_int(v);
      }
      case Tok::Minus: {
        bump();
        if (!at(Tok::Int)) fail_expected("integer literal after unary '-'");
        int64_t v = cur_.ivalue;
        bump();
        return make_int(-v);
      }
      case Tok::Str: {
        std::string s = cur_.svalue;
        bump();
        return make_str(std::move(s));
      }
      case Tok::Var: {
        Name n = cur_.text;
        bump();
        return make_var(std::move(n));
      }
      case Tok::Dot:
        bump();
        return make_expr(ContextItem{});
      case Tok::LParen: {
        bump();
        if (eat(Tok::RParen)) return make_expr(Seq{});
        ExprPtr e = parse_expr_list();
        expect(Tok::RParen);
        return e;
      }
      case Tok::Name: {
        if (cur_.text == "true" || cur_.text == "false") {
          bool v = cur_.text == "true";
          bump();
          return make_bool(v);
        }
        if (at_keyword("element")) return parse_element_ctor();
        if (at_keyword("function")) return parse_function_literal();
        if (at_keyword("closure")) return parse_closure_ctor();
        if (at_keyword("child")) {
          bump();
          expect(Tok::DoubleColon);
          return make_expr(ChildStep{make_expr(ContextItem{}), parse_node_test()});
        }
        if (keywords().count(cur_.text)) fail_expected("expression");
        Name n = cur_.text;
        bump();
        if (at(Tok::Hash)) {
          bump();
          if (!at(Tok::Int)) fail_expected("arity after '#'");
          int arity = static_cast<int>(cur_.ivalue);
          bump();
          return make_expr(NamedFunRef{std::move(n), arity});
        }
        if (at(Tok::LParen)) {
          auto args = parse_call_args();
          if (is_builtin(n)) return make_expr(BuiltinCall{std::move(n), std::move(args)});
          return make_expr(StaticCall{std::move(n), std::move(args)});
        }
        fail_expected("'(' or '#' after name '" + n + "'");
      }
      default:
        fail_expected(
            "expression (literal, variable, '(', '.', element, function, closure, or a call)");
    }
  }

  ExprPtr parse_element_ctor() {
    expect_keyword("element");
    Name tag = expect_name();
    expect(Tok::LBrace);
    ExprPtr content;
    if (at(Tok::RBrace)) {
      content = make_expr(Seq{});
    } else {
      content = parse_expr_list();
    }
    expect(Tok::RBrace);
    return make_expr(ElementCtor{std::move(tag), std::move(content)});
  }

  ExprPtr parse_function_literal() {
    expect_keyword("function");
    expect(Tok::LParen);
    FunctionLiteral lit;
    if (!at(Tok::RParen)) {
      lit.params.push_back(expect_var());
      while (eat(Tok::Comma)) lit.params.push_back(expect_var());
    }
    expect(Tok::RParen);
    expect(Tok::LBrace);
    lit.body = parse_expr_list();
    expect(Tok::RBrace);
    return make_expr(std::move(lit));
  }

  ExprPtr parse_closure_ctor() {
    expect_keyword("closure");
    ClosureCtor cc;
    cc.label = expect_label();
    expect(Tok::LBracket);
    if (!at(Tok::RBracket)) {
      cc.env.push_back(parse_expr_single());
      while (eat(Tok::Comma)) cc.env.push_back(parse_expr_single());
    }
    expect(Tok::RBracket);
    return make_expr(std::move(cc));
  }

  Lexer lex_;
  Token cur_;
};

}  // namespace

Program parse(std::string_view text) { return Parser(text).parse_program(); }

ExprPtr parse_expr(std::string_view text) { return Parser(text).parse_single_expr(); }

bool is_valid_name(std::string_view s) {
  if (s.empty() || !is_name_start(s[0])) return false;
  for (char c : s)
    if (!is_name_char(c)) return false;
  return true;
}

std::optional<Label> parse_label(std::string_view s) {
  if (s.size() < 5 || s.substr(0, 4) != "ell_") return std::nullopt;
  std::string_view digits = s.substr(4);
  int v = 0;
  auto res = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (res.ec != std::errc{} || res.ptr != digits.data() + digits.size()) return std::nullopt;
  if (v <= 0) return std::nullopt;
  return Label{v};
}

}  // namespace defunq
