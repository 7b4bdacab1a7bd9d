#include "defunq/value.hpp"

#include <functional>
#include <sstream>

namespace defunq {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool nodes_equal(const TreeNode& a, const TreeNode& b) {
  if (a.tag != b.tag || a.children.size() != b.children.size()) return false;
  for (size_t i = 0; i < a.children.size(); ++i) {
    const auto& ca = a.children[i];
    const auto& cb = b.children[i];
    if (ca.index() != cb.index()) return false;
    if (std::holds_alternative<TextChunk>(ca)) {
      if (std::get<TextChunk>(ca).text != std::get<TextChunk>(cb).text) return false;
    } else {
      if (!nodes_equal(*std::get<NodePtr>(ca), *std::get<NodePtr>(cb))) return false;
    }
  }
  return true;
}

void hash_combine(size_t& seed, size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

size_t node_hash(const TreeNode& n) {
  size_t h = std::hash<std::string>{}(n.tag);
  for (const auto& c : n.children) {
    if (const auto* t = std::get_if<TextChunk>(&c))
      hash_combine(h, std::hash<std::string>{}(t->text) ^ 0x51u);
    else
      hash_combine(h, node_hash(*std::get<NodePtr>(c)));
  }
  return h;
}

size_t item_hash(const Item& i) {
  return std::visit(
      overloaded{
          [](const IntAtom& a) { return std::hash<int64_t>{}(a.value) ^ 0x11u; },
          [](const StrAtom& a) { return std::hash<std::string>{}(a.value) ^ 0x22u; },
          [](const BoolAtom& a) { return std::hash<bool>{}(a.value) ^ 0x33u; },
          [](const NodePtr& n) { return node_hash(*n) ^ 0x44u; },
          [](const ClosurePtr& c) {
            size_t h = std::hash<int>{}(c->label.index) ^ 0x55u;
            for (const auto& v : c->env) hash_combine(h, value_hash(v));
            return h;
          },
          [](const FunPtr& f) {
            size_t h = std::hash<int>{}(f->arity) ^ 0x66u;
            hash_combine(h, std::hash<std::string>{}(f->named));
            return h;
          },
      },
      i);
}

}  // namespace

bool items_equal(const Item& a, const Item& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      overloaded{
          [&](const IntAtom& x) { return x.value == std::get<IntAtom>(b).value; },
          [&](const StrAtom& x) { return x.value == std::get<StrAtom>(b).value; },
          [&](const BoolAtom& x) { return x.value == std::get<BoolAtom>(b).value; },
          [&](const NodePtr& x) { return nodes_equal(*x, *std::get<NodePtr>(b)); },
          [&](const ClosurePtr& x) {
            const auto& y = std::get<ClosurePtr>(b);
            if (!(x->label == y->label) || x->env.size() != y->env.size()) return false;
            for (size_t i = 0; i < x->env.size(); ++i)
              if (!values_equal(x->env[i], y->env[i])) return false;
            return true;
          },
          [&](const FunPtr& x) {
            const auto& y = std::get<FunPtr>(b);
            if (x->is_named != y->is_named || x->arity != y->arity) return false;
            if (x->is_named) return x->named == y->named;
            return x->params == y->params && equal(x->body, y->body);
          },
      },
      a);
}

bool values_equal(const Value& a, const Value& b) {
  if (a.items.size() != b.items.size()) return false;
  for (size_t i = 0; i < a.items.size(); ++i)
    if (!items_equal(a.items[i], b.items[i])) return false;
  return true;
}

size_t value_hash(const Value& v) {
  size_t h = v.items.size();
  for (const auto& i : v.items) hash_combine(h, item_hash(i));
  return h;
}

namespace {

void node_text(const TreeNode& n, std::ostringstream& out) {
  out << "<" << n.tag;
  if (n.children.empty()) {
    out << "/>";
    return;
  }
  out << ">";
  for (const auto& c : n.children) {
    if (const auto* t = std::get_if<TextChunk>(&c))
      out << t->text;
    else
      node_text(*std::get<NodePtr>(c), out);
  }
  out << "</" << n.tag << ">";
}

}  // namespace

std::string item_text(const Item& i) {
  std::ostringstream out;
  std::visit(overloaded{
                 [&](const IntAtom& a) { out << a.value; },
                 [&](const StrAtom& a) { out << a.value; },
                 [&](const BoolAtom& a) { out << (a.value ? "true" : "false"); },
                 [&](const NodePtr& n) { node_text(*n, out); },
                 [&](const ClosurePtr& c) {
                   out << "closure " << c->label.render() << " [";
                   for (size_t k = 0; k < c->env.size(); ++k) {
                     if (k) out << ", ";
                     out << to_text(c->env[k]);
                   }
                   out << "]";
                 },
                 [&](const FunPtr& f) {
                   if (f->is_named)
                     out << f->named << "#" << f->arity;
                   else
                     out << "function#" << f->arity;
                 },
             },
             i);
  return out.str();
}

std::string to_text(const Value& v) {
  std::string out;
  for (size_t i = 0; i < v.items.size(); ++i) {
    if (i) out += " ";
    out += item_text(v.items[i]);
  }
  return out;
}

namespace {

size_t count_nodes(const TreeNode& n) {
  size_t c = 1;  // the element itself
  for (const auto& ch : n.children) {
    if (std::holds_alternative<TextChunk>(ch))
      c += 1;
    else
      c += count_nodes(*std::get<NodePtr>(ch));
  }
  return c;
}

}  // namespace

size_t node_count(const Value& v) {
  size_t c = 0;
  for (const auto& i : v.items)
    if (const auto* n = std::get_if<NodePtr>(&i)) c += count_nodes(**n);
  return c;
}

std::string string_value(const TreeNode& n) {
  std::string out;
  std::function<void(const TreeNode&)> walk = [&](const TreeNode& node) {
    for (const auto& c : node.children) {
      if (const auto* t = std::get_if<TextChunk>(&c))
        out += t->text;
      else
        walk(*std::get<NodePtr>(c));
    }
  };
  walk(n);
  return out;
}

}  // namespace defunq
