#include "pfl/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "pfl/linalg.hpp"

namespace pfl {

namespace {

struct Node {
  enum class Kind { constant, variable, negate, add, sub, mul, div, pow, call } kind;
  double value = 0.0;
  double (*fn)(double) = nullptr;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;

  double eval(double x) const {
    switch (kind) {
      case Kind::constant: return value;
      case Kind::variable: return x;
      case Kind::negate: return -lhs->eval(x);
      case Kind::add: return lhs->eval(x) + rhs->eval(x);
      case Kind::sub: return lhs->eval(x) - rhs->eval(x);
      case Kind::mul: return lhs->eval(x) * rhs->eval(x);
      case Kind::div: return lhs->eval(x) / rhs->eval(x);
      case Kind::pow: return std::pow(lhs->eval(x), rhs->eval(x));
      case Kind::call: return fn(lhs->eval(x));
    }
    return 0.0;
  }
};

using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Kind kind, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

struct Function {
  const char* name;
  double (*fn)(double);
};

const Function kFunctions[] = {
    {"sin", [](double v) { return std::sin(v); }},   {"cos", [](double v) { return std::cos(v); }},
    {"tan", [](double v) { return std::tan(v); }},   {"exp", [](double v) { return std::exp(v); }},
    {"log", [](double v) { return std::log(v); }},   {"sqrt", [](double v) { return std::sqrt(v); }},
    {"abs", [](double v) { return std::abs(v); }},   {"tanh", [](double v) { return std::tanh(v); }},
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr root = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParameterError("expression '" + std::string(text_) + "': " + what + " at position " +
                         std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) lhs = make(Node::Kind::add, lhs, term());
      else if (accept('-')) lhs = make(Node::Kind::sub, lhs, term());
      else return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) lhs = make(Node::Kind::mul, lhs, unary());
      else if (accept('/')) lhs = make(Node::Kind::div, lhs, unary());
      else return lhs;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Node::Kind::negate, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (accept('^')) return make(Node::Kind::pow, base, unary());
    return base;
  }

  NodePtr atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (accept('(')) {
      NodePtr inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail("unexpected character");
  }

  NodePtr number() {
    double value = 0.0;
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc()) fail("malformed number");
    pos_ += std::size_t(ptr - begin);
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::constant;
    n->value = value;
    return n;
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "x") return make(Node::Kind::variable);
    if (name == "pi") {
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::constant;
      n->value = std::numbers::pi;
      return n;
    }
    for (const Function& f : kFunctions) {
      if (name == f.name) {
        if (!accept('(')) fail("expected '(' after " + std::string(name));
        NodePtr arg = expr();
        if (!accept(')')) fail("expected ')'");
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::call;
        n->fn = f.fn;
        n->lhs = std::move(arg);
        return n;
      }
    }
    pos_ = start;
    fail("unknown identifier '" + std::string(name) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::function<double(double)> parse_expression(std::string_view text) {
  NodePtr root = Parser(text).parse();
  return [root](double x) { return root->eval(x); };
}

}  // namespace pfl
