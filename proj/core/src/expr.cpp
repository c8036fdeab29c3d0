#include "bistab/expr.hpp"

#include <fmt/format.h>

#include <cctype>
#include <charconv>
#include <cmath>
#include <utility>

#include "bistab/errors.hpp"

namespace bistab {

struct Expr::Node {
  Kind kind = Kind::number;
  double value = 0.0;
  Function fn = Function::exp;
  std::vector<Expr> operands;
  bool depends = false;
};

Expr Expr::number(double value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::number;
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::variable() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::variable;
  n->depends = true;
  return Expr(std::move(n));
}

Expr Expr::negate(Expr operand) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::negate;
  n->depends = operand.depends_on_x();
  n->operands.push_back(std::move(operand));
  return Expr(std::move(n));
}

Expr Expr::binary(Kind kind, Expr lhs, Expr rhs) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->depends = lhs.depends_on_x() || rhs.depends_on_x();
  n->operands.push_back(std::move(lhs));
  n->operands.push_back(std::move(rhs));
  return Expr(std::move(n));
}

Expr Expr::call(Function fn, std::vector<Expr> args) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::call;
  n->fn = fn;
  for (const auto& a : args) n->depends = n->depends || a.depends_on_x();
  n->operands = std::move(args);
  return Expr(std::move(n));
}

Expr::Kind Expr::kind() const noexcept { return node_->kind; }
double Expr::number_value() const noexcept { return node_->value; }
Expr::Function Expr::function() const noexcept { return node_->fn; }
const std::vector<Expr>& Expr::operands() const noexcept { return node_->operands; }
bool Expr::depends_on_x() const noexcept { return node_->depends; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Expr::Kind::number:
      return a.number_value() == b.number_value();
    case Expr::Kind::variable:
      return true;
    case Expr::Kind::call:
      if (a.function() != b.function()) return false;
      break;
    default:
      break;
  }
  return a.operands() == b.operands();
}

std::string_view function_name(Expr::Function fn) noexcept {
  switch (fn) {
    case Expr::Function::exp: return "exp";
    case Expr::Function::log: return "log";
    case Expr::Function::sqrt: return "sqrt";
    case Expr::Function::tanh: return "tanh";
    case Expr::Function::atan: return "atan";
    case Expr::Function::erf: return "erf";
    case Expr::Function::pow: return "pow";
  }
  return "?";
}

namespace {

char op_symbol(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::add: return '+';
    case Expr::Kind::subtract: return '-';
    case Expr::Kind::multiply: return '*';
    case Expr::Kind::divide: return '/';
    case Expr::Kind::power: return '^';
    default: return '?';
  }
}

}  // namespace

std::string Expr::to_string() const {
  switch (kind()) {
    case Kind::number:
      return fmt::format("{}", number_value());
    case Kind::variable:
      return "x";
    case Kind::negate:
      return "(-" + operands()[0].to_string() + ")";
    case Kind::call: {
      std::string out(function_name(function()));
      out += '(';
      for (std::size_t i = 0; i < operands().size(); ++i) {
        if (i) out += ", ";
        out += operands()[i].to_string();
      }
      return out + ')';
    }
    default:
      return fmt::format("({} {} {})", operands()[0].to_string(), op_symbol(kind()),
                         operands()[1].to_string());
  }
}

// ---------------------------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------------------------

namespace {

const std::vector<std::string> kOperandStart = {"number", "'x'", "'('", "'-'", "function"};

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  Expr parse_all() {
    Expr e = parse_sum();
    skip_ws();
    if (pos_ != src_.size()) {
      throw ParseError(pos_, {"operator", "end of input"},
                       fmt::format("unexpected '{}' at offset {}", src_[pos_], pos_));
    }
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c, std::vector<std::string> expected) {
    if (!accept(c)) fail(std::move(expected));
  }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    skip_ws();
    std::string found = pos_ < src_.size() ? fmt::format("'{}'", src_[pos_]) : "end of input";
    std::string list;
    for (std::size_t i = 0; i < expected.size(); ++i) list += (i ? ", " : "") + expected[i];
    throw ParseError(pos_, std::move(expected),
                     fmt::format("syntax error at offset {}: expected {}, found {}", pos_, list,
                                 found));
  }

  Expr parse_sum() {
    Expr lhs = parse_product();
    for (;;) {
      if (accept('+')) {
        lhs = Expr::binary(Expr::Kind::add, lhs, parse_product());
      } else if (accept('-')) {
        lhs = Expr::binary(Expr::Kind::subtract, lhs, parse_product());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_product() {
    Expr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = Expr::binary(Expr::Kind::multiply, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = Expr::binary(Expr::Kind::divide, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_unary() {
    if (accept('-')) return Expr::negate(parse_unary());
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (accept('^')) return Expr::binary(Expr::Kind::power, base, parse_unary());
    return base;
  }

  Expr parse_primary() {
    skip_ws();
    if (pos_ >= src_.size()) fail(kOperandStart);
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Expr inner = parse_sum();
      expect(')', {"')'", "operator"});
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    fail(kOperandStart);
  }

  Expr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        digits();
      } else {
        pos_ = save;
      }
    }
    double value = 0.0;
    const auto res = std::from_chars(src_.data() + start, src_.data() + pos_, value);
    if (res.ec != std::errc() || res.ptr != src_.data() + pos_) {
      pos_ = start;
      fail({"number"});
    }
    return Expr::number(value);
  }

  Expr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = src_.substr(start, pos_ - start);
    if (name == "x") return Expr::variable();

    static constexpr std::pair<std::string_view, Expr::Function> kFunctions[] = {
        {"exp", Expr::Function::exp},   {"log", Expr::Function::log},
        {"sqrt", Expr::Function::sqrt}, {"tanh", Expr::Function::tanh},
        {"atan", Expr::Function::atan}, {"erf", Expr::Function::erf},
        {"pow", Expr::Function::pow}};
    for (const auto& [fname, fn] : kFunctions) {
      if (name != fname) continue;
      expect('(', {"'('"});
      std::vector<Expr> args;
      args.push_back(parse_sum());
      if (fn == Expr::Function::pow) {
        expect(',', {"','"});
        skip_ws();
        const std::size_t exponent_at = pos_;
        args.push_back(parse_sum());
        if (args.back().depends_on_x()) {
          throw ParseError(exponent_at, {"constant exponent"},
                           fmt::format("pow() exponent at offset {} must not depend on x",
                                       exponent_at));
        }
      }
      expect(')', {"')'", "operator"});
      return Expr::call(fn, std::move(args));
    }
    throw UnknownIdentifierError(start, std::string(name));
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------------------------

double value_of(double v) { return v; }
double value_of(const Jet3& v) { return v.c0; }
bool finite(double v) { return std::isfinite(v); }
bool finite(const Jet3& v) { return v.is_finite(); }

double k_exp(double v) { return std::exp(v); }
double k_log(double v) { return std::log(v); }
double k_sqrt(double v) { return std::sqrt(v); }
double k_tanh(double v) { return std::tanh(v); }
double k_atan(double v) { return std::atan(v); }
double k_erf(double v) { return std::erf(v); }
double k_pow(double v, double p) { return std::pow(v, p); }
Jet3 k_exp(const Jet3& v) { return bistab::exp(v); }
Jet3 k_log(const Jet3& v) { return bistab::log(v); }
Jet3 k_sqrt(const Jet3& v) { return bistab::sqrt(v); }
Jet3 k_tanh(const Jet3& v) { return bistab::tanh(v); }
Jet3 k_atan(const Jet3& v) { return bistab::atan(v); }
Jet3 k_erf(const Jet3& v) { return bistab::erf(v); }
Jet3 k_pow(const Jet3& v, double p) { return bistab::pow(v, p); }

double constant_value(const Expr& e);

template <class T>
T evaluate(const Expr& e, const T& input, double point);

template <class T>
T constant_power(const Expr& node, const T& base, double p, double point) {
  const double b = value_of(base);
  const bool integral = std::nearbyint(p) == p && std::abs(p) < 9.0e15;
  if (integral) {
    if (b == 0.0 && p < 0.0) throw DomainError(node.to_string(), point, "division by zero");
  } else if (b <= 0.0) {
    throw DomainError(node.to_string(), point, "non-integer power of a non-positive base");
  }
  return k_pow(base, p);
}

template <class T>
T evaluate(const Expr& e, const T& input, double point) {
  T result{};
  switch (e.kind()) {
    case Expr::Kind::number:
      if constexpr (std::is_same_v<T, double>) {
        return e.number_value();
      } else {
        return Jet3::constant(e.number_value());
      }
    case Expr::Kind::variable:
      return input;
    case Expr::Kind::negate:
      return -evaluate(e.operands()[0], input, point);
    case Expr::Kind::add:
      result = evaluate(e.operands()[0], input, point) + evaluate(e.operands()[1], input, point);
      break;
    case Expr::Kind::subtract:
      result = evaluate(e.operands()[0], input, point) - evaluate(e.operands()[1], input, point);
      break;
    case Expr::Kind::multiply:
      result = evaluate(e.operands()[0], input, point) * evaluate(e.operands()[1], input, point);
      break;
    case Expr::Kind::divide: {
      const T num = evaluate(e.operands()[0], input, point);
      const T den = evaluate(e.operands()[1], input, point);
      if (value_of(den) == 0.0) throw DomainError(e.to_string(), point, "division by zero");
      result = num / den;
      break;
    }
    case Expr::Kind::power: {
      const T base = evaluate(e.operands()[0], input, point);
      const Expr& exponent = e.operands()[1];
      if (!exponent.depends_on_x()) {
        result = constant_power(e, base, constant_value(exponent), point);
      } else {
        if (value_of(base) <= 0.0) {
          throw DomainError(e.to_string(), point, "variable power of a non-positive base");
        }
        result = k_exp(evaluate(exponent, input, point) * k_log(base));
      }
      break;
    }
    case Expr::Kind::call: {
      const T arg = evaluate(e.operands()[0], input, point);
      const double a = value_of(arg);
      switch (e.function()) {
        case Expr::Function::exp:
          result = k_exp(arg);
          break;
        case Expr::Function::log:
          if (a <= 0.0) throw DomainError(e.to_string(), point, "log of a non-positive value");
          result = k_log(arg);
          break;
        case Expr::Function::sqrt:
          if (a <= 0.0) throw DomainError(e.to_string(), point, "sqrt of a non-positive value");
          result = k_sqrt(arg);
          break;
        case Expr::Function::tanh:
          result = k_tanh(arg);
          break;
        case Expr::Function::atan:
          result = k_atan(arg);
          break;
        case Expr::Function::erf:
          result = k_erf(arg);
          break;
        case Expr::Function::pow:
          result = constant_power(e, arg, constant_value(e.operands()[1]), point);
          break;
      }
      break;
    }
  }
  if (!finite(result)) throw DomainError(e.to_string(), point, "non-finite result");
  return result;
}

double constant_value(const Expr& e) { return evaluate<double>(e, 0.0, 0.0); }

}  // namespace

Expr parse(std::string_view source) { return Parser(source).parse_all(); }

Jet3 eval_jet3(const Expr& e, double x) { return evaluate<Jet3>(e, Jet3::variable(x), x); }

Jet3 eval_jet3(const Expr& e, const Jet3& u) { return evaluate<Jet3>(e, u, u.c0); }

double eval(const Expr& e, double x) { return evaluate<double>(e, x, x); }

}  // namespace bistab
