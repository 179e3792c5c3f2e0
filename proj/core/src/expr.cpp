#include "gcx/expr.hpp"

#include <nlohmann/json.hpp>
#include <sstream>

#include "gcx/errors.hpp"

namespace gcx {

struct Expr::Node {
  Kind kind;
  Complex constant{0.0};
  int var = 0;
  double exponent = 1.0;
  std::vector<Expr> args;
};

namespace {

using Node = Expr::Node;

std::shared_ptr<const Node> make_node(Expr::Kind kind, std::vector<Expr> args,
                                      double exponent = 1.0) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->args = std::move(args);
  n->exponent = exponent;
  return n;
}

}  // namespace

Expr::Expr(Complex c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kConst;
  n->constant = c;
  node_ = std::move(n);
}

Expr Expr::var(int index) {
  require(index >= 0 && index < kMaxDim, "Expr::var: coordinate index out of range");
  auto n = std::make_shared<Node>();
  n->kind = Kind::kVar;
  n->var = index;
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr::Kind Expr::kind() const { return node_->kind; }
bool Expr::is_zero() const { return is_const() && node_->constant == Complex(0.0); }
Complex Expr::constant() const { return node_->constant; }

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.is_const() && b.is_const()) return Expr(a.constant() + b.constant());
  return Expr(make_node(Expr::Kind::kAdd, {a, b}));
}

Expr operator-(const Expr& a) {
  if (a.is_const()) return Expr(-a.constant());
  return Expr(make_node(Expr::Kind::kNeg, {a}));
}

Expr operator-(const Expr& a, const Expr& b) {
  if (b.is_zero()) return a;
  return a + (-b);
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return Expr(0.0);
  if (a.is_const() && a.constant() == Complex(1.0)) return b;
  if (b.is_const() && b.constant() == Complex(1.0)) return a;
  if (a.is_const() && b.is_const()) return Expr(a.constant() * b.constant());
  return Expr(make_node(Expr::Kind::kMul, {a, b}));
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_zero()) throw ContractError("Expr: division by the zero constant");
  if (a.is_zero()) return Expr(0.0);
  if (b.is_const() && b.constant() == Complex(1.0)) return a;
  if (a.is_const() && b.is_const()) return Expr(a.constant() / b.constant());
  return Expr(make_node(Expr::Kind::kDiv, {a, b}));
}

Expr pow(const Expr& a, double exponent) {
  if (exponent == 0.0) return Expr(1.0);
  if (exponent == 1.0) return a;
  if (a.is_const()) return Expr(std::pow(a.constant(), exponent));
  return Expr(make_node(Expr::Kind::kPow, {a}, exponent));
}

Expr exp(const Expr& a) {
  if (a.is_const()) return Expr(std::exp(a.constant()));
  return Expr(make_node(Expr::Kind::kExp, {a}));
}

Expr log(const Expr& a) {
  if (a.is_const()) return Expr(std::log(a.constant()));
  return Expr(make_node(Expr::Kind::kLog, {a}));
}

Expr sin_turns(const Expr& a) {
  if (a.is_const()) return Expr(std::sin(kTwoPi * a.constant()));
  return Expr(make_node(Expr::Kind::kSin, {a}));
}

Expr cos_turns(const Expr& a) {
  if (a.is_const()) return Expr(std::cos(kTwoPi * a.constant()));
  return Expr(make_node(Expr::Kind::kCos, {a}));
}

Jet Expr::eval(const JetCoords& x) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::kConst:
      return Jet(n.constant);
    case Kind::kVar:
      return x[n.var];
    case Kind::kAdd:
      return n.args[0].eval(x) + n.args[1].eval(x);
    case Kind::kMul:
      return n.args[0].eval(x) * n.args[1].eval(x);
    case Kind::kNeg:
      return -n.args[0].eval(x);
    case Kind::kDiv:
      return n.args[0].eval(x) / n.args[1].eval(x);
    case Kind::kPow:
      return pow(n.args[0].eval(x), n.exponent);
    case Kind::kExp:
      return exp(n.args[0].eval(x));
    case Kind::kLog:
      return log(n.args[0].eval(x));
    case Kind::kSin:
      return sin(n.args[0].eval(x) * kTwoPi);
    case Kind::kCos:
      return cos(n.args[0].eval(x) * kTwoPi);
  }
  throw InternalError("Expr::eval: unknown node kind");
}

Complex Expr::eval_value(const std::array<double, kMaxDim>& x) const {
  JetCoords jx;
  for (int i = 0; i < kMaxDim; ++i) jx[i] = Jet(x[i]);
  return eval(jx).value();
}

Expr Expr::derivative(int index) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::kConst:
      return Expr(0.0);
    case Kind::kVar:
      return Expr(n.var == index ? 1.0 : 0.0);
    case Kind::kAdd:
      return n.args[0].derivative(index) + n.args[1].derivative(index);
    case Kind::kMul:
      return n.args[0].derivative(index) * n.args[1] + n.args[0] * n.args[1].derivative(index);
    case Kind::kNeg:
      return -n.args[0].derivative(index);
    case Kind::kDiv: {
      const Expr& a = n.args[0];
      const Expr& b = n.args[1];
      return (a.derivative(index) * b - a * b.derivative(index)) / pow(b, 2.0);
    }
    case Kind::kPow:
      return Expr(n.exponent) * pow(n.args[0], n.exponent - 1.0) * n.args[0].derivative(index);
    case Kind::kExp:
      return *this * n.args[0].derivative(index);
    case Kind::kLog:
      return n.args[0].derivative(index) / n.args[0];
    case Kind::kSin:
      return Expr(kTwoPi) * cos_turns(n.args[0]) * n.args[0].derivative(index);
    case Kind::kCos:
      return Expr(-kTwoPi) * sin_turns(n.args[0]) * n.args[0].derivative(index);
  }
  throw InternalError("Expr::derivative: unknown node kind");
}

namespace {

const char* op_name(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::kAdd: return "add";
    case Expr::Kind::kMul: return "mul";
    case Expr::Kind::kNeg: return "neg";
    case Expr::Kind::kDiv: return "div";
    case Expr::Kind::kPow: return "pow";
    case Expr::Kind::kExp: return "exp";
    case Expr::Kind::kLog: return "log";
    case Expr::Kind::kSin: return "sin";
    case Expr::Kind::kCos: return "cos";
    default: return "";
  }
}

}  // namespace

nlohmann::json Expr::to_json() const {
  const Node& n = *node_;
  if (n.kind == Kind::kConst) {
    if (n.constant.imag() == 0.0) return n.constant.real();
    return {{"re", n.constant.real()}, {"im", n.constant.imag()}};
  }
  if (n.kind == Kind::kVar) return {{"var", n.var + 1}};
  nlohmann::json args = nlohmann::json::array();
  for (const auto& a : n.args) args.push_back(a.to_json());
  nlohmann::json out = {{"op", op_name(n.kind)}, {"args", args}};
  if (n.kind == Kind::kPow) out["exponent"] = n.exponent;
  return out;
}

Expr Expr::from_json(const nlohmann::json& j) {
  if (j.is_number()) return Expr(j.get<double>());
  require(j.is_object(), "expression must be a number or an object");
  if (j.contains("var")) {
    const int v = j.at("var").get<int>();
    require(v >= 1 && v <= kMaxDim, "expression var index must be in 1..4");
    return Expr::var(v - 1);
  }
  if (j.contains("re") || j.contains("im")) {
    return Expr(Complex(j.value("re", 0.0), j.value("im", 0.0)));
  }
  require(j.contains("op") && j.contains("args") && j.at("args").is_array(),
          "expression object needs 'var', 're'/'im', or 'op' with 'args'");
  const std::string op = j.at("op").get<std::string>();
  std::vector<Expr> args;
  for (const auto& a : j.at("args")) args.push_back(from_json(a));
  auto unary = [&](const char* name) {
    require(args.size() == 1, std::string("expression op '") + name + "' takes one argument");
    return args[0];
  };
  if (op == "add" || op == "mul") {
    require(!args.empty(), "expression op '" + op + "' needs arguments");
    Expr acc = args[0];
    for (std::size_t i = 1; i < args.size(); ++i) acc = op == "add" ? acc + args[i] : acc * args[i];
    return acc;
  }
  if (op == "sub") {
    require(args.size() == 2, "expression op 'sub' takes two arguments");
    return args[0] - args[1];
  }
  if (op == "div") {
    require(args.size() == 2, "expression op 'div' takes two arguments");
    return args[0] / args[1];
  }
  if (op == "neg") return -unary("neg");
  if (op == "pow") {
    require(j.contains("exponent"), "expression op 'pow' needs an 'exponent'");
    return pow(unary("pow"), j.at("exponent").get<double>());
  }
  if (op == "exp") return exp(unary("exp"));
  if (op == "log") return log(unary("log"));
  if (op == "sin") return sin_turns(unary("sin"));
  if (op == "cos") return cos_turns(unary("cos"));
  throw ContractError("unknown expression op '" + op + "'");
}

std::string Expr::to_string() const { return to_json().dump(); }

}  // namespace gcx
