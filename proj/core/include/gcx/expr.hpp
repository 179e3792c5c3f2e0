#pragma once

// Immutable expression trees over chart coordinates.
//
// The vocabulary is fixed: complex constants, coordinates, +, -, *, /, real
// powers, exp, log, and sin/cos of angles measured in turns (sin(x) means
// sin(2 pi x)). Trees evaluate over Jets and differentiate symbolically.
// Only constant folding is performed.

#include <memory>
#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

#include "gcx/jet.hpp"

namespace gcx {

class Expr {
 public:
  enum class Kind { kConst, kVar, kAdd, kMul, kNeg, kDiv, kPow, kExp, kLog, kSin, kCos };

  Expr() : Expr(Complex(0.0)) {}
  Expr(double c) : Expr(Complex(c)) {}  // NOLINT(google-explicit-constructor)
  Expr(Complex c);                      // NOLINT(google-explicit-constructor)

  // 0-based coordinate index.
  static Expr var(int index);

  Kind kind() const;
  bool is_const() const { return kind() == Kind::kConst; }
  bool is_zero() const;
  Complex constant() const;

  Jet eval(const JetCoords& x) const;
  Complex eval_value(const std::array<double, kMaxDim>& x) const;

  // Symbolic partial derivative with respect to coordinate `index`.
  Expr derivative(int index) const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);
  friend Expr operator*(const Expr& a, double s) { return a * Expr(s); }
  friend Expr pow(const Expr& a, double exponent);
  friend Expr exp(const Expr& a);
  friend Expr log(const Expr& a);
  friend Expr sin_turns(const Expr& a);
  friend Expr cos_turns(const Expr& a);

  nlohmann::json to_json() const;
  static Expr from_json(const nlohmann::json& j);

  std::string to_string() const;

  struct Node;

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

}  // namespace gcx
