#pragma once

// Chart points, jet-valued fields and chart maps.
//
// A field is a function from coordinate jets to jet-valued coefficients.
// Evaluating it on the coordinate functions seeded at a point yields the value
// and exact first and second partials there; evaluating it on the output of a
// chart map composes the two with the chain rule.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gcx/expr.hpp"
#include "gcx/multiform.hpp"

namespace gcx {

enum class ChartId { kGeneric, kCPlane, kAnnulus, kTube, kQuotient };

std::string to_string(ChartId id);

struct ChartPoint {
  ChartId chart = ChartId::kGeneric;
  int dim = kMaxDim;
  std::array<double, kMaxDim> coords{};
  std::uint8_t periodic = 0;  // bit i: coordinate i is an angle of unit period

  // Reduces periodic coordinates to [0, 1).
  static ChartPoint make(ChartId chart, int dim, std::array<double, kMaxDim> coords,
                         std::uint8_t periodic = 0);

  // Equality with periodic coordinates compared modulo 1.
  bool same_point(const ChartPoint& other, double tol) const;
};

// Coordinate functions at p, as jets.
JetCoords seed_coordinates(const ChartPoint& p);

// Value with first and, when order == 2, second partials.
template <class V>
struct BasicFieldJet {
  V value;
  std::array<V, kMaxDim> d1;
  std::array<std::array<V, kMaxDim>, kMaxDim> d2;
  int order = 2;
};

using FormJet = BasicFieldJet<Multiform>;
using GcVectorJet = BasicFieldJet<GcVector>;

FormJet to_form_jet(const JetMultiform& f, int order = 2);
GcVectorJet to_gc_vector_jet(const JetGcVector& v);
JetMultiform from_form_jet(const FormJet& f);

class FormField {
 public:
  using Fn = std::function<JetMultiform(const JetCoords&)>;

  FormField() = default;
  FormField(int dim, Fn fn) : dim_(dim), fn_(std::move(fn)) {}

  static FormField constant(const Multiform& value);
  static FormField from_exprs(const BasicMultiform<Expr>& coeffs);

  int dim() const { return dim_; }
  bool empty() const { return !fn_; }

  JetMultiform operator()(const JetCoords& x) const { return fn_(x); }
  FormJet jet(const ChartPoint& p) const;
  Multiform value(const ChartPoint& p) const;

 private:
  int dim_ = kMaxDim;
  Fn fn_;
};

class GcVectorField {
 public:
  using Fn = std::function<JetGcVector(const JetCoords&)>;

  GcVectorField() = default;
  GcVectorField(int dim, Fn fn) : dim_(dim), fn_(std::move(fn)) {}

  static GcVectorField constant(const GcVector& value);
  static GcVectorField from_exprs(int dim, const std::array<Expr, kMaxDim>& vec,
                                  const std::array<Expr, kMaxDim>& cov);

  int dim() const { return dim_; }
  JetGcVector operator()(const JetCoords& x) const { return fn_(x); }
  GcVectorJet jet(const ChartPoint& p) const;

 private:
  int dim_ = kMaxDim;
  Fn fn_;
};

// The wedge, sum and exp_wedge of fields, pointwise on jets.
FormField operator+(const FormField& a, const FormField& b);
FormField scaled(const FormField& a, Complex s);
FormField wedge(const FormField& a, const FormField& b);
FormField exp_wedge(const FormField& b);

// X + xi -> X + xi + i_X B, applied to a field.
GcVectorField b_transform(const FormField& B, const GcVectorField& u);
// The inverse, X + xi -> X + xi - i_X B.
GcVectorField b_transform_inverse(const FormField& B, const GcVectorField& u);

class ChartMap {
 public:
  using Fn = std::function<JetCoords(const JetCoords&)>;

  ChartMap() = default;
  struct Charts {
    ChartId source = ChartId::kGeneric;
    ChartId target = ChartId::kGeneric;
    std::uint8_t source_periodic = 0;
    std::uint8_t target_periodic = 0;
  };

  ChartMap(Charts charts, int dim, Fn forward, std::optional<Fn> inverse = std::nullopt,
           std::function<void(const ChartPoint&)> domain_check = {});

  ChartId source() const { return charts_.source; }
  ChartId target() const { return charts_.target; }
  int dim() const { return dim_; }
  bool has_inverse() const { return inverse_.has_value(); }

  // Image point with periodic coordinates reduced.
  ChartPoint apply(const ChartPoint& p) const;
  ChartPoint apply_inverse(const ChartPoint& q) const;

  // Image coordinate jets at p (value, Jacobian, second derivatives).
  JetCoords forward_jets(const ChartPoint& p) const;
  JetCoords forward_jets(const JetCoords& x) const { return forward_(x); }

  // jacobian[j][i] = d y_j / d x_i at p.
  std::array<std::array<double, kMaxDim>, kMaxDim> jacobian(const ChartPoint& p) const;

  void check_domain(const ChartPoint& p) const {
    if (domain_check_) domain_check_(p);
  }

 private:
  Charts charts_;
  int dim_ = kMaxDim;
  Fn forward_;
  std::optional<Fn> inverse_;
  std::function<void(const ChartPoint&)> domain_check_;
};

}  // namespace gcx
