#include "gcx/field.hpp"

#include <cmath>

namespace gcx {

std::string to_string(ChartId id) {
  switch (id) {
    case ChartId::kGeneric: return "generic";
    case ChartId::kCPlane: return "cplane";
    case ChartId::kAnnulus: return "annulus";
    case ChartId::kTube: return "tube";
    case ChartId::kQuotient: return "quotient";
  }
  return "unknown";
}

namespace {

double reduce_unit(double x) {
  double r = x - std::floor(x);
  if (r >= 1.0) r = 0.0;  // x slightly below an integer can round up to 1
  return r;
}

}  // namespace

ChartPoint ChartPoint::make(ChartId chart, int dim, std::array<double, kMaxDim> coords,
                            std::uint8_t periodic) {
  require_dim(dim);
  ChartPoint p;
  p.chart = chart;
  p.dim = dim;
  p.periodic = periodic;
  for (int i = 0; i < dim; ++i) {
    require(std::isfinite(coords[i]), "chart point coordinates must be finite");
    p.coords[i] = (periodic >> i) & 1 ? reduce_unit(coords[i]) : coords[i];
  }
  for (int i = dim; i < kMaxDim; ++i) p.coords[i] = 0.0;
  return p;
}

bool ChartPoint::same_point(const ChartPoint& other, double tol) const {
  if (dim != other.dim || chart != other.chart) return false;
  for (int i = 0; i < dim; ++i) {
    double d = coords[i] - other.coords[i];
    if ((periodic >> i) & 1) d -= std::round(d);
    if (std::abs(d) > tol) return false;
  }
  return true;
}

JetCoords seed_coordinates(const ChartPoint& p) {
  JetCoords x;
  for (int i = 0; i < kMaxDim; ++i) x[i] = Jet::variable(p.coords[i], i);
  return x;
}

FormJet to_form_jet(const JetMultiform& f, int order) {
  const int n = f.dim();
  FormJet out{Multiform(n), {}, {}, order};
  for (int i = 0; i < kMaxDim; ++i) {
    out.d1[i] = Multiform(n);
    for (int j = 0; j < kMaxDim; ++j) out.d2[i][j] = Multiform(n);
  }
  for (Mask m = 0; m < f.size(); ++m) {
    const Jet& c = f[m];
    out.value.at(m) = c.value();
    for (int i = 0; i < n; ++i) {
      out.d1[i].at(m) = c.d1(i);
      for (int j = 0; j < n; ++j) out.d2[i][j].at(m) = c.d2(i, j);
    }
  }
  return out;
}

JetMultiform from_form_jet(const FormJet& f) {
  const int n = f.value.dim();
  JetMultiform out(n);
  for (Mask m = 0; m < out.size(); ++m) {
    Jet::Gradient g{};
    Jet::Hessian h{};
    for (int i = 0; i < n; ++i) {
      g[i] = f.d1[i][m];
      for (int j = 0; j < n; ++j) h[i][j] = f.order >= 2 ? f.d2[i][j][m] : Complex(0.0);
    }
    out.at(m) = Jet::from_parts(f.value[m], g, h);
  }
  return out;
}

GcVectorJet to_gc_vector_jet(const JetGcVector& v) {
  const int n = v.dim;
  GcVectorJet out{GcVector(n), {}, {}, 2};
  for (int i = 0; i < kMaxDim; ++i) {
    out.d1[i] = GcVector(n);
    for (int j = 0; j < kMaxDim; ++j) out.d2[i][j] = GcVector(n);
  }
  for (int k = 0; k < 2 * n; ++k) {
    const Jet& c = v.component(k);
    out.value.component(k) = c.value();
    for (int i = 0; i < n; ++i) {
      out.d1[i].component(k) = c.d1(i);
      for (int j = 0; j < n; ++j) out.d2[i][j].component(k) = c.d2(i, j);
    }
  }
  return out;
}

FormField FormField::constant(const Multiform& value) {
  return FormField(value.dim(), [value](const JetCoords&) {
    JetMultiform out(value.dim());
    for (Mask m = 0; m < value.size(); ++m) out.at(m) = Jet(value[m]);
    return out;
  });
}

FormField FormField::from_exprs(const BasicMultiform<Expr>& coeffs) {
  return FormField(coeffs.dim(), [coeffs](const JetCoords& x) {
    JetMultiform out(coeffs.dim());
    for (Mask m = 0; m < coeffs.size(); ++m) {
      if (!coeffs[m].is_zero()) out.at(m) = coeffs[m].eval(x);
    }
    return out;
  });
}

FormJet FormField::jet(const ChartPoint& p) const {
  require(p.dim == dim_, "field evaluated at a point of the wrong dimension");
  return to_form_jet(fn_(seed_coordinates(p)));
}

Multiform FormField::value(const ChartPoint& p) const { return jet(p).value; }

GcVectorField GcVectorField::constant(const GcVector& value) {
  return GcVectorField(value.dim, [value](const JetCoords&) {
    JetGcVector out(value.dim);
    for (int k = 0; k < 2 * value.dim; ++k) out.component(k) = Jet(value.component(k));
    return out;
  });
}

GcVectorField GcVectorField::from_exprs(int dim, const std::array<Expr, kMaxDim>& vec,
                                        const std::array<Expr, kMaxDim>& cov) {
  return GcVectorField(dim, [dim, vec, cov](const JetCoords& x) {
    JetGcVector out(dim);
    for (int i = 0; i < dim; ++i) {
      out.vec[i] = vec[i].eval(x);
      out.cov[i] = cov[i].eval(x);
    }
    return out;
  });
}

GcVectorJet GcVectorField::jet(const ChartPoint& p) const {
  require(p.dim == dim_, "field evaluated at a point of the wrong dimension");
  return to_gc_vector_jet(fn_(seed_coordinates(p)));
}

FormField operator+(const FormField& a, const FormField& b) {
  require(a.dim() == b.dim(), "field dimension mismatch");
  return FormField(a.dim(), [a, b](const JetCoords& x) { return a(x) + b(x); });
}

FormField scaled(const FormField& a, Complex s) {
  return FormField(a.dim(), [a, s](const JetCoords& x) { return a(x).scaled(s); });
}

FormField wedge(const FormField& a, const FormField& b) {
  require(a.dim() == b.dim(), "field dimension mismatch");
  return FormField(a.dim(), [a, b](const JetCoords& x) { return wedge(a(x), b(x)); });
}

FormField exp_wedge(const FormField& b) {
  return FormField(b.dim(), [b](const JetCoords& x) { return exp_wedge_unchecked(b(x)); });
}

namespace {

GcVectorField shift_by_contraction(const FormField& B, const GcVectorField& u, double sign) {
  require(B.dim() == u.dim(), "field dimension mismatch");
  return GcVectorField(u.dim(), [B, u, sign](const JetCoords& x) {
    JetGcVector v = u(x);
    const JetMultiform shift = interior(v.vec, B(x).degree_part(2));
    for (int i = 0; i < v.dim; ++i) v.cov[i] = v.cov[i] + shift[Mask{1} << i] * sign;
    return v;
  });
}

}  // namespace

GcVectorField b_transform(const FormField& B, const GcVectorField& u) {
  return shift_by_contraction(B, u, 1.0);
}

GcVectorField b_transform_inverse(const FormField& B, const GcVectorField& u) {
  return shift_by_contraction(B, u, -1.0);
}

ChartMap::ChartMap(Charts charts, int dim, Fn forward, std::optional<Fn> inverse,
                   std::function<void(const ChartPoint&)> domain_check)
    : charts_(charts),
      dim_(dim),
      forward_(std::move(forward)),
      inverse_(std::move(inverse)),
      domain_check_(std::move(domain_check)) {}

JetCoords ChartMap::forward_jets(const ChartPoint& p) const {
  require(p.dim == dim_, "chart map applied to a point of the wrong dimension");
  check_domain(p);
  return forward_(seed_coordinates(p));
}

ChartPoint ChartMap::apply(const ChartPoint& p) const {
  const JetCoords y = forward_jets(p);
  std::array<double, kMaxDim> c{};
  for (int i = 0; i < dim_; ++i) c[i] = y[i].value().real();
  return ChartPoint::make(charts_.target, dim_, c, charts_.target_periodic);
}

ChartPoint ChartMap::apply_inverse(const ChartPoint& q) const {
  require(inverse_.has_value(), "chart map has no inverse");
  require(q.dim == dim_, "chart map applied to a point of the wrong dimension");
  const JetCoords y = (*inverse_)(seed_coordinates(q));
  std::array<double, kMaxDim> c{};
  for (int i = 0; i < dim_; ++i) c[i] = y[i].value().real();
  return ChartPoint::make(charts_.source, dim_, c, charts_.source_periodic);
}

std::array<std::array<double, kMaxDim>, kMaxDim> ChartMap::jacobian(const ChartPoint& p) const {
  const JetCoords y = forward_jets(p);
  std::array<std::array<double, kMaxDim>, kMaxDim> jac{};
  for (int j = 0; j < dim_; ++j) {
    for (int i = 0; i < dim_; ++i) jac[j][i] = y[j].d1(i).real();
  }
  return jac;
}

}  // namespace gcx
