#include "gcx/json_io.hpp"

#include <algorithm>

namespace gcx {

namespace {

int read_dim(const nlohmann::json& j) {
  require(j.is_object() && j.contains("dim") && j["dim"].is_number_integer(),
          "expected an object with an integer \"dim\"");
  const int dim = j["dim"].get<int>();
  require_dim(dim);
  return dim;
}

// Sorts 1-based indices into a mask and returns the permutation sign.
std::pair<Mask, int> read_indices(const nlohmann::json& indices, int dim) {
  require(indices.is_array(), "\"indices\" must be an array");
  std::vector<int> idx;
  for (const auto& v : indices) {
    require(v.is_number_integer(), "indices must be integers");
    const int i = v.get<int>();
    require(i >= 1 && i <= dim, "index " + std::to_string(i) + " outside 1.." + std::to_string(dim));
    idx.push_back(i - 1);
  }
  int sign = 1;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      require(idx[a] != idx[b], "repeated index " + std::to_string(idx[a] + 1) + " in a term");
      if (idx[a] > idx[b]) sign = -sign;
    }
  }
  Mask m = 0;
  for (int i : idx) m |= Mask{1} << i;
  return {m, sign};
}

nlohmann::json indices_json(Mask m) {
  nlohmann::json out = nlohmann::json::array();
  for (int i : indices_of(m)) out.push_back(i + 1);
  return out;
}

// Masks ordered by degree, then lexicographically on the index list.
std::vector<Mask> ordered_masks(int dim) {
  std::vector<Mask> masks;
  for (Mask m = 0; m < (Mask{1} << dim); ++m) masks.push_back(m);
  std::stable_sort(masks.begin(), masks.end(), [](Mask a, Mask b) {
    if (degree_of(a) != degree_of(b)) return degree_of(a) < degree_of(b);
    return indices_of(a) < indices_of(b);
  });
  return masks;
}

double number(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) return 0.0;
  require(j[key].is_number(), std::string("\"") + key + "\" must be a number");
  return j[key].get<double>();
}

}  // namespace

nlohmann::json to_json(const Multiform& a) {
  nlohmann::json terms = nlohmann::json::array();
  for (Mask m : ordered_masks(a.dim())) {
    if (a[m] == Complex(0.0)) continue;
    terms.push_back({{"indices", indices_json(m)}, {"re", a[m].real()}, {"im", a[m].imag()}});
  }
  return {{"dim", a.dim()}, {"terms", terms}};
}

Multiform multiform_from_json(const nlohmann::json& j) {
  const int dim = read_dim(j);
  Multiform out(dim);
  require(j.contains("terms") && j["terms"].is_array(), "multiform needs a \"terms\" array");
  for (const auto& t : j["terms"]) {
    require(t.is_object() && t.contains("indices"), "each term needs \"indices\"");
    const auto [m, sign] = read_indices(t["indices"], dim);
    out.at(m) += Complex(number(t, "re"), number(t, "im")) * double(sign);
  }
  return out;
}

nlohmann::json to_json(const GcVector& v) {
  nlohmann::json vec = nlohmann::json::array();
  nlohmann::json cov = nlohmann::json::array();
  for (int i = 0; i < v.dim; ++i) {
    vec.push_back({{"re", v.vec[i].real()}, {"im", v.vec[i].imag()}});
    cov.push_back({{"re", v.cov[i].real()}, {"im", v.cov[i].imag()}});
  }
  return {{"dim", v.dim}, {"vec", vec}, {"cov", cov}};
}

GcVector gc_vector_from_json(const nlohmann::json& j) {
  const int dim = read_dim(j);
  GcVector out(dim);
  for (const char* key : {"vec", "cov"}) {
    require(j.contains(key) && j[key].is_array() && j[key].size() == std::size_t(dim),
            std::string("\"") + key + "\" must be an array of length dim");
    for (int i = 0; i < dim; ++i) {
      const auto& c = j[key][i];
      const Complex z = c.is_number() ? Complex(c.get<double>())
                                      : Complex(number(c, "re"), number(c, "im"));
      (key[0] == 'v' ? out.vec : out.cov)[i] = z;
    }
  }
  return out;
}

nlohmann::json to_json(const NormalForm& nf) {
  return {{"type", nf.type},
          {"omega0", to_json(nf.omega0)},
          {"B", to_json(nf.B)},
          {"omega", to_json(nf.omega)},
          {"gauge_unique", nf.gauge_unique}};
}

BasicMultiform<Expr> form_exprs_from_json(const nlohmann::json& j) {
  const int dim = read_dim(j);
  BasicMultiform<Expr> out(dim);
  require(j.contains("terms") && j["terms"].is_array(), "form field needs a \"terms\" array");
  for (const auto& t : j["terms"]) {
    require(t.is_object() && t.contains("indices") && t.contains("coeff"),
            "each term needs \"indices\" and \"coeff\"");
    const auto [m, sign] = read_indices(t["indices"], dim);
    const Expr c = Expr::from_json(t["coeff"]);
    out.at(m) = out[m] + (sign > 0 ? c : -c);
  }
  return out;
}

nlohmann::json to_json(const BasicMultiform<Expr>& a) {
  nlohmann::json terms = nlohmann::json::array();
  for (Mask m : ordered_masks(a.dim())) {
    if (a[m].is_zero()) continue;
    terms.push_back({{"indices", indices_json(m)}, {"coeff", a[m].to_json()}});
  }
  return {{"dim", a.dim()}, {"terms", terms}};
}

GcVectorExprs gc_vector_exprs_from_json(const nlohmann::json& j) {
  GcVectorExprs out;
  out.dim = read_dim(j);
  for (const char* key : {"vec", "cov"}) {
    require(j.contains(key) && j[key].is_array() && j[key].size() == std::size_t(out.dim),
            std::string("\"") + key + "\" must be an array of length dim");
    for (int i = 0; i < out.dim; ++i) (key[0] == 'v' ? out.vec : out.cov)[i] = Expr::from_json(j[key][i]);
  }
  return out;
}

}  // namespace gcx
