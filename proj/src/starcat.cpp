#include "cxp/starcat.hpp"

#include <sstream>

namespace cxp {

void ValidationReport::merge(const ValidationReport& other, const std::string& prefix) {
  for (const auto& v : other.violations)
    violations.push_back({v.kind, prefix.empty() ? v.location : prefix + ": " + v.location});
  for (const auto& n : other.notes) notes.push_back(prefix.empty() ? n : prefix + ": " + n);
}

std::string ValidationReport::summary() const {
  if (ok()) return "valid";
  std::ostringstream os;
  os << violations.size() << " violation(s); first: " << violations.front().kind << " at "
     << violations.front().location;
  return os.str();
}

const char* to_string(Status s) {
  switch (s) {
    case Status::verified: return "verified";
    case Status::refuted: return "refuted";
    case Status::inconclusive: return "inconclusive";
  }
  return "?";
}

Category::Category(std::vector<std::string> objects, const std::vector<std::size_t>& hom_dims)
    : objects_(std::move(objects)), dims_(hom_dims) {
  const std::size_t n = objects_.size();
  if (dims_.size() != n * n) throw Error("hom dimension table must be n x n");
  comp_.resize(n * n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        comp_[(a * n + b) * n + c].resize(hom_dim(a, b) * hom_dim(b, c));
  star_.resize(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) star_[a * n + b] = ExactMatrix(hom_dim(b, a), hom_dim(a, b));
  units_.resize(n);
}

std::optional<std::size_t> Category::find_object(const std::string& name) const {
  for (std::size_t k = 0; k < objects_.size(); ++k)
    if (objects_[k] == name) return k;
  return std::nullopt;
}

void Category::set_comp(std::size_t a, std::size_t b, std::size_t c, std::size_t g,
                        std::size_t f, SparseVector value) {
  if (g >= hom_dim(b, c) || f >= hom_dim(a, b)) throw Error("composition index out of range");
  for (const auto& t : value)
    if (t.index >= hom_dim(a, c)) throw Error("composition value index out of range");
  comp_[(a * size() + b) * size() + c][g * hom_dim(a, b) + f] = std::move(value);
}

void Category::set_star(std::size_t a, std::size_t b, ExactMatrix m) {
  if (m.rows() != hom_dim(b, a) || m.cols() != hom_dim(a, b))
    throw Error("star matrix for " + objects_[a] + "->" + objects_[b] + " has the wrong shape");
  star_[a * size() + b] = std::move(m);
}

void Category::set_unit(std::size_t a, std::optional<Vector> u) {
  if (u && u->size() != hom_dim(a, a))
    throw Error("unit of " + objects_[a] + " has the wrong length");
  units_.at(a) = std::move(u);
}

Vector Category::compose(std::size_t a, std::size_t b, std::size_t c, const Vector& g,
                         const Vector& f) const {
  Vector out(hom_dim(a, c));
  const std::size_t df = hom_dim(a, b);
  const auto& table = comp_[(a * size() + b) * size() + c];
  for (std::size_t gi = 0; gi < g.size(); ++gi) {
    if (g[gi].is_zero()) continue;
    for (std::size_t fi = 0; fi < df; ++fi) {
      if (f[fi].is_zero()) continue;
      const SparseVector& v = table[gi * df + fi];
      if (v.empty()) continue;
      accumulate(out, g[gi] * f[fi], v);
    }
  }
  return out;
}

Vector Category::adjoint(std::size_t a, std::size_t b, const Vector& f) const {
  return star(a, b).apply(cxp::conj(f));
}

Vector Category::identity(std::size_t a) const {
  if (!units_.at(a)) throw Error("object " + objects_[a] + " has no identity");
  return *units_[a];
}

std::size_t Category::total_dim() const {
  std::size_t d = 0;
  for (auto x : dims_) d += x;
  return d;
}

// ---------------------------------------------------------------------------

Morphism compose(const Category& cat, const Morphism& g, const Morphism& f) {
  if (f.target != g.source)
    throw Error("cannot compose " + cat.object_name(g.source) + "->" + cat.object_name(g.target) +
                " after " + cat.object_name(f.source) + "->" + cat.object_name(f.target));
  return {f.source, g.target, cat.compose(f.source, f.target, g.target, g.coords, f.coords)};
}

Morphism adjoint(const Category& cat, const Morphism& f) {
  return {f.target, f.source, cat.adjoint(f.source, f.target, f.coords)};
}

Morphism zero_morphism(const Category& cat, std::size_t a, std::size_t b) {
  return {a, b, Vector(cat.hom_dim(a, b))};
}

Morphism basis_morphism(const Category& cat, std::size_t a, std::size_t b, std::size_t k) {
  return {a, b, unit_vector(cat.hom_dim(a, b), k)};
}

namespace {

std::string hom_name(const Category& cat, std::size_t a, std::size_t b) {
  return cat.object_name(a) + "->" + cat.object_name(b);
}

}  // namespace

ValidationReport validate_presentation(const Category& cat) {
  ValidationReport rep;
  const std::size_t n = cat.size();

  // Involutivity: star(b,a) * conj(star(a,b)) = I.
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (cat.hom_dim(a, b) == 0) continue;
      ExactMatrix twice = cat.star(b, a) * cat.star(a, b).conj();
      if (!(twice == ExactMatrix::identity(cat.hom_dim(a, b))))
        rep.add("star not involutive", hom_name(cat, a, b));
    }

  // Associativity, skipping triples where both inner products vanish.
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t dab = cat.hom_dim(a, b);
      if (dab == 0) continue;
      for (std::size_t c = 0; c < n; ++c) {
        const std::size_t dbc = cat.hom_dim(b, c);
        if (dbc == 0) continue;
        for (std::size_t d = 0; d < n; ++d) {
          const std::size_t dcd = cat.hom_dim(c, d);
          if (dcd == 0) continue;
          for (std::size_t g = 0; g < dbc; ++g)
            for (std::size_t f = 0; f < dab; ++f) {
              const SparseVector& gf = cat.comp(a, b, c, g, f);
              for (std::size_t h = 0; h < dcd; ++h) {
                const SparseVector& hg = cat.comp(b, c, d, h, g);
                if (gf.empty() && hg.empty()) continue;
                Vector left(cat.hom_dim(a, d)), right(cat.hom_dim(a, d));
                for (const auto& t : hg) accumulate(left, t.value, cat.comp(a, b, d, t.index, f));
                for (const auto& t : gf) accumulate(right, t.value, cat.comp(a, c, d, h, t.index));
                if (left != right) {
                  std::ostringstream os;
                  os << "objects " << cat.object_name(a) << "," << cat.object_name(b) << ","
                     << cat.object_name(c) << "," << cat.object_name(d) << " basis (h=" << h
                     << ", g=" << g << ", f=" << f << ")";
                  rep.add("associativity", os.str());
                  if (rep.violations.size() > 32) return rep;
                }
              }
            }
        }
      }
    }

  // (g o f)* = f* o g*.
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t dab = cat.hom_dim(a, b);
      if (dab == 0) continue;
      for (std::size_t c = 0; c < n; ++c) {
        const std::size_t dbc = cat.hom_dim(b, c);
        for (std::size_t g = 0; g < dbc; ++g)
          for (std::size_t f = 0; f < dab; ++f) {
            Vector gf = densify(cat.comp(a, b, c, g, f), cat.hom_dim(a, c));
            Vector left = cat.adjoint(a, c, gf);
            Vector fs = cat.adjoint(a, b, unit_vector(dab, f));
            Vector gs = cat.adjoint(b, c, unit_vector(dbc, g));
            Vector right = cat.compose(c, b, a, fs, gs);
            if (left != right) {
              std::ostringstream os;
              os << "objects " << cat.object_name(a) << "," << cat.object_name(b) << ","
                 << cat.object_name(c) << " basis (g=" << g << ", f=" << f << ")";
              rep.add("star not anti-multiplicative", os.str());
              if (rep.violations.size() > 32) return rep;
            }
          }
      }
    }

  if (cat.unital()) {
    for (std::size_t a = 0; a < n; ++a) {
      if (!cat.unit(a)) {
        rep.add("missing identity", cat.object_name(a));
        continue;
      }
      const Vector& id = *cat.unit(a);
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t f = 0; f < cat.hom_dim(x, a); ++f) {
          Vector e = unit_vector(cat.hom_dim(x, a), f);
          if (cat.compose(x, a, a, id, e) != e)
            rep.add("left unit law", "id_" + cat.object_name(a) + " o basis " + std::to_string(f) +
                                         " of " + hom_name(cat, x, a));
        }
        for (std::size_t f = 0; f < cat.hom_dim(a, x); ++f) {
          Vector e = unit_vector(cat.hom_dim(a, x), f);
          if (cat.compose(a, a, x, e, id) != e)
            rep.add("right unit law", "basis " + std::to_string(f) + " of " + hom_name(cat, a, x) +
                                          " o id_" + cat.object_name(a));
        }
      }
    }
  }

  if (cat.concrete) rep.merge(validate_concrete(cat), "concrete");
  return rep;
}

std::optional<Vector> solve_unit(const Category& cat, std::size_t a) {
  const std::size_t n = cat.size();
  const std::size_t d = cat.hom_dim(a, a);
  // Unknown u in End(a); constraints u o f = f on Hom(x,a), f o u = f on Hom(a,x).
  std::vector<Vector> rows;
  Vector rhs;
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t dxa = cat.hom_dim(x, a);
    for (std::size_t f = 0; f < dxa; ++f) {
      // column k of the map u |-> u o f is comp(e_k, f)
      std::vector<Vector> cols;
      for (std::size_t k = 0; k < d; ++k) cols.push_back(densify(cat.comp(x, a, a, k, f), dxa));
      for (std::size_t r = 0; r < dxa; ++r) {
        Vector row(d);
        for (std::size_t k = 0; k < d; ++k) row[k] = cols[k][r];
        rows.push_back(std::move(row));
        rhs.push_back(r == f ? Scalar(1) : Scalar(0));
      }
    }
    const std::size_t dax = cat.hom_dim(a, x);
    for (std::size_t f = 0; f < dax; ++f) {
      std::vector<Vector> cols;
      for (std::size_t k = 0; k < d; ++k) cols.push_back(densify(cat.comp(a, a, x, f, k), dax));
      for (std::size_t r = 0; r < dax; ++r) {
        Vector row(d);
        for (std::size_t k = 0; k < d; ++k) row[k] = cols[k][r];
        rows.push_back(std::move(row));
        rhs.push_back(r == f ? Scalar(1) : Scalar(0));
      }
    }
  }
  if (rows.empty()) return Vector(d);
  ExactMatrix m = ExactMatrix::from_rows(rows);
  return solve(m, rhs);
}

void detect_units(Category& cat) {
  bool all = true;
  for (std::size_t a = 0; a < cat.size(); ++a) {
    auto u = solve_unit(cat, a);
    all = all && u.has_value();
    cat.set_unit(a, std::move(u));
  }
  cat.set_unital(all);
}

// ---------------------------------------------------------------------------

Morphism StarFunctor::apply(const Morphism& f) const {
  return {object_map.at(f.source), object_map.at(f.target), apply(f.source, f.target, f.coords)};
}

StarFunctor blank_functor(CategoryPtr source, CategoryPtr target, std::vector<std::size_t> objects) {
  StarFunctor out{std::move(source), std::move(target), std::move(objects), {}};
  const std::size_t n = out.source->size();
  if (out.object_map.size() != n) throw Error("object map has the wrong length");
  for (auto t : out.object_map)
    if (t >= out.target->size()) throw Error("object map points outside the target");
  out.hom_maps.resize(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      out.hom_maps[a * n + b] =
          ExactMatrix(out.target->hom_dim(out.object_map[a], out.object_map[b]),
                      out.source->hom_dim(a, b));
  return out;
}

StarFunctor identity_functor(CategoryPtr cat) {
  std::vector<std::size_t> ids(cat->size());
  for (std::size_t k = 0; k < ids.size(); ++k) ids[k] = k;
  StarFunctor f = blank_functor(cat, cat, ids);
  for (std::size_t a = 0; a < cat->size(); ++a)
    for (std::size_t b = 0; b < cat->size(); ++b)
      f.hom_map(a, b) = ExactMatrix::identity(cat->hom_dim(a, b));
  return f;
}

StarFunctor compose(const StarFunctor& later, const StarFunctor& earlier) {
  if (earlier.target.get() != later.source.get() &&
      earlier.target->objects() != later.source->objects())
    throw Error("functors are not composable");
  std::vector<std::size_t> objs;
  for (auto o : earlier.object_map) objs.push_back(later.object_map.at(o));
  StarFunctor out = blank_functor(earlier.source, later.target, objs);
  const std::size_t n = earlier.source->size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      out.hom_map(a, b) =
          later.hom_map(earlier.object_map[a], earlier.object_map[b]) * earlier.hom_map(a, b);
  return out;
}

bool same_functor(const StarFunctor& x, const StarFunctor& y) {
  return x.object_map == y.object_map && x.hom_maps == y.hom_maps;
}

StarFunctor invert_isomorphism(const StarFunctor& f) {
  const std::size_t n = f.source->size();
  if (f.target->size() != n || !is_bijective_on_objects(f))
    throw Error("invert_isomorphism: functor is not bijective on objects");
  std::vector<std::size_t> inv(n);
  for (std::size_t a = 0; a < n; ++a) inv[f.object_map[a]] = a;
  StarFunctor out = blank_functor(f.target, f.source, inv);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const ExactMatrix& m = f.hom_map(inv[x], inv[y]);
      if (m.rows() != m.cols() || exact_rank(m) != m.rows())
        throw Error("invert_isomorphism: hom map is not bijective");
      std::vector<Vector> cols;
      for (std::size_t k = 0; k < m.rows(); ++k) cols.push_back(*solve(m, unit_vector(m.rows(), k)));
      out.hom_map(x, y) = ExactMatrix::from_columns(m.cols(), cols);
    }
  return out;
}

ValidationReport validate_functor(const StarFunctor& F) {
  ValidationReport rep;
  const Category& s = *F.source;
  const Category& t = *F.target;
  const std::size_t n = s.size();
  if (F.object_map.size() != n) {
    rep.add("object map", "wrong length");
    return rep;
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const ExactMatrix& m = F.hom_map(a, b);
      if (m.rows() != t.hom_dim(F.object_map[a], F.object_map[b]) || m.cols() != s.hom_dim(a, b))
        rep.add("hom map shape", hom_name(s, a, b));
    }
  if (!rep.ok()) return rep;

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t dab = s.hom_dim(a, b);
      const std::size_t A = F.object_map[a], B = F.object_map[b];
      for (std::size_t f = 0; f < dab; ++f) {
        Vector e = unit_vector(dab, f);
        Vector lhs = F.apply(b, a, s.adjoint(a, b, e));
        Vector rhs = t.adjoint(A, B, F.apply(a, b, e));
        if (lhs != rhs)
          rep.add("star not preserved", "basis " + std::to_string(f) + " of " + hom_name(s, a, b));
      }
      for (std::size_t c = 0; c < n; ++c) {
        const std::size_t dbc = s.hom_dim(b, c);
        const std::size_t C = F.object_map[c];
        for (std::size_t g = 0; g < dbc; ++g) {
          Vector Fg = F.apply(b, c, unit_vector(dbc, g));
          for (std::size_t f = 0; f < dab; ++f) {
            Vector lhs = F.apply(a, c, densify(s.comp(a, b, c, g, f), s.hom_dim(a, c)));
            Vector rhs = t.compose(A, B, C, Fg, F.apply(a, b, unit_vector(dab, f)));
            if (lhs != rhs) {
              std::ostringstream os;
              os << "objects " << s.object_name(a) << "," << s.object_name(b) << ","
                 << s.object_name(c) << " basis (g=" << g << ", f=" << f << ")";
              rep.add("composition not preserved", os.str());
              if (rep.violations.size() > 32) return rep;
            }
          }
        }
      }
    }
  rep.notes.push_back(is_unital_functor(F) ? "unital" : "non-unital");
  return rep;
}

bool is_unital_functor(const StarFunctor& F) {
  for (std::size_t a = 0; a < F.source->size(); ++a) {
    const auto& u = F.source->unit(a);
    const auto& v = F.target->unit(F.object_map[a]);
    if (!u || !v) return false;
    if (F.apply(a, a, *u) != *v) return false;
  }
  return true;
}

bool is_bijective_on_objects(const StarFunctor& F) {
  if (F.source->size() != F.target->size()) return false;
  std::vector<bool> hit(F.target->size(), false);
  for (auto o : F.object_map) {
    if (hit[o]) return false;
    hit[o] = true;
  }
  return true;
}

bool is_fully_faithful(const StarFunctor& F) {
  for (const auto& m : F.hom_maps)
    if (m.rows() != m.cols() || exact_rank(m) != m.cols()) return false;
  return true;
}

Morphism NaturalTransformation::component(std::size_t c) const {
  return {from.object_map.at(c), to.object_map.at(c), components.at(c)};
}

NaturalTransformation identity_transformation(const StarFunctor& f) {
  NaturalTransformation t{f, f, {}};
  for (std::size_t c = 0; c < f.source->size(); ++c)
    t.components.push_back(f.target->identity(f.object_map[c]));
  return t;
}

bool is_unitary(const Category& cat, const Morphism& u) {
  if (!cat.unit(u.source) || !cat.unit(u.target)) return false;
  Morphism us = adjoint(cat, u);
  return compose(cat, us, u).coords == *cat.unit(u.source) &&
         compose(cat, u, us).coords == *cat.unit(u.target);
}

ValidationReport validate_transformation(const NaturalTransformation& t, bool unitary) {
  ValidationReport rep;
  const Category& s = *t.from.source;
  const Category& d = *t.from.target;
  const std::size_t n = s.size();
  if (t.components.size() != n) {
    rep.add("components", "wrong count");
    return rep;
  }
  for (std::size_t c = 0; c < n; ++c)
    if (t.components[c].size() != d.hom_dim(t.from.object_map[c], t.to.object_map[c]))
      rep.add("component shape", s.object_name(c));
  if (!rep.ok()) return rep;

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t f = 0; f < s.hom_dim(a, b); ++f) {
        Vector e = unit_vector(s.hom_dim(a, b), f);
        // kappa_b o from(f) = to(f) o kappa_a
        Vector lhs = d.compose(t.from.object_map[a], t.from.object_map[b], t.to.object_map[b],
                               t.components[b], t.from.apply(a, b, e));
        Vector rhs = d.compose(t.from.object_map[a], t.to.object_map[a], t.to.object_map[b],
                               t.to.apply(a, b, e), t.components[a]);
        if (lhs != rhs)
          rep.add("naturality", "basis " + std::to_string(f) + " of " + hom_name(s, a, b));
      }
  if (unitary)
    for (std::size_t c = 0; c < n; ++c)
      if (!is_unitary(d, t.component(c))) rep.add("component not unitary", s.object_name(c));
  return rep;
}

}  // namespace cxp
