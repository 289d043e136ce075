#include "cxp/serialize.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace cxp {

namespace {

json hom_entry(std::size_t a, std::size_t b, json value, const char* key) {
  return json{{"source", a}, {"target", b}, {key, std::move(value)}};
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(where, std::string("missing field \"") + key + "\"");
  return *it;
}

bool has(const json& j, const char* key) { return j.is_object() && j.contains(key) && !j.at(key).is_null(); }

std::size_t index_value(const json& j, const std::string& where, std::size_t bound) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw SchemaError(where, "expected a nonnegative integer");
  auto v = j.get<std::size_t>();
  if (v >= bound) throw SchemaError(where, "index " + std::to_string(v) + " out of range (< " + std::to_string(bound) + ")");
  return v;
}

// Object given by index or by name.
std::size_t object_ref(const Category& c, const json& j, const std::string& where) {
  if (j.is_string()) {
    auto o = c.find_object(j.get<std::string>());
    if (!o) throw SchemaError(where, "unknown object \"" + j.get<std::string>() + "\"");
    return *o;
  }
  return index_value(j, where, c.size());
}

const json& array_field(const json& j, const char* key, const std::string& where) {
  const json& a = field(j, key, where);
  if (!a.is_array()) throw SchemaError(where + "/" + key, "expected an array");
  return a;
}

std::vector<std::string> string_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    if (!j[k].is_string()) throw SchemaError(where + "/" + std::to_string(k), "expected a string");
    out.push_back(j[k].get<std::string>());
  }
  return out;
}

std::vector<std::size_t> index_list(const json& j, const std::string& where, std::size_t bound) {
  if (!j.is_array()) throw SchemaError(where, "expected an array");
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(index_value(j[k], where + "/" + std::to_string(k), bound));
  return out;
}

ExactMatrix shaped_matrix(const Reader& r, const json& j, const std::string& where, std::size_t rows,
                          std::size_t cols) {
  ExactMatrix m = r.matrix(j, where);
  if (rows == 0 || cols == 0) {
    if (!j.empty() && (m.rows() != rows || m.cols() != cols))
      throw SchemaError(where, "expected a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
    return ExactMatrix(rows, cols);
  }
  if (m.rows() != rows || m.cols() != cols)
    throw SchemaError(where, "expected a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix, got " +
                                 std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// Writing

json to_json(const Scalar& s) { return s.to_string(); }

json to_json(const Vector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

json to_json(const ExactMatrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(to_json(m.row(r)));
  return out;
}

json to_json(const Category& c) {
  const std::size_t n = c.size();
  json dims = json::array(), comp = json::array(), star = json::array(), units = json::array();
  for (std::size_t a = 0; a < n; ++a) {
    json row = json::array();
    for (std::size_t b = 0; b < n; ++b) row.push_back(c.hom_dim(a, b));
    dims.push_back(row);
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (c.hom_dim(a, b) == 0) continue;
      star.push_back(hom_entry(a, b, to_json(c.star(a, b)), "matrix"));
      for (std::size_t e = 0; e < n; ++e)
        for (std::size_t g = 0; g < c.hom_dim(b, e); ++g)
          for (std::size_t f = 0; f < c.hom_dim(a, b); ++f) {
            const SparseVector& v = c.comp(a, b, e, g, f);
            if (v.empty()) continue;
            json terms = json::array();
            for (const auto& t : v) terms.push_back(json::array({t.index, to_json(t.value)}));
            comp.push_back(json{{"through", {a, b, e}}, {"g", g}, {"f", f}, {"value", terms}});
          }
    }
  for (std::size_t a = 0; a < n; ++a) units.push_back(c.unit(a) ? to_json(*c.unit(a)) : json(nullptr));
  json out{{"format", "structure"}, {"objects", c.objects()}, {"hom_dims", dims}, {"composition", comp},
           {"star", star}, {"units", units}, {"unital", c.unital()}};
  if (c.concrete) {
    json basis = json::array();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const auto& ms = c.concrete->hom_basis(a, b);
        if (ms.empty()) continue;
        json arr = json::array();
        for (const auto& m : ms) arr.push_back(to_json(m));
        basis.push_back(hom_entry(a, b, arr, "matrices"));
      }
    out["concrete"] = json{{"hilbert_dims", c.concrete->hilbert_dims}, {"basis", basis}};
  } else {
    out["concrete"] = nullptr;
  }
  return out;
}

json to_json(const FiniteGroup& g) {
  json table = json::array();
  for (std::size_t a = 0; a < g.size(); ++a) {
    json row = json::array();
    for (std::size_t b = 0; b < g.size(); ++b) row.push_back(g.mul(a, b));
    table.push_back(row);
  }
  return json{{"elements", g.names()}, {"table", table}};
}

namespace {

json hom_maps_json(const StarFunctor& f) {
  json maps = json::array();
  for (std::size_t a = 0; a < f.source->size(); ++a)
    for (std::size_t b = 0; b < f.source->size(); ++b) {
      const ExactMatrix& m = f.hom_map(a, b);
      if (m.rows() == 0 || m.cols() == 0) continue;
      maps.push_back(hom_entry(a, b, to_json(m), "matrix"));
    }
  return maps;
}

}  // namespace

json to_json(const GroupAction& a) {
  json maps = json::array();
  for (const auto& f : a.phi) maps.push_back(f.object_map);
  json out{{"group", to_json(a.group)}, {"category", to_json(*a.category)}, {"object_maps", maps}};
  if (a.spatial) {
    json sp = json::array();
    for (const auto& fam : *a.spatial) {
      json row = json::array();
      for (const auto& v : fam) row.push_back(to_json(v));
      sp.push_back(row);
    }
    out["spatial"] = sp;
  } else {
    json hm = json::array();
    for (const auto& f : a.phi) hm.push_back(hom_maps_json(f));
    out["hom_maps"] = hm;
  }
  return out;
}

json to_json(const StarFunctor& f) {
  return json{{"source", to_json(*f.source)},
              {"target", to_json(*f.target)},
              {"object_map", f.object_map},
              {"hom_maps", hom_maps_json(f)}};
}

json to_json(const NaturalTransformation& t) {
  json comps = json::array();
  for (const auto& c : t.components) comps.push_back(to_json(c));
  return json{{"from", to_json(t.from)}, {"to", to_json(t.to)}, {"components", comps}};
}

json to_json(const UnitaryEquivalenceCertificate& c) {
  return json{{"forward", to_json(c.forward)},
              {"backward", to_json(c.backward)},
              {"eta", to_json(c.eta)},
              {"eps", to_json(c.eps)}};
}

json to_json(const ExcisiveSquare& s) {
  json out{{"i", to_json(s.i)}, {"j", to_json(s.j)}, {"alpha", to_json(s.alpha)}, {"beta", to_json(s.beta)}};
  out["certificate"] = s.certificate ? to_json(*s.certificate) : json(nullptr);
  return out;
}

json element_to_json(const Category&, const Morphism& m) {
  json terms = json::array();
  for (std::size_t k = 0; k < m.coords.size(); ++k)
    if (!m.coords[k].is_zero()) terms.push_back(json::array({to_json(m.coords[k]), k}));
  return json{{"source", m.source}, {"target", m.target}, {"terms", terms}};
}

json instance_file(const std::string& kind, json body) {
  return json{{"schema_version", kSchemaVersion}, {"kind", kind}, {"body", std::move(body)}};
}

// ---------------------------------------------------------------------------
// Reading

Scalar Reader::scalar(const json& j, const std::string& where) const {
  if (j.is_number_integer()) return Scalar(j.get<long>());
  if (!j.is_string()) throw SchemaError(where, "expected a scalar string such as \"1/2-3 i\"");
  try {
    return Scalar::parse(j.get<std::string>());
  } catch (const Error& e) {
    throw SchemaError(where, e.what());
  }
}

Vector Reader::vector(const json& j, const std::string& where) const {
  if (!j.is_array()) throw SchemaError(where, "expected an array of scalars");
  Vector v;
  for (std::size_t k = 0; k < j.size(); ++k) v.push_back(scalar(j[k], where + "/" + std::to_string(k)));
  return v;
}

ExactMatrix Reader::matrix(const json& j, const std::string& where) const {
  if (!j.is_array()) throw SchemaError(where, "expected an array of rows");
  std::vector<Vector> rows;
  for (std::size_t r = 0; r < j.size(); ++r) {
    rows.push_back(vector(j[r], where + "/" + std::to_string(r)));
    if (rows.back().size() != rows.front().size()) throw SchemaError(where + "/" + std::to_string(r), "ragged matrix");
  }
  if (rows.empty()) return ExactMatrix(0, 0);
  return ExactMatrix::from_rows(rows);
}

CategoryPtr Reader::category(const json& j, const std::string& where) {
  const std::string key = j.dump();
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  const std::string format = has(j, "format") ? field(j, "format", where).get<std::string>() : "structure";
  std::vector<std::string> objects = string_list(field(j, "objects", where), where + "/objects");
  const std::size_t n = objects.size();
  CategoryPtr out;

  if (format == "zero") {
    out = make_category(zero_category(objects));
  } else if (format == "full_matrix") {
    auto hd = index_list(field(j, "hilbert_dims", where), where + "/hilbert_dims", 1u << 20);
    if (hd.size() != n) throw SchemaError(where + "/hilbert_dims", "one entry per object is required");
    std::vector<std::size_t> blocks(n, 0);
    if (has(j, "blocks")) blocks = index_list(j["blocks"], where + "/blocks", 1u << 20);
    if (blocks.size() != n) throw SchemaError(where + "/blocks", "one entry per object is required");
    out = make_category(block_matrix_category(objects, hd, blocks));
  } else if (format == "concrete") {
    auto hd = index_list(field(j, "hilbert_dims", where), where + "/hilbert_dims", 1u << 20);
    if (hd.size() != n) throw SchemaError(where + "/hilbert_dims", "one entry per object is required");
    ConcreteSpans spans = empty_spans(objects, hd);
    const json& sp = array_field(j, "spans", where);
    Category probe(objects, std::vector<std::size_t>(n * n, 0));
    for (std::size_t k = 0; k < sp.size(); ++k) {
      const std::string w = where + "/spans/" + std::to_string(k);
      std::size_t a = object_ref(probe, field(sp[k], "source", w), w + "/source");
      std::size_t b = object_ref(probe, field(sp[k], "target", w), w + "/target");
      const json& ms = array_field(sp[k], "matrices", w);
      for (std::size_t m = 0; m < ms.size(); ++m)
        spans.at(a, b).push_back(shaped_matrix(*this, ms[m], w + "/matrices/" + std::to_string(m), hd[b], hd[a]));
    }
    try {
      out = make_category(presentation_from_concrete(spans));
    } catch (const SchemaError&) {
      throw;
    } catch (const Error& e) {
      throw SchemaError(where + "/spans", e.what());
    }
  } else if (format == "structure") {
    const json& dj = array_field(j, "hom_dims", where);
    if (dj.size() != n) throw SchemaError(where + "/hom_dims", "expected an n x n array");
    std::vector<std::size_t> dims(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      const std::string w = where + "/hom_dims/" + std::to_string(a);
      if (!dj[a].is_array() || dj[a].size() != n) throw SchemaError(w, "expected a row of length " + std::to_string(n));
      for (std::size_t b = 0; b < n; ++b) dims[a * n + b] = index_value(dj[a][b], w + "/" + std::to_string(b), 1u << 20);
    }
    Category c(objects, dims);
    if (has(j, "composition")) {
      const json& cj = array_field(j, "composition", where);
      for (std::size_t k = 0; k < cj.size(); ++k) {
        const std::string w = where + "/composition/" + std::to_string(k);
        const json& th = field(cj[k], "through", w);
        if (!th.is_array() || th.size() != 3) throw SchemaError(w + "/through", "expected [a, b, c]");
        std::size_t a = object_ref(c, th[0], w + "/through/0"), b = object_ref(c, th[1], w + "/through/1"),
                    e = object_ref(c, th[2], w + "/through/2");
        std::size_t g = index_value(field(cj[k], "g", w), w + "/g", c.hom_dim(b, e));
        std::size_t f = index_value(field(cj[k], "f", w), w + "/f", c.hom_dim(a, b));
        const json& val = array_field(cj[k], "value", w);
        SparseVector sv;
        for (std::size_t t = 0; t < val.size(); ++t) {
          const std::string wt = w + "/value/" + std::to_string(t);
          if (!val[t].is_array() || val[t].size() != 2) throw SchemaError(wt, "expected [index, scalar]");
          std::size_t idx = index_value(val[t][0], wt + "/0", c.hom_dim(a, e));
          Scalar s = scalar(val[t][1], wt + "/1");
          if (!sv.empty() && sv.back().index >= idx) throw SchemaError(wt, "term indices must increase");
          if (!s.is_zero()) sv.push_back(Term{static_cast<std::uint32_t>(idx), std::move(s)});
        }
        c.set_comp(a, b, e, g, f, std::move(sv));
      }
    }
    if (has(j, "star")) {
      const json& sj = array_field(j, "star", where);
      for (std::size_t k = 0; k < sj.size(); ++k) {
        const std::string w = where + "/star/" + std::to_string(k);
        std::size_t a = object_ref(c, field(sj[k], "source", w), w + "/source");
        std::size_t b = object_ref(c, field(sj[k], "target", w), w + "/target");
        c.set_star(a, b, shaped_matrix(*this, field(sj[k], "matrix", w), w + "/matrix", c.hom_dim(b, a), c.hom_dim(a, b)));
      }
    }
    bool unital = true;
    if (has(j, "units")) {
      const json& uj = array_field(j, "units", where);
      if (uj.size() != n) throw SchemaError(where + "/units", "one entry per object is required");
      for (std::size_t a = 0; a < n; ++a) {
        const std::string w = where + "/units/" + std::to_string(a);
        if (uj[a].is_null()) {
          unital = false;
          continue;
        }
        Vector u = vector(uj[a], w);
        if (u.size() != c.hom_dim(a, a)) throw SchemaError(w, "unit has the wrong length");
        c.set_unit(a, std::move(u));
      }
      if (has(j, "unital")) unital = unital && field(j, "unital", where).get<bool>();
      c.set_unital(unital);
    } else {
      detect_units(c);
    }
    if (has(j, "concrete")) {
      const std::string w = where + "/concrete";
      const json& cj = j["concrete"];
      auto hd = index_list(field(cj, "hilbert_dims", w), w + "/hilbert_dims", 1u << 20);
      if (hd.size() != n) throw SchemaError(w + "/hilbert_dims", "one entry per object is required");
      ConcreteRep rep{hd, std::vector<std::vector<ExactMatrix>>(n * n)};
      const json& bj = array_field(cj, "basis", w);
      for (std::size_t k = 0; k < bj.size(); ++k) {
        const std::string wk = w + "/basis/" + std::to_string(k);
        std::size_t a = object_ref(c, field(bj[k], "source", wk), wk + "/source");
        std::size_t b = object_ref(c, field(bj[k], "target", wk), wk + "/target");
        const json& ms = array_field(bj[k], "matrices", wk);
        if (ms.size() != c.hom_dim(a, b)) throw SchemaError(wk + "/matrices", "one matrix per basis element is required");
        for (std::size_t m = 0; m < ms.size(); ++m)
          rep.basis[a * n + b].push_back(shaped_matrix(*this, ms[m], wk + "/matrices/" + std::to_string(m), hd[b], hd[a]));
      }
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (rep.basis[a * n + b].size() != c.hom_dim(a, b))
            throw SchemaError(w + "/basis", "missing matrices for " + objects[a] + "->" + objects[b]);
      c.concrete = std::move(rep);
    }
    out = make_category(std::move(c));
  } else {
    throw SchemaError(where + "/format", "unknown category format \"" + format + "\"");
  }
  cache_.emplace(key, out);
  return out;
}

FiniteGroup Reader::group(const json& j, const std::string& where) const {
  try {
    if (has(j, "name")) return FiniteGroup::by_name(field(j, "name", where).get<std::string>());
    auto names = string_list(field(j, "elements", where), where + "/elements");
    const json& t = array_field(j, "table", where);
    if (t.size() != names.size()) throw SchemaError(where + "/table", "expected one row per element");
    std::vector<std::size_t> table;
    for (std::size_t r = 0; r < t.size(); ++r) {
      auto row = index_list(t[r], where + "/table/" + std::to_string(r), names.size());
      if (row.size() != names.size()) throw SchemaError(where + "/table/" + std::to_string(r), "row has the wrong length");
      table.insert(table.end(), row.begin(), row.end());
    }
    return FiniteGroup(names, table);
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    throw SchemaError(where, e.what());
  }
}

namespace {

void read_hom_maps(Reader& r, StarFunctor& f, const json& j, const std::string& where) {
  const json& maps = j;
  if (!maps.is_array()) throw SchemaError(where, "expected an array");
  for (std::size_t k = 0; k < maps.size(); ++k) {
    const std::string w = where + "/" + std::to_string(k);
    std::size_t a = object_ref(*f.source, field(maps[k], "source", w), w + "/source");
    std::size_t b = object_ref(*f.source, field(maps[k], "target", w), w + "/target");
    f.hom_map(a, b) = shaped_matrix(r, field(maps[k], "matrix", w), w + "/matrix",
                                    f.target->hom_dim(f.object_map[a], f.object_map[b]), f.source->hom_dim(a, b));
  }
}

}  // namespace

GroupAction Reader::action(const json& j, const std::string& where) {
  FiniteGroup g = group(field(j, "group", where), where + "/group");
  CategoryPtr c = category(field(j, "category", where), where + "/category");
  const json& om = array_field(j, "object_maps", where);
  if (om.size() != g.size()) throw SchemaError(where + "/object_maps", "one object map per group element is required");
  std::vector<std::vector<std::size_t>> perms;
  for (std::size_t k = 0; k < om.size(); ++k) {
    perms.push_back(index_list(om[k], where + "/object_maps/" + std::to_string(k), c->size()));
    if (perms.back().size() != c->size())
      throw SchemaError(where + "/object_maps/" + std::to_string(k), "one entry per object is required");
  }
  if (has(j, "spatial")) {
    const json& sp = array_field(j, "spatial", where);
    if (sp.size() != g.size()) throw SchemaError(where + "/spatial", "one family per group element is required");
    if (!c->concrete) throw SchemaError(where + "/spatial", "spatial form needs a concrete category");
    const auto& hd = c->concrete->hilbert_dims;
    std::vector<std::vector<ExactMatrix>> V(g.size());
    for (std::size_t k = 0; k < sp.size(); ++k) {
      const std::string w = where + "/spatial/" + std::to_string(k);
      if (!sp[k].is_array() || sp[k].size() != c->size()) throw SchemaError(w, "one unitary per object is required");
      for (std::size_t a = 0; a < c->size(); ++a)
        V[k].push_back(shaped_matrix(*this, sp[k][a], w + "/" + std::to_string(a), hd[perms[k][a]], hd[a]));
    }
    try {
      return action_from_spatial(g, c, perms, std::move(V));
    } catch (const Error& e) {
      throw SchemaError(where + "/spatial", e.what());
    }
  }
  GroupAction act{g, c, {}, std::nullopt};
  const json& hm = array_field(j, "hom_maps", where);
  if (hm.size() != g.size()) throw SchemaError(where + "/hom_maps", "one family per group element is required");
  for (std::size_t k = 0; k < g.size(); ++k) {
    StarFunctor f = blank_functor(c, c, perms[k]);
    read_hom_maps(*this, f, hm[k], where + "/hom_maps/" + std::to_string(k));
    act.phi.push_back(std::move(f));
  }
  return act;
}

StarFunctor Reader::functor(const json& j, const std::string& where) {
  CategoryPtr s = category(field(j, "source", where), where + "/source");
  CategoryPtr t = category(field(j, "target", where), where + "/target");
  auto om = index_list(field(j, "object_map", where), where + "/object_map", t->size());
  if (om.size() != s->size()) throw SchemaError(where + "/object_map", "one entry per source object is required");
  StarFunctor f = blank_functor(s, t, om);
  if (has(j, "hom_maps")) read_hom_maps(*this, f, j["hom_maps"], where + "/hom_maps");
  return f;
}

NaturalTransformation Reader::transformation(const json& j, const std::string& where) {
  NaturalTransformation t{functor(field(j, "from", where), where + "/from"),
                          functor(field(j, "to", where), where + "/to"), {}};
  const json& cs = array_field(j, "components", where);
  if (cs.size() != t.from.source->size()) throw SchemaError(where + "/components", "one component per object is required");
  for (std::size_t k = 0; k < cs.size(); ++k) {
    Vector v = vector(cs[k], where + "/components/" + std::to_string(k));
    if (v.size() != t.from.target->hom_dim(t.from.object_map[k], t.to.object_map[k]))
      throw SchemaError(where + "/components/" + std::to_string(k), "component has the wrong length");
    t.components.push_back(std::move(v));
  }
  return t;
}

UnitaryEquivalenceCertificate Reader::certificate(const json& j, const std::string& where) {
  return {functor(field(j, "forward", where), where + "/forward"),
          functor(field(j, "backward", where), where + "/backward"),
          transformation(field(j, "eta", where), where + "/eta"),
          transformation(field(j, "eps", where), where + "/eps")};
}

ExcisiveSquare Reader::square(const json& j, const std::string& where) {
  ExcisiveSquare s{functor(field(j, "i", where), where + "/i"), functor(field(j, "j", where), where + "/j"),
                   functor(field(j, "alpha", where), where + "/alpha"),
                   functor(field(j, "beta", where), where + "/beta"), std::nullopt};
  if (has(j, "certificate")) s.certificate = certificate(j["certificate"], where + "/certificate");
  return s;
}

Morphism Reader::element(const Category& c, const json& j, const std::string& where) const {
  std::size_t a = object_ref(c, field(j, "source", where), where + "/source");
  std::size_t b = object_ref(c, field(j, "target", where), where + "/target");
  Morphism m{a, b, Vector(c.hom_dim(a, b))};
  const json& terms = array_field(j, "terms", where);
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const std::string w = where + "/terms/" + std::to_string(k);
    if (!terms[k].is_array() || terms[k].size() != 2) throw SchemaError(w, "expected [coefficient, basis index]");
    Scalar s = scalar(terms[k][0], w + "/0");
    m.coords[index_value(terms[k][1], w + "/1", c.hom_dim(a, b))] += s;
  }
  return m;
}

std::pair<std::string, json> open_instance_file(const json& j) {
  if (!j.is_object()) throw SchemaError("", "expected an instance file object");
  const json& v = field(j, "schema_version", "");
  if (!v.is_number_integer() || v.get<int>() != kSchemaVersion)
    throw SchemaError("/schema_version", "unsupported schema version (expected " + std::to_string(kSchemaVersion) + ")");
  const json& k = field(j, "kind", "");
  if (!k.is_string()) throw SchemaError("/kind", "expected a string");
  static const std::vector<std::string> kinds{"category", "group", "action", "functor", "element",
                                              "sequence", "square", "transformation", "report"};
  if (std::find(kinds.begin(), kinds.end(), k.get<std::string>()) == kinds.end())
    throw SchemaError("/kind", "unknown kind \"" + k.get<std::string>() + "\"");
  return {k.get<std::string>(), field(j, "body", "")};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path, "cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(path, std::string("invalid JSON: ") + e.what());
  }
}

std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

void write_json_file(const std::string& path, const json& j) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp);
    out << dump_canonical(j);
    if (!out) throw Error("write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw Error("cannot rename " + tmp + " to " + path);
}

}  // namespace cxp
