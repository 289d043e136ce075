#include "cxp/starcat.hpp"

namespace cxp {

ExactMatrix realize(const Category& cat, std::size_t a, std::size_t b, const Vector& coords) {
  if (!cat.concrete) throw Error("category has no concrete representation");
  const ConcreteRep& rep = *cat.concrete;
  ExactMatrix out(rep.hilbert_dims[b], rep.hilbert_dims[a]);
  const auto& basis = rep.hom_basis(a, b);
  for (std::size_t k = 0; k < coords.size(); ++k)
    if (!coords[k].is_zero()) out = out + coords[k] * basis[k];
  return out;
}

NumericMatrix realize_numeric(const Category& cat, std::size_t a, std::size_t b,
                              const Vector& coords) {
  if (!cat.concrete) throw Error("category has no concrete representation");
  const ConcreteRep& rep = *cat.concrete;
  NumericMatrix out = NumericMatrix::Zero(static_cast<Eigen::Index>(rep.hilbert_dims[b]),
                                          static_cast<Eigen::Index>(rep.hilbert_dims[a]));
  const auto& basis = rep.hom_basis(a, b);
  for (std::size_t k = 0; k < coords.size(); ++k) {
    if (coords[k].is_zero()) continue;
    const std::complex<double> c = coords[k].to_complex();
    const ExactMatrix& m = basis[k];
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t s = 0; s < m.cols(); ++s)
        if (!m(r, s).is_zero())
          out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s)) += c * m(r, s).to_complex();
  }
  return out;
}

double norm(const Category& cat, const Morphism& f) {
  return operator_norm(realize_numeric(cat, f.source, f.target, f.coords));
}

ValidationReport validate_concrete(const Category& cat) {
  ValidationReport rep;
  const ConcreteRep& cr = *cat.concrete;
  const std::size_t n = cat.size();
  if (cr.hilbert_dims.size() != n || cr.basis.size() != n * n) {
    rep.add("concrete shape", "object count mismatch");
    return rep;
  }
  auto name = [&](std::size_t a, std::size_t b) {
    return cat.object_name(a) + "->" + cat.object_name(b);
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const auto& basis = cr.hom_basis(a, b);
      if (basis.size() != cat.hom_dim(a, b)) {
        rep.add("concrete basis count", name(a, b));
        continue;
      }
      std::vector<Vector> vecs;
      for (const auto& m : basis) {
        if (m.rows() != cr.hilbert_dims[b] || m.cols() != cr.hilbert_dims[a])
          rep.add("concrete matrix shape", name(a, b));
        vecs.push_back(m.vec());
      }
      if (!rep.ok()) return rep;
      if (independent_subset(vecs, cr.hilbert_dims[a] * cr.hilbert_dims[b]).size() != basis.size())
        rep.add("concrete basis not independent", name(a, b));
    }
  if (!rep.ok()) return rep;

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const auto& fb = cr.hom_basis(a, b);
      for (std::size_t f = 0; f < fb.size(); ++f) {
        if (!(fb[f].adjoint() == realize(cat, b, a, cat.adjoint(a, b, unit_vector(fb.size(), f)))))
          rep.add("star not realized as adjoint", "basis " + std::to_string(f) + " of " + name(a, b));
      }
      for (std::size_t c = 0; c < n; ++c) {
        const auto& gb = cr.hom_basis(b, c);
        for (std::size_t g = 0; g < gb.size(); ++g)
          for (std::size_t f = 0; f < fb.size(); ++f) {
            ExactMatrix expect = realize(cat, a, c, densify(cat.comp(a, b, c, g, f), cat.hom_dim(a, c)));
            if (!(gb[g] * fb[f] == expect))
              rep.add("composition not realized as product",
                      "basis (g=" + std::to_string(g) + ", f=" + std::to_string(f) + ") through " +
                          name(a, b) + "->" + cat.object_name(c));
          }
      }
    }
  for (std::size_t a = 0; a < n; ++a) {
    if (!cat.unit(a)) continue;
    ExactMatrix p = realize(cat, a, a, *cat.unit(a));
    if (!(p == p.adjoint()) || !(p * p == p)) rep.add("unit not realized as projection", cat.object_name(a));
  }
  return rep;
}

ConcreteSpans empty_spans(std::vector<std::string> objects, std::vector<std::size_t> dims) {
  if (objects.size() != dims.size()) throw Error("one Hilbert dimension per object is required");
  ConcreteSpans s{std::move(objects), std::move(dims), {}};
  s.spans.resize(s.objects.size() * s.objects.size());
  return s;
}

namespace {

// A unit realized by the identity matrix needs no linear solve.
std::optional<Vector> identity_unit(const Category& cat, const SpanChart& chart, std::size_t a) {
  const std::size_t h = cat.concrete->hilbert_dims[a];
  return chart.coords(ExactMatrix::identity(h).vec());
}

}  // namespace

Category presentation_from_concrete(const ConcreteSpans& raw) {
  const std::size_t n = raw.objects.size();
  if (raw.hilbert_dims.size() != n || raw.spans.size() != n * n)
    throw Error("concrete data: spans must be given for every ordered object pair");
  auto name = [&](std::size_t a, std::size_t b) { return raw.objects[a] + "->" + raw.objects[b]; };

  ConcreteRep rep{raw.hilbert_dims, std::vector<std::vector<ExactMatrix>>(n * n)};
  std::vector<std::size_t> dims(n * n);
  std::vector<SpanChart> charts(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t rows = raw.hilbert_dims[b], cols = raw.hilbert_dims[a];
      std::vector<Vector> vecs;
      for (const auto& m : raw.spans[a * n + b]) {
        if (m.rows() != rows || m.cols() != cols)
          throw Error("concrete data: matrix for " + name(a, b) + " must be " +
                      std::to_string(rows) + "x" + std::to_string(cols));
        vecs.push_back(m.vec());
      }
      std::vector<Vector> kept;
      for (auto k : independent_subset(vecs, rows * cols)) {
        rep.basis[a * n + b].push_back(raw.spans[a * n + b][k]);
        kept.push_back(vecs[k]);
      }
      dims[a * n + b] = kept.size();
      charts[a * n + b] = SpanChart(ExactMatrix::from_columns(rows * cols, kept));
    }

  Category cat(raw.objects, dims);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const auto& fb = rep.basis[a * n + b];
      std::vector<Vector> cols;
      for (std::size_t f = 0; f < fb.size(); ++f) {
        auto c = charts[b * n + a].coords(fb[f].adjoint().vec());
        if (!c)
          throw Error("concrete data: span of " + name(a, b) + " is not closed under adjoints (basis " +
                      std::to_string(f) + ")");
        // star acts after conjugating coordinates, so column f is the image of e_f
        cols.push_back(std::move(*c));
      }
      cat.set_star(a, b, ExactMatrix::from_columns(dims[b * n + a], cols));
      for (std::size_t c = 0; c < n; ++c) {
        const auto& gb = rep.basis[b * n + c];
        for (std::size_t g = 0; g < gb.size(); ++g)
          for (std::size_t f = 0; f < fb.size(); ++f) {
            ExactMatrix prod = gb[g] * fb[f];
            if (prod.is_zero()) continue;
            auto coords = charts[a * n + c].coords(prod.vec());
            if (!coords)
              throw Error("concrete data: product of basis " + std::to_string(g) + " of " +
                          name(b, c) + " and basis " + std::to_string(f) + " of " + name(a, b) +
                          " leaves the span of " + name(a, c));
            cat.set_comp(a, b, c, g, f, sparsify(*coords));
          }
      }
    }
  cat.concrete = std::move(rep);

  bool all = true;
  for (std::size_t a = 0; a < n; ++a) {
    auto u = identity_unit(cat, charts[a * n + a], a);
    if (!u) u = solve_unit(cat, a);
    all = all && u.has_value();
    cat.set_unit(a, std::move(u));
  }
  cat.set_unital(all);
  return cat;
}

Category full_matrix_category(std::vector<std::string> objects, std::vector<std::size_t> hd) {
  std::vector<std::size_t> blocks(objects.size(), 0);
  return block_matrix_category(std::move(objects), std::move(hd), blocks);
}

Category block_matrix_category(std::vector<std::string> objects, std::vector<std::size_t> hd,
                               const std::vector<std::size_t>& blocks) {
  const std::size_t n = objects.size();
  if (hd.size() != n) throw Error("one Hilbert dimension per object is required");
  if (blocks.size() != n) throw Error("one block label per object is required");
  auto linked = [&](std::size_t a, std::size_t b) { return blocks[a] == blocks[b]; };
  std::vector<std::size_t> dims(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) dims[a * n + b] = linked(a, b) ? hd[a] * hd[b] : 0;
  Category cat(std::move(objects), dims);
  ConcreteRep rep{hd, std::vector<std::vector<ExactMatrix>>(n * n)};
  // Hom(a,b) basis: E_{rs} (r < hd[b], s < hd[a]) at index r * hd[a] + s.
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (!linked(a, b)) continue;
      auto& basis = rep.basis[a * n + b];
      for (std::size_t r = 0; r < hd[b]; ++r)
        for (std::size_t s = 0; s < hd[a]; ++s) {
          ExactMatrix e(hd[b], hd[a]);
          e(r, s) = Scalar(1);
          basis.push_back(std::move(e));
        }
      ExactMatrix star(hd[a] * hd[b], hd[a] * hd[b]);
      for (std::size_t r = 0; r < hd[b]; ++r)
        for (std::size_t s = 0; s < hd[a]; ++s) star(s * hd[b] + r, r * hd[a] + s) = Scalar(1);
      cat.set_star(a, b, std::move(star));
      for (std::size_t c = 0; c < n; ++c) {
        if (!linked(b, c)) continue;
        for (std::size_t r = 0; r < hd[c]; ++r)
          for (std::size_t s = 0; s < hd[b]; ++s)
            for (std::size_t t = 0; t < hd[a]; ++t)
              cat.set_comp(a, b, c, r * hd[b] + s, s * hd[a] + t,
                           {Term{static_cast<std::uint32_t>(r * hd[a] + t), Scalar(1)}});
      }
    }
  for (std::size_t a = 0; a < n; ++a) {
    Vector id(hd[a] * hd[a]);
    for (std::size_t r = 0; r < hd[a]; ++r) id[r * hd[a] + r] = Scalar(1);
    cat.set_unit(a, std::move(id));
  }
  cat.set_unital(true);
  cat.concrete = std::move(rep);
  return cat;
}

Category zero_category(std::vector<std::string> objects) {
  const std::size_t n = objects.size();
  Category cat(std::move(objects), std::vector<std::size_t>(n * n, 0));
  for (std::size_t a = 0; a < n; ++a) cat.set_unit(a, Vector{});
  cat.set_unital(true);
  cat.concrete = ConcreteRep{std::vector<std::size_t>(n, 0),
                             std::vector<std::vector<ExactMatrix>>(n * n)};
  return cat;
}

}  // namespace cxp
