#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cxp/scalars.hpp"

namespace cxp {

/// A single failed axiom, with the basis data that witnesses it.
struct Violation {
  std::string kind;
  std::string location;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<std::string> notes;

  bool ok() const { return violations.empty(); }
  void add(std::string kind, std::string location) {
    violations.push_back({std::move(kind), std::move(location)});
  }
  void merge(const ValidationReport& other, const std::string& prefix = {});
  std::string summary() const;
};

enum class Status { verified, refuted, inconclusive };

const char* to_string(Status s);

/// Outcome of a decision procedure, with a human-readable trail.
struct Verdict {
  Status status = Status::verified;
  std::string evidence;

  bool verified() const { return status == Status::verified; }
  static Verdict yes(std::string why = {}) { return {Status::verified, std::move(why)}; }
  static Verdict no(std::string why) { return {Status::refuted, std::move(why)}; }
  static Verdict unsure(std::string why) { return {Status::inconclusive, std::move(why)}; }
};

/// A faithful *-representation on finite-dimensional Hilbert spaces. For the
/// hom space Hom(a,b) there is one hilbert_dim(b) x hilbert_dim(a) matrix per
/// basis vector.
struct ConcreteRep {
  std::vector<std::size_t> hilbert_dims;
  std::vector<std::vector<ExactMatrix>> basis;  // indexed a * n + b

  const std::vector<ExactMatrix>& hom_basis(std::size_t a, std::size_t b) const {
    return basis[a * hilbert_dims.size() + b];
  }
};

/// Finite C-linear *-category presented by structure constants.
///
/// Hom(a,b) has a fixed basis of size hom_dim(a,b). The composition of basis
/// element g of Hom(b,c) after basis element f of Hom(a,b) is a sparse vector
/// in Hom(a,c). The involution Hom(a,b) -> Hom(b,a) is x |-> star(a,b) *
/// conj(x). Objects without morphisms have zero-dimensional homs.
class Category {
 public:
  Category() = default;
  Category(std::vector<std::string> objects, const std::vector<std::size_t>& hom_dims);

  std::size_t size() const { return objects_.size(); }
  const std::vector<std::string>& objects() const { return objects_; }
  const std::string& object_name(std::size_t a) const { return objects_.at(a); }
  std::optional<std::size_t> find_object(const std::string& name) const;

  std::size_t hom_dim(std::size_t a, std::size_t b) const { return dims_[a * size() + b]; }

  const SparseVector& comp(std::size_t a, std::size_t b, std::size_t c, std::size_t g,
                           std::size_t f) const {
    return comp_[(a * size() + b) * size() + c][g * hom_dim(a, b) + f];
  }
  void set_comp(std::size_t a, std::size_t b, std::size_t c, std::size_t g, std::size_t f,
                SparseVector value);

  const ExactMatrix& star(std::size_t a, std::size_t b) const { return star_[a * size() + b]; }
  void set_star(std::size_t a, std::size_t b, ExactMatrix m);

  const std::optional<Vector>& unit(std::size_t a) const { return units_.at(a); }
  void set_unit(std::size_t a, std::optional<Vector> u);
  bool unital() const { return unital_; }
  void set_unital(bool flag) { unital_ = flag; }

  /// g o f for g in Hom(b,c), f in Hom(a,b), both as coordinate vectors.
  Vector compose(std::size_t a, std::size_t b, std::size_t c, const Vector& g,
                 const Vector& f) const;
  /// f* in Hom(b,a) for f in Hom(a,b).
  Vector adjoint(std::size_t a, std::size_t b, const Vector& f) const;
  Vector identity(std::size_t a) const;

  std::size_t total_dim() const;

  std::optional<ConcreteRep> concrete;

 private:
  std::vector<std::string> objects_;
  std::vector<std::size_t> dims_;
  std::vector<std::vector<SparseVector>> comp_;
  std::vector<ExactMatrix> star_;
  std::vector<std::optional<Vector>> units_;
  bool unital_ = false;
};

using CategoryPtr = std::shared_ptr<const Category>;

template <typename... Args>
CategoryPtr make_category(Args&&... args) {
  return std::make_shared<const Category>(std::forward<Args>(args)...);
}

struct Morphism {
  std::size_t source = 0;
  std::size_t target = 0;
  Vector coords;
};

Morphism compose(const Category& cat, const Morphism& g, const Morphism& f);
Morphism adjoint(const Category& cat, const Morphism& f);
Morphism zero_morphism(const Category& cat, std::size_t a, std::size_t b);
Morphism basis_morphism(const Category& cat, std::size_t a, std::size_t b, std::size_t k);

/// Checks every axiom on basis elements, exactly: composition data in range,
/// associativity, anti-multiplicativity and involutivity of star, unit laws
/// when flagged unital, and the concrete representation when attached.
ValidationReport validate_presentation(const Category& cat);

/// Solves for two-sided identities object by object from the structure
/// constants and records them; sets the unital flag iff all exist.
void detect_units(Category& cat);
std::optional<Vector> solve_unit(const Category& cat, std::size_t a);

// ---------------------------------------------------------------------------
// Concrete representations

NumericMatrix realize_numeric(const Category& cat, std::size_t a, std::size_t b,
                              const Vector& coords);
ExactMatrix realize(const Category& cat, std::size_t a, std::size_t b, const Vector& coords);
double norm(const Category& cat, const Morphism& f);

/// Exact checks that the attachment is a faithful *-representation.
ValidationReport validate_concrete(const Category& cat);

/// Raw concrete data: per ordered object pair, matrices spanning the hom space.
struct ConcreteSpans {
  std::vector<std::string> objects;
  std::vector<std::size_t> hilbert_dims;
  std::vector<std::vector<ExactMatrix>> spans;  // indexed a * n + b

  std::vector<ExactMatrix>& at(std::size_t a, std::size_t b) {
    return spans[a * objects.size() + b];
  }
};

ConcreteSpans empty_spans(std::vector<std::string> objects, std::vector<std::size_t> dims);

/// Builds a presentation from spanning matrices. Each span is reduced to an
/// independent subfamily (in order), closure under products and adjoints is
/// checked exactly, and units are detected.
Category presentation_from_concrete(const ConcreteSpans& spans);

/// The category with the given Hilbert dimensions whose hom spaces are all
/// matrices, with matrix-unit bases (row-major).
Category full_matrix_category(std::vector<std::string> objects, std::vector<std::size_t> dims);
/// Direct sum of full matrix categories: Hom(a, b) is all matrices when
/// blocks[a] == blocks[b] and zero otherwise.
Category block_matrix_category(std::vector<std::string> objects, std::vector<std::size_t> dims,
                               const std::vector<std::size_t>& blocks);

/// 0[X]: |X| zero objects.
Category zero_category(std::vector<std::string> objects);

// ---------------------------------------------------------------------------
// Functors and transformations

struct StarFunctor {
  CategoryPtr source;
  CategoryPtr target;
  std::vector<std::size_t> object_map;
  std::vector<ExactMatrix> hom_maps;  // indexed a * n_src + b

  const ExactMatrix& hom_map(std::size_t a, std::size_t b) const {
    return hom_maps[a * source->size() + b];
  }
  ExactMatrix& hom_map(std::size_t a, std::size_t b) { return hom_maps[a * source->size() + b]; }
  Vector apply(std::size_t a, std::size_t b, const Vector& f) const {
    return hom_map(a, b).apply(f);
  }
  Morphism apply(const Morphism& f) const;
};

/// Functor with the given object map and zero hom maps of the right shapes.
StarFunctor blank_functor(CategoryPtr source, CategoryPtr target, std::vector<std::size_t> objects);
StarFunctor identity_functor(CategoryPtr cat);
StarFunctor compose(const StarFunctor& later, const StarFunctor& earlier);
bool same_functor(const StarFunctor& x, const StarFunctor& y);
/// Inverse of a functor that is bijective on objects and on every hom space.
StarFunctor invert_isomorphism(const StarFunctor& f);

/// Exact composition and star preservation on basis elements. The note
/// "unital" or "non-unital" records whether identities are preserved.
ValidationReport validate_functor(const StarFunctor& f);
bool is_unital_functor(const StarFunctor& f);
bool is_bijective_on_objects(const StarFunctor& f);
bool is_fully_faithful(const StarFunctor& f);

/// Components kappa_C : from(C) -> to(C) in the common target.
struct NaturalTransformation {
  StarFunctor from;
  StarFunctor to;
  std::vector<Vector> components;

  Morphism component(std::size_t c) const;
};

NaturalTransformation identity_transformation(const StarFunctor& f);

/// Naturality on all basis morphisms; unitarity when requested (the target
/// must then have identities at the relevant objects).
ValidationReport validate_transformation(const NaturalTransformation& t, bool unitary);

/// u* u = id_source and u u* = id_target, exactly.
bool is_unitary(const Category& cat, const Morphism& u);

}  // namespace cxp
