#pragma once

#include <cstdint>
#include <random>

#include "cxp/matrixbridge.hpp"
#include "cxp/serialize.hpp"

namespace cxp {

struct InstanceParams {
  std::uint64_t seed = 1;
  std::size_t max_objects = 3;
  std::size_t max_hilbert_dim = 2;
  std::string group = "Z2";                 // Z2, Z3, Z4, S3, 1, Z<n>
  std::optional<FiniteGroup> group_table;   // overrides `group`
  std::size_t instances = 10;
  double tol = 1e-8;
  std::size_t ceiling = 64;                 // bound on |G| * total Hilbert dimension
  std::size_t jobs = 1;

  FiniteGroup resolve_group() const;
};

/// Throws on nonpositive bounds or when the ceiling cannot be met.
void validate_params(const InstanceParams& p);

/// A spatial action on a direct sum of full matrix categories.
struct GeneratedInstance {
  ActionPtr action;
  std::vector<std::size_t> block;           // block label of each object
  std::vector<bool> kept;                   // G-invariant, meets every isomorphism class
  std::vector<std::size_t> representative;  // kept object unitarily isomorphic to each object
  std::string label;
};

/// Options shaping the generated instance.
struct GeneratorShape {
  bool duplicate_orbit = false;  // add a copy of one orbit, so `kept` is proper
  bool two_block_orbits = false; // at least two G-orbits of blocks
};

GeneratedInstance random_instance(const InstanceParams& p, std::uint64_t index, GeneratorShape shape = {});

/// 0 -> I -> D -> D/I -> 0 for a G-invariant union of blocks of D.
struct ExactSequenceInstance {
  GeneratedInstance middle;
  IdealInclusion ideal;
  Quotient quotient;
  ActionPtr ideal_action;
  ActionPtr quotient_action;
};

ExactSequenceInstance random_exact_sequence(const InstanceParams& p, std::uint64_t index);

/// phi fully faithful and weakly equivariant, psi and a unitary
/// kappa : phi psi -> id.
struct WeakEquivalenceInstance {
  WeaklyEquivariant wf;
  StarFunctor psi;
  std::vector<Vector> kappa;
  std::string family;
};

WeakEquivalenceInstance random_weak_equivalence(const InstanceParams& p, std::uint64_t index);

/// eta : psi phi -> id solved through the fully faithful phi from kappa.
std::vector<Vector> unit_from_counit(const WeaklyEquivariant& wf, const StarFunctor& psi,
                                     const std::vector<Vector>& kappa);

/// Crosses a weak equivalence into a certificate between crossed products.
struct CrossedEquivalence {
  Verdict verdict;
  std::optional<UnitaryEquivalenceCertificate> certificate;
};

CrossedEquivalence cross_weak_equivalence(const WeakEquivalenceInstance& w, const CrossedProduct& src,
                                          const CrossedProduct& tgt);

struct ExcisiveInstance {
  ExcisiveSquare square;
  ActionPtr a, b, c, d;
  Quotient top_quotient;     // B/A
  Quotient bottom_quotient;  // D/C
  ActionPtr top_action, bottom_action;
  WeakEquivalenceInstance quotient_equivalence;  // B/A -> D/C
};

ExcisiveInstance random_excisive_square(const InstanceParams& p, std::uint64_t index);

/// The crossed square with a certificate obtained by crossing the quotient
/// equivalence and transporting it along (X x| G)/(Y x| G) = (X/Y) x| G.
ExcisiveSquare cross_square(const ExcisiveInstance& inst);

// ---------------------------------------------------------------------------
// Suites

struct InstanceResult {
  std::size_t index = 0;
  Verdict verdict;
  std::vector<std::string> checks;  // one line per sub-check
  std::optional<json> reproducer;   // set on refutation
  double seconds = 0.0;
  bool rerun = false;               // inconclusive once, re-run at tightened tolerance
};

struct VerificationReport {
  std::string suite;
  InstanceParams params;
  std::vector<InstanceResult> results;
  double seconds = 0.0;

  std::size_t count(Status s) const;
  bool all_verified() const { return count(Status::verified) == results.size(); }
  json to_json() const;
};

const std::vector<std::string>& suite_names();

/// Runs a suite; instances are verified in parallel on `params.jobs` threads.
VerificationReport verify_suite(const std::string& name, const InstanceParams& params);

/// One instance of a suite, as run by verify_suite.
InstanceResult run_instance(const std::string& name, const InstanceParams& params, std::size_t index);

}  // namespace cxp
