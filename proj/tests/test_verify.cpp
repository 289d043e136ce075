#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cxp/verify.hpp"

using namespace cxp;

namespace {

InstanceParams params(const std::string& group, std::uint64_t seed = 7) {
  InstanceParams p;
  p.group = group;
  p.seed = seed;
  p.instances = 4;
  return p;
}

std::size_t hilbert_total(const GroupAction& act) {
  std::size_t t = 0;
  for (auto d : act.category->concrete->hilbert_dims) t += d;
  return t;
}

}  // namespace

TEST_CASE("parameter validation") {
  InstanceParams p;
  CHECK_NOTHROW(validate_params(p));
  p.max_objects = 0;
  CHECK_THROWS_AS(validate_params(p), Error);
  p = InstanceParams{};
  p.group = "S3";
  p.ceiling = 5;  // below |S3|
  CHECK_THROWS_AS(validate_params(p), Error);
  p.ceiling = 6;
  CHECK_NOTHROW(validate_params(p));
  p.group = "Q8";
  CHECK_THROWS_AS(validate_params(p), Error);
}

TEST_CASE("generator is deterministic in seed and index") {
  InstanceParams p = params("S3");
  auto a = to_json(*random_instance(p, 3).action);
  auto b = to_json(*random_instance(p, 3).action);
  CHECK(a == b);
  bool differs = false;
  for (std::uint64_t k = 0; k < 8; ++k)
    if (k != 3) differs = differs || to_json(*random_instance(p, k).action) != a;
  CHECK(differs);
  InstanceParams q = params("S3", 8);
  CHECK(to_json(*random_instance(q, 3).action) != a);
}

TEST_CASE("generated actions are valid and respect the ceiling") {
  for (const char* g : {"1", "Z2", "Z3", "Z4", "S3"}) {
    InstanceParams p = params(g);
    p.max_objects = 4;
    p.max_hilbert_dim = 3;
    for (std::uint64_t k = 0; k < 6; ++k) {
      GeneratedInstance inst = random_instance(p, k, {true, true});
      const GroupAction& act = *inst.action;
      CAPTURE(g);
      CAPTURE(k);
      CHECK(validate_action(act).ok());
      CHECK(act.category->size() <= p.max_objects);
      CHECK(act.group.size() * hilbert_total(act) <= p.ceiling);
      // kept is invariant and representatives are same-block, same-dimension
      for (std::size_t x = 0; x < inst.kept.size(); ++x) {
        const std::size_t r = inst.representative[x];
        CHECK(inst.kept[r]);
        CHECK(inst.block[r] == inst.block[x]);
        CHECK(act.category->concrete->hilbert_dims[r] == act.category->concrete->hilbert_dims[x]);
        for (std::size_t h = 0; h < act.group.size(); ++h) CHECK(inst.kept[act.act(h, x)] == inst.kept[x]);
      }
    }
  }
}

TEST_CASE("a tight ceiling bounds the Hilbert total") {
  InstanceParams p = params("Z2");
  p.ceiling = 4;
  p.max_hilbert_dim = 5;
  for (std::uint64_t k = 0; k < 10; ++k) CHECK(hilbert_total(*random_instance(p, k).action) <= 2);
}

TEST_CASE("exact sequences from invariant block unions") {
  InstanceParams p = params("Z3");
  for (std::uint64_t k = 0; k < 4; ++k) {
    ExactSequenceInstance es = random_exact_sequence(p, k);
    CHECK(check_exact(es.ideal.inclusion, es.quotient.qmap).verified());
    CHECK(es.ideal.ideal->total_dim() + es.quotient.cat->total_dim() == es.ideal.ambient->total_dim());
    CHECK(es.ideal.ideal->total_dim() > 0);
    CHECK(es.quotient.cat->total_dim() > 0);
    CHECK(validate_action(*es.quotient_action).ok());
  }
}

TEST_CASE("weak equivalence families") {
  InstanceParams p = params("Z2");
  for (std::uint64_t k = 0; k < 4; ++k) {
    WeakEquivalenceInstance w = random_weak_equivalence(p, k);
    CAPTURE(w.family);
    CHECK(validate_weakly_equivariant(w.wf).ok());
    CHECK(is_fully_faithful(w.wf.phi));
    CHECK(invert_weak_equivalence(w.wf, w.psi, w.kappa).verdict.verified());
  }
}

TEST_CASE("excisive squares and their crossings") {
  InstanceParams p = params("Z2");
  ExcisiveInstance ex = random_excisive_square(p, 1);
  CHECK(check_excisive(ex.square).verdict.verified());
  ExcisiveSquare crossed = cross_square(ex);
  REQUIRE(crossed.certificate.has_value());
  CHECK(check_excisive(crossed).verdict.verified());
}

TEST_CASE("suites report per-instance verdicts") {
  InstanceParams p = params("Z2");
  for (const auto& name : suite_names()) {
    CAPTURE(name);
    VerificationReport rep = verify_suite(name, p);
    CHECK(rep.all_verified());
    json j = rep.to_json();
    CHECK(j["summary"]["total"] == rep.results.size());
    CHECK(j["suite"] == name);
  }
  CHECK_THROWS_AS(verify_suite("nosuch", p), Error);
}

TEST_CASE("parallel runs match serial runs") {
  InstanceParams p = params("S3");
  p.instances = 6;
  VerificationReport one = verify_suite("dimension", p);
  p.jobs = 3;
  VerificationReport three = verify_suite("dimension", p);
  REQUIRE(one.results.size() == three.results.size());
  for (std::size_t k = 0; k < one.results.size(); ++k) {
    CHECK(one.results[k].index == k);
    CHECK(three.results[k].verdict.status == one.results[k].verdict.status);
    CHECK(three.results[k].checks == one.results[k].checks);
  }
}

TEST_CASE("refutations carry a reproducer") {
  InstanceResult r = run_instance("nosuch", params("Z2"), 0);
  CHECK(r.verdict.status == Status::refuted);
  REQUIRE(r.reproducer.has_value());
  CHECK((*r.reproducer)["index"] == 0);
  CHECK((*r.reproducer)["params"]["group"] == "Z2");
}
