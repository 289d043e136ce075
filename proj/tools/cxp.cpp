#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cxp/verify.hpp"

using namespace cxp;

namespace {

constexpr int kVerified = 0;
constexpr int kRefuted = 1;
constexpr int kInconclusive = 2;
constexpr int kUsage = 64;

struct Globals {
  double tol = 1e-8;
  std::uint64_t seed = 1;
  std::string out;
};

int exit_code(Status s) {
  switch (s) {
    case Status::verified: return kVerified;
    case Status::refuted: return kRefuted;
    default: return kInconclusive;
  }
}

void emit(const Globals& g, const json& file) {
  if (g.out.empty()) std::cout << dump_canonical(file);
  else write_json_file(g.out, file);
}

// Status line on stdout; the report file only when --out is given.
int report(const Globals& g, const std::string& command, const Verdict& v, json extra = json::object()) {
  std::cout << to_string(v.status) << ": " << v.evidence << "\n";
  if (!g.out.empty()) {
    extra["command"] = command;
    extra["status"] = to_string(v.status);
    extra["evidence"] = v.evidence;
    write_json_file(g.out, instance_file("report", std::move(extra)));
  }
  return exit_code(v.status);
}

std::pair<std::string, json> open(const std::string& path) { return open_instance_file(read_json_file(path)); }

json expect_kind(const std::string& path, const std::string& kind) {
  auto [k, body] = open(path);
  if (k != kind) throw SchemaError("/kind", path + ": expected kind \"" + kind + "\", found \"" + k + "\"");
  return body;
}

FiniteGroup group_arg(Reader& r, const std::string& arg) {
  if (arg.size() > 5 && arg.substr(arg.size() - 5) == ".json") return r.group(expect_kind(arg, "group"), "/body");
  return FiniteGroup::by_name(arg);
}

Verdict from_report(const ValidationReport& rep, const std::string& what) {
  return rep.ok() ? Verdict::yes(what + " valid") : Verdict::no(rep.summary());
}

json violations_json(const ValidationReport& rep) {
  json v = json::array();
  for (const auto& x : rep.violations) v.push_back({{"kind", x.kind}, {"location", x.location}});
  return v;
}

int cmd_validate(const Globals& g, const std::string& path, const std::string& category_path) {
  Reader r;
  auto [kind, body] = open(path);
  ValidationReport rep;
  if (kind == "category") {
    rep = validate_presentation(*r.category(body, "/body"));
  } else if (kind == "group") {
    r.group(body, "/body");
  } else if (kind == "action") {
    rep = validate_action(r.action(body, "/body"));
  } else if (kind == "functor") {
    rep = validate_functor(r.functor(body, "/body"));
  } else if (kind == "transformation") {
    rep = validate_transformation(r.transformation(body, "/body"), false);
  } else if (kind == "sequence") {
    rep.merge(validate_functor(r.functor(body.at("i"), "/body/i")), "i: ");
    rep.merge(validate_functor(r.functor(body.at("q"), "/body/q")), "q: ");
  } else if (kind == "square") {
    ExcisiveSquare sq = r.square(body, "/body");
    for (const auto* f : {&sq.i, &sq.j, &sq.alpha, &sq.beta}) rep.merge(validate_functor(*f));
  } else if (kind == "element") {
    if (category_path.empty()) throw SchemaError("/body", "an element needs --category");
    CategoryPtr c = r.category(expect_kind(category_path, "category"), "/body");
    r.element(*c, body, "/body");
  } else {
    throw SchemaError("/kind", "nothing to validate for kind \"" + kind + "\"");
  }
  return report(g, "validate", from_report(rep, kind), {{"kind", kind}, {"violations", violations_json(rep)}});
}

int cmd_crossprod(const Globals& g, const std::string& action_path, const std::string& category_path,
                  const std::string& group) {
  Reader r;
  GroupAction act;
  if (!action_path.empty()) {
    act = r.action(expect_kind(action_path, "action"), "/body");
  } else {
    if (category_path.empty() || group.empty()) throw CLI::ValidationError("crossprod needs --action, or --category with --group");
    act = trivial_action(group_arg(r, group), r.category(expect_kind(category_path, "category"), "/body"));
  }
  ValidationReport vr = validate_action(act);
  if (!vr.ok()) return report(g, "crossprod", Verdict::no("action: " + vr.summary()));
  CrossedProduct cp = crossed_product(act);
  CategoryPtr out = cp.category;
  if (act.spatial && act.category->concrete) {
    RegularRep reg = regular_representation(cp);
    if (!reg.verdict.verified()) return report(g, "crossprod", reg.verdict);
    out = reg.category;
  }
  emit(g, instance_file("category", to_json(*out)));
  return kVerified;
}

int cmd_aalg(const Globals& g, const std::string& category_path) {
  Reader r;
  TotalAlgebra alg = a_alg(r.category(expect_kind(category_path, "category"), "/body"));
  emit(g, instance_file("category", to_json(*alg.algebra)));
  return kVerified;
}

int cmd_norm(const Globals& g, const std::string& category_path, const std::string& element_path) {
  Reader r;
  CategoryPtr c = r.category(expect_kind(category_path, "category"), "/body");
  if (!c->concrete) throw SchemaError("/body/concrete", "the category carries no concrete representation");
  Morphism x = r.element(*c, expect_kind(element_path, "element"), "/body");
  const double n = norm(*c, x);
  std::ostringstream text;
  text << std::fixed << std::setprecision(10) << n;
  std::cout << text.str() << "\n";
  if (!g.out.empty()) write_json_file(g.out, instance_file("report", {{"command", "norm"}, {"norm", n}}));
  return kVerified;
}

int cmd_kernel(const Globals& g, const std::string& functor_path) {
  Reader r;
  StarFunctor phi = r.functor(expect_kind(functor_path, "functor"), "/body");
  emit(g, instance_file("functor", to_json(kernel_ideal(phi).inclusion)));
  return kVerified;
}

int cmd_quotient(const Globals& g, const std::string& ideal_path) {
  Reader r;
  StarFunctor i = r.functor(expect_kind(ideal_path, "functor"), "/body");
  IdealInclusion inc{i.source, i.target, i};
  ValidationReport vr = validate_ideal(inc);
  if (!vr.ok()) return report(g, "quotient", Verdict::no("not an ideal: " + vr.summary()));
  emit(g, instance_file("functor", to_json(quotient_by_ideal(inc).qmap)));
  return kVerified;
}

int cmd_check_exact(const Globals& g, const std::string& path) {
  Reader r;
  json body = expect_kind(path, "sequence");
  if (!body.is_object() || !body.contains("i") || !body.contains("q"))
    throw SchemaError("/body", "a sequence has fields i and q");
  StarFunctor i = r.functor(body["i"], "/body/i");
  StarFunctor q = r.functor(body["q"], "/body/q");
  return report(g, "check-exact", check_exact(i, q));
}

int cmd_check_excisive(const Globals& g, const std::string& path) {
  Reader r;
  ExcisionReport rep = check_excisive(r.square(expect_kind(path, "square"), "/body"));
  return report(g, "check-excisive", rep.verdict);
}

int cmd_verify(const Globals& g, const std::string& suite, InstanceParams p, const std::string& group) {
  p.seed = g.seed;
  p.tol = g.tol;
  if (group.size() > 5 && group.substr(group.size() - 5) == ".json") {
    Reader r;
    p.group_table = group_arg(r, group);
  } else {
    p.group = group;
  }
  validate_params(p);
  std::vector<std::string> suites = suite == "all" ? suite_names() : std::vector<std::string>{suite};
  json reports = json::array();
  Status worst = Status::verified;
  for (const auto& s : suites) {
    VerificationReport rep = verify_suite(s, p);
    std::cout << s << ": " << rep.count(Status::verified) << " verified, " << rep.count(Status::refuted)
              << " refuted, " << rep.count(Status::inconclusive) << " inconclusive (" << std::fixed
              << std::setprecision(2) << rep.seconds << " s)\n";
    for (const auto& res : rep.results)
      if (!res.verdict.verified())
        std::cout << "  instance " << res.index << ": " << to_string(res.verdict.status) << ": "
                  << res.verdict.evidence << "\n";
    if (rep.count(Status::refuted) > 0) worst = Status::refuted;
    else if (rep.count(Status::inconclusive) > 0 && worst == Status::verified) worst = Status::inconclusive;
    reports.push_back(rep.to_json());
  }
  if (!g.out.empty())
    write_json_file(g.out, instance_file("report", suites.size() == 1 ? reports[0] : json{{"suites", reports}}));
  return exit_code(worst);
}

double default_tolerance() {
  if (const char* env = std::getenv("CXP_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0.0) return v;
    std::cerr << "warning: ignoring CXP_TOL=" << env << "\n";
  }
  return 1e-8;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Crossed products of finite C*-categories by finite groups"};
  app.require_subcommand(1);
  Globals g;
  g.tol = default_tolerance();
  app.add_option("--tol", g.tol, "numeric tolerance (default: $CXP_TOL or 1e-8)")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "seed for all randomness");
  app.add_option("--out", g.out, "output file (written atomically)");
  // global options may also follow the subcommand
  app.fallthrough();

  std::string path, category, group, action, element;
  int code = kVerified;

  auto* validate = app.add_subcommand("validate", "check an instance file");
  validate->add_option("file", path, "instance file")->required()->check(CLI::ExistingFile);
  validate->add_option("--category", category, "category file, for element files")->check(CLI::ExistingFile);

  auto* crossprod = app.add_subcommand("crossprod", "crossed product, with its regular representation");
  crossprod->add_option("--action", action, "action file")->check(CLI::ExistingFile);
  crossprod->add_option("--category", category, "category file (trivial action)")->check(CLI::ExistingFile);
  crossprod->add_option("--group", group, "group name (Z2, S3, ...) or group file");

  auto* aalg = app.add_subcommand("aalg", "total algebra of a category");
  aalg->add_option("--category", category, "category file")->required()->check(CLI::ExistingFile);

  auto* normc = app.add_subcommand("norm", "operator norm of an element");
  normc->add_option("--crossed,--category", category, "concrete category file")->required()->check(CLI::ExistingFile);
  normc->add_option("--element", element, "element file")->required()->check(CLI::ExistingFile);

  auto* kernel = app.add_subcommand("kernel", "kernel ideal of a functor bijective on objects");
  kernel->add_option("--functor", path, "functor file")->required()->check(CLI::ExistingFile);

  auto* quotient = app.add_subcommand("quotient", "quotient by an ideal inclusion");
  quotient->add_option("--ideal", path, "ideal inclusion functor file")->required()->check(CLI::ExistingFile);

  auto* exact = app.add_subcommand("check-exact", "check 0 -> C -> D -> Q -> 0");
  exact->add_option("--sequence,file", path, "sequence file")->required()->check(CLI::ExistingFile);

  auto* excisive = app.add_subcommand("check-excisive", "check an excisive square");
  excisive->add_option("--square,file", path, "square file")->required()->check(CLI::ExistingFile);

  InstanceParams params;
  std::string suite, vgroup = "Z2";
  auto* verify = app.add_subcommand("verify", "run a property suite on generated instances");
  verify->add_option("suite", suite, "suite name or 'all'")->required();
  verify->add_option("--instances", params.instances, "number of instances");
  verify->add_option("--group", vgroup, "group name or group file")->capture_default_str();
  verify->add_option("--max-objects", params.max_objects, "objects per instance")->capture_default_str();
  verify->add_option("--max-hilbert-dim", params.max_hilbert_dim, "Hilbert dimension per object")->capture_default_str();
  verify->add_option("--ceiling", params.ceiling, "bound on |G| times total Hilbert dimension")->capture_default_str();
  verify->add_option("--jobs", params.jobs, "worker threads")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  tolerances().equality = g.tol;
  try {
    if (*validate) code = cmd_validate(g, path, category);
    else if (*crossprod) code = cmd_crossprod(g, action, category, group);
    else if (*aalg) code = cmd_aalg(g, category);
    else if (*normc) code = cmd_norm(g, category, element);
    else if (*kernel) code = cmd_kernel(g, path);
    else if (*quotient) code = cmd_quotient(g, path);
    else if (*exact) code = cmd_check_exact(g, path);
    else if (*excisive) code = cmd_check_excisive(g, path);
    else if (*verify) {
      const auto& names = suite_names();
      if (suite != "all" && std::find(names.begin(), names.end(), suite) == names.end()) {
        std::cerr << "unknown suite " << suite << "\n";
        return kUsage;
      }
      code = cmd_verify(g, suite, params, vgroup);
    }
  } catch (const SchemaError& e) {
    std::cerr << "schema error at " << e.what() << "\n";
    return kUsage;
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const json::exception& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return code;
}
