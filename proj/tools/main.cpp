#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cantor/json_io.hpp"
#include "cantor/metric.hpp"
#include "cantor/separation.hpp"
#include "verify.hpp"

using namespace cantor;

namespace {

// exit codes: 0 ok; 1 malformed input; 2 precondition violation;
// 3 a decision was required but the verdict is Unknown; 4 verify failures
constexpr int kOk = 0;
constexpr int kMalformed = 1;
constexpr int kPrecondition = 2;
constexpr int kUnknown = 3;
constexpr int kVerifyFailed = 4;

struct Common {
  std::string scenario_file;
  bool csv = false;
  bool json = false;
  std::optional<uint64_t> depth;
  std::optional<uint64_t> seed;
  std::optional<uint64_t> count;
  std::string name;
  std::string first;
  std::string second;
  std::optional<uint64_t> n;
  std::optional<std::string> c_flag;
};

void add_output_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--scenario", c.scenario_file, "scenario JSON file");
  cmd->add_flag("--csv", c.csv, "emit CSV instead of JSON");
  cmd->add_flag("--json", c.json, "emit JSON (the default)");
  cmd->add_option("--depth", c.depth, "digit window depth (default 128)");
}

Scenario load(const Common& c) {
  if (c.scenario_file.empty()) return Scenario{};
  return load_scenario_file(c.scenario_file);
}

uint64_t resolve_depth(const Common& c, const Scenario& sc) {
  if (c.depth) return *c.depth;
  if (sc.depth) return *sc.depth;
  if (const char* env = std::getenv("CANTOR_DEPTH")) {
    try {
      size_t used = 0;
      unsigned long long v = std::stoull(env, &used);
      if (used == std::string(env).size() && v > 0) return v;
    } catch (const std::exception&) {
    }
    throw ScenarioError(std::string("CANTOR_DEPTH: bad depth '") + env + "'");
  }
  return 128;
}

const Rational& named_number(const Scenario& sc, const std::string& name) {
  if (name.empty()) {  // unnamed: unambiguous only when the scenario holds one
    if (sc.numbers.size() == 1) return sc.numbers.begin()->second;
    throw ScenarioError(
        sc.numbers.empty()
            ? "scenario.numbers: empty; nothing to select"
            : "scenario.numbers: several entries; pick one with --name");
  }
  auto it = sc.numbers.find(name);
  if (it == sc.numbers.end())
    throw ScenarioError("scenario.numbers." + name + ": missing");
  return it->second;
}

const IndexSet& need_x(const Scenario& sc) {
  if (!sc.x) throw ScenarioError("scenario.x: missing");
  return *sc.x;
}

const IndexSet& need_y(const Scenario& sc) {
  if (!sc.y) throw ScenarioError("scenario.y: missing");
  return *sc.y;
}

Rational resolve_scalar(const Common& c, const Scenario& sc) {
  if (c.c_flag) {
    try {
      return parse_rational(*c.c_flag);
    } catch (const std::invalid_argument& e) {
      throw ScenarioError(std::string("--c: ") + e.what());
    }
  }
  if (sc.c) return *sc.c;
  throw ScenarioError("scenario.c: missing (or pass --c)");
}

void emit(const Json& doc) { std::cout << doc.dump(2) << "\n"; }

int reject_csv(const std::string& cmd) {
  std::cerr << cmd << ": CSV output is only defined for digits and separate\n";
  return kMalformed;
}

// ---- command bodies ----

int cmd_digits(const Common& c) {
  Scenario sc = load(c);
  SignedReal r(sc.base, named_number(sc, c.name));
  uint64_t n = c.n ? *c.n : resolve_depth(c, sc);
  std::vector<Integer> ds = r.magnitude().digits(n);
  if (c.csv) {
    std::cout << "position,digit\n";
    for (uint64_t i = 0; i < n; ++i)
      std::cout << (i + 1) << ',' << ds[i].get_str() << '\n';
    return kOk;
  }
  Json digits = Json::array();
  for (const Integer& d : ds)
    digits.push_back(d <= Integer(uint64_t(1) << 53) ? Json(d.get_ui())
                                                     : Json(d.get_str()));
  if (r.sign() >= 0 && r.magnitude().integer_part() == 0) {
    emit(digits);
  } else {
    emit(Json{{"sign", r.sign()},
              {"int", r.magnitude().integer_part().get_str()},
              {"digits", digits}});
  }
  return kOk;
}

int cmd_jump(const Common& c) {
  Scenario sc = load(c);
  if (c.csv) return reject_csv("jump");
  SignedReal r(sc.base, named_number(sc, c.name));
  emit(jump_to_json(r.magnitude().jump(resolve_depth(c, sc))));
  return kOk;
}

int cmd_phi(const Common& c) {
  Scenario sc = load(c);
  if (c.csv) return reject_csv("phi");
  Submeasure phi = Submeasure::dyadic_weighted(need_x(sc));
  SignedReal r(sc.base, named_number(sc, c.name));
  SignedReal zero(sc.base, Rational(0));
  RhoValue v = rho(phi, r, zero, resolve_depth(c, sc));
  emit(mass_to_json(v.phi));
  return kOk;
}

int cmd_member(const Common& c) {
  Scenario sc = load(c);
  if (c.csv) return reject_csv("member");
  Submeasure phi = Submeasure::dyadic_weighted(need_x(sc));
  SignedReal r(sc.base, named_number(sc, c.name));
  MembershipResult m = carrier_membership(phi, r, resolve_depth(c, sc));
  emit(membership_to_json(m));
  return m.verdict == Verdict::Unknown ? kUnknown : kOk;
}

int cmd_rho(const Common& c) {
  Scenario sc = load(c);
  if (c.csv) return reject_csv("rho");
  Submeasure phi = Submeasure::dyadic_weighted(need_x(sc));
  SignedReal r(sc.base, named_number(sc, c.first));
  SignedReal s(sc.base, named_number(sc, c.second));
  emit(rho_to_json(rho(phi, r, s, resolve_depth(c, sc))));
  return kOk;
}

int cmd_inclusion(const Common& c) {
  Scenario sc = load(c);
  if (c.csv) return reject_csv("inclusion");
  InclusionResult r = ideal_inclusion(Submeasure::dyadic_weighted(need_x(sc)),
                                      Submeasure::dyadic_weighted(need_y(sc)));
  emit(inclusion_to_json(r));
  return r.verdict == Verdict::Unknown ? kUnknown : kOk;
}

int cmd_separate(const Common& c) {
  Scenario sc = load(c);
  uint64_t count = c.count ? *c.count : 3;
  SeparationCertificate cert = separation_certificate(
      need_x(sc), need_y(sc), resolve_scalar(c, sc), count, sc.base);
  if (c.csv)
    std::cout << certificate_to_csv(cert);
  else
    emit(certificate_to_json(cert));
  return kOk;
}

int cmd_verify(const Common& c, const std::string& suite, uint64_t trials) {
  Scenario sc = load(c);
  if (c.csv) return reject_csv("verify");
  uint64_t seed = c.seed ? *c.seed : sc.seed.value_or(0);
  verify::SuiteReport rep = verify::run_suite(suite, seed, trials);

  Json checks = Json::array();
  for (const verify::CheckReport& ck : rep.checks) {
    checks.push_back(
        Json{{"name", ck.name}, {"trials", ck.trials}, {"failures", ck.failures}});
    std::cerr << suite << "/" << ck.name << ": " << ck.trials << " trials, "
              << ck.failures << " failures, " << ck.elapsed_ms << " ms\n";
  }
  emit(Json{{"suite", rep.suite},
            {"seed", rep.seed},
            {"checks", checks},
            {"status", rep.ok() ? "ok" : "failed"}});
  return rep.ok() ? kOk : kVerifyFailed;
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMalformed;
  } catch (const AdaptednessError& e) {
    emit(e.document);
    std::cerr << "error: " << e.what() << "\n";
    return e.verdict == Verdict::Unknown ? kUnknown : kPrecondition;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMalformed;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kPrecondition;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kPrecondition;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exact mixed-radix expansions, weighted submeasure ideals, and "
      "separation certificates"};
  app.require_subcommand(1);
  Common c;

  CLI::App* digits = app.add_subcommand("digits", "first digits of a number");
  add_output_flags(digits, c);
  digits->add_option("--name", c.name, "number name in the scenario");
  digits->add_option("--n", c.n, "how many digits (default: depth)");

  CLI::App* jump = app.add_subcommand("jump", "digit-change set of a number");
  add_output_flags(jump, c);
  jump->add_option("--name", c.name, "number name in the scenario");

  CLI::App* phi = app.add_subcommand(
      "phi", "mass of a number's change set under the ideal of x");
  add_output_flags(phi, c);
  phi->add_option("--name", c.name, "number name in the scenario");

  CLI::App* member = app.add_subcommand(
      "member", "does the number's change set belong to the ideal of x");
  add_output_flags(member, c);
  member->add_option("--name", c.name, "number name in the scenario");

  CLI::App* rho_cmd =
      app.add_subcommand("rho", "metric value between two named numbers");
  add_output_flags(rho_cmd, c);
  rho_cmd->add_option("--first", c.first, "first number name")->required();
  rho_cmd->add_option("--second", c.second, "second number name")->required();

  CLI::App* inclusion = app.add_subcommand(
      "inclusion", "is the ideal of x contained in the ideal of y");
  add_output_flags(inclusion, c);

  CLI::App* separate = app.add_subcommand(
      "separate", "build a scaling-discontinuity certificate for (x, y, c)");
  add_output_flags(separate, c);
  separate->add_option("--count", c.count, "number of witnesses (default 3)");
  separate->add_option("--c", c.c_flag, "scalar (overrides the scenario)");

  std::string suite;
  uint64_t trials = 10000;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "run a named invariant suite");
  add_output_flags(verify_cmd, c);
  verify_cmd->add_option("suite", suite, "one of: digit-rules, jump-algebra, "
                                         "moduli, triangle, density, family, "
                                         "separation, division")
      ->required();
  verify_cmd->add_option("--trials", trials, "instances per check");
  verify_cmd->add_option("--seed", c.seed, "random seed (default 0)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMalformed;
  }

  if (digits->parsed()) return guarded([&] { return cmd_digits(c); });
  if (jump->parsed()) return guarded([&] { return cmd_jump(c); });
  if (phi->parsed()) return guarded([&] { return cmd_phi(c); });
  if (member->parsed()) return guarded([&] { return cmd_member(c); });
  if (rho_cmd->parsed()) return guarded([&] { return cmd_rho(c); });
  if (inclusion->parsed()) return guarded([&] { return cmd_inclusion(c); });
  if (separate->parsed()) return guarded([&] { return cmd_separate(c); });
  if (verify_cmd->parsed())
    return guarded([&] { return cmd_verify(c, suite, trials); });
  return kMalformed;
}
