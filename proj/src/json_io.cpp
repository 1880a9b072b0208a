#include "cantor/json_io.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <variant>

namespace cantor {

namespace {

Json integer_to_json(const Integer& n) {
  // numbers only while exactly representable in a double-backed JSON reader
  if (n >= 0 && n <= Integer(uint64_t(1) << 53))
    return Json(n.get_ui());
  return Json(n.get_str());
}

Integer integer_from_json(const Json& j, const std::string& path) {
  if (j.is_number_unsigned()) return Integer(static_cast<unsigned long>(j.get<uint64_t>()));
  if (j.is_number_integer()) {
    long long v = j.get<long long>();
    Integer out;
    mpz_set_si(out.get_mpz_t(), static_cast<long>(v));
    return out;
  }
  if (j.is_string()) {
    try {
      return Integer(j.get<std::string>());
    } catch (const std::invalid_argument&) {
      throw ScenarioError(path + ": bad integer literal '" +
                          j.get<std::string>() + "'");
    }
  }
  throw ScenarioError(path + ": expected an integer or integer string");
}

std::string bits_to_string(const std::vector<uint8_t>& bits) {
  std::string out;
  out.reserve(bits.size());
  for (uint8_t b : bits) out.push_back(b ? '1' : '0');
  return out;
}

uint64_t uint_from_json(const Json& j, const std::string& path) {
  if (!j.is_number_unsigned())
    throw ScenarioError(path + ": expected a nonnegative integer");
  return j.get<uint64_t>();
}

Rational rational_from_json(const Json& j, const std::string& path) {
  if (!j.is_string())
    throw ScenarioError(path + ": expected a rational string like \"3/2\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(path + ": " + e.what());
  }
}

}  // namespace

Json base_to_json(const BaseSeq& b) {
  Json out;
  switch (b.kind()) {
    case BaseSeq::Kind::Constant:
      out["kind"] = "constant";
      out["value"] = b.constant_value();
      break;
    case BaseSeq::Kind::EventuallyPeriodic:
      out["kind"] = "periodic";
      out["prefix"] = b.prefix();
      out["period"] = b.period();
      break;
    case BaseSeq::Kind::PrimorialBlocks:
      out["kind"] = "primorial_blocks";
      out["primes"] = b.listed_primes();
      break;
  }
  return out;
}

Json index_set_to_json(const IndexSet& s) {
  return Json{{"prefix_bits", s.prefix_bits()},
              {"period_bits", s.period_bits()}};
}

Json nat_set_to_json(const NatSet& s) {
  Json out;
  out["delta"] = s.delta();
  if (s.tail_is_empty()) {
    out["tail"] = "empty";
  } else if (s.tail_is_periodic()) {
    const auto& t = std::get<PeriodicTail>(s.tail());
    out["tail"] = "periodic";
    out["prefix_bits"] = bits_to_string(t.prefix);
    out["period_bits"] = bits_to_string(t.period);
  } else {
    const auto& t = std::get<DyadicTail>(s.tail());
    out["tail"] = "dyadic_union";
    out["index"] = index_set_to_json(t.index);
    out["offset"] = t.offset;
  }
  return out;
}

Json digit_spec_to_json(const DigitSpec& s) {
  Json digits = Json::object();
  for (const auto& [pos, dig] : s.digits)
    digits[std::to_string(pos)] = integer_to_json(dig);
  return Json{{"int", integer_to_json(s.int_part)}, {"digits", digits}};
}

Json jump_to_json(const JumpResult& j) {
  Json out;
  out["prefix"] = j.prefix;
  out["tail"] = tail_kind_str(j.tail);
  if (j.full) out["full"] = nat_set_to_json(*j.full);
  return out;
}

Json mass_to_json(const MassValue& m) {
  Json out;
  out["kind"] = mass_kind_str(m.kind);
  out["value"] = rational_str(m.value);
  // an exact value is its own upper bound; emit the field only when it adds
  // information
  if (m.upper && m.kind != MassKind::Exact) out["upper"] = rational_str(*m.upper);
  out["depth"] = m.depth;
  return out;
}

Json in_cert_to_json(const InCertificate& c) {
  Json runs = Json::array();
  for (const InRun& r : c.runs)
    runs.push_back(Json{{"lo", r.lo}, {"hi", r.hi}, {"carried", r.carried}});
  Json out;
  out["runs"] = runs;
  out["geo_start"] = c.geo_start;
  out["sliver_per"] = c.sliver_per;
  out["sliver_from_block"] = c.sliver_from_block;
  out["flat_members"] = c.flat_members;
  out["flat_weight"] = rational_str(c.flat_weight);
  return out;
}

Json out_cert_to_json(const OutCertificate& c) {
  Json samples = Json::array();
  for (const OutSample& s : c.samples)
    samples.push_back(Json{{"block", s.block},
                           {"lo", s.lo},
                           {"hi", s.hi},
                           {"count", s.count},
                           {"mass_lower", rational_str(s.mass_lower)}});
  return Json{{"d", rational_str(c.d)},
              {"family", c.family},
              {"samples", samples}};
}

Json membership_to_json(const MembershipResult& m) {
  Json out;
  out["verdict"] = verdict_str(m.verdict);
  if (m.in_cert) out["in_certificate"] = in_cert_to_json(*m.in_cert);
  if (m.out_cert) out["out_certificate"] = out_cert_to_json(*m.out_cert);
  return out;
}

Json inclusion_to_json(const InclusionResult& r) {
  Json out;
  out["verdict"] = verdict_str(r.verdict);
  if (r.witness) out["witness"] = nat_set_to_json(*r.witness);
  if (r.witness_in) out["witness_in"] = in_cert_to_json(*r.witness_in);
  if (r.witness_out) out["witness_out"] = out_cert_to_json(*r.witness_out);
  out["note"] = r.note;
  return out;
}

Json rho_to_json(const RhoValue& v) {
  Json phi;
  phi["kind"] = mass_kind_str(v.phi.kind);
  phi["value"] = rational_str(v.phi.value);
  if (v.phi.upper && v.phi.kind != MassKind::Exact)
    phi["upper"] = rational_str(*v.phi.upper);
  return Json{{"distance", rational_str(v.distance)},
              {"phi", phi},
              {"depth", v.depth}};
}

Json truncation_to_json(const TruncationResult& t) {
  Json steps = Json::array();
  for (const TruncationStep& s : t.steps)
    steps.push_back(Json{{"n", s.n}, {"rho", rho_to_json(s.value)}});
  return Json{{"n0", t.n0}, {"steps", steps}};
}

Json witness_to_json(const SeparationWitness& w) {
  Json out;
  out["k"] = w.k;
  out["w"] = digit_spec_to_json(w.spec);
  out["value"] = rational_str(w.value);
  out["bound"] = rational_str(w.bound);
  out["phi_x"] = rational_str(w.phi_first);
  out["phi_y"] = rational_str(w.psi_second);
  return out;
}

Json certificate_to_json(const SeparationCertificate& c) {
  Json ws = Json::array();
  for (const SeparationWitness& w : c.witnesses) ws.push_back(witness_to_json(w));
  return Json{{"c", rational_str(c.scalar)},
              {"d", rational_str(c.threshold)},
              {"witnesses", ws}};
}

std::string certificate_to_csv(const SeparationCertificate& c) {
  std::ostringstream out;
  out << "k,w,phi_x,phi_y\n";
  for (const SeparationWitness& w : c.witnesses)
    out << w.k << ',' << rational_str(w.value) << ','
        << rational_str(w.phi_first) << ',' << rational_str(w.psi_second)
        << '\n';
  return out.str();
}

BaseSeq base_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw ScenarioError(path + ": expected an object");
  if (!j.contains("kind") || !j["kind"].is_string())
    throw ScenarioError(path + ".kind: expected a string");
  std::string kind = j["kind"].get<std::string>();
  try {
    if (kind == "constant") {
      if (!j.contains("value"))
        throw ScenarioError(path + ".value: required for constant bases");
      return BaseSeq::constant(uint_from_json(j["value"], path + ".value"));
    }
    if (kind == "periodic") {
      std::vector<uint64_t> prefix, period;
      if (j.contains("prefix")) {
        if (!j["prefix"].is_array())
          throw ScenarioError(path + ".prefix: expected an array");
        for (size_t i = 0; i < j["prefix"].size(); ++i)
          prefix.push_back(uint_from_json(
              j["prefix"][i], path + ".prefix[" + std::to_string(i) + "]"));
      }
      if (!j.contains("period") || !j["period"].is_array())
        throw ScenarioError(path + ".period: expected an array");
      for (size_t i = 0; i < j["period"].size(); ++i)
        period.push_back(uint_from_json(
            j["period"][i], path + ".period[" + std::to_string(i) + "]"));
      return BaseSeq::eventually_periodic(std::move(prefix), std::move(period));
    }
    if (kind == "primorial_blocks") {
      if (!j.contains("primes") || !j["primes"].is_array())
        throw ScenarioError(path + ".primes: expected an array");
      std::vector<uint64_t> primes;
      for (size_t i = 0; i < j["primes"].size(); ++i)
        primes.push_back(uint_from_json(
            j["primes"][i], path + ".primes[" + std::to_string(i) + "]"));
      return BaseSeq::primorial_blocks(std::move(primes));
    }
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(path + ": " + e.what());
  }
  throw ScenarioError(path +
                      ".kind: expected constant|periodic|primorial_blocks");
}

IndexSet index_set_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw ScenarioError(path + ": expected an object");
  if (!j.contains("period_bits") || !j["period_bits"].is_string())
    throw ScenarioError(path + ".period_bits: expected a bit string");
  std::string prefix;
  if (j.contains("prefix_bits")) {
    if (!j["prefix_bits"].is_string())
      throw ScenarioError(path + ".prefix_bits: expected a bit string");
    prefix = j["prefix_bits"].get<std::string>();
  }
  try {
    return IndexSet::parse_bits(prefix, j["period_bits"].get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(path + ": " + e.what());
  }
}

DigitSpec digit_spec_from_json(const Json& j, const std::string& path) {
  DigitSpec spec;
  if (!j.is_object() || !j.contains("digits") || !j["digits"].is_object())
    throw ScenarioError(path + ".digits: expected an object of position:digit");
  if (j.contains("int"))
    spec.int_part = integer_from_json(j["int"], path + ".int");
  for (const auto& [key, val] : j["digits"].items()) {
    uint64_t pos = 0;
    try {
      size_t used = 0;
      pos = std::stoull(key, &used);
      if (used != key.size() || pos == 0) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw ScenarioError(path + ".digits: bad position '" + key + "'");
    }
    spec.digits[pos] =
        integer_from_json(val, path + ".digits." + key);
  }
  return spec;
}

Rational number_from_json(const Json& j, const BaseSeq& b,
                          const std::string& path) {
  if (!j.is_object()) throw ScenarioError(path + ": expected an object");
  if (j.contains("rational")) return rational_from_json(j["rational"], path + ".rational");
  if (j.contains("digits")) {
    DigitSpec spec = digit_spec_from_json(j, path);
    try {
      return from_digit_spec(spec, b).value();
    } catch (const std::exception& e) {
      throw ScenarioError(path + ": " + e.what());
    }
  }
  throw ScenarioError(path + ": expected {\"rational\":...} or {\"digits\":...}");
}

Scenario scenario_from_json(const Json& j) {
  if (!j.is_object()) throw ScenarioError("scenario: expected an object");
  static const char* known[] = {"base", "x", "y", "numbers", "c", "depth", "seed"};
  for (const auto& [key, val] : j.items()) {
    (void)val;
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ScenarioError("scenario." + key + ": unknown field");
  }

  Scenario sc;
  if (j.contains("base")) sc.base = base_from_json(j["base"], "scenario.base");
  if (j.contains("x")) sc.x = index_set_from_json(j["x"], "scenario.x");
  if (j.contains("y")) sc.y = index_set_from_json(j["y"], "scenario.y");
  if (j.contains("numbers")) {
    if (!j["numbers"].is_object())
      throw ScenarioError("scenario.numbers: expected an object");
    for (const auto& [name, val] : j["numbers"].items())
      sc.numbers.emplace(
          name, number_from_json(val, sc.base, "scenario.numbers." + name));
  }
  if (j.contains("c")) sc.c = rational_from_json(j["c"], "scenario.c");
  if (j.contains("depth")) sc.depth = uint_from_json(j["depth"], "scenario.depth");
  if (j.contains("seed")) sc.seed = uint_from_json(j["seed"], "scenario.seed");

  // load-time invariant: the base's own change set must lie in the ideal of
  // every declared index set
  auto check_adapted = [&](const IndexSet& s, const char* name) {
    MembershipResult m = is_adapted(sc.base, Submeasure::dyadic_weighted(s));
    if (m.verdict == Verdict::In) return;
    std::string msg =
        std::string("base not adapted to the ideal of scenario.") + name;
    Json doc;
    doc["error"] = msg;
    doc["set"] = name;
    doc["membership"] = membership_to_json(m);
    throw AdaptednessError(msg, m.verdict, std::move(doc));
  };
  if (sc.x) check_adapted(*sc.x, "x");
  if (sc.y) check_adapted(*sc.y, "y");
  return sc;
}

Scenario load_scenario_file(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw ScenarioError(file + ": cannot open scenario file");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ScenarioError(file + ": " + e.what());
  }
  return scenario_from_json(j);
}

}  // namespace cantor
