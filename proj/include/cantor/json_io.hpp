#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "cantor/base_seq.hpp"
#include "cantor/index_set.hpp"
#include "cantor/metric.hpp"
#include "cantor/mixed_radix.hpp"
#include "cantor/nat_set.hpp"
#include "cantor/separation.hpp"
#include "cantor/submeasure.hpp"
#include "json.hpp"

namespace cantor {

using Json = nlohmann::json;

// ---- emitters: every rational as a lowest-terms string, keys sorted, so a
// ---- fixed input always serializes to identical bytes

Json base_to_json(const BaseSeq& b);
Json index_set_to_json(const IndexSet& s);
Json nat_set_to_json(const NatSet& s);
Json digit_spec_to_json(const DigitSpec& s);
Json jump_to_json(const JumpResult& j);
Json mass_to_json(const MassValue& m);
Json in_cert_to_json(const InCertificate& c);
Json out_cert_to_json(const OutCertificate& c);
Json membership_to_json(const MembershipResult& m);
Json inclusion_to_json(const InclusionResult& r);
Json rho_to_json(const RhoValue& v);
Json truncation_to_json(const TruncationResult& t);
Json witness_to_json(const SeparationWitness& w);
Json certificate_to_json(const SeparationCertificate& c);

// k,w,phi_x,phi_y table, one row per witness
std::string certificate_to_csv(const SeparationCertificate& c);

// ---- parsers; `path` prefixes every error message so failures point at the
// ---- offending field

// malformed input: exit code 1 territory
struct ScenarioError : std::runtime_error {
  explicit ScenarioError(const std::string& msg) : std::runtime_error(msg) {}
};

// scenario loaded but violates the adaptedness invariant; carries the
// failing verdict document so callers can emit the certificate
struct AdaptednessError : std::runtime_error {
  AdaptednessError(const std::string& msg, Verdict v, Json doc)
      : std::runtime_error(msg), verdict(v), document(std::move(doc)) {}
  Verdict verdict;
  Json document;
};

BaseSeq base_from_json(const Json& j, const std::string& path);
IndexSet index_set_from_json(const Json& j, const std::string& path);
DigitSpec digit_spec_from_json(const Json& j, const std::string& path);
// {"rational":"1/4"} or {"digits":{"5":1},"int":0}; digit specs are resolved
// against the base
Rational number_from_json(const Json& j, const BaseSeq& b,
                          const std::string& path);

struct Scenario {
  BaseSeq base = BaseSeq::constant(10);
  std::optional<IndexSet> x, y;
  std::map<std::string, Rational> numbers;
  std::optional<Rational> c;
  std::optional<uint64_t> depth;
  std::optional<uint64_t> seed;
};

// Parses and enforces the load-time invariant: the base's change set must
// belong to the ideal of every declared index set (throws AdaptednessError
// with the certificate otherwise).
Scenario scenario_from_json(const Json& j);
Scenario load_scenario_file(const std::string& file);

}  // namespace cantor
