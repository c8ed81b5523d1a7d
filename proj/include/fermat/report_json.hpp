#pragma once

// JSON forms of configurations, reports and certificates. Object keys are
// sorted by nlohmann::json, so dumps are byte-stable for identical inputs.

#include <string>

#include <json.hpp>

#include "fermat/arrangement.hpp"
#include "fermat/certify.hpp"
#include "fermat/symbolic.hpp"

namespace fermat {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

inline json field_to_json(const FieldSpec& spec) {
  json j{{"kind", spec.kind == FieldKind::prime ? "prime" : "cyclotomic"}, {"n", spec.n}};
  if (spec.kind == FieldKind::prime) j["p"] = spec.p;
  return j;
}

inline FieldSpec field_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const unsigned n = j.at("n").get<unsigned>();
  if (kind == "prime") return FieldSpec::prime(n, j.at("p").get<std::uint64_t>());
  if (kind == "cyclotomic") return FieldSpec::cyclotomic(n);
  throw ParseError("unknown field kind '" + kind + "'");
}

template <CoefficientField F>
json config_to_json(const Configuration<F>& cfg) {
  json primes = json::array();
  for (const auto& P : cfg.primes) {
    json tag{{"kind", P.tag.kind == PrimeTag::Kind::C ? "C" : "J"}, {"label", P.tag.label()}};
    tag["indices"] = P.tag.kind == PrimeTag::Kind::C ? json::array({P.tag.i, P.tag.j})
                                                     : json::array({P.tag.i, P.tag.j, P.tag.l, P.tag.a, P.tag.b});
    tag["forms"] = json::array({P.forms[0].to_string(), P.forms[1].to_string()});
    primes.push_back(std::move(tag));
  }
  return json{{"schema", kSchemaVersion},
              {"N", cfg.N},
              {"n", cfg.n},
              {"field", field_to_json(cfg.field().spec())},
              {"prime_count", cfg.primes.size()},
              {"primes", std::move(primes)},
              {"F", cfg.form.to_string()},
              {"F_degree", cfg.form.total_degree()},
              {"fingerprint", config_fingerprint(cfg)}};
}

inline json lemma1_to_json(const Lemma1Report& rep) {
  json rows = json::array();
  for (const auto& r : rep.per_prime)
    rows.push_back({{"prime", r.label}, {"vanishing_factors", r.count}, {"expected", r.expected}});
  return json{{"N", rep.N},
              {"n", rep.n},
              {"factors", rep.factors},
              {"primes_listed", rep.primes_listed},
              {"pairs_examined", rep.pairs_examined},
              {"flats_found", rep.flats_found},
              {"inclusion_ok", rep.inclusion_ok},
              {"counts_exact", rep.counts_exact},
              {"completeness_ok", rep.completeness_ok},
              {"mismatches", rep.mismatches},
              {"per_prime", std::move(rows)},
              {"verdict", rep.ok() ? "pass" : "fail"}};
}

inline json symbolic_rows_to_json(const std::vector<SymbolicRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    json order = r.order == kInfiniteOrder ? json("inf") : json(r.order);
    out.push_back({{"prime", r.label}, {"order", order}, {"threshold", r.threshold}, {"pass", r.pass}});
  }
  return out;
}

inline std::vector<SymbolicRow> symbolic_rows_from_json(const json& j) {
  std::vector<SymbolicRow> rows;
  for (const auto& r : j) {
    SymbolicRow row;
    row.label = r.at("prime").get<std::string>();
    row.order = r.at("order").is_string() ? kInfiniteOrder : r.at("order").get<unsigned>();
    row.threshold = r.at("threshold").get<unsigned>();
    row.pass = r.at("pass").get<bool>();
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json report_to_json(const ContainmentReport& rep, bool timing = true) {
  json j{{"N", rep.N},
         {"n", rep.n},
         {"m", rep.m},
         {"r", rep.r},
         {"verdict", to_string(rep.verdict)},
         {"codimension", rep.codimension},
         {"harbourne_threshold", rep.harbourne_threshold},
         {"els_threshold", rep.els_threshold},
         {"harbourne_counterexample", rep.harbourne_counterexample},
         {"consistent_with_els", rep.consistent_with_els},
         {"field", field_to_json(rep.field)},
         {"grade", rep.grade},
         {"method", rep.method},
         {"witness", rep.witness ? json(*rep.witness) : json(nullptr)},
         {"witness_source", rep.witness_source},
         {"basis", rep.basis},
         {"symbolic_member", rep.symbolic_member ? json(*rep.symbolic_member) : json(nullptr)},
         {"symbolic_rows", symbolic_rows_to_json(rep.symbolic_rows)},
         {"notes", rep.notes}};
  if (timing) j["seconds"] = rep.seconds;
  return j;
}

inline ContainmentReport report_from_json(const json& j) {
  ContainmentReport rep;
  rep.N = j.at("N");
  rep.n = j.at("n");
  rep.m = j.at("m");
  rep.r = j.at("r");
  rep.verdict = verdict_from_string(j.at("verdict"));
  rep.codimension = j.at("codimension");
  rep.harbourne_threshold = j.at("harbourne_threshold");
  rep.els_threshold = j.at("els_threshold");
  rep.harbourne_counterexample = j.at("harbourne_counterexample");
  rep.consistent_with_els = j.at("consistent_with_els");
  rep.field = field_from_json(j.at("field"));
  rep.grade = j.at("grade");
  rep.method = j.at("method");
  if (!j.at("witness").is_null()) rep.witness = j.at("witness").get<std::string>();
  rep.witness_source = j.at("witness_source");
  rep.basis = j.at("basis").get<std::vector<std::string>>();
  if (!j.at("symbolic_member").is_null()) rep.symbolic_member = j.at("symbolic_member").get<bool>();
  rep.symbolic_rows = symbolic_rows_from_json(j.at("symbolic_rows"));
  rep.notes = j.at("notes").get<std::vector<std::string>>();
  if (j.contains("seconds")) rep.seconds = j.at("seconds");
  return rep;
}

template <CoefficientField F>
json certificate_to_json(const ReductionCertificate<F>& cert) {
  json rows = json::array();
  for (const auto& m : cert.matches) rows.push_back({{"target", m.target}, {"source", m.source}});
  return json{{"schema", kSchemaVersion},
              {"level", cert.level},
              {"n", cert.n},
              {"field", field_to_json(cert.field)},
              {"hom", {{"source_vars", cert.level + 1}, {"target_vars", cert.level}, {"images", cert.hom_images}}},
              {"cofactor", cert.cofactor.to_string()},
              {"constant_term", cert.constant_term},
              {"matches", std::move(rows)},
              {"discarded", cert.discarded},
              {"source_hash", cert.source_hash},
              {"target_hash", cert.target_hash},
              {"premise", {{"level", cert.premise_level}, {"method", cert.premise_method}}}};
}

/// Reads a certificate; the cofactor is parsed into `lower_ring` (the level-(N-1) ring).
template <CoefficientField F>
ReductionCertificate<F> certificate_from_json(const json& j, const RingPtr<F>& lower_ring) {
  ReductionCertificate<F> cert;
  cert.level = j.at("level");
  cert.n = j.at("n");
  cert.field = field_from_json(j.at("field"));
  cert.hom_images = j.at("hom").at("images").get<std::vector<std::string>>();
  cert.cofactor = parse_poly(lower_ring, j.at("cofactor").get<std::string>());
  cert.constant_term = j.at("constant_term");
  for (const auto& r : j.at("matches")) cert.matches.push_back({r.at("target"), r.at("source")});
  cert.discarded = j.at("discarded").get<std::vector<std::string>>();
  cert.source_hash = j.at("source_hash");
  cert.target_hash = j.at("target_hash");
  cert.premise_level = j.at("premise").at("level");
  cert.premise_method = j.at("premise").at("method");
  return cert;
}

}  // namespace fermat
