// fermat: command-line front end for the Fermat configuration checks.
//
// Exit codes:
//   0  run completed (and matched --expect when given)
//   1  verdict differs from --expect
//   2  usage error or unusable field
//   3  resource cap exceeded
//   4  verification failure (flat mismatch, rejected certificate)

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fermat/fermat.hpp"
#include "fermat/report_json.hpp"

namespace {

using namespace fermat;

enum ExitCode { kOk = 0, kExpectationFailed = 1, kUsage = 2, kResource = 3, kVerification = 4 };

struct RunSpec {
  std::string command;
  unsigned N = 2;
  unsigned n = 3;
  std::string field = "cyclotomic";
  unsigned m = 3;
  unsigned r = 2;
  unsigned n_max = 3;
  std::string order = "grevlex";
  ResourceCaps caps = ResourceCaps::from_env();
  std::string output;
  std::string input;
  std::string format = "text";
  bool no_timing = false;
  std::string expect;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

FieldSpec parse_field(const std::string& text, unsigned n) {
  FieldSpec spec;
  if (text == "cyclotomic") {
    spec = FieldSpec::cyclotomic(n);
  } else {
    std::string digits = text.starts_with("prime:") ? text.substr(6) : text;
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw UsageError("--field must be 'cyclotomic', 'prime:<p>' or '<p>'");
    spec = FieldSpec::prime(n, std::stoull(digits));
  }
  try {
    validate(spec);
  } catch (const InvalidField& e) {
    throw UsageError(std::string("unusable field: ") + e.what());
  }
  return spec;
}

// Text and JSON renderings share one pass over the result.
struct Output {
  json doc;
  std::ostringstream text;
  std::string verdict;
};

void emit(const RunSpec& spec, Output& out) {
  out.doc["schema"] = kSchemaVersion;
  out.doc["command"] = spec.command;
  if (!out.verdict.empty()) out.doc["verdict"] = out.verdict;
  std::string body = spec.format == "json" ? out.doc.dump(2) + "\n" : out.text.str();
  if (spec.output.empty()) {
    std::cout << body;
  } else {
    std::ofstream f(spec.output);
    if (!f) throw UsageError("cannot write " + spec.output);
    f << body;
  }
}

void text_report(std::ostream& os, const ContainmentReport& rep) {
  os << "N=" << rep.N << " n=" << rep.n << " (m,r)=(" << rep.m << "," << rep.r << ") field=" << rep.field.label()
     << " [" << rep.grade << "] method=" << rep.method << "\n";
  os << "  verdict: " << to_string(rep.verdict) << "\n";
  if (rep.symbolic_member) os << "  F in I^(" << rep.m << "): " << (*rep.symbolic_member ? "yes" : "no") << "\n";
  os << "  e*r-(e-1) = " << rep.harbourne_threshold << ", N*r = " << rep.els_threshold
     << (rep.harbourne_counterexample ? "  [counterexample to the e = 2 bound]" : "") << "\n";
  if (rep.witness) os << "  witness (" << rep.witness_source << "): " << *rep.witness << "\n";
  for (const auto& note : rep.notes) os << "  note: " << note << "\n";
}

template <CoefficientField F>
void run_build_config(const RunSpec& spec, std::shared_ptr<const F> field, Output& out) {
  auto cfg = build_config(spec.N, spec.n, field, TermOrder::from_name(spec.order));
  out.doc["result"] = config_to_json(cfg);
  std::size_t j_count = 0;
  for (const auto& P : cfg.primes) j_count += P.tag.kind == PrimeTag::Kind::J;
  out.text << "configuration N=" << cfg.N << " n=" << cfg.n << " field=" << field->spec().label() << "\n"
           << "  primes: " << cfg.primes.size() << " (" << j_count << " J-type, " << cfg.primes.size() - j_count
           << " C-type)\n"
           << "  deg F: " << cfg.form.total_degree() << ", terms: " << cfg.form.size() << "\n";
  for (const auto& P : cfg.primes)
    out.text << "  " << P.tag.label() << ": (" << P.forms[0].to_string() << ", " << P.forms[1].to_string() << ")\n";
}

template <CoefficientField F>
void run_verify_lemma1(const RunSpec& spec, std::shared_ptr<const F> field, Output& out) {
  auto cfg = build_config(spec.N, spec.n, field, TermOrder::from_name(spec.order));
  Lemma1Report rep = verify_lemma1(cfg);
  out.doc["result"] = lemma1_to_json(rep);
  out.verdict = rep.ok() ? "pass" : "fail";
  out.text << "flat check N=" << rep.N << " n=" << rep.n << ": " << out.verdict << "\n"
           << "  factors " << rep.factors << ", pairs " << rep.pairs_examined << ", flats found " << rep.flats_found
           << ", primes listed " << rep.primes_listed << "\n";
  for (const auto& r : rep.per_prime) out.text << "  " << r.label << ": " << r.count << " factors\n";
  for (const auto& m : rep.mismatches) out.text << "  mismatch: " << m << "\n";
  if (!rep.ok()) throw VerificationFailure("flat enumeration disagrees with the listed primes");
}

template <CoefficientField F>
void run_check_symbolic(const RunSpec& spec, std::shared_ptr<const F> field, Output& out) {
  auto cfg = build_config(spec.N, spec.n, field, TermOrder::from_name(spec.order));
  SymbolicReport rep = symbolic_report(cfg.form, cfg, spec.m);
  out.verdict = rep.member() ? "member" : "nonmember";
  out.doc["result"] = {{"N", spec.N}, {"n", spec.n}, {"m", spec.m}, {"field", field_to_json(field->spec())},
                       {"rows", symbolic_rows_to_json(rep.rows)}};
  out.text << "F in I^(" << spec.m << ") for N=" << spec.N << " n=" << spec.n << ": "
           << (rep.member() ? "pass" : "fail") << " (" << rep.rows.size() << " primes)\n";
  for (const auto& r : rep.rows)
    out.text << "  " << r.label << "  order " << r.order << "  threshold " << r.threshold << "  "
             << (r.pass ? "pass" : "fail") << "\n";
}

template <CoefficientField F>
void run_check_ordinary(const RunSpec& spec, std::shared_ptr<const F> field, Output& out) {
  const auto t0 = std::chrono::steady_clock::now();
  auto cfg = build_config(spec.N, spec.n, field, TermOrder::from_name(spec.order));
  OrdinaryCheck<F> chk = check_ordinary(cfg, cfg.form, spec.r, spec.caps);
  out.verdict = chk.member() ? "member" : "nonmember";
  json result{{"N", spec.N},
              {"n", spec.n},
              {"r", spec.r},
              {"field", field_to_json(field->spec())},
              {"grade", evidence_grade(field->spec())},
              {"order", chk.basis.order().name()},
              {"basis_size", chk.basis.basis.size()},
              {"remainder", chk.remainder.to_string()}};
  if (!spec.no_timing) result["seconds"] = detail::seconds_since(t0);
  out.doc["result"] = result;
  out.text << "F in I^" << spec.r << " for N=" << spec.N << " n=" << spec.n << " over " << field->spec().label()
           << ": " << (chk.member() ? "yes" : "no") << " [" << evidence_grade(field->spec()) << "]\n"
           << "  basis of I^" << spec.r << ": " << chk.basis.basis.size() << " elements (" << chk.basis.order().name()
           << ")\n"
           << "  normal form: " << chk.remainder.to_string() << "\n";
}

template <CoefficientField F>
void run_check_containment(const RunSpec& spec, std::shared_ptr<const F> field, Output& out) {
  auto cfg = build_config(spec.N, spec.n, field, TermOrder::from_name(spec.order));
  ContainmentReport rep = check_containment(cfg, spec.m, spec.r, spec.caps);
  out.verdict = to_string(rep.verdict);
  out.doc["result"] = report_to_json(rep, !spec.no_timing);
  text_report(out.text, rep);
}

template <CoefficientField F>
void run_certify_chain(const RunSpec& spec, std::shared_ptr<const F> field, Output& out) {
  ChainResult<F> chain = verify_chain(spec.n_max, spec.n, field, spec.caps);
  json reports = json::array(), certs = json::array();
  bool all_non = true;
  for (const auto& rep : chain.reports) {
    reports.push_back(report_to_json(rep, !spec.no_timing));
    all_non = all_non && rep.verdict == Verdict::noncontainment;
    text_report(out.text, rep);
  }
  for (const auto& cert : chain.certificates) {
    certs.push_back(certificate_to_json(cert));
    out.text << "certificate N=" << cert.level << ": g = " << cert.cofactor.to_string()
             << ", g(0) = " << cert.constant_term << ", " << cert.matches.size() << " matched primes, "
             << cert.discarded.size() << " discarded\n";
  }
  out.verdict = all_non ? "noncontainment" : "undetermined";
  out.doc["result"] = {{"N_max", spec.n_max}, {"n", spec.n}, {"field", field_to_json(field->spec())},
                       {"reports", reports}, {"certificates", certs}};
  out.text << "chain verdict: " << out.verdict << " for 2 <= N <= " << spec.n_max << "\n";
}

template <CoefficientField F>
void run_verify_certificate(const RunSpec& spec, std::shared_ptr<const F> field, Output& out) {
  std::ifstream in(spec.input);
  if (!in) throw UsageError("cannot read " + spec.input);
  json doc = json::parse(in);
  json list = json::array();
  if (doc.contains("result") && doc["result"].contains("certificates"))
    list = doc["result"]["certificates"];
  else if (doc.is_array())
    list = doc;
  else
    list.push_back(doc);
  json rows = json::array();
  bool all_ok = true;
  for (const auto& j : list) {
    unsigned level = j.at("level");
    auto upper = build_config(level, spec.n, field);
    auto lower = build_config(level - 1, spec.n, field);
    auto cert = certificate_from_json(j, lower.ring);
    CertificateCheck chk = verify_certificate(cert, upper, lower);
    all_ok = all_ok && chk.ok();
    rows.push_back({{"level", level}, {"ok", chk.ok()}, {"failures", chk.failures}});
    out.text << "certificate N=" << level << ": " << (chk.ok() ? "accepted" : "rejected") << "\n";
    for (const auto& f : chk.failures) out.text << "  " << f << "\n";
  }
  out.verdict = all_ok ? "accepted" : "rejected";
  out.doc["result"] = {{"certificates", rows}};
  if (!all_ok) throw VerificationFailure("certificate rejected");
}

void add_common(CLI::App* sub, RunSpec& spec, bool needs_N) {
  if (needs_N) sub->add_option("--N", spec.N, "projective dimension N")->check(CLI::Range(2u, 14u));
  sub->add_option("--n", spec.n, "Fermat exponent n")->check(CLI::Range(3u, 64u));
  sub->add_option("--field", spec.field, "'cyclotomic', 'prime:<p>' or '<p>'");
  sub->add_option("--order", spec.order, "term order: grevlex, lex")->check(CLI::IsMember({"grevlex", "lex"}));
  sub->add_option("--max-degree", spec.caps.max_degree, "Groebner degree cap");
  sub->add_option("--max-basis", spec.caps.max_basis, "Groebner basis size cap");
  sub->add_option("--time-budget", spec.caps.time_budget_s, "seconds per Groebner computation");
  sub->add_option("--output", spec.output, "write the report here instead of stdout");
  sub->add_option("--format", spec.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  sub->add_flag("--no-timing", spec.no_timing, "omit timings from reports");
  sub->add_option("--expect", spec.expect, "expected verdict; mismatch exits with 1");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symbolic versus ordinary powers of Fermat configuration ideals"};
  app.require_subcommand(1);
  RunSpec spec;

  auto* build = app.add_subcommand("build-config", "list the primes of I_{N,n} and the form F_{N,n}");
  add_common(build, spec, true);
  auto* lemma = app.add_subcommand("verify-lemma1", "check the primes against a brute-force flat enumeration");
  add_common(lemma, spec, true);
  auto* sym = app.add_subcommand("check-symbolic", "F_{N,n} in I^(m) by vanishing orders");
  add_common(sym, spec, true);
  sym->add_option("--m", spec.m, "symbolic power")->check(CLI::PositiveNumber);
  auto* ord = app.add_subcommand("check-ordinary", "F_{N,n} in I^r by Groebner normal form");
  add_common(ord, spec, true);
  ord->add_option("--r", spec.r, "ordinary power")->check(CLI::PositiveNumber);
  auto* cont = app.add_subcommand("check-containment", "I^(m) in I^r on explicit generators");
  add_common(cont, spec, true);
  cont->add_option("--m", spec.m, "symbolic power")->check(CLI::PositiveNumber);
  cont->add_option("--r", spec.r, "ordinary power")->check(CLI::PositiveNumber);
  auto* chain = app.add_subcommand("certify-chain", "direct base case plus reduction certificates up to N-max");
  add_common(chain, spec, false);
  chain->add_option("--N-max", spec.n_max, "highest level")->check(CLI::Range(2u, 14u));
  auto* vcert = app.add_subcommand("verify-certificate", "recheck certificates from a JSON file");
  add_common(vcert, spec, false);
  vcert->add_option("--input", spec.input, "certificate JSON or certify-chain output")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  spec.command = app.get_subcommands().front()->get_name();

  Output out;
  try {
    if (spec.caps.max_degree == 0 || spec.caps.max_basis == 0 || spec.caps.time_budget_s <= 0)
      throw UsageError("resource caps must be positive");
    FieldSpec field_spec = parse_field(spec.field, spec.n);
    with_field(field_spec, [&](auto field) {
      if (spec.command == "build-config") run_build_config(spec, field, out);
      else if (spec.command == "verify-lemma1") run_verify_lemma1(spec, field, out);
      else if (spec.command == "check-symbolic") run_check_symbolic(spec, field, out);
      else if (spec.command == "check-ordinary") run_check_ordinary(spec, field, out);
      else if (spec.command == "check-containment") run_check_containment(spec, field, out);
      else if (spec.command == "certify-chain") run_certify_chain(spec, field, out);
      else if (spec.command == "verify-certificate") run_verify_certificate(spec, field, out);
    });
    emit(spec, out);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidField& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceExceeded& e) {
    std::cerr << "resource cap exceeded: " << e.what() << "\n";
    return kResource;
  } catch (const VerificationFailure& e) {
    emit(spec, out);
    std::cerr << "verification failed: " << e.what() << "\n";
    return kVerification;
  } catch (const CertificateError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kVerification;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kVerification;
  }

  if (!spec.expect.empty() && spec.expect != out.verdict) {
    std::cerr << "expected verdict '" << spec.expect << "', got '" << out.verdict << "'\n";
    return kExpectationFailed;
  }
  return kOk;
}
