#pragma once

// Containment verdicts for I_{N,n}^(3) versus I_{N,n}^2.
//
// Level N = 2 is decided directly: a Groebner basis of I^2 and the normal
// form of F_{2,n}. Every level N >= 3 is carried by a reduction certificate
// for the evaluation map pi: x_N -> 1, x_i -> x_i. If pi(I_N) lies in
// I_{N-1}, pi(F_N) = F_{N-1} * g with g(0) != 0, and F_{N-1} is not in
// I_{N-1}^r, then F_N is not in I_N^r. All three conditions are exact
// identities or a constant-term test, rechecked by verify_certificate().

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fermat/arrangement.hpp"
#include "fermat/groebner.hpp"
#include "fermat/symbolic.hpp"

namespace fermat {

enum class Verdict { containment, noncontainment, undetermined };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::containment: return "containment";
    case Verdict::noncontainment: return "noncontainment";
    case Verdict::undetermined: return "undetermined";
  }
  return {};
}

inline Verdict verdict_from_string(const std::string& s) {
  if (s == "containment") return Verdict::containment;
  if (s == "noncontainment") return Verdict::noncontainment;
  if (s == "undetermined") return Verdict::undetermined;
  throw ParseError("unknown verdict '" + s + "'");
}

/// Outcome of one I^(m) versus I^r question, with threshold bookkeeping.
struct ContainmentReport {
  unsigned N = 0, n = 0, m = 0, r = 0;
  Verdict verdict = Verdict::undetermined;
  unsigned codimension = 2;
  unsigned harbourne_threshold = 0;  // e*r - (e - 1)
  unsigned els_threshold = 0;        // N*r
  bool harbourne_counterexample = false;
  bool consistent_with_els = true;
  FieldSpec field;
  std::string grade;
  std::string method;
  std::optional<std::string> witness;  // nonzero normal form
  std::string witness_source;
  std::vector<std::string> basis;      // basis of I^r the witness was reduced against
  std::optional<bool> symbolic_member;
  std::vector<SymbolicRow> symbolic_rows;
  std::vector<std::string> notes;
  double seconds = 0.0;

  void set_thresholds() {
    harbourne_threshold = codimension * r - (codimension - 1);
    els_threshold = N * r;
    harbourne_counterexample = verdict == Verdict::noncontainment && m >= harbourne_threshold;
    consistent_with_els = !(verdict == Verdict::noncontainment && m >= els_threshold);
  }
};

namespace detail {

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace detail

/// Stable fingerprint of a configuration's defining data.
template <CoefficientField F>
std::string config_fingerprint(const Configuration<F>& cfg) {
  std::string canon = std::to_string(cfg.N) + "|" + std::to_string(cfg.n) + "|" + cfg.field().spec().label() + "|";
  for (const auto& P : cfg.primes) canon += P.tag.label() + ":" + P.forms[0].to_string() + "," + P.forms[1].to_string() + ";";
  canon += cfg.form.to_string();
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(detail::fnv1a64(canon)));
  return std::string("fnv1a64:") + buf;
}

/// Result of testing f against the ordinary power I^r.
template <CoefficientField F>
struct OrdinaryCheck {
  GroebnerBasis<F> basis;
  Poly<F> remainder;
  bool member() const { return remainder.is_zero(); }
};

/// Radical ideal I_{N,n} as the intersection of its primes.
template <CoefficientField F>
Ideal<F> configuration_ideal(const Configuration<F>& cfg, const ResourceCaps& caps = {}) {
  return symbolic_power_ideal(cfg, 1, caps);
}

template <CoefficientField F>
OrdinaryCheck<F> check_ordinary(const Configuration<F>& cfg, const Poly<F>& f, unsigned r, const ResourceCaps& caps = {}) {
  Ideal<F> I = configuration_ideal(cfg, caps);
  GroebnerBasis<F> gb = buchberger(power(I, r), caps);
  Poly<F> rem = normal_form(f, gb);
  return {std::move(gb), std::move(rem)};
}

/// Direct decision at N = 2: F_{2,n} in I^(3) by vanishing orders, F_{2,n} outside I^2 by normal form.
template <CoefficientField F>
ContainmentReport base_case(unsigned n, std::shared_ptr<const F> field, const ResourceCaps& caps = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  Configuration<F> cfg = build_config(2, n, field);
  ContainmentReport rep;
  rep.N = 2;
  rep.n = n;
  rep.m = 3;
  rep.r = 2;
  rep.field = field->spec();
  rep.grade = evidence_grade(rep.field);
  rep.method = "direct";
  rep.witness_source = "F";

  SymbolicReport sym = symbolic_report(cfg.form, cfg, 3);
  rep.symbolic_member = sym.member();
  rep.symbolic_rows = sym.rows;

  OrdinaryCheck<F> ord = check_ordinary(cfg, cfg.form, 2, caps);
  for (const auto& g : ord.basis.basis) rep.basis.push_back(g.to_string());
  if (!ord.member()) rep.witness = ord.remainder.to_string();
  rep.verdict = (!ord.member() && sym.member()) ? Verdict::noncontainment : Verdict::undetermined;
  rep.set_thresholds();
  rep.seconds = detail::seconds_since(t0);
  return rep;
}

struct MatchRow {
  std::string target;  // prime of level N - 1
  std::string source;  // prime of level N whose forms map into target
};

/// One reduction step from level N - 1 to level N.
template <CoefficientField F>
struct ReductionCertificate {
  unsigned level = 0;
  unsigned n = 0;
  FieldSpec field;
  std::vector<std::string> hom_images;  // image of x_0 .. x_N in the level-(N-1) ring
  Poly<F> cofactor;
  std::string constant_term;
  std::vector<MatchRow> matches;
  std::vector<std::string> discarded;   // level-N primes involving x_N
  std::string source_hash;              // level-N configuration
  std::string target_hash;              // level-(N-1) configuration
  unsigned premise_level = 0;
  std::string premise_method;
};

/// pi: x_N -> 1, x_i -> x_i from the level-N ring onto the level-(N-1) ring.
template <CoefficientField F>
RingHom<F> evaluation_hom(const RingPtr<F>& source, const RingPtr<F>& target) {
  if (source->nvars() != target->nvars() + 1) throw RingMismatch("evaluation map needs N + 1 -> N variables");
  std::vector<Poly<F>> images;
  for (std::size_t i = 0; i < target->nvars(); ++i) images.push_back(Poly<F>::variable(target, i));
  images.push_back(Poly<F>::one(target));
  return RingHom<F>(source, target, std::move(images));
}

/// prod_{i<N} (x_i^n - 1) in the level-(N-1) ring.
template <CoefficientField F>
Poly<F> expected_cofactor(const RingPtr<F>& ring, unsigned n) {
  Poly<F> g = Poly<F>::one(ring);
  for (std::size_t i = 0; i < ring->nvars(); ++i) g *= Poly<F>::variable(ring, i).pow(n) - Poly<F>::one(ring);
  return g;
}

struct CertificateCheck {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Rechecks every condition of a certificate against the two configurations.
template <CoefficientField F>
CertificateCheck verify_certificate(const ReductionCertificate<F>& cert, const Configuration<F>& upper,
                                    const Configuration<F>& lower) {
  CertificateCheck chk;
  auto fail = [&](std::string what) { chk.failures.push_back(std::move(what)); };
  if (upper.N != cert.level || lower.N + 1 != cert.level || upper.n != cert.n || lower.n != cert.n) {
    fail("configurations do not match certificate level");
    return chk;
  }
  if (config_fingerprint(upper) != cert.source_hash) fail("level-N configuration hash mismatch");
  if (config_fingerprint(lower) != cert.target_hash) fail("level-(N-1) configuration hash mismatch");

  RingHom<F> pi = evaluation_hom(upper.ring, lower.ring);
  std::vector<std::string> images;
  for (const auto& p : pi.images()) images.push_back(p.to_string());
  if (images != cert.hom_images) fail("homomorphism differs from x_N -> 1, x_i -> x_i");

  const Poly<F>& g = cert.cofactor;
  if (g.nvars() != lower.ring->nvars()) {
    fail("cofactor lives in the wrong ring");
    return chk;
  }
  if (!(pi(upper.form) == lower.form * g)) fail("pi(F_N) != F_{N-1} * g");
  const auto c0 = g.constant_term();
  if (lower.field().is_zero(c0)) fail("cofactor constant term is zero (g lies in the maximal ideal)");
  if (lower.field().format(c0) != cert.constant_term) fail("recorded constant term disagrees with cofactor");

  std::map<std::string, const LinearPrime<F>*> sources;
  for (const auto& P : upper.primes) sources[P.tag.label()] = &P;
  std::map<std::string, const MatchRow*> rows;
  for (const auto& row : cert.matches) rows[row.target] = &row;
  for (const auto& Q : lower.primes) {
    auto it = rows.find(Q.tag.label());
    if (it == rows.end()) {
      fail("no match for level-(N-1) prime " + Q.tag.label());
      continue;
    }
    auto src = sources.find(it->second->source);
    if (src == sources.end()) {
      fail("match source " + it->second->source + " is not a level-N prime");
      continue;
    }
    GroebnerBasis<F> qb = buchberger(Q.ideal());
    for (const auto& form : src->second->forms)
      if (!member(pi(form), qb)) fail("pi maps a form of " + src->second->tag.label() + " outside " + Q.tag.label());
  }
  return chk;
}

/// Builds the level-N certificate and checks it; throws CertificateError when unsound.
template <CoefficientField F>
ReductionCertificate<F> reduction_certificate(const Configuration<F>& upper, const Configuration<F>& lower) {
  ReductionCertificate<F> cert;
  cert.level = upper.N;
  cert.n = upper.n;
  cert.field = upper.field().spec();
  if (upper.N < 3) throw InvalidArgument("reduction steps start at N = 3");
  RingHom<F> pi = evaluation_hom(upper.ring, lower.ring);
  for (const auto& p : pi.images()) cert.hom_images.push_back(p.to_string());

  auto g = exact_divide(pi(upper.form), lower.form);
  if (!g) throw CertificateError("pi(F_N) is not divisible by F_{N-1} at N = " + std::to_string(upper.N));
  if (!(*g == expected_cofactor(lower.ring, upper.n)))
    throw CertificateError("cofactor differs from prod (x_i^n - 1) at N = " + std::to_string(upper.N));
  cert.cofactor = *g;
  cert.constant_term = lower.field().format(g->constant_term());

  std::map<PrimeTag, const LinearPrime<F>*> by_tag;
  for (const auto& P : upper.primes) by_tag[P.tag] = &P;
  for (const auto& Q : lower.primes) {
    auto it = by_tag.find(Q.tag);
    if (it == by_tag.end()) throw CertificateError("no level-N prime carries tag " + Q.tag.label());
    cert.matches.push_back({Q.tag.label(), it->second->tag.label()});
  }
  for (const auto& P : upper.primes)
    if (P.tag.max_index() == upper.N) cert.discarded.push_back(P.tag.label());

  cert.source_hash = config_fingerprint(upper);
  cert.target_hash = config_fingerprint(lower);
  cert.premise_level = upper.N - 1;
  cert.premise_method = upper.N - 1 == 2 ? "direct" : "by reduction";

  CertificateCheck chk = verify_certificate(cert, upper, lower);
  if (!chk.ok()) throw CertificateError("certificate at N = " + std::to_string(upper.N) + ": " + chk.failures.front());
  return cert;
}

template <CoefficientField F>
ReductionCertificate<F> reduction_certificate(unsigned N, unsigned n, std::shared_ptr<const F> field) {
  return reduction_certificate(build_config(N, n, field), build_config(N - 1, n, field));
}

template <CoefficientField F>
struct ChainResult {
  std::vector<ContainmentReport> reports;
  std::vector<ReductionCertificate<F>> certificates;
};

/// Extends a base-case report through the given certificates, level by level.
///
/// Each certificate is rechecked before its level is reported; the first
/// failure raises CertificateError and no higher level is reported. The
/// symbolic side is recomputed directly at every level.
template <CoefficientField F>
ChainResult<F> check_chain(const ContainmentReport& base, std::vector<ReductionCertificate<F>> certs,
                           std::shared_ptr<const F> field) {
  ChainResult<F> out;
  out.reports.push_back(base);
  Configuration<F> lower = build_config(base.N, base.n, field);
  for (auto& cert : certs) {
    const auto t0 = std::chrono::steady_clock::now();
    const ContainmentReport& premise = out.reports.back();
    if (cert.level != premise.N + 1) throw CertificateError("certificate levels are not consecutive");
    Configuration<F> upper = build_config(cert.level, base.n, field);
    CertificateCheck chk = verify_certificate(cert, upper, lower);
    if (!chk.ok())
      throw CertificateError("certificate at N = " + std::to_string(cert.level) + " rejected: " + chk.failures.front());

    ContainmentReport rep;
    rep.N = cert.level;
    rep.n = base.n;
    rep.m = 3;
    rep.r = 2;
    rep.field = field->spec();
    rep.grade = evidence_grade(rep.field);
    rep.method = "by reduction";
    SymbolicReport sym = symbolic_report(upper.form, upper, 3);
    rep.symbolic_member = sym.member();
    rep.symbolic_rows = sym.rows;
    rep.verdict = premise.verdict == Verdict::noncontainment && sym.member() ? Verdict::noncontainment
                                                                               : Verdict::undetermined;
    if (rep.N == 3) rep.notes.push_back("reduction step applied at N = 3, the boundary of the stated range N > 3");
    rep.notes.push_back("cofactor constant term " + cert.constant_term);
    rep.set_thresholds();
    rep.seconds = detail::seconds_since(t0);
    out.reports.push_back(std::move(rep));
    out.certificates.push_back(std::move(cert));
    lower = std::move(upper);
  }
  return out;
}

/// Base case at N = 2 followed by reduction steps up to n_max.
template <CoefficientField F>
ChainResult<F> verify_chain(unsigned n_max, unsigned n, std::shared_ptr<const F> field, const ResourceCaps& caps = {}) {
  if (n_max < 2) throw InvalidArgument("chain needs N_max >= 2");
  ContainmentReport base = base_case(n, field, caps);
  std::vector<ReductionCertificate<F>> certs;
  for (unsigned N = 3; N <= n_max; ++N) certs.push_back(reduction_certificate(N, n, field));
  return check_chain(base, std::move(certs), field);
}

/// Generic I^(m) in I^r test over explicit generators.
template <CoefficientField F>
ContainmentReport check_containment(const Configuration<F>& cfg, unsigned m, unsigned r, const ResourceCaps& caps = {}) {
  if (m == 0 || r == 0) throw InvalidArgument("check_containment needs m, r >= 1");
  const auto t0 = std::chrono::steady_clock::now();
  ContainmentReport rep;
  rep.N = cfg.N;
  rep.n = cfg.n;
  rep.m = m;
  rep.r = r;
  rep.field = cfg.field().spec();
  rep.grade = evidence_grade(rep.field);
  rep.method = "generator test";

  Ideal<F> sym = symbolic_power_ideal(cfg, m, caps);
  GroebnerBasis<F> gb = buchberger(power(configuration_ideal(cfg, caps), r), caps);
  rep.verdict = Verdict::containment;
  for (std::size_t k = 0; k < sym.gens.size(); ++k) {
    Poly<F> rem = normal_form(sym.gens[k], gb);
    if (rem.is_zero()) continue;
    rep.verdict = Verdict::noncontainment;
    rep.witness = rem.to_string();
    rep.witness_source = "generator " + std::to_string(k) + " of I^(" + std::to_string(m) + "): " + sym.gens[k].to_string();
    for (const auto& g : gb.basis) rep.basis.push_back(g.to_string());
    break;
  }
  rep.set_thresholds();
  if (rep.harbourne_counterexample) rep.notes.push_back("counterexample to the e = 2 bound m >= e*r - (e - 1)");
  if (m >= rep.els_threshold)
    rep.notes.push_back(rep.consistent_with_els ? "m >= N*r: containment as guaranteed"
                                                : "m >= N*r but noncontainment: inconsistent with the N*r bound");
  rep.seconds = detail::seconds_since(t0);
  return rep;
}

}  // namespace fermat
