#include <catch2/catch_amalgamated.hpp>

#include "fermat/certify.hpp"
#include "test_support.hpp"

using namespace fermat;
using fermat::testing::cyclo;
using fermat::testing::prime;

namespace {

template <CoefficientField F>
GroebnerBasis<F> basis_of(const ContainmentReport& rep, const RingPtr<F>& ring) {
  GroebnerBasis<F> G{ring, {}, true};
  for (const auto& g : rep.basis) G.basis.push_back(parse_poly(ring, g));
  return G;
}

}  // namespace

TEST_CASE("base case over Q(e)", "[certify]") {
  auto rep = base_case(3, cyclo(3));
  CHECK(rep.verdict == Verdict::noncontainment);
  CHECK(rep.method == "direct");
  CHECK(rep.grade == "proof-grade");
  REQUIRE(rep.symbolic_member.has_value());
  CHECK(*rep.symbolic_member);
  REQUIRE(rep.symbolic_rows.size() == 12);
  for (const auto& row : rep.symbolic_rows) CHECK(row.order == 3);
  REQUIRE(rep.witness.has_value());
  // Same remainder as an independent run over F_7 in another computer algebra system.
  CHECK(*rep.witness == "-2*x0^3*x1^3*x2^3 + 2*x1^6*x2^3 + 2*x0^3*x2^6 - 2*x1^3*x2^6");
  CHECK(rep.harbourne_threshold == 3);
  CHECK(rep.els_threshold == 4);
  CHECK(rep.harbourne_counterexample);
  CHECK(rep.consistent_with_els);
}

TEST_CASE("base case agrees across backends", "[certify]") {
  auto q = base_case(3, cyclo(3));
  for (std::uint64_t p : {7u, 13u, 31u}) {
    auto rep = base_case(3, prime(3, p));
    CHECK(rep.verdict == q.verdict);
    CHECK(rep.grade == "characteristic-p evidence");
    CHECK(*rep.symbolic_member);
  }
  CHECK(base_case(4, cyclo(4)).verdict == Verdict::noncontainment);
  CHECK(base_case(4, prime(4, 13)).verdict == Verdict::noncontainment);
  CHECK(base_case(5, cyclo(5)).verdict == Verdict::noncontainment);
  CHECK(base_case(5, prime(5, 11)).verdict == Verdict::noncontainment);
}

TEST_CASE("products of generators lie in I^2", "[certify]") {
  auto cfg = build_config(2, 3, cyclo(3));
  auto I = configuration_ideal(cfg);
  auto ord = check_ordinary(cfg, cfg.form, 2);
  CHECK_FALSE(ord.member());
  for (std::size_t a = 0; a < I.gens.size(); ++a)
    for (std::size_t b = a; b < I.gens.size(); ++b) CHECK(normal_form(I.gens[a] * I.gens[b], ord.basis).is_zero());
  CHECK(check_ordinary(cfg, cfg.form, 1).member());
}

TEST_CASE("witness replays against the recorded basis", "[certify]") {
  auto rep = base_case(3, cyclo(3));
  auto ring = PolyRing<CyclotomicField>::make(cyclo(3), 3);
  auto G = basis_of(rep, ring);
  auto w = parse_poly(ring, *rep.witness);
  CHECK_FALSE(w.is_zero());
  CHECK(normal_form(w, G) == w);
  CHECK(normal_form(fermat_form(ring, 2, 3), G) == w);
}

TEST_CASE("reduction certificate at N = 3", "[certify]") {
  auto upper = build_config(3, 3, cyclo(3));
  auto lower = build_config(2, 3, cyclo(3));
  auto cert = reduction_certificate(upper, lower);
  CHECK(cert.level == 3);
  CHECK(cert.cofactor == parse_poly(lower.ring, "(x0^3 - 1)*(x1^3 - 1)*(x2^3 - 1)"));
  CHECK(cert.constant_term == "-1");
  CHECK(cert.hom_images == std::vector<std::string>{"x0", "x1", "x2", "1"});
  REQUIRE(cert.matches.size() == 12);
  for (const auto& row : cert.matches) CHECK(row.target == row.source);
  CHECK(cert.discarded.size() == 30);  // 42 level-3 primes minus the 12 carried over
  CHECK(cert.premise_method == "direct");
  CHECK(verify_certificate(cert, upper, lower).ok());

  // Coordinate primes through x_3 map to the unit ideal: (x_i, 1).
  auto pi = evaluation_hom(upper.ring, lower.ring);
  for (const auto& P : upper.primes) {
    if (P.tag.kind != PrimeTag::Kind::C || P.tag.j != 3) continue;
    CHECK(buchberger(Ideal<CyclotomicField>(lower.ring, {pi(P.forms[0]), pi(P.forms[1])})).is_unit());
  }
}

TEST_CASE("cofactor constant term alternates in sign", "[certify]") {
  for (unsigned N : {3u, 4u, 5u}) {
    auto cert = reduction_certificate(N, 3, cyclo(3));
    CHECK(cert.constant_term == (N % 2 ? "-1" : "1"));
    auto ring = PolyRing<CyclotomicField>::make(cyclo(3), N);
    CHECK(cert.cofactor == expected_cofactor(ring, 3));
    CHECK(cert.matches.size() == expected_prime_count(N - 1, 3));
  }
  auto c = reduction_certificate(3, 5, prime(5, 11));
  CHECK(c.constant_term == "10");  // -1 in F_11
}

TEST_CASE("corrupted certificates are rejected", "[certify]") {
  auto upper = build_config(3, 3, cyclo(3));
  auto lower = build_config(2, 3, cyclo(3));
  auto good = reduction_certificate(upper, lower);
  auto base = base_case(3, cyclo(3));
  auto one = Poly<CyclotomicField>::one(lower.ring);

  auto zeroed = good;
  zeroed.cofactor = good.cofactor + one;  // constant term -1 + 1 = 0
  auto chk = verify_certificate(zeroed, upper, lower);
  CHECK_FALSE(chk.ok());
  CHECK(std::any_of(chk.failures.begin(), chk.failures.end(),
                    [](const std::string& s) { return s.find("constant term is zero") != std::string::npos; }));
  CHECK_THROWS_AS(check_chain(base, {zeroed}, cyclo(3)), CertificateError);

  auto relabeled = good;
  relabeled.constant_term = "1";
  CHECK_FALSE(verify_certificate(relabeled, upper, lower).ok());

  auto bad_match = good;
  bad_match.matches[0].source = "C(0,3)";
  CHECK_FALSE(verify_certificate(bad_match, upper, lower).ok());

  auto missing = good;
  missing.matches.pop_back();
  CHECK_FALSE(verify_certificate(missing, upper, lower).ok());

  auto bad_hash = good;
  bad_hash.source_hash = "fnv1a64:0000000000000000";
  CHECK_FALSE(verify_certificate(bad_hash, upper, lower).ok());

  auto bad_hom = good;
  bad_hom.hom_images.back() = "0";
  CHECK_FALSE(verify_certificate(bad_hom, upper, lower).ok());

  CHECK_NOTHROW(check_chain(base, {good}, cyclo(3)));
}

TEST_CASE("chain up to N = 5", "[certify]") {
  auto chain = verify_chain(5, 3, cyclo(3));
  REQUIRE(chain.reports.size() == 4);
  REQUIRE(chain.certificates.size() == 3);
  for (std::size_t k = 0; k < chain.reports.size(); ++k) {
    const auto& rep = chain.reports[k];
    CHECK(rep.N == k + 2);
    CHECK(rep.verdict == Verdict::noncontainment);
    CHECK(rep.method == (k == 0 ? "direct" : "by reduction"));
    CHECK(*rep.symbolic_member);
    for (const auto& row : rep.symbolic_rows) CHECK(row.order == 3);  // n = 3 on both kinds
  }
  const auto& notes = chain.reports[1].notes;
  CHECK(std::any_of(notes.begin(), notes.end(),
                    [](const std::string& s) { return s.find("N > 3") != std::string::npos; }));
  CHECK_THROWS_AS(verify_chain(1, 3, cyclo(3)), InvalidArgument);
}

TEST_CASE("chain symbolic rows carry n on coordinate primes", "[certify]") {
  auto chain = verify_chain(3, 4, prime(4, 13));
  REQUIRE(chain.reports.size() == 2);
  for (const auto& rep : chain.reports) {
    CHECK(rep.verdict == Verdict::noncontainment);
    for (const auto& row : rep.symbolic_rows) CHECK(row.order == (row.label[0] == 'J' ? 3u : 4u));
  }
}

TEST_CASE("containment checks and thresholds at (2,3)", "[certify]") {
  auto cfg = build_config(2, 3, cyclo(3));
  auto r32 = check_containment(cfg, 3, 2);
  CHECK(r32.verdict == Verdict::noncontainment);
  CHECK(r32.harbourne_threshold == 3);
  CHECK(r32.harbourne_counterexample);
  CHECK(r32.els_threshold == 4);
  CHECK(r32.consistent_with_els);
  REQUIRE(r32.witness.has_value());
  auto G = basis_of(r32, cfg.ring);
  auto w = parse_poly(cfg.ring, *r32.witness);
  CHECK(normal_form(w, G) == w);

  auto r42 = check_containment(cfg, 4, 2);
  CHECK(r42.verdict == Verdict::containment);
  CHECK(r42.consistent_with_els);
  CHECK_FALSE(r42.harbourne_counterexample);
  CHECK_FALSE(r42.witness.has_value());

  // The trivial direction I^r in I^(r) always holds; the tested direction I^(r) in I^r only for r = 1.
  CHECK(check_containment(cfg, 1, 1).verdict == Verdict::containment);
  for (unsigned r : {1u, 2u}) CHECK(contains(symbolic_power_ideal(cfg, r), power(configuration_ideal(cfg), r)));
  // Four of the eleven basis elements of I^(2) survive reduction modulo I^2, also over F_7 in another system.
  auto r22 = check_containment(cfg, 2, 2);
  CHECK(r22.verdict == Verdict::noncontainment);
  CHECK_FALSE(r22.harbourne_counterexample);  // m = 2 < er - (e - 1) = 3
  CHECK(check_containment(cfg, 2, 1).verdict == Verdict::containment);
  CHECK(check_containment(cfg, 1, 2).verdict == Verdict::noncontainment);
  CHECK_THROWS_AS(check_containment(cfg, 0, 2), InvalidArgument);
}

TEST_CASE("configuration fingerprints", "[certify]") {
  auto a = config_fingerprint(build_config(2, 3, cyclo(3)));
  CHECK(a == config_fingerprint(build_config(2, 3, cyclo(3))));
  CHECK(a.rfind("fnv1a64:", 0) == 0);
  CHECK(a.size() == 8 + 16);
  CHECK(a != config_fingerprint(build_config(2, 3, prime(3, 7))));
  CHECK(a != config_fingerprint(build_config(3, 3, cyclo(3))));
  CHECK(detail::fnv1a64("") == 0xcbf29ce484222325ull);  // published offset basis
  CHECK(detail::fnv1a64("a") == 0xaf63dc4c8601ec8cull);  // published test vector
}
