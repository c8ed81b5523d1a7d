#pragma once

// The Fermat (Ceva) arrangement in P^N: the form F_{N,n}, its hyperplane
// factors, and the codimension-two flats where three or more of them meet.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "fermat/error.hpp"
#include "fermat/groebner.hpp"
#include "fermat/linear.hpp"
#include "fermat/multipoly.hpp"

namespace fermat {

/// C(i,j) names (x_i, x_j); J(i,j,l,a,b) names (x_i - e^a x_j, x_i - e^b x_l).
struct PrimeTag {
  enum class Kind { C, J };
  Kind kind = Kind::C;
  unsigned i = 0, j = 0, l = 0, a = 0, b = 0;

  static PrimeTag coordinate(unsigned i, unsigned j) { return {Kind::C, i, j, 0, 0, 0}; }
  static PrimeTag fermat(unsigned i, unsigned j, unsigned l, unsigned a, unsigned b) { return {Kind::J, i, j, l, a, b}; }

  std::string label() const {
    if (kind == Kind::C) return "C(" + std::to_string(i) + "," + std::to_string(j) + ")";
    return "J(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(l) + "," + std::to_string(a) + "," +
           std::to_string(b) + ")";
  }
  unsigned max_index() const { return kind == Kind::C ? j : l; }

  friend auto operator<=>(const PrimeTag&, const PrimeTag&) = default;
};

template <CoefficientField F>
struct LinearPrime {
  PrimeTag tag;
  std::vector<Poly<F>> forms;  // exactly two independent linear forms

  Ideal<F> ideal() const { return Ideal<F>(forms.front().ring(), forms); }
};

template <CoefficientField F>
LinearPrime<F> make_prime(const RingPtr<F>& ring, const PrimeTag& tag) {
  const F& k = ring->field();
  auto x = [&](unsigned i) {
    if (i >= ring->nvars()) throw InvalidArgument("prime " + tag.label() + " outside the ring");
    return Poly<F>::variable(ring, i);
  };
  if (tag.kind == PrimeTag::Kind::C) {
    if (!(tag.i < tag.j)) throw InvalidArgument("C-prime needs i < j");
    return {tag, {x(tag.i), x(tag.j)}};
  }
  if (!(tag.i < tag.j && tag.j < tag.l)) throw InvalidArgument("J-prime needs i < j < l");
  return {tag,
          {x(tag.i) - x(tag.j).scaled(k.eps_pow(tag.a)), x(tag.i) - x(tag.l).scaled(k.eps_pow(tag.b))}};
}

template <CoefficientField F>
struct Configuration {
  unsigned N = 0;
  unsigned n = 0;
  RingPtr<F> ring;
  std::vector<LinearPrime<F>> primes;
  Poly<F> form;  // F_{N,n}

  const F& field() const { return ring->field(); }
};

/// prod_{i<j} (x_i^n - x_j^n) in a ring with at least N + 1 variables.
template <CoefficientField F>
Poly<F> fermat_form(const RingPtr<F>& ring, unsigned N, unsigned n) {
  Poly<F> f = Poly<F>::one(ring);
  for (unsigned i = 0; i <= N; ++i)
    for (unsigned j = i + 1; j <= N; ++j)
      f *= Poly<F>::variable(ring, i).pow(n) - Poly<F>::variable(ring, j).pow(n);
  return f;
}

/// The n * C(N+1, 2) forms x_i - e^a x_j, pairs in lexicographic order then a ascending.
template <CoefficientField F>
std::vector<Poly<F>> fermat_hyperplanes(const RingPtr<F>& ring, unsigned N, unsigned n) {
  const F& k = ring->field();
  std::vector<Poly<F>> out;
  for (unsigned i = 0; i <= N; ++i)
    for (unsigned j = i + 1; j <= N; ++j)
      for (unsigned a = 0; a < n; ++a)
        out.push_back(Poly<F>::variable(ring, i) - Poly<F>::variable(ring, j).scaled(k.eps_pow(a)));
  return out;
}

template <CoefficientField F>
std::vector<Poly<F>> hyperplane_factors(const Configuration<F>& cfg) {
  return fermat_hyperplanes(cfg.ring, cfg.N, cfg.n);
}

inline std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// C(N+1,3) * n^2 + C(N+1,2).
inline std::size_t expected_prime_count(unsigned N, unsigned n) {
  return binomial(N + 1, 3) * n * n + binomial(N + 1, 2);
}

/// Canonical key of the linear ideal spanned by `forms`.
template <CoefficientField F>
std::string linear_ideal_key(const std::vector<Poly<F>>& forms) {
  const F& k = forms.front().field();
  Matrix<F> m;
  for (const auto& f : forms) m.push_back(linear_coefficients(f));
  return span_key(k, rref(k, m));
}

/// All J-type then all C-type primes of I_{N,n}; labels of the same flat are merged onto the smallest.
template <CoefficientField F>
Configuration<F> build_config(unsigned N, unsigned n, std::shared_ptr<const F> field,
                              TermOrder order = TermOrder::grevlex()) {
  if (N < 2) throw InvalidArgument("configuration needs N >= 2");
  if (n < 3) throw InvalidArgument("configuration needs n >= 3");
  if (field->spec().n != n)
    throw InvalidField("field carries a root of order " + std::to_string(field->spec().n) + ", configuration needs " +
                       std::to_string(n));
  if (N + 1 > kMaxVars - 1) throw InvalidArgument("N too large for this build");
  Configuration<F> cfg;
  cfg.N = N;
  cfg.n = n;
  cfg.ring = PolyRing<F>::make(field, N + 1, order);
  std::set<std::string> seen;
  auto push = [&](const PrimeTag& tag) {
    auto p = make_prime(cfg.ring, tag);
    if (seen.insert(linear_ideal_key(p.forms)).second) cfg.primes.push_back(std::move(p));
  };
  for (unsigned i = 0; i <= N; ++i)
    for (unsigned j = i + 1; j <= N; ++j)
      for (unsigned l = j + 1; l <= N; ++l)
        for (unsigned a = 0; a < n; ++a)
          for (unsigned b = 0; b < n; ++b) push(PrimeTag::fermat(i, j, l, a, b));
  for (unsigned i = 0; i <= N; ++i)
    for (unsigned j = i + 1; j <= N; ++j) push(PrimeTag::coordinate(i, j));
  cfg.form = fermat_form(cfg.ring, N, n);
  return cfg;
}

/// Hyperplane factors vanishing on the flat of P.
template <CoefficientField F>
std::vector<std::size_t> vanishing_factors(const LinearPrime<F>& P, const std::vector<Poly<F>>& factors) {
  GroebnerBasis<F> gb = buchberger(P.ideal());
  std::vector<std::size_t> out;
  for (std::size_t u = 0; u < factors.size(); ++u)
    if (normal_form(factors[u], gb).is_zero()) out.push_back(u);
  return out;
}

struct PrimeFactorCount {
  std::string label;
  std::size_t count = 0;
  std::size_t expected = 0;  // 3 on J-primes, n on C-primes
};

struct Lemma1Report {
  unsigned N = 0, n = 0;
  std::size_t factors = 0;
  std::size_t primes_listed = 0;
  std::size_t pairs_examined = 0;
  std::size_t flats_found = 0;  // distinct flats met by >= 3 factors
  std::vector<PrimeFactorCount> per_prime;
  bool inclusion_ok = true;
  bool counts_exact = true;
  bool completeness_ok = true;
  std::vector<std::string> mismatches;

  bool ok() const { return inclusion_ok && completeness_ok; }
};

/// Both directions of the flat description of I_{N,n}.
///
/// Inclusion: each listed prime contains at least three hyperplane factors.
/// Completeness: every flat spanned by two factors and containing at least
/// three of them is one of the listed primes, and vice versa.
template <CoefficientField F>
Lemma1Report verify_lemma1(const Configuration<F>& cfg) {
  const F& k = cfg.field();
  const auto factors = hyperplane_factors(cfg);
  Lemma1Report rep;
  rep.N = cfg.N;
  rep.n = cfg.n;
  rep.factors = factors.size();
  rep.primes_listed = cfg.primes.size();

  std::map<std::string, std::string> listed;
  for (const auto& P : cfg.primes) {
    std::size_t count = vanishing_factors(P, factors).size();
    std::size_t expected = P.tag.kind == PrimeTag::Kind::J ? 3 : cfg.n;
    rep.per_prime.push_back({P.tag.label(), count, expected});
    if (count < 3) {
      rep.inclusion_ok = false;
      rep.mismatches.push_back("prime " + P.tag.label() + " contains only " + std::to_string(count) + " factors");
    }
    if (count != expected) rep.counts_exact = false;
    auto [it, fresh] = listed.emplace(linear_ideal_key(P.forms), P.tag.label());
    if (!fresh) {
      rep.completeness_ok = false;
      rep.mismatches.push_back("primes " + it->second + " and " + P.tag.label() + " define the same flat");
    }
  }

  std::vector<Row<F>> rows;
  for (const auto& f : factors) rows.push_back(linear_coefficients(f));
  std::set<std::string> visited;
  std::set<std::string> triple_flats;
  for (std::size_t u = 0; u < rows.size(); ++u) {
    for (std::size_t v = u + 1; v < rows.size(); ++v) {
      ++rep.pairs_examined;
      std::vector<std::size_t> piv;
      Matrix<F> ech = rref(k, Matrix<F>{rows[u], rows[v]}, &piv);
      if (ech.size() < 2) continue;  // proportional forms do not cut a codimension-two flat
      std::string key = span_key(k, ech);
      if (!visited.insert(key).second) continue;
      std::size_t count = 0;
      for (const auto& r : rows)
        if (is_zero_row(k, reduce_against(k, r, ech, piv))) ++count;
      if (count < 3) continue;
      triple_flats.insert(key);
      if (!listed.count(key)) {
        rep.completeness_ok = false;
        rep.mismatches.push_back("flat of " + factors[u].to_string() + ", " + factors[v].to_string() + " meets " +
                                 std::to_string(count) + " factors but is not listed");
      }
    }
  }
  rep.flats_found = triple_flats.size();
  for (const auto& [key, label] : listed) {
    if (!triple_flats.count(key)) {
      rep.completeness_ok = false;
      rep.mismatches.push_back("listed prime " + label + " is not a flat of three or more factors");
    }
  }
  return rep;
}

}  // namespace fermat
