#pragma once

// Symbolic powers of I_{N,n}. Each listed prime P is generated by two
// independent linear forms, so P^m is P-primary and
//   I^(m) = intersection over P of P^m.
// Membership in P^m is read off as the order of vanishing along V(P):
// rewrite f in coordinates whose first two members are the forms of P and
// take the least (y_0, y_1)-degree of a term.

#include <algorithm>
#include <climits>
#include <string>
#include <vector>

#include "fermat/arrangement.hpp"
#include "fermat/groebner.hpp"
#include "fermat/linear.hpp"

namespace fermat {

inline constexpr unsigned kInfiniteOrder = UINT_MAX;

/// Invertible linear change y = A x with y_0, y_1 the forms of a prime.
template <CoefficientField F>
struct AdaptedCoordinates {
  RingPtr<F> ring;
  Matrix<F> forward;                // row k: y_k as coefficients of x
  Matrix<F> inverse;                // row i: x_i as coefficients of y
  std::vector<std::size_t> kept;    // standard coordinates completing the basis

  /// f(x) rewritten as a polynomial in y.
  Poly<F> to_adapted(const Poly<F>& f) const { return hom(inverse)(f); }
  /// g(y) rewritten as a polynomial in x.
  Poly<F> from_adapted(const Poly<F>& g) const { return hom(forward)(g); }

  RingHom<F> hom(const Matrix<F>& rows) const {
    std::vector<Poly<F>> images;
    for (const auto& r : rows) images.push_back(linear_form(ring, r));
    return RingHom<F>(ring, ring, std::move(images));
  }
};

/// Completes the two forms with the standard coordinates not used as pivots.
/// Pivots are taken from the right, so the leftmost coordinates are kept.
template <CoefficientField F>
AdaptedCoordinates<F> adapted_coords(const LinearPrime<F>& P) {
  const RingPtr<F>& ring = P.forms.at(0).ring();
  const F& k = ring->field();
  const std::size_t v = ring->nvars();
  Matrix<F> reversed;
  for (const auto& form : P.forms) {
    Row<F> row = linear_coefficients(form);
    std::reverse(row.begin(), row.end());
    reversed.push_back(std::move(row));
  }
  std::vector<std::size_t> piv;
  if (rref(k, reversed, &piv).size() != 2) throw InvalidArgument("prime " + P.tag.label() + " has dependent forms");
  std::vector<bool> is_pivot(v, false);
  for (std::size_t c : piv) is_pivot[v - 1 - c] = true;

  AdaptedCoordinates<F> ac;
  ac.ring = ring;
  for (const auto& form : P.forms) ac.forward.push_back(linear_coefficients(form));
  for (std::size_t c = 0; c < v; ++c) {
    if (is_pivot[c]) continue;
    Row<F> e(v, k.zero());
    e[c] = k.one();
    ac.forward.push_back(std::move(e));
    ac.kept.push_back(c);
  }
  auto inv = invert(k, ac.forward);
  if (!inv) throw InvalidArgument("adapted coordinates for " + P.tag.label() + " are singular");
  ac.inverse = *inv;
  return ac;
}

namespace detail {

inline unsigned transverse_degree(const Monomial& m) { return m[0] + m[1]; }

template <CoefficientField F>
Poly<F> mul_truncated(const Poly<F>& a, const Poly<F>& b, unsigned cap) {
  const F& k = a.field();
  std::vector<Term<F>> out;
  for (const auto& s : a.terms()) {
    const unsigned ws = transverse_degree(s.mono);
    if (ws >= cap) continue;
    for (const auto& t : b.terms())
      if (ws + transverse_degree(t.mono) < cap) out.push_back({s.mono * t.mono, k.mul(s.coeff, t.coeff)});
  }
  return Poly<F>::from_terms(a.ring(), std::move(out));
}

// f in adapted coordinates, keeping only terms of (y_0, y_1)-degree below cap.
template <CoefficientField F>
Poly<F> adapted_truncated(const Poly<F>& f, const AdaptedCoordinates<F>& ac, unsigned cap) {
  const RingPtr<F>& ring = ac.ring;
  const std::size_t v = ring->nvars();
  std::vector<Poly<F>> images;
  for (std::size_t i = 0; i < v; ++i) images.push_back(linear_form(ring, ac.inverse[i]));
  std::vector<std::vector<Poly<F>>> powers(v);
  auto power = [&](std::size_t i, unsigned e) -> const Poly<F>& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Poly<F>::one(ring));
    while (cache.size() <= e) cache.push_back(mul_truncated(cache.back(), images[i], cap));
    return cache[e];
  };
  std::vector<Term<F>> acc;
  for (const auto& t : f.terms()) {
    Poly<F> img = Poly<F>::constant(ring, t.coeff);
    for (std::size_t i = 0; i < v && !img.is_zero(); ++i)
      if (t.mono[i]) img = mul_truncated(img, power(i, t.mono[i]), cap);
    acc.insert(acc.end(), img.terms().begin(), img.terms().end());
  }
  return Poly<F>::from_terms(ring, std::move(acc));
}

}  // namespace detail

/// f lies in P^m.
template <CoefficientField F>
bool order_at_least(const Poly<F>& f, const AdaptedCoordinates<F>& ac, unsigned m) {
  if (m == 0 || f.is_zero()) return true;
  return detail::adapted_truncated(f, ac, m).is_zero();
}

/// Largest m with f in P^m; kInfiniteOrder for f = 0.
template <CoefficientField F>
unsigned vanishing_order(const Poly<F>& f, const AdaptedCoordinates<F>& ac) {
  if (f.is_zero()) return kInfiniteOrder;
  const unsigned full = f.total_degree() + 1;
  for (unsigned cap = std::min(4u, full);; cap = std::min(2 * cap, full)) {
    Poly<F> g = detail::adapted_truncated(f, ac, cap);
    if (!g.is_zero()) {
      unsigned best = kInfiniteOrder;
      for (const auto& t : g.terms()) best = std::min(best, detail::transverse_degree(t.mono));
      return best;
    }
    if (cap == full) throw Error("vanishing_order: full expansion of a nonzero polynomial vanished");
  }
}

template <CoefficientField F>
unsigned vanishing_order(const Poly<F>& f, const LinearPrime<F>& P) {
  return vanishing_order(f, adapted_coords(P));
}

struct SymbolicRow {
  std::string label;
  unsigned order = 0;
  unsigned threshold = 0;
  bool pass = false;
};

struct SymbolicReport {
  unsigned m = 0;
  std::vector<SymbolicRow> rows;
  bool member() const {
    return std::all_of(rows.begin(), rows.end(), [](const SymbolicRow& r) { return r.pass; });
  }
};

/// Per-prime vanishing orders against threshold m.
template <CoefficientField F>
SymbolicReport symbolic_report(const Poly<F>& f, const Configuration<F>& cfg, unsigned m) {
  SymbolicReport rep;
  rep.m = m;
  for (const auto& P : cfg.primes) {
    unsigned ord = vanishing_order(f, P);
    rep.rows.push_back({P.tag.label(), ord, m, ord >= m});
  }
  return rep;
}

/// f in I^(m): vanishing order at least m along every listed prime.
template <CoefficientField F>
bool in_symbolic_power(const Poly<F>& f, const Configuration<F>& cfg, unsigned m) {
  if (m == 0) throw InvalidArgument("symbolic power requires m >= 1");
  for (const auto& P : cfg.primes)
    if (!order_at_least(f, adapted_coords(P), m)) return false;
  return true;
}

/// Generators of I^(m) as the intersection of the P^m, accumulated in prime order.
/// Meant for N = 2 and small m; larger runs are bounded by caps.
template <CoefficientField F>
Ideal<F> symbolic_power_ideal(const Configuration<F>& cfg, unsigned m, const ResourceCaps& caps = {}) {
  if (m == 0) throw InvalidArgument("symbolic power requires m >= 1");
  if (cfg.primes.empty()) throw InvalidArgument("configuration has no primes");
  std::vector<Ideal<F>> powers;
  for (const auto& P : cfg.primes) powers.push_back(power(P.ideal(), m));
  return intersect_all(powers, caps);
}

}  // namespace fermat
