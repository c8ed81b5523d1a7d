#pragma once

// Buchberger's algorithm and the ideal operations built on it.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fermat/error.hpp"
#include "fermat/multipoly.hpp"

namespace fermat {

/// Guards for Groebner computations. Hitting one raises ResourceExceeded.
struct ResourceCaps {
  unsigned max_degree = 64;
  std::size_t max_basis = 4000;
  double time_budget_s = 900.0;

  /// Defaults overridden by FERMAT_MAX_DEGREE, FERMAT_MAX_BASIS and FERMAT_TIME_BUDGET.
  static ResourceCaps from_env() {
    ResourceCaps caps;
    if (const char* v = std::getenv("FERMAT_MAX_DEGREE")) caps.max_degree = static_cast<unsigned>(std::stoul(v));
    if (const char* v = std::getenv("FERMAT_MAX_BASIS")) caps.max_basis = std::stoul(v);
    if (const char* v = std::getenv("FERMAT_TIME_BUDGET")) caps.time_budget_s = std::stod(v);
    return caps;
  }
};

template <CoefficientField F>
struct Ideal {
  RingPtr<F> ring;
  std::vector<Poly<F>> gens;

  Ideal() = default;
  Ideal(RingPtr<F> r, std::vector<Poly<F>> g) : ring(std::move(r)) {
    for (auto& p : g) {
      if (p.nvars() != ring->nvars()) throw RingMismatch("generator outside ideal's ring");
      if (!p.is_zero()) gens.push_back(p.in_ring(ring));
    }
  }
};

template <CoefficientField F>
struct GroebnerBasis {
  RingPtr<F> ring;
  std::vector<Poly<F>> basis;
  bool reduced = false;

  const TermOrder& order() const { return ring->order(); }
  bool is_unit() const { return basis.size() == 1 && basis[0].is_constant() && !basis[0].is_zero(); }
};

/// Counters from the last Buchberger run, useful for reports.
struct BuchbergerStats {
  std::size_t pairs_created = 0;
  std::size_t pairs_reduced = 0;
  std::size_t product_criterion = 0;
  std::size_t chain_criterion = 0;
  std::size_t zero_reductions = 0;
};

namespace detail {

template <CoefficientField F>
const Poly<F>* find_reducer(const Monomial& m, const std::vector<Poly<F>>& basis) {
  for (const auto& g : basis)
    if (divides(g.lead_monomial(), m)) return &g;
  return nullptr;
}

// Full reduction of f by a list of monic polynomials in f's ring.
template <CoefficientField F>
Poly<F> reduce_full(const Poly<F>& f, const std::vector<Poly<F>>& basis) {
  using TermT = Term<F>;
  const F& k = f.field();
  const TermOrder& ord = f.ring()->order();
  std::vector<TermT> p = f.terms();
  std::vector<TermT> rem;
  std::vector<TermT> next;
  std::size_t start = 0;
  while (start < p.size()) {
    const Poly<F>* g = find_reducer(p[start].mono, basis);
    if (!g) {
      rem.push_back(std::move(p[start]));
      ++start;
      continue;
    }
    const Monomial q = p[start].mono / g->lead_monomial();
    const auto c = k.neg(p[start].coeff);
    const auto& gt = g->terms();
    next.clear();
    next.reserve(p.size() - start + gt.size());
    std::size_t i = start + 1, j = 1;
    while (i < p.size() || j < gt.size()) {
      if (j == gt.size()) {
        next.push_back(std::move(p[i++]));
        continue;
      }
      Monomial gm = gt[j].mono * q;
      auto cmp = i == p.size() ? std::strong_ordering::less : ord.compare(p[i].mono, gm);
      if (cmp > 0) {
        next.push_back(std::move(p[i++]));
      } else if (cmp < 0) {
        next.push_back({gm, k.mul(c, gt[j].coeff)});
        ++j;
      } else {
        auto s = k.add(p[i].coeff, k.mul(c, gt[j].coeff));
        if (!k.is_zero(s)) next.push_back({gm, std::move(s)});
        ++i;
        ++j;
      }
    }
    std::swap(p, next);
    start = 0;
  }
  return Poly<F>::from_sorted(f.ring(), std::move(rem));
}

}  // namespace detail

/// S-polynomial of two nonzero polynomials in a common ring.
template <CoefficientField F>
Poly<F> s_polynomial(const Poly<F>& f, const Poly<F>& g) {
  const F& k = f.field();
  const Monomial l = lcm(f.lead_monomial(), g.lead_monomial());
  return f.mul_term(k.inv(f.lead_coeff()), l / f.lead_monomial()) -
         g.mul_term(k.inv(g.lead_coeff()), l / g.lead_monomial());
}

/// Remainder of f modulo G: no term is divisible by a leading monomial of G.
template <CoefficientField F>
Poly<F> normal_form(const Poly<F>& f, const GroebnerBasis<F>& G) {
  if (f.nvars() != G.ring->nvars()) throw RingMismatch("normal_form arity mismatch");
  return detail::reduce_full(f.in_ring(G.ring), G.basis);
}

namespace detail {

template <CoefficientField F>
std::vector<Poly<F>> interreduce(std::vector<Poly<F>> gens) {
  // Minimalize: drop any element whose leading monomial is divisible by another's.
  std::vector<Poly<F>> minimal;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < gens.size() && !redundant; ++j) {
      if (i == j || !divides(gens[j].lead_monomial(), gens[i].lead_monomial())) continue;
      redundant = !(gens[j].lead_monomial() == gens[i].lead_monomial()) || j < i;
    }
    if (!redundant) minimal.push_back(gens[i].monic());
  }
  std::vector<Poly<F>> reduced;
  reduced.reserve(minimal.size());
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Poly<F>> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(j < i ? reduced[j] : minimal[j]);
    const auto& g = minimal[i];
    Poly<F> tail = g - Poly<F>::term(g.ring(), g.lead_coeff(), g.lead_monomial());
    reduced.push_back(Poly<F>::term(g.ring(), g.lead_coeff(), g.lead_monomial()) + reduce_full(tail, others));
  }
  const TermOrder& ord = reduced.empty() ? TermOrder::grevlex() : reduced[0].ring()->order();
  std::sort(reduced.begin(), reduced.end(),
            [&](const Poly<F>& a, const Poly<F>& b) { return ord.less(a.lead_monomial(), b.lead_monomial()); });
  return reduced;
}

}  // namespace detail

/// Reduced Groebner basis of I under the order of I's ring.
///
/// Pairs are selected by the normal strategy (smallest lcm first, ties by
/// index pair). Buchberger's product and chain criteria discard pairs.
template <CoefficientField F>
GroebnerBasis<F> buchberger(const Ideal<F>& I, const ResourceCaps& caps = {}, BuchbergerStats* stats = nullptr) {
  using Clock = std::chrono::steady_clock;
  const auto started = Clock::now();
  const RingPtr<F>& ring = I.ring;
  const TermOrder& ord = ring->order();
  BuchbergerStats local;
  BuchbergerStats& st = stats ? *stats : local;

  struct Pair {
    std::size_t i, j;
    Monomial lcm;
  };
  auto pair_less = [&ord](const Pair& a, const Pair& b) {
    if (auto c = ord.compare(a.lcm, b.lcm); c != 0) return c < 0;
    return std::pair(a.i, a.j) < std::pair(b.i, b.j);
  };
  std::set<Pair, decltype(pair_less)> queue(pair_less);
  std::vector<Poly<F>> G;
  std::vector<std::vector<char>> pending;  // pending[j][i] for i < j

  auto check_budget = [&] {
    double elapsed = std::chrono::duration<double>(Clock::now() - started).count();
    if (elapsed > caps.time_budget_s) throw ResourceExceeded("Groebner time budget exhausted");
  };

  auto add = [&](Poly<F> h) {
    h = h.monic();
    if (h.total_degree() > caps.max_degree)
      throw ResourceExceeded("Groebner basis degree " + std::to_string(h.total_degree()) + " exceeds cap " +
                             std::to_string(caps.max_degree));
    if (G.size() + 1 > caps.max_basis)
      throw ResourceExceeded("Groebner basis size exceeds cap " + std::to_string(caps.max_basis));
    const std::size_t n = G.size();
    G.push_back(std::move(h));
    pending.emplace_back(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      ++st.pairs_created;
      if (coprime(G[i].lead_monomial(), G[n].lead_monomial())) {
        ++st.product_criterion;
        continue;
      }
      queue.insert(Pair{i, n, lcm(G[i].lead_monomial(), G[n].lead_monomial())});
      pending[n][i] = 1;
    }
  };
  auto is_pending = [&](std::size_t a, std::size_t b) { return a < b ? pending[b][a] : pending[a][b]; };

  for (const auto& f : I.gens) {
    Poly<F> h = detail::reduce_full(f.in_ring(ring), G);
    if (!h.is_zero()) add(std::move(h));
  }

  while (!queue.empty()) {
    check_budget();
    Pair pr = *queue.begin();
    queue.erase(queue.begin());
    pending[pr.j][pr.i] = 0;

    bool chain = false;
    for (std::size_t k = 0; k < G.size() && !chain; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (!divides(G[k].lead_monomial(), pr.lcm)) continue;
      chain = !is_pending(pr.i, k) && !is_pending(pr.j, k);
    }
    if (chain) {
      ++st.chain_criterion;
      continue;
    }
    ++st.pairs_reduced;
    Poly<F> h = detail::reduce_full(s_polynomial(G[pr.i], G[pr.j]), G);
    if (h.is_zero()) {
      ++st.zero_reductions;
      continue;
    }
    add(std::move(h));
  }

  GroebnerBasis<F> out{ring, detail::interreduce(std::move(G)), true};
  return out;
}

/// Basis of I under an explicit order.
template <CoefficientField F>
GroebnerBasis<F> buchberger(const Ideal<F>& I, TermOrder order, const ResourceCaps& caps = {}) {
  auto ring = I.ring->with_order(order);
  return buchberger(Ideal<F>(ring, I.gens), caps);
}

/// Every S-polynomial of the basis reduces to zero against it.
template <CoefficientField F>
bool is_groebner_basis(const GroebnerBasis<F>& G) {
  for (std::size_t i = 0; i < G.basis.size(); ++i)
    for (std::size_t j = i + 1; j < G.basis.size(); ++j)
      if (!normal_form(s_polynomial(G.basis[i], G.basis[j]), G).is_zero()) return false;
  return true;
}

template <CoefficientField F>
bool member(const Poly<F>& f, const GroebnerBasis<F>& G) {
  return normal_form(f, G).is_zero();
}

template <CoefficientField F>
bool member(const Poly<F>& f, const Ideal<F>& I, const ResourceCaps& caps = {}) {
  return member(f, buchberger(I, caps));
}

/// J is contained in the ideal with basis G.
template <CoefficientField F>
bool contains(const GroebnerBasis<F>& G, const Ideal<F>& J) {
  for (const auto& g : J.gens)
    if (!member(g, G)) return false;
  return true;
}

template <CoefficientField F>
bool contains(const Ideal<F>& I, const Ideal<F>& J, const ResourceCaps& caps = {}) {
  return contains(buchberger(I, caps), J);
}

/// Membership-based equality.
template <CoefficientField F>
bool ideals_equal(const Ideal<F>& I, const Ideal<F>& J, const ResourceCaps& caps = {}) {
  return contains(I, J, caps) && contains(J, I, caps);
}

/// I cap J as <t*I, (1-t)*J> cap k[x], eliminating an auxiliary variable t.
///
/// The result generators form a reduced Groebner basis of the intersection
/// under grevlex restricted to the original variables.
template <CoefficientField F>
Ideal<F> intersect(const Ideal<F>& I, const Ideal<F>& J, const ResourceCaps& caps = {}) {
  if (I.ring->nvars() != J.ring->nvars()) throw RingMismatch("intersect arity mismatch");
  const std::size_t v = I.ring->nvars();
  if (v + 1 > kMaxVars) throw ResourceExceeded("no room for the elimination variable");
  if (I.gens.empty() || J.gens.empty()) return Ideal<F>(I.ring, {});
  auto elim = PolyRing<F>::make(I.ring->field_ptr(), v + 1, TermOrder::elimination(1));
  std::vector<Poly<F>> lifted_x;
  for (std::size_t i = 0; i < v; ++i) lifted_x.push_back(Poly<F>::variable(elim, i + 1));
  RingHom<F> lift(I.ring, elim, lifted_x);
  const Poly<F> t = Poly<F>::variable(elim, 0);
  const Poly<F> one_minus_t = Poly<F>::one(elim) - t;
  std::vector<Poly<F>> gens;
  for (const auto& f : I.gens) gens.push_back(t * lift(f));
  for (const auto& g : J.gens) gens.push_back(one_minus_t * lift(g.in_ring(J.ring)));
  GroebnerBasis<F> gb = buchberger(Ideal<F>(elim, gens), caps);

  auto target = I.ring->with_order(TermOrder::grevlex());
  std::vector<Poly<F>> images;
  images.push_back(Poly<F>::zero(target));
  for (std::size_t i = 0; i < v; ++i) images.push_back(Poly<F>::variable(target, i));
  RingHom<F> drop(elim, target, images);
  std::vector<Poly<F>> out;
  for (const auto& g : gb.basis)
    if (!g.uses_variable(0)) out.push_back(drop(g).in_ring(I.ring));
  return Ideal<F>(I.ring, out);
}

/// Intersection of a nonempty list, accumulated left to right.
template <CoefficientField F>
Ideal<F> intersect_all(const std::vector<Ideal<F>>& ideals, const ResourceCaps& caps = {}) {
  if (ideals.empty()) throw InvalidArgument("intersect_all needs at least one ideal");
  Ideal<F> acc = ideals.front();
  for (std::size_t k = 1; k < ideals.size(); ++k) acc = intersect(acc, ideals[k], caps);
  return acc;
}

/// Products of r generators with repetition, exact duplicates removed.
template <CoefficientField F>
Ideal<F> power(const Ideal<F>& I, unsigned r) {
  if (r == 0) throw InvalidArgument("ideal power requires r >= 1");
  std::vector<Poly<F>> out;
  std::vector<std::size_t> idx(r, 0);
  const std::size_t s = I.gens.size();
  if (s == 0) return Ideal<F>(I.ring, {});
  for (;;) {
    Poly<F> p = I.gens[idx[0]];
    for (unsigned k = 1; k < r; ++k) p *= I.gens[idx[k]];
    if (std::none_of(out.begin(), out.end(), [&](const Poly<F>& q) { return q == p; })) out.push_back(std::move(p));
    // Next non-decreasing index tuple.
    std::size_t k = r;
    while (k > 0 && idx[k - 1] == s - 1) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t m = k; m < r; ++m) idx[m] = idx[k - 1];
  }
  return Ideal<F>(I.ring, std::move(out));
}

/// Header line naming order and field, then one polynomial per line.
template <CoefficientField F>
std::string basis_dump(const GroebnerBasis<F>& G) {
  const FieldSpec& spec = G.ring->field().spec();
  std::ostringstream os;
  os << "# groebner-basis order=" << G.order().name() << " field=" << spec.label() << " n=" << spec.n
     << " vars=" << G.ring->nvars() << " size=" << G.basis.size() << "\n";
  for (const auto& g : G.basis) os << g.to_string() << "\n";
  return os.str();
}

/// Reads the polynomial lines of a basis dump back into `ring`.
template <CoefficientField F>
GroebnerBasis<F> parse_basis_dump(const RingPtr<F>& ring, const std::string& text) {
  std::istringstream is(text);
  std::string line;
  GroebnerBasis<F> G{ring, {}, true};
  while (std::getline(is, line)) {
    if (line.empty() || line.front() == '#') continue;
    G.basis.push_back(parse_poly(ring, line));
  }
  return G;
}

}  // namespace fermat
