#pragma once

// Polynomial rings k[x_0, ..., x_{v-1}] over an exact coefficient field.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fermat/coeff.hpp"
#include "fermat/detail/expr_parser.hpp"
#include "fermat/error.hpp"

namespace fermat {

inline constexpr std::size_t kMaxVars = 16;

/// Dense exponent vector with a cached total degree.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : nvars_(static_cast<std::uint8_t>(nvars)) {
    if (nvars > kMaxVars) throw InvalidArgument("too many variables");
  }
  Monomial(std::initializer_list<unsigned> exps) : Monomial(std::span<const unsigned>(exps.begin(), exps.size())) {}
  explicit Monomial(std::span<const unsigned> exps) : Monomial(exps.size()) {
    for (std::size_t i = 0; i < exps.size(); ++i) set(i, exps[i]);
  }

  static Monomial variable(std::size_t nvars, std::size_t i, unsigned e = 1) {
    Monomial m(nvars);
    m.set(i, e);
    return m;
  }

  std::size_t size() const { return nvars_; }
  unsigned operator[](std::size_t i) const { return e_[i]; }
  unsigned degree() const { return deg_; }
  bool is_one() const { return deg_ == 0; }

  void set(std::size_t i, unsigned v) {
    if (v > 0xffff) throw ResourceExceeded("exponent overflow");
    deg_ = deg_ - e_[i] + v;
    e_[i] = static_cast<std::uint16_t>(v);
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r(a.nvars_);
    for (std::size_t i = 0; i < a.nvars_; ++i) r.set(i, a.e_[i] + b.e_[i]);
    return r;
  }
  /// a / b; requires divides(b, a).
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial r(a.nvars_);
    for (std::size_t i = 0; i < a.nvars_; ++i) r.e_[i] = static_cast<std::uint16_t>(a.e_[i] - b.e_[i]);
    r.deg_ = a.deg_ - b.deg_;
    return r;
  }
  friend bool divides(const Monomial& d, const Monomial& m) {
    if (d.deg_ > m.deg_) return false;
    for (std::size_t i = 0; i < d.nvars_; ++i)
      if (d.e_[i] > m.e_[i]) return false;
    return true;
  }
  friend Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a.nvars_);
    for (std::size_t i = 0; i < a.nvars_; ++i) r.set(i, std::max(a.e_[i], b.e_[i]));
    return r;
  }
  friend bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.nvars_; ++i)
      if (a.e_[i] && b.e_[i]) return false;
    return true;
  }
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.nvars_ == b.nvars_ && a.deg_ == b.deg_ && a.e_ == b.e_;
  }

 private:
  std::array<std::uint16_t, kMaxVars> e_{};
  std::uint32_t deg_ = 0;
  std::uint8_t nvars_ = 0;
};

/// Multiplicative well-order on monomials.
class TermOrder {
 public:
  enum class Kind { lex, grevlex, block_elimination };

  static TermOrder lex() { return TermOrder(Kind::lex, 0); }
  static TermOrder grevlex() { return TermOrder(Kind::grevlex, 0); }
  /// The first `block` variables dominate; grevlex inside each block.
  static TermOrder elimination(std::size_t block) { return TermOrder(Kind::block_elimination, block); }
  static TermOrder from_name(std::string_view name) {
    if (name == "lex") return lex();
    if (name == "grevlex") return grevlex();
    if (name.starts_with("elim(") && name.ends_with(")"))
      return elimination(std::stoul(std::string(name.substr(5, name.size() - 6))));
    throw InvalidArgument("unknown term order '" + std::string(name) + "'");
  }

  Kind kind() const { return kind_; }
  std::size_t block() const { return block_; }
  std::string name() const {
    switch (kind_) {
      case Kind::lex: return "lex";
      case Kind::grevlex: return "grevlex";
      case Kind::block_elimination: return "elim(" + std::to_string(block_) + ")";
    }
    return {};
  }

  std::strong_ordering compare(const Monomial& a, const Monomial& b) const {
    switch (kind_) {
      case Kind::lex:
        for (std::size_t i = 0; i < a.size(); ++i)
          if (a[i] != b[i]) return a[i] <=> b[i];
        return std::strong_ordering::equal;
      case Kind::grevlex:
        return grevlex_range(a, b, 0, a.size(), a.degree(), b.degree());
      case Kind::block_elimination: {
        const std::size_t k = std::min(block_, a.size());
        unsigned da = 0, db = 0;
        for (std::size_t i = 0; i < k; ++i) {
          da += a[i];
          db += b[i];
        }
        if (auto c = grevlex_range(a, b, 0, k, da, db); c != 0) return c;
        return grevlex_range(a, b, k, a.size(), a.degree() - da, b.degree() - db);
      }
    }
    return std::strong_ordering::equal;
  }
  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }

  friend bool operator==(const TermOrder&, const TermOrder&) = default;

 private:
  TermOrder(Kind k, std::size_t block) : kind_(k), block_(block) {}

  static std::strong_ordering grevlex_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi,
                                            unsigned da, unsigned db) {
    if (da != db) return da <=> db;
    for (std::size_t i = hi; i-- > lo;)
      if (a[i] != b[i]) return b[i] <=> a[i];
    return std::strong_ordering::equal;
  }

  Kind kind_;
  std::size_t block_;
};

template <CoefficientField F>
class PolyRing {
 public:
  PolyRing(std::shared_ptr<const F> field, std::size_t nvars, TermOrder order = TermOrder::grevlex())
      : field_(std::move(field)), nvars_(nvars), order_(order) {
    if (nvars > kMaxVars) throw InvalidArgument("at most " + std::to_string(kMaxVars) + " variables");
  }

  static std::shared_ptr<const PolyRing> make(std::shared_ptr<const F> field, std::size_t nvars,
                                              TermOrder order = TermOrder::grevlex()) {
    return std::make_shared<const PolyRing>(std::move(field), nvars, order);
  }

  const F& field() const { return *field_; }
  const std::shared_ptr<const F>& field_ptr() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  const TermOrder& order() const { return order_; }

  std::shared_ptr<const PolyRing> with_order(TermOrder order) const { return make(field_, nvars_, order); }

  bool same_as(const PolyRing& o) const {
    return nvars_ == o.nvars_ && order_ == o.order_ && (field_ == o.field_ || field_->spec() == o.field_->spec());
  }

 private:
  std::shared_ptr<const F> field_;
  std::size_t nvars_;
  TermOrder order_;
};

template <CoefficientField F>
using RingPtr = std::shared_ptr<const PolyRing<F>>;

template <CoefficientField F>
struct Term {
  Monomial mono;
  typename F::Scalar coeff;
};

/// Sparse polynomial; terms are kept strictly descending under the ring's order with no zero coefficients.
template <CoefficientField F>
class Poly {
 public:
  using Scalar = typename F::Scalar;
  using TermT = Term<F>;

  Poly() = default;
  explicit Poly(RingPtr<F> ring) : ring_(std::move(ring)) {}

  static Poly zero(RingPtr<F> ring) { return Poly(std::move(ring)); }
  static Poly constant(RingPtr<F> ring, const Scalar& c) {
    Poly p(ring);
    if (!ring->field().is_zero(c)) p.terms_.push_back({Monomial(ring->nvars()), c});
    return p;
  }
  static Poly one(RingPtr<F> ring) { return constant(ring, ring->field().one()); }
  static Poly variable(RingPtr<F> ring, std::size_t i) {
    if (i >= ring->nvars()) throw RingMismatch("variable x" + std::to_string(i) + " outside ring");
    Poly p(ring);
    p.terms_.push_back({Monomial::variable(ring->nvars(), i), ring->field().one()});
    return p;
  }
  static Poly term(RingPtr<F> ring, const Scalar& c, const Monomial& m) {
    if (m.size() != ring->nvars()) throw RingMismatch("monomial arity mismatch");
    Poly p(ring);
    if (!ring->field().is_zero(c)) p.terms_.push_back({m, c});
    return p;
  }
  /// Sorts, merges equal monomials and drops zeros.
  static Poly from_terms(RingPtr<F> ring, std::vector<TermT> terms) {
    Poly p(std::move(ring));
    const auto& ord = p.ring_->order();
    for (const auto& t : terms)
      if (t.mono.size() != p.ring_->nvars()) throw RingMismatch("monomial arity mismatch");
    std::sort(terms.begin(), terms.end(),
              [&](const TermT& a, const TermT& b) { return ord.compare(a.mono, b.mono) > 0; });
    const F& k = p.field();
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
        p.terms_.back().coeff = k.add(p.terms_.back().coeff, t.coeff);
        if (k.is_zero(p.terms_.back().coeff)) p.terms_.pop_back();
      } else if (!k.is_zero(t.coeff)) {
        p.terms_.push_back(std::move(t));
      }
    }
    return p;
  }
  /// Wraps terms already in canonical order.
  static Poly from_sorted(RingPtr<F> ring, std::vector<TermT> terms) {
    Poly p(std::move(ring));
    p.terms_ = std::move(terms);
    return p;
  }

  const RingPtr<F>& ring() const { return ring_; }
  const F& field() const { return ring_->field(); }
  std::size_t nvars() const { return ring_->nvars(); }
  const std::vector<TermT>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

  const TermT& lead() const { return terms_.front(); }
  const Monomial& lead_monomial() const { return terms_.front().mono; }
  const Scalar& lead_coeff() const { return terms_.front().coeff; }

  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree());
    return d;
  }
  bool is_homogeneous() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [&](const TermT& t) { return t.mono.degree() == terms_.front().mono.degree(); });
  }
  Scalar constant_term() const {
    if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
    return field().zero();
  }
  /// Coefficient of m, zero if absent.
  Scalar coeff(const Monomial& m) const {
    for (const auto& t : terms_)
      if (t.mono == m) return t.coeff;
    return field().zero();
  }
  bool uses_variable(std::size_t i) const {
    return std::any_of(terms_.begin(), terms_.end(), [&](const TermT& t) { return t.mono[i] != 0; });
  }

  /// Same polynomial viewed in a ring with another order (same field and arity).
  Poly in_ring(RingPtr<F> target) const {
    if (target->nvars() != nvars()) throw RingMismatch("arity mismatch in ring change");
    if (target->order() == ring_->order()) return from_sorted(std::move(target), terms_);
    return from_terms(std::move(target), terms_);
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.coeff = field().neg(t.coeff);
    return r;
  }
  Poly scaled(const Scalar& c) const {
    if (field().is_zero(c)) return zero(ring_);
    Poly r = *this;
    for (auto& t : r.terms_) t.coeff = field().mul(t.coeff, c);
    return r;
  }
  Poly monic() const {
    if (is_zero() || field().is_one(lead_coeff())) return *this;
    return scaled(field().inv(lead_coeff()));
  }
  /// c * m * this; order is preserved by multiplicativity.
  Poly mul_term(const Scalar& c, const Monomial& m) const {
    if (field().is_zero(c)) return zero(ring_);
    Poly r(ring_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono * m, field().mul(t.coeff, c)});
    return r;
  }

  friend Poly operator+(const Poly& a, const Poly& b) { return a.combine(b, false); }
  friend Poly operator-(const Poly& a, const Poly& b) { return a.combine(b, true); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check_ring(b);
    if (a.is_zero() || b.is_zero()) return zero(a.ring_);
    if (a.size() < b.size()) return b * a;
    if (b.size() == 1) return a.mul_term(b.lead_coeff(), b.lead_monomial());
    std::vector<TermT> all;
    all.reserve(a.size() * b.size());
    const F& k = a.field();
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) all.push_back({s.mono * t.mono, k.mul(s.coeff, t.coeff)});
    return from_terms(a.ring_, std::move(all));
  }
  Poly& operator+=(const Poly& b) { return *this = *this + b; }
  Poly& operator-=(const Poly& b) { return *this = *this - b; }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }

  Poly pow(unsigned e) const {
    Poly result = one(ring_), base = *this;
    while (e) {
      if (e & 1) result *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return result;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.nvars() != b.nvars()) return false;
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].mono == b.terms_[i].mono) || !a.field().equal(a.terms_[i].coeff, b.terms_[i].coeff))
        return false;
    return true;
  }

  /// Canonical text: grevlex-descending terms in the shared grammar.
  std::string to_string() const;

  void check_ring(const Poly& o) const {
    if (!ring_ || !o.ring_ || !ring_->same_as(*o.ring_)) throw RingMismatch("operands live in different rings");
  }

 private:
  RingPtr<F> ring_;
  std::vector<TermT> terms_;

  Poly combine(const Poly& b, bool subtract) const {
    check_ring(b);
    const F& k = field();
    const auto& ord = ring_->order();
    Poly r(ring_);
    r.terms_.reserve(terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size()) {
        r.terms_.push_back(terms_[i++]);
        continue;
      }
      const auto& bt = b.terms_[j];
      auto c = i == terms_.size() ? std::strong_ordering::less : ord.compare(terms_[i].mono, bt.mono);
      if (c > 0) {
        r.terms_.push_back(terms_[i++]);
      } else if (c < 0) {
        r.terms_.push_back({bt.mono, subtract ? k.neg(bt.coeff) : bt.coeff});
        ++j;
      } else {
        auto s = subtract ? k.sub(terms_[i].coeff, bt.coeff) : k.add(terms_[i].coeff, bt.coeff);
        if (!k.is_zero(s)) r.terms_.push_back({bt.mono, std::move(s)});
        ++i;
        ++j;
      }
    }
    return r;
  }
};

namespace detail {

inline std::string monomial_text(const Monomial& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += "x" + std::to_string(i);
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s;
}

// True when a scalar's text is a single signed token (no inner + or -).
inline bool is_atomic_scalar(std::string_view s) {
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i] == '+' || (s[i] == '-' && s[i - 1] != '^')) return false;
  return true;
}

template <CoefficientField F>
struct PolyAlgebra {
  using Value = Poly<F>;
  RingPtr<F> ring;

  Value number(const mpq_class& q) const { return Value::constant(ring, ring->field().from_rational(q)); }
  Value eps_pow(long k) const { return Value::constant(ring, ring->field().eps_pow(k)); }
  Value variable(std::size_t i) const {
    if (i >= ring->nvars()) throw ParseError("variable x" + std::to_string(i) + " outside the ring");
    return Value::variable(ring, i);
  }
  Value add(const Value& a, const Value& b) const { return a + b; }
  Value sub(const Value& a, const Value& b) const { return a - b; }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  Value neg(const Value& a) const { return -a; }
  Value pow(const Value& a, unsigned e) const { return a.pow(e); }
};

}  // namespace detail

template <CoefficientField F>
std::string Poly<F>::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<const TermT*> order;
  for (const auto& t : terms_) order.push_back(&t);
  const TermOrder grevlex = TermOrder::grevlex();
  std::sort(order.begin(), order.end(),
            [&](const TermT* a, const TermT* b) { return grevlex.compare(a->mono, b->mono) > 0; });
  std::string out;
  for (const TermT* t : order) {
    std::string c = field().format(t->coeff);
    std::string m = detail::monomial_text(t->mono);
    bool negative = false;
    if (detail::is_atomic_scalar(c) && c.front() == '-') {
      negative = true;
      c.erase(0, 1);
    }
    std::string body;
    if (m.empty()) {
      body = detail::is_atomic_scalar(c) ? c : "(" + c + ")";
    } else if (c == "1") {
      body = m;
    } else {
      body = (detail::is_atomic_scalar(c) ? c : "(" + c + ")") + "*" + m;
    }
    if (out.empty()) {
      out = negative ? "-" + body : body;
    } else {
      out += negative ? " - " : " + ";
      out += body;
    }
  }
  return out;
}

template <CoefficientField F>
Poly<F> parse_poly(const RingPtr<F>& ring, std::string_view text) {
  detail::PolyAlgebra<F> alg{ring};
  return detail::ExprParser(alg, text).parse();
}

/// Substitution homomorphism: source variable i maps to image[i] in the target ring.
template <CoefficientField F>
class RingHom {
 public:
  RingHom(RingPtr<F> source, RingPtr<F> target, std::vector<Poly<F>> images)
      : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    if (images_.size() != source_->nvars()) throw RingMismatch("homomorphism needs one image per source variable");
    for (const auto& p : images_)
      if (p.nvars() != target_->nvars()) throw RingMismatch("image outside target ring");
  }

  static RingHom identity(RingPtr<F> ring) {
    std::vector<Poly<F>> images;
    for (std::size_t i = 0; i < ring->nvars(); ++i) images.push_back(Poly<F>::variable(ring, i));
    return RingHom(ring, ring, std::move(images));
  }

  const RingPtr<F>& source() const { return source_; }
  const RingPtr<F>& target() const { return target_; }
  const std::vector<Poly<F>>& images() const { return images_; }

  Poly<F> operator()(const Poly<F>& f) const {
    if (f.nvars() != source_->nvars()) throw RingMismatch("homomorphism arity mismatch");
    std::vector<std::vector<Poly<F>>> powers(images_.size());
    auto power = [&](std::size_t i, unsigned e) -> const Poly<F>& {
      auto& cache = powers[i];
      if (cache.empty()) cache.push_back(Poly<F>::one(target_));
      while (cache.size() <= e) cache.push_back(cache.back() * images_[i]);
      return cache[e];
    };
    std::vector<Term<F>> acc;
    for (const auto& t : f.terms()) {
      Poly<F> img = Poly<F>::constant(target_, t.coeff);
      for (std::size_t i = 0; i < images_.size() && !img.is_zero(); ++i)
        if (t.mono[i]) img *= power(i, t.mono[i]);
      acc.insert(acc.end(), img.terms().begin(), img.terms().end());
    }
    return Poly<F>::from_terms(target_, std::move(acc));
  }

 private:
  RingPtr<F> source_;
  RingPtr<F> target_;
  std::vector<Poly<F>> images_;
};

template <CoefficientField F>
Poly<F> apply_hom(const RingHom<F>& h, const Poly<F>& f) {
  return h(f);
}

/// Quotient q with f == d * q, or nullopt when d does not divide f.
template <CoefficientField F>
std::optional<Poly<F>> exact_divide(const Poly<F>& f, const Poly<F>& d) {
  if (d.is_zero()) throw DivisionByZero();
  f.check_ring(d);
  auto grev = f.ring()->with_order(TermOrder::grevlex());
  const Poly<F> dg = d.in_ring(grev);
  Poly<F> rem = f.in_ring(grev);
  std::vector<Term<F>> quotient;
  const F& k = f.field();
  const auto inv_lead = k.inv(dg.lead_coeff());
  while (!rem.is_zero()) {
    if (!divides(dg.lead_monomial(), rem.lead_monomial())) return std::nullopt;
    Term<F> q{rem.lead_monomial() / dg.lead_monomial(), k.mul(rem.lead_coeff(), inv_lead)};
    rem -= dg.mul_term(q.coeff, q.mono);
    quotient.push_back(std::move(q));
  }
  Poly<F> q = Poly<F>::from_terms(f.ring(), std::move(quotient));
  if (!(q * d == f)) return std::nullopt;
  return q;
}

}  // namespace fermat
