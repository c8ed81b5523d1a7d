#pragma once

// Exact coefficient fields that contain a primitive n-th root of unity:
// prime fields F_p with n | p - 1, and the cyclotomic field Q[t]/(Phi_n).

#include <concepts>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "fermat/detail/expr_parser.hpp"
#include "fermat/error.hpp"

namespace fermat {

enum class FieldKind { prime, cyclotomic };

struct FieldSpec {
  FieldKind kind = FieldKind::cyclotomic;
  unsigned n = 1;      // order of the distinguished root of unity
  std::uint64_t p = 0; // modulus, prime kind only

  static FieldSpec prime(unsigned n, std::uint64_t p) { return {FieldKind::prime, n, p}; }
  static FieldSpec cyclotomic(unsigned n) { return {FieldKind::cyclotomic, n, 0}; }

  /// "prime:7" or "cyclotomic"; the root order travels separately.
  std::string label() const {
    return kind == FieldKind::prime ? "prime:" + std::to_string(p) : std::string("cyclotomic");
  }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

inline bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

/// Throws InvalidField unless the spec describes a usable field.
inline void validate(const FieldSpec& spec) {
  if (spec.n < 1) throw InvalidField("root order n must be >= 1");
  if (spec.kind == FieldKind::prime) {
    if (spec.p >= (std::uint64_t{1} << 32)) throw InvalidField("modulus must be below 2^32");
    if (!is_prime(spec.p)) throw InvalidField(std::to_string(spec.p) + " is not prime");
    if ((spec.p - 1) % spec.n != 0)
      throw InvalidField("n = " + std::to_string(spec.n) + " does not divide p - 1 = " + std::to_string(spec.p - 1));
  }
}

// ---------------------------------------------------------------------------
// Integer and rational univariate helpers (coefficients low -> high).

using IntPoly = std::vector<mpz_class>;
using RatPoly = std::vector<mpq_class>;

namespace detail {

template <class T>
void trim(std::vector<T>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Quotient of a by a monic divisor; the division must be exact.
inline IntPoly divide_monic(IntPoly a, const IntPoly& d) {
  trim(a);
  const std::size_t dd = d.size() - 1;
  if (a.size() < d.size()) return {};
  IntPoly q(a.size() - dd);
  for (std::size_t k = a.size(); k-- > dd;) {
    mpz_class c = a[k];
    q[k - dd] = c;
    if (c == 0) continue;
    for (std::size_t i = 0; i <= dd; ++i) a[k - dd + i] -= c * d[i];
  }
  return q;
}

inline RatPoly rat_mul(const RatPoly& a, const RatPoly& b) {
  if (a.empty() || b.empty()) return {};
  RatPoly r(a.size() + b.size() - 1, mpq_class(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

inline RatPoly rat_sub(RatPoly a, const RatPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), mpq_class(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

// Polynomial long division over Q; b must be nonzero.
inline std::pair<RatPoly, RatPoly> rat_divmod(RatPoly a, const RatPoly& b) {
  trim(a);
  if (a.size() < b.size()) return {{}, a};
  RatPoly q(a.size() - b.size() + 1, mpq_class(0));
  const mpq_class lead = b.back();
  for (std::size_t k = a.size(); k-- >= b.size();) {
    mpq_class c = a[k] / lead;
    q[k - b.size() + 1] = c;
    if (c == 0) continue;
    for (std::size_t i = 0; i < b.size(); ++i) a[k - b.size() + 1 + i] -= c * b[i];
    if (k == 0) break;
  }
  trim(a);
  trim(q);
  return {q, a};
}

}  // namespace detail

/// The n-th cyclotomic polynomial: (t^n - 1) divided by Phi_d for every proper divisor d of n.
inline IntPoly cyclotomic_poly(unsigned n) {
  if (n == 0) throw InvalidArgument("cyclotomic_poly requires n >= 1");
  static thread_local std::map<unsigned, IntPoly> cache;
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  IntPoly r(n + 1, mpz_class(0));
  r[0] = -1;
  r[n] = 1;
  for (unsigned d = 1; d < n; ++d)
    if (n % d == 0) r = detail::divide_monic(r, cyclotomic_poly(d));
  cache.emplace(n, r);
  return r;
}

// ---------------------------------------------------------------------------

template <class F>
concept CoefficientField = requires(const F& f, const typename F::Scalar& a, const mpq_class& q, long k) {
  typename F::Scalar;
  { f.spec() } -> std::convertible_to<FieldSpec>;
  { f.zero() } -> std::same_as<typename F::Scalar>;
  { f.one() } -> std::same_as<typename F::Scalar>;
  { f.add(a, a) } -> std::same_as<typename F::Scalar>;
  { f.sub(a, a) } -> std::same_as<typename F::Scalar>;
  { f.neg(a) } -> std::same_as<typename F::Scalar>;
  { f.mul(a, a) } -> std::same_as<typename F::Scalar>;
  { f.inv(a) } -> std::same_as<typename F::Scalar>;
  { f.is_zero(a) } -> std::same_as<bool>;
  { f.is_one(a) } -> std::same_as<bool>;
  { f.from_rational(q) } -> std::same_as<typename F::Scalar>;
  { f.eps_pow(k) } -> std::same_as<typename F::Scalar>;
  { f.format(a) } -> std::same_as<std::string>;
};

/// Prime field F_p whose multiplicative group holds a primitive n-th root of unity.
class PrimeField {
 public:
  using Scalar = std::uint64_t;

  explicit PrimeField(FieldSpec spec) : spec_(spec) {
    if (spec_.kind != FieldKind::prime) throw InvalidField("PrimeField needs a prime spec");
    validate(spec_);
    root_ = find_root();
  }
  PrimeField(unsigned n, std::uint64_t p) : PrimeField(FieldSpec::prime(n, p)) {}

  const FieldSpec& spec() const { return spec_; }
  std::uint64_t modulus() const { return spec_.p; }
  bool exact_characteristic_zero() const { return false; }

  Scalar zero() const { return 0; }
  Scalar one() const { return 1 % spec_.p; }
  Scalar add(Scalar a, Scalar b) const {
    Scalar s = a + b;
    return s >= spec_.p ? s - spec_.p : s;
  }
  Scalar sub(Scalar a, Scalar b) const { return a >= b ? a - b : a + spec_.p - b; }
  Scalar neg(Scalar a) const { return a == 0 ? 0 : spec_.p - a; }
  Scalar mul(Scalar a, Scalar b) const { return (a * b) % spec_.p; }
  Scalar pow(Scalar a, std::uint64_t e) const {
    Scalar r = one();
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  Scalar inv(Scalar a) const {
    if (a == 0) throw DivisionByZero();
    return pow(a, spec_.p - 2);
  }
  bool is_zero(Scalar a) const { return a == 0; }
  bool is_one(Scalar a) const { return a == one(); }
  bool equal(Scalar a, Scalar b) const { return a == b; }

  Scalar from_int(long long v) const {
    long long m = v % static_cast<long long>(spec_.p);
    return static_cast<Scalar>(m < 0 ? m + static_cast<long long>(spec_.p) : m);
  }
  Scalar from_rational(const mpq_class& q) const {
    mpz_class p(std::to_string(spec_.p));
    mpz_class num = q.get_num() % p, den = q.get_den() % p;
    if (num < 0) num += p;
    if (den == 0) throw DivisionByZero();
    return mul(static_cast<Scalar>(num.get_ui()), inv(static_cast<Scalar>(den.get_ui())));
  }

  /// Smallest residue of multiplicative order exactly n.
  Scalar root() const { return root_; }
  Scalar eps_pow(long k) const {
    long r = k % static_cast<long>(spec_.n);
    if (r < 0) r += spec_.n;
    return pow(root_, static_cast<std::uint64_t>(r));
  }

  std::string format(Scalar a) const { return std::to_string(a); }
  Scalar parse(std::string_view text) const;

 private:
  FieldSpec spec_;
  Scalar root_ = 1;

  Scalar find_root() const {
    std::vector<unsigned> prime_factors;
    for (unsigned m = spec_.n, d = 2; m > 1; ++d) {
      if (m % d) continue;
      prime_factors.push_back(d);
      while (m % d == 0) m /= d;
    }
    for (Scalar r = 1; r < spec_.p; ++r) {
      if (pow(r, spec_.n) != one()) continue;
      bool primitive = true;
      for (unsigned q : prime_factors)
        if (pow(r, spec_.n / q) == one()) primitive = false;
      if (primitive) return r;
    }
    throw InvalidField("no primitive root of unity of order " + std::to_string(spec_.n));
  }
};

/// Element of Q[t]/(Phi_n): exactly deg(Phi_n) rational coefficients, low to high.
struct CycloScalar {
  std::vector<mpq_class> c;
  friend bool operator==(const CycloScalar&, const CycloScalar&) = default;
};

/// Cyclotomic rationals Q(eps), eps the class of t.
class CyclotomicField {
 public:
  using Scalar = CycloScalar;

  explicit CyclotomicField(FieldSpec spec) : spec_(spec) {
    if (spec_.kind != FieldKind::cyclotomic) throw InvalidField("CyclotomicField needs a cyclotomic spec");
    validate(spec_);
    IntPoly phi = cyclotomic_poly(spec_.n);
    for (const auto& z : phi) phi_.emplace_back(z);
    degree_ = phi_.size() - 1;
  }
  explicit CyclotomicField(unsigned n) : CyclotomicField(FieldSpec::cyclotomic(n)) {}

  const FieldSpec& spec() const { return spec_; }
  std::size_t degree() const { return degree_; }
  const RatPoly& modulus() const { return phi_; }
  bool exact_characteristic_zero() const { return true; }

  Scalar zero() const { return Scalar{std::vector<mpq_class>(degree_, mpq_class(0))}; }
  Scalar one() const { return from_rational(1); }
  Scalar add(const Scalar& a, const Scalar& b) const {
    Scalar r = a;
    for (std::size_t i = 0; i < degree_; ++i) r.c[i] += b.c[i];
    return r;
  }
  Scalar sub(const Scalar& a, const Scalar& b) const {
    Scalar r = a;
    for (std::size_t i = 0; i < degree_; ++i) r.c[i] -= b.c[i];
    return r;
  }
  Scalar neg(const Scalar& a) const {
    Scalar r = a;
    for (auto& x : r.c) x = -x;
    return r;
  }
  Scalar mul(const Scalar& a, const Scalar& b) const {
    if (is_rational(a)) return scale(b, a.c[0]);
    if (is_rational(b)) return scale(a, b.c[0]);
    RatPoly prod(2 * degree_ - 1, mpq_class(0));
    for (std::size_t i = 0; i < degree_; ++i) {
      if (a.c[i] == 0) continue;
      for (std::size_t j = 0; j < degree_; ++j)
        if (b.c[j] != 0) prod[i + j] += a.c[i] * b.c[j];
    }
    return reduce(std::move(prod));
  }
  Scalar inv(const Scalar& a) const {
    if (is_zero(a)) throw DivisionByZero();
    if (is_rational(a)) return from_rational(1 / a.c[0]);
    // Extended Euclid on (Phi_n, a): track s with s * a == r (mod Phi_n).
    RatPoly r0 = phi_, r1 = a.c;
    detail::trim(r1);
    RatPoly s0, s1{mpq_class(1)};
    while (r1.size() > 1) {
      auto [q, rem] = detail::rat_divmod(r0, r1);
      RatPoly s2 = detail::rat_sub(s0, detail::rat_mul(q, s1));
      r0 = std::move(r1);
      r1 = std::move(rem);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    // r1 is a nonzero constant since Phi_n is irreducible over Q.
    const mpq_class c = r1.at(0);
    for (auto& x : s1) x /= c;
    return reduce(std::move(s1));
  }
  bool is_zero(const Scalar& a) const {
    for (const auto& x : a.c)
      if (x != 0) return false;
    return true;
  }
  bool is_one(const Scalar& a) const { return is_rational(a) && a.c[0] == 1; }
  bool equal(const Scalar& a, const Scalar& b) const { return a == b; }

  Scalar from_int(long long v) const { return from_rational(mpq_class(mpz_class(std::to_string(v)))); }
  Scalar from_rational(const mpq_class& q) const {
    Scalar r = zero();
    r.c[0] = q;
    return r;
  }
  Scalar root() const { return eps_pow(1); }
  Scalar eps_pow(long k) const {
    long r = k % static_cast<long>(spec_.n);
    if (r < 0) r += spec_.n;
    RatPoly t(static_cast<std::size_t>(r) + 1, mpq_class(0));
    t.back() = 1;
    return reduce(std::move(t));
  }

  /// Descending powers of eps, e.g. "-1/2*e^1 + 3".
  std::string format(const Scalar& a) const {
    std::string out;
    for (std::size_t k = degree_; k-- > 0;) {
      const mpq_class& q = a.c[k];
      if (q == 0) continue;
      bool negative = q < 0;
      mpq_class mag = negative ? mpq_class(-q) : q;
      if (out.empty()) {
        if (negative) out += "-";
      } else {
        out += negative ? " - " : " + ";
      }
      if (k == 0) {
        out += mag.get_str();
      } else {
        if (mag != 1) out += mag.get_str() + "*";
        out += "e^" + std::to_string(k);
      }
    }
    return out.empty() ? "0" : out;
  }
  Scalar parse(std::string_view text) const;

  Scalar reduce(RatPoly a) const {
    detail::trim(a);
    // Phi_n is monic, so reduction needs no division.
    for (std::size_t k = a.size(); k-- > degree_;) {
      if (a[k] == 0) continue;
      const mpq_class c = a[k];
      for (std::size_t i = 0; i <= degree_; ++i) a[k - degree_ + i] -= c * phi_[i];
    }
    a.resize(degree_, mpq_class(0));
    return Scalar{std::move(a)};
  }

 private:
  FieldSpec spec_;
  RatPoly phi_;
  std::size_t degree_ = 1;

  bool is_rational(const Scalar& a) const {
    for (std::size_t i = 1; i < degree_; ++i)
      if (a.c[i] != 0) return false;
    return true;
  }
  Scalar scale(const Scalar& a, const mpq_class& q) const {
    Scalar r = a;
    if (q == 0) return zero();
    if (q == 1) return r;
    for (auto& x : r.c)
      if (x != 0) x *= q;
    return r;
  }
};

static_assert(CoefficientField<PrimeField>);
static_assert(CoefficientField<CyclotomicField>);

namespace detail {

template <class F>
struct ScalarAlgebra {
  using Value = typename F::Scalar;
  const F& field;

  Value number(const mpq_class& q) const { return field.from_rational(q); }
  Value eps_pow(long k) const { return field.eps_pow(k); }
  Value variable(std::size_t) const { throw ParseError("variables are not allowed in a scalar"); }
  Value add(const Value& a, const Value& b) const { return field.add(a, b); }
  Value sub(const Value& a, const Value& b) const { return field.sub(a, b); }
  Value mul(const Value& a, const Value& b) const { return field.mul(a, b); }
  Value neg(const Value& a) const { return field.neg(a); }
  Value pow(const Value& a, unsigned e) const {
    Value r = field.one();
    for (unsigned i = 0; i < e; ++i) r = field.mul(r, a);
    return r;
  }
};

}  // namespace detail

inline PrimeField::Scalar PrimeField::parse(std::string_view text) const {
  detail::ScalarAlgebra<PrimeField> alg{*this};
  return detail::ExprParser(alg, text).parse();
}

inline CyclotomicField::Scalar CyclotomicField::parse(std::string_view text) const {
  detail::ScalarAlgebra<CyclotomicField> alg{*this};
  return detail::ExprParser(alg, text).parse();
}

/// Distinguished primitive n-th root of unity of the field.
template <CoefficientField F>
typename F::Scalar primitive_root(const F& field) {
  return field.eps_pow(1);
}

/// Builds the root of unity straight from a spec; rejects prime specs with n not dividing p - 1.
inline std::string primitive_root_text(const FieldSpec& spec) {
  if (spec.kind == FieldKind::prime) {
    PrimeField f(spec);
    return f.format(f.root());
  }
  CyclotomicField f(spec);
  return f.format(f.root());
}

/// Calls fn with a shared field object of the concrete type selected by spec.
template <class Fn>
decltype(auto) with_field(const FieldSpec& spec, Fn&& fn) {
  if (spec.kind == FieldKind::prime) return fn(std::make_shared<const PrimeField>(spec));
  return fn(std::make_shared<const CyclotomicField>(spec));
}

/// "proof-grade" over characteristic zero, "characteristic-p evidence" otherwise.
inline std::string evidence_grade(const FieldSpec& spec) {
  return spec.kind == FieldKind::cyclotomic ? "proof-grade" : "characteristic-p evidence";
}

}  // namespace fermat
