#pragma once

// Dense linear algebra over a coefficient field, for linear forms.

#include <optional>
#include <string>
#include <vector>

#include "fermat/error.hpp"
#include "fermat/multipoly.hpp"

namespace fermat {

template <CoefficientField F>
using Row = std::vector<typename F::Scalar>;

template <CoefficientField F>
using Matrix = std::vector<Row<F>>;

/// Coefficient vector of a homogeneous linear form.
template <CoefficientField F>
Row<F> linear_coefficients(const Poly<F>& f) {
  Row<F> row(f.nvars(), f.field().zero());
  for (const auto& t : f.terms()) {
    if (t.mono.degree() != 1) throw InvalidArgument("not a homogeneous linear form: " + f.to_string());
    for (std::size_t i = 0; i < f.nvars(); ++i)
      if (t.mono[i]) row[i] = t.coeff;
  }
  return row;
}

template <CoefficientField F>
Poly<F> linear_form(const RingPtr<F>& ring, const Row<F>& row) {
  std::vector<Term<F>> terms;
  for (std::size_t i = 0; i < row.size(); ++i)
    if (!ring->field().is_zero(row[i])) terms.push_back({Monomial::variable(ring->nvars(), i), row[i]});
  return Poly<F>::from_terms(ring, std::move(terms));
}

/// Reduced row echelon form; zero rows dropped. `pivots` receives the pivot columns.
template <CoefficientField F>
Matrix<F> rref(const F& k, Matrix<F> m, std::vector<std::size_t>* pivots = nullptr) {
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  std::size_t rank = 0;
  std::vector<std::size_t> piv;
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t r = rank;
    while (r < m.size() && k.is_zero(m[r][c])) ++r;
    if (r == m.size()) continue;
    std::swap(m[r], m[rank]);
    const auto inv = k.inv(m[rank][c]);
    for (auto& x : m[rank]) x = k.mul(x, inv);
    for (std::size_t o = 0; o < m.size(); ++o) {
      if (o == rank || k.is_zero(m[o][c])) continue;
      const auto f = m[o][c];
      for (std::size_t cc = 0; cc < cols; ++cc) m[o][cc] = k.sub(m[o][cc], k.mul(f, m[rank][cc]));
    }
    piv.push_back(c);
    ++rank;
  }
  m.resize(rank);
  if (pivots) *pivots = piv;
  return m;
}

/// Reduces v against a matrix in reduced row echelon form; zero iff v lies in the row span.
template <CoefficientField F>
Row<F> reduce_against(const F& k, Row<F> v, const Matrix<F>& echelon, const std::vector<std::size_t>& pivots) {
  for (std::size_t r = 0; r < echelon.size(); ++r) {
    const auto c = v[pivots[r]];
    if (k.is_zero(c)) continue;
    for (std::size_t cc = 0; cc < v.size(); ++cc) v[cc] = k.sub(v[cc], k.mul(c, echelon[r][cc]));
  }
  return v;
}

template <CoefficientField F>
bool is_zero_row(const F& k, const Row<F>& v) {
  for (const auto& x : v)
    if (!k.is_zero(x)) return false;
  return true;
}

/// Inverse of a square matrix, or nullopt when singular.
template <CoefficientField F>
std::optional<Matrix<F>> invert(const F& k, const Matrix<F>& a) {
  const std::size_t n = a.size();
  Matrix<F> aug(n, Row<F>(2 * n, k.zero()));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw InvalidArgument("matrix is not square");
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = k.one();
  }
  std::vector<std::size_t> piv;
  aug = rref(k, aug, &piv);
  if (aug.size() < n || piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  Matrix<F> inv(n, Row<F>(n, k.zero()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

/// Canonical text key of the row span (membership-equality of linear ideals).
template <CoefficientField F>
std::string span_key(const F& k, const Matrix<F>& echelon) {
  std::string key;
  for (const auto& row : echelon) {
    for (const auto& x : row) key += k.format(x) + ",";
    key += ";";
  }
  return key;
}

}  // namespace fermat
