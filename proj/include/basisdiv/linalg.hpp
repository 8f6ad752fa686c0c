#pragma once

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "basisdiv/scalar.hpp"

namespace basisdiv {

/// Dense coordinate vector over a fixed field.
class Vector {
 public:
  Vector(const FieldDescriptor& field, int dim)
      : field_(field), coords_(static_cast<std::size_t>(dim), Scalar::zero(field)) {
    if (dim < 1) throw Error("vector dimension must be positive");
  }

  Vector(const FieldDescriptor& field, std::vector<Scalar> coords)
      : field_(field), coords_(std::move(coords)) {
    if (coords_.empty()) throw Error("vector dimension must be positive");
    for (const Scalar& c : coords_)
      if (c.field() != field_) throw Error("vector coordinate over wrong field");
  }

  static Vector unit(const FieldDescriptor& field, int dim, int i) {
    if (i < 0 || i >= dim) throw Error("unit vector index out of range");
    Vector v(field, dim);
    v[i] = Scalar::one(field);
    return v;
  }

  int dim() const { return static_cast<int>(coords_.size()); }
  const FieldDescriptor& field() const { return field_; }

  const Scalar& operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
  Scalar& operator[](int i) { return coords_[static_cast<std::size_t>(i)]; }

  bool is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(),
                       [](const Scalar& c) { return c.is_zero(); });
  }

  /// Index of the first nonzero coordinate, or -1.
  int leading_index() const {
    for (int i = 0; i < dim(); ++i)
      if (!coords_[static_cast<std::size_t>(i)].is_zero()) return i;
    return -1;
  }

  Vector& operator+=(const Vector& o) {
    check_compatible(o);
    for (int i = 0; i < dim(); ++i) (*this)[i] += o[i];
    return *this;
  }

  Vector& operator-=(const Vector& o) {
    check_compatible(o);
    for (int i = 0; i < dim(); ++i) (*this)[i] -= o[i];
    return *this;
  }

  Vector& operator*=(const Scalar& s) {
    for (int i = 0; i < dim(); ++i) (*this)[i] *= s;
    return *this;
  }

  bool operator==(const Vector& o) const {
    return field_ == o.field_ && coords_ == o.coords_;
  }

  /// Lexicographic by coordinate; determinism helper only.
  static int compare(const Vector& a, const Vector& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim() ? -1 : 1;
    for (int i = 0; i < a.dim(); ++i)
      if (int c = Scalar::compare(a[i], b[i]); c != 0) return c;
    return 0;
  }

  void check_compatible(const Vector& o) const {
    if (field_ != o.field_) throw Error("vector field mismatch");
    if (dim() != o.dim()) throw Error("vector dimension mismatch");
  }

 private:
  FieldDescriptor field_;
  std::vector<Scalar> coords_;
};

inline Vector operator+(Vector a, const Vector& b) { a += b; return a; }
inline Vector operator-(Vector a, const Vector& b) { a -= b; return a; }
inline Vector operator*(const Scalar& s, Vector v) { v *= s; return v; }

namespace detail {

// In-place Gauss-Jordan. Returns the pivot columns; `rows` ends up in
// reduced row-echelon form with the zero rows stripped.
inline std::vector<int> rref(std::vector<Vector>& rows) {
  std::vector<int> pivots;
  if (rows.empty()) return pivots;
  int n = rows.front().dim();
  std::size_t r = 0;
  for (int col = 0; col < n && r < rows.size(); ++col) {
    std::size_t k = r;
    while (k < rows.size() && rows[k][col].is_zero()) ++k;
    if (k == rows.size()) continue;
    std::swap(rows[r], rows[k]);
    Scalar lead = rows[r][col];
    if (!lead.is_one()) rows[r] *= lead.inverse();
    for (std::size_t q = 0; q < rows.size(); ++q) {
      if (q == r || rows[q][col].is_zero()) continue;
      Scalar factor = rows[q][col];
      rows[q] -= factor * rows[r];
    }
    pivots.push_back(col);
    ++r;
  }
  rows.resize(r, Vector(rows.front().field(), n));
  return pivots;
}

}  // namespace detail

/// A linear subspace in canonical form: reduced row-echelon spanning rows
/// with strictly increasing pivot columns. Two subspaces are equal as sets
/// of vectors exactly when their stored forms coincide.
class Subspace {
 public:
  static Subspace zero(const FieldDescriptor& field, int dim) {
    return Subspace(field, dim, {}, {});
  }

  static Subspace span(const FieldDescriptor& field, int dim,
                       const std::vector<Vector>& vectors) {
    std::vector<Vector> rows;
    rows.reserve(vectors.size());
    for (const Vector& v : vectors) {
      if (v.field() != field) throw Error("span: vector over wrong field");
      if (v.dim() != dim) throw Error("span: mixed dimensions");
      if (!v.is_zero()) rows.push_back(v);
    }
    std::vector<int> pivots = detail::rref(rows);
    return Subspace(field, dim, std::move(rows), std::move(pivots));
  }

  static Subspace full(const FieldDescriptor& field, int dim) {
    std::vector<Vector> rows;
    for (int i = 0; i < dim; ++i) rows.push_back(Vector::unit(field, dim, i));
    std::vector<int> pivots(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) pivots[static_cast<std::size_t>(i)] = i;
    return Subspace(field, dim, std::move(rows), std::move(pivots));
  }

  const FieldDescriptor& field() const { return field_; }
  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  bool is_zero() const { return rows_.empty(); }
  bool is_full() const { return rank() == dim_; }
  const std::vector<Vector>& rows() const { return rows_; }
  const std::vector<int>& pivots() const { return pivots_; }

  /// Residual of v after elimination against the echelon rows.
  Vector reduce(Vector v) const {
    if (v.field() != field_ || v.dim() != dim_)
      throw Error("reduce: dimension or field mismatch");
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Scalar& c = v[pivots_[r]];
      if (!c.is_zero()) v -= c * rows_[r];
    }
    return v;
  }

  bool contains(const Vector& v) const { return reduce(v).is_zero(); }

  bool contains(const Subspace& other) const {
    for (const Vector& r : other.rows_)
      if (!contains(r)) return false;
    return true;
  }

  bool operator==(const Subspace& o) const {
    return field_ == o.field_ && dim_ == o.dim_ && rows_ == o.rows_;
  }

 private:
  Subspace(const FieldDescriptor& field, int dim, std::vector<Vector> rows,
           std::vector<int> pivots)
      : field_(field), dim_(dim), rows_(std::move(rows)), pivots_(std::move(pivots)) {}

  FieldDescriptor field_;
  int dim_;
  std::vector<Vector> rows_;
  std::vector<int> pivots_;
};

inline Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.field() != b.field() || a.dim() != b.dim())
    throw Error("subspace sum: mismatch");
  std::vector<Vector> rows = a.rows();
  rows.insert(rows.end(), b.rows().begin(), b.rows().end());
  return Subspace::span(a.field(), a.dim(), rows);
}

/// Zassenhaus: row-reduce [a|a; b|0]; rows whose left half vanished carry a
/// basis of the intersection in their right half.
inline Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.field() != b.field() || a.dim() != b.dim())
    throw Error("subspace intersection: mismatch");
  const FieldDescriptor& f = a.field();
  int n = a.dim();
  std::vector<Vector> wide;
  for (const Vector& u : a.rows()) {
    Vector w(f, 2 * n);
    for (int i = 0; i < n; ++i) { w[i] = u[i]; w[n + i] = u[i]; }
    wide.push_back(std::move(w));
  }
  for (const Vector& v : b.rows()) {
    Vector w(f, 2 * n);
    for (int i = 0; i < n; ++i) w[i] = v[i];
    wide.push_back(std::move(w));
  }
  detail::rref(wide);
  std::vector<Vector> inter;
  for (const Vector& w : wide) {
    bool left_zero = true;
    for (int i = 0; i < n && left_zero; ++i) left_zero = w[i].is_zero();
    if (!left_zero) continue;
    Vector v(f, n);
    for (int i = 0; i < n; ++i) v[i] = w[n + i];
    inter.push_back(std::move(v));
  }
  return Subspace::span(f, n, inter);
}

/// Solution space of the homogeneous system (one constraint row per entry).
inline Subspace kernel(const FieldDescriptor& field, int dim,
                       const std::vector<Vector>& constraint_rows) {
  std::vector<Vector> rows;
  for (const Vector& r : constraint_rows)
    if (!r.is_zero()) rows.push_back(r);
  std::vector<int> pivots = detail::rref(rows);
  std::set<int> pivot_set(pivots.begin(), pivots.end());
  std::vector<Vector> basis;
  for (int free = 0; free < dim; ++free) {
    if (pivot_set.count(free)) continue;
    Vector x(field, dim);
    x[free] = Scalar::one(field);
    for (std::size_t r = 0; r < rows.size(); ++r)
      x[pivots[r]] = -rows[r][free];
    basis.push_back(std::move(x));
  }
  return Subspace::span(field, dim, basis);
}

/// Σ coeffs[i] · rows[i]; the row-vector-times-matrix product.
inline Vector linear_combination(const std::vector<Vector>& rows, const Vector& coeffs) {
  if (static_cast<int>(rows.size()) != coeffs.dim())
    throw Error("linear_combination: size mismatch");
  Vector acc(rows.front().field(), rows.front().dim());
  for (int i = 0; i < coeffs.dim(); ++i)
    if (!coeffs[i].is_zero()) acc += coeffs[i] * rows[static_cast<std::size_t>(i)];
  return acc;
}

/// Gauss-Jordan inverse of a square matrix given as rows. Throws on a
/// singular input.
inline std::vector<Vector> invert_matrix(const std::vector<Vector>& rows) {
  if (rows.empty()) throw Error("invert_matrix: empty matrix");
  const FieldDescriptor& f = rows.front().field();
  int n = static_cast<int>(rows.size());
  std::vector<Vector> aug;
  for (int i = 0; i < n; ++i) {
    if (rows[static_cast<std::size_t>(i)].dim() != n)
      throw Error("invert_matrix: matrix is not square");
    Vector w(f, 2 * n);
    for (int j = 0; j < n; ++j) w[j] = rows[static_cast<std::size_t>(i)][j];
    w[n + i] = Scalar::one(f);
    aug.push_back(std::move(w));
  }
  std::vector<int> pivots = detail::rref(aug);
  for (int i = 0; i < n; ++i)
    if (i >= static_cast<int>(pivots.size()) || pivots[static_cast<std::size_t>(i)] != i)
      throw Error("invert_matrix: singular matrix");
  std::vector<Vector> inv;
  for (int i = 0; i < n; ++i) {
    Vector v(f, n);
    for (int j = 0; j < n; ++j) v[j] = aug[static_cast<std::size_t>(i)][n + j];
    inv.push_back(std::move(v));
  }
  return inv;
}

}  // namespace basisdiv
