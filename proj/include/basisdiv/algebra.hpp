#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "basisdiv/linalg.hpp"

namespace basisdiv {

/// Sparse structure constants: (i, j) -> { k -> c } encodes
/// e_i e_j = Σ_k c_{ijk} e_k. Absent entries are zero; stored entries are
/// never zero. Indices are 0-based internally.
using ProductTable = std::map<std::pair<int, int>, std::map<int, Scalar>>;

/// A finite-dimensional algebra given by basis labels and structure
/// constants. The product is only assumed bilinear; no identity
/// (associativity, commutativity, Jacobi, ...) is assumed or checked.
class AlgebraPresentation {
 public:
  /// Validating factory: checks index ranges, label uniqueness and scalar
  /// fields, and normalizes away explicitly stored zeros.
  static AlgebraPresentation make(const FieldDescriptor& field,
                                  std::vector<std::string> labels,
                                  const ProductTable& raw) {
    int n = static_cast<int>(labels.size());
    if (n < 1) throw Error("algebra dimension must be at least 1");
    {
      std::set<std::string> seen;
      for (const std::string& l : labels) {
        if (l.empty()) throw Error("empty basis label");
        if (!seen.insert(l).second) throw Error("duplicate basis label: '" + l + "'");
      }
    }
    ProductTable table;
    for (const auto& [ij, row] : raw) {
      auto [i, j] = ij;
      if (i < 0 || i >= n || j < 0 || j >= n)
        throw Error("product entry index out of range");
      std::map<int, Scalar> clean;
      for (const auto& [k, c] : row) {
        if (k < 0 || k >= n) throw Error("product result index out of range");
        if (c.field() != field) throw Error("structure constant over wrong field");
        if (!c.is_zero()) clean.emplace(k, c);
      }
      if (!clean.empty()) table.emplace(ij, std::move(clean));
    }
    return AlgebraPresentation(field, std::move(labels), std::move(table));
  }

  const FieldDescriptor& field() const { return field_; }
  int dim() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int i) const { return labels_[static_cast<std::size_t>(i)]; }
  const ProductTable& products() const { return products_; }

  std::optional<int> index_of(const std::string& label) const {
    for (int i = 0; i < dim(); ++i)
      if (labels_[static_cast<std::size_t>(i)] == label) return i;
    return std::nullopt;
  }

  bool is_zero_algebra() const { return products_.empty(); }

  Vector zero_vector() const { return Vector(field_, dim()); }
  Vector basis_vector(int i) const { return Vector::unit(field_, dim(), i); }

  Scalar structure_constant(int i, int j, int k) const {
    auto it = products_.find({i, j});
    if (it == products_.end()) return Scalar::zero(field_);
    auto kt = it->second.find(k);
    return kt == it->second.end() ? Scalar::zero(field_) : kt->second;
  }

  Vector basis_product(int i, int j) const {
    Vector out = zero_vector();
    auto it = products_.find({i, j});
    if (it != products_.end())
      for (const auto& [k, c] : it->second) out[k] += c;
    return out;
  }

  /// Bilinear extension of the structure constants.
  Vector product(const Vector& x, const Vector& y) const {
    check_element(x);
    check_element(y);
    Vector out = zero_vector();
    for (const auto& [ij, row] : products_) {
      Scalar t = x[ij.first] * y[ij.second];
      if (t.is_zero()) continue;
      for (const auto& [k, c] : row) out[k] += t * c;
    }
    return out;
  }

  void check_element(const Vector& v) const {
    if (v.field() != field_) throw Error("element over wrong field");
    if (v.dim() != dim()) throw Error("element dimension mismatch");
  }

  bool operator==(const AlgebraPresentation& o) const {
    return field_ == o.field_ && labels_ == o.labels_ && products_ == o.products_;
  }

 private:
  AlgebraPresentation(const FieldDescriptor& field, std::vector<std::string> labels,
                      ProductTable table)
      : field_(field), labels_(std::move(labels)), products_(std::move(table)) {}

  FieldDescriptor field_;
  std::vector<std::string> labels_;
  ProductTable products_;
};

/// Copy of x with every coordinate outside `indices` zeroed.
inline Vector projection(const Vector& x, const std::set<int>& indices) {
  for (int i : indices)
    if (i < 0 || i >= x.dim()) throw Error("projection index out of range");
  Vector out(x.field(), x.dim());
  for (int i : indices) out[i] = x[i];
  return out;
}

/// Span of the basis vectors named by `indices`.
inline Subspace coordinate_subspace(const FieldDescriptor& field, int dim,
                                    const std::set<int>& indices) {
  std::vector<Vector> rows;
  for (int i : indices) rows.push_back(Vector::unit(field, dim, i));
  return Subspace::span(field, dim, rows);
}

/// Ann(A) = { x : x e_j = e_j x = 0 for all j }, the kernel of the stacked
/// multiplication constraints.
inline Subspace annihilator(const AlgebraPresentation& A) {
  int n = A.dim();
  const FieldDescriptor& f = A.field();
  // One constraint row per (side, j, k) with any nonzero coefficient.
  std::map<std::tuple<int, int, int>, Vector> constraints;
  auto row = [&](int side, int j, int k) -> Vector& {
    auto it = constraints.find({side, j, k});
    if (it == constraints.end())
      it = constraints.emplace(std::make_tuple(side, j, k), Vector(f, n)).first;
    return it->second;
  };
  for (const auto& [ij, coeffs] : A.products()) {
    auto [a, b] = ij;
    for (const auto& [k, c] : coeffs) {
      row(0, b, k)[a] += c;  // (x e_b)_k = Σ_a x_a c_{abk}
      row(1, a, k)[b] += c;  // (e_a x)_k = Σ_b x_b c_{abk}
    }
  }
  std::vector<Vector> rows;
  rows.reserve(constraints.size());
  for (auto& [key, r] : constraints) rows.push_back(std::move(r));
  return kernel(f, n, rows);
}

/// Smallest subspace containing `gens` that is closed under left and right
/// multiplication by A. One multiplication layer is adjoined per pass; the
/// rank strictly increases until the fixpoint, so at most dim passes run.
inline Subspace ideal_closure(const AlgebraPresentation& A,
                              const std::vector<Vector>& gens) {
  Subspace S = Subspace::span(A.field(), A.dim(), gens);
  for (int pass = 0; pass <= A.dim(); ++pass) {
    std::vector<Vector> fresh;
    for (const Vector& v : S.rows()) {
      for (int i = 0; i < A.dim(); ++i) {
        Vector e = A.basis_vector(i);
        for (Vector w : {A.product(v, e), A.product(e, v)})
          if (!S.contains(w)) fresh.push_back(std::move(w));
      }
    }
    if (fresh.empty()) return S;
    std::vector<Vector> rows = S.rows();
    rows.insert(rows.end(), fresh.begin(), fresh.end());
    S = Subspace::span(A.field(), A.dim(), rows);
  }
  throw Error("ideal_closure failed to stabilize");  // unreachable
}

/// Two-sided ideal test on the echelon rows.
inline bool is_ideal(const AlgebraPresentation& A, const Subspace& S) {
  for (const Vector& v : S.rows())
    for (int i = 0; i < A.dim(); ++i) {
      Vector e = A.basis_vector(i);
      if (!S.contains(A.product(v, e))) return false;
      if (!S.contains(A.product(e, v))) return false;
    }
  return true;
}

/// Span of all u·v with u ranging over S's rows and v over T's; bilinearity
/// makes the row products sufficient.
inline Subspace product_of_subspaces(const AlgebraPresentation& A, const Subspace& S,
                                     const Subspace& T) {
  std::vector<Vector> prods;
  for (const Vector& u : S.rows())
    for (const Vector& v : T.rows()) prods.push_back(A.product(u, v));
  return Subspace::span(A.field(), A.dim(), prods);
}

/// Re-expresses A in the basis u_i = Σ_j M[i][j] e_j (rows of M are the new
/// basis vectors in old coordinates). Labels are kept positionally.
inline AlgebraPresentation change_of_basis(const AlgebraPresentation& A,
                                           const std::vector<Vector>& new_basis) {
  int n = A.dim();
  if (static_cast<int>(new_basis.size()) != n)
    throw Error("change_of_basis: need exactly dim basis vectors");
  for (const Vector& r : new_basis) A.check_element(r);
  std::vector<Vector> inv = invert_matrix(new_basis);  // throws if singular

  ProductTable table;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Vector w = A.product(new_basis[static_cast<std::size_t>(i)],
                           new_basis[static_cast<std::size_t>(j)]);
      if (w.is_zero()) continue;
      Vector coords = linear_combination(inv, w);  // w = coords · M
      std::map<int, Scalar> row;
      for (int k = 0; k < n; ++k)
        if (!coords[k].is_zero()) row.emplace(k, coords[k]);
      table.emplace(std::make_pair(i, j), std::move(row));
    }
  }
  return AlgebraPresentation::make(A.field(), A.labels(), table);
}

/// Reduces a rational presentation mod p. Fails if any structure constant
/// has a denominator divisible by p. Reducing an F_p presentation to the
/// same p is the identity.
inline AlgebraPresentation reduce_mod(const AlgebraPresentation& A, std::uint64_t p) {
  FieldDescriptor target = FieldDescriptor::prime(p);
  if (A.field().is_prime_field()) {
    if (A.field().modulus() != p)
      throw Error("cannot reduce F" + std::to_string(A.field().modulus()) + " mod " +
                  std::to_string(p));
    return A;
  }
  ProductTable table;
  for (const auto& [ij, row] : A.products()) {
    std::map<int, Scalar> out;
    for (const auto& [k, c] : row) {
      const mpq_class& q = c.rational_value();
      std::uint64_t den =
          mpz_fdiv_ui(q.get_den().get_mpz_t(), static_cast<unsigned long>(p));
      if (den == 0)
        throw Error("denominator of structure constant vanishes mod " +
                    std::to_string(p));
      std::uint64_t num =
          mpz_fdiv_ui(q.get_num().get_mpz_t(), static_cast<unsigned long>(p));
      Scalar r = Scalar::residue(target, detail::mul_mod(num, detail::inv_mod(den, p), p));
      if (!r.is_zero()) out.emplace(k, r);
    }
    if (!out.empty()) table.emplace(ij, std::move(out));
  }
  return AlgebraPresentation::make(target, A.labels(), table);
}

}  // namespace basisdiv
