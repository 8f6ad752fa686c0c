#pragma once

#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "basisdiv/algebra.hpp"

namespace basisdiv {

/// Per-basis combinatorial data read off the structure constants.
///
/// partners[i]      : indices j with e_i e_j != 0 or e_j e_i != 0.
/// partner_span[i]  : span of { e_j : j in partners[i] } (zero when empty).
/// producers[i]     : indices appearing as a factor of some basis product
///                    whose i-th coordinate is nonzero.
/// producer_products[i] : the nonzero products e_j e_k over ordered pairs of
///                    producers, deduplicated by canonical coordinates.
struct BasisProfile {
  std::vector<std::set<int>> partners;
  std::vector<Subspace> partner_span;
  std::vector<std::set<int>> producers;
  std::vector<std::vector<Vector>> producer_products;
};

inline BasisProfile basis_profile(const AlgebraPresentation& A) {
  int n = A.dim();
  BasisProfile prof;
  prof.partners.resize(static_cast<std::size_t>(n));
  prof.producers.resize(static_cast<std::size_t>(n));
  for (const auto& [ij, row] : A.products()) {
    auto [i, j] = ij;
    prof.partners[static_cast<std::size_t>(i)].insert(j);
    prof.partners[static_cast<std::size_t>(j)].insert(i);
    for (const auto& [k, c] : row) {
      (void)c;  // stored entries are nonzero
      prof.producers[static_cast<std::size_t>(k)].insert(i);
      prof.producers[static_cast<std::size_t>(k)].insert(j);
    }
  }
  for (int i = 0; i < n; ++i)
    prof.partner_span.push_back(coordinate_subspace(
        A.field(), n, prof.partners[static_cast<std::size_t>(i)]));

  prof.producer_products.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::vector<Vector>& out = prof.producer_products[static_cast<std::size_t>(i)];
    for (int j : prof.producers[static_cast<std::size_t>(i)])
      for (int k : prof.producers[static_cast<std::size_t>(i)]) {
        Vector p = A.basis_product(j, k);
        if (p.is_zero()) continue;
        bool dup = false;
        for (const Vector& q : out)
          if (q == p) { dup = true; break; }
        if (!dup) out.push_back(std::move(p));
      }
    std::sort(out.begin(), out.end(),
              [](const Vector& a, const Vector& b) { return Vector::compare(a, b) < 0; });
  }
  return prof;
}

enum class CheckStatus { Holds, Fails, Unknown };

inline std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Holds: return "holds";
    case CheckStatus::Fails: return "fails";
    default: return "unknown";
  }
}

/// Exhaustive: decide exactly (prime fields only).
/// RefuteOnly: search bounded primitive integer combinations; sound for
/// refutation over any field, Unknown when nothing is found.
struct CheckMode {
  enum class Kind { Exhaustive, RefuteOnly };
  Kind kind = Kind::Exhaustive;
  int bound = 2;

  static CheckMode exhaustive() { return {Kind::Exhaustive, 0}; }
  static CheckMode refute(int bound = 2) { return {Kind::RefuteOnly, bound}; }
  bool is_exhaustive() const { return kind == Kind::Exhaustive; }
};

/// A concrete violation: left*right = product is nonzero, yet `missing`
/// (one of the two factors) is not in the ideal generated by `product`.
/// Replayable with product / ideal_closure / contains alone.
struct DivisionWitness {
  int basis_index = 0;
  std::string rule;
  Vector left, right, product, missing;
};

struct DivisionVerdict {
  CheckStatus status = CheckStatus::Unknown;
  std::optional<DivisionWitness> witness;
  CheckMode mode;
};

enum class DivisionKind { Weak, Semi, IDivision };

inline std::string to_string(DivisionKind k) {
  switch (k) {
    case DivisionKind::Weak: return "weak-division";
    case DivisionKind::Semi: return "semi-division";
    default: return "i-division";
  }
}

namespace detail {

// Memoizes ideal closures of single generators within one check run; the
// same product vectors recur constantly.
class ClosureCache {
 public:
  explicit ClosureCache(const AlgebraPresentation& A) : A_(A) {}

  const Subspace& of(const Vector& c) {
    std::string key;
    for (int i = 0; i < c.dim(); ++i) {
      key += c[i].render();
      key += ',';
    }
    auto it = cache_.find(key);
    if (it == cache_.end())
      it = cache_.emplace(std::move(key), ideal_closure(A_, {c})).first;
    return it->second;
  }

 private:
  const AlgebraPresentation& A_;
  std::map<std::string, Subspace> cache_;
};

// Enumerates vectors supported on `support` with the first nonzero
// coordinate scaled to 1 (one representative per projective point).
// The callback returns false to stop early.
inline bool for_each_projective_rep(const FieldDescriptor& field, int dim,
                                    const std::vector<int>& support,
                                    const std::function<bool(const Vector&)>& fn) {
  std::uint64_t q = field.modulus();
  int d = static_cast<int>(support.size());
  for (int lead = 0; lead < d; ++lead) {
    int tail = d - lead - 1;
    std::vector<std::uint64_t> digits(static_cast<std::size_t>(tail), 0);
    while (true) {
      Vector v(field, dim);
      v[support[static_cast<std::size_t>(lead)]] = Scalar::one(field);
      for (int t = 0; t < tail; ++t)
        v[support[static_cast<std::size_t>(lead + 1 + t)]] =
            Scalar::residue(field, digits[static_cast<std::size_t>(t)]);
      if (!fn(v)) return false;
      int pos = tail - 1;
      while (pos >= 0 && digits[static_cast<std::size_t>(pos)] == q - 1) {
        digits[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++digits[static_cast<std::size_t>(pos)];
    }
  }
  return true;
}

// Primitive integer tuples in [-bound, bound]^support, first nonzero
// coordinate positive, gcd one, in ascending odometer order; mapped into the
// field (tuples collapsing to zero there are skipped).
inline bool for_each_primitive_bounded(const FieldDescriptor& field, int dim,
                                       const std::vector<int>& support, int bound,
                                       const std::function<bool(const Vector&)>& fn) {
  int d = static_cast<int>(support.size());
  if (d == 0) return true;
  std::vector<long long> t(static_cast<std::size_t>(d), -bound);
  while (true) {
    long long first = 0;
    long long g = 0;
    for (long long v : t) {
      if (first == 0) first = v;
      g = std::gcd(g, v < 0 ? -v : v);
    }
    if (first > 0 && g == 1) {
      Vector v(field, dim);
      for (int k = 0; k < d; ++k)
        v[support[static_cast<std::size_t>(k)]] =
            Scalar::from_integer(field, t[static_cast<std::size_t>(k)]);
      if (!v.is_zero() && !fn(v)) return false;
    }
    int pos = d - 1;
    while (pos >= 0 && t[static_cast<std::size_t>(pos)] == bound) {
      t[static_cast<std::size_t>(pos)] = -bound;
      --pos;
    }
    if (pos < 0) break;
    ++t[static_cast<std::size_t>(pos)];
  }
  return true;
}

// Runs fn over the candidate x's for one basis index, per mode.
inline bool for_each_candidate(const AlgebraPresentation& A, const std::set<int>& support,
                               const CheckMode& mode,
                               const std::function<bool(const Vector&)>& fn) {
  std::vector<int> sup(support.begin(), support.end());
  if (mode.is_exhaustive())
    return for_each_projective_rep(A.field(), A.dim(), sup, fn);
  return for_each_primitive_bounded(A.field(), A.dim(), sup, mode.bound, fn);
}

struct FactorScan {
  std::optional<DivisionWitness> witness;
  // Checks both product orders of (e_i, x); returns false once a witness is
  // recorded so enumerations stop.
  bool test(const AlgebraPresentation& A, ClosureCache& cache, int i, const Vector& x,
            const std::string& rule) {
    Vector e = A.basis_vector(i);
    const Vector* pairs[2][2] = {{&e, &x}, {&x, &e}};
    for (auto& pr : pairs) {
      Vector c = A.product(*pr[0], *pr[1]);
      if (c.is_zero()) continue;
      const Subspace& ideal = cache.of(c);
      const Vector* missing = nullptr;
      if (!ideal.contains(e)) missing = &e;
      else if (!ideal.contains(x)) missing = &x;
      if (missing) {
        witness = DivisionWitness{i, rule, *pr[0], *pr[1], c, *missing};
        return false;
      }
    }
    return true;
  }
};

}  // namespace detail

inline void require_mode_valid(const AlgebraPresentation& A, const CheckMode& mode) {
  if (mode.is_exhaustive() && A.field().is_rationals())
    throw Error("exhaustive checking requires a prime field; use refutation mode over Q");
}

/// Weak-division check of the presentation basis: whenever e_i x or x e_i is
/// a nonzero c for x in the partner span of e_i, both e_i and x must lie in
/// the ideal generated by c.
inline DivisionVerdict check_weak_division(const AlgebraPresentation& A,
                                           const BasisProfile& profile,
                                           const CheckMode& mode) {
  require_mode_valid(A, mode);
  if (A.is_zero_algebra()) return {CheckStatus::Holds, std::nullopt, mode};
  detail::ClosureCache cache(A);
  detail::FactorScan scan;
  for (int i = 0; i < A.dim() && !scan.witness; ++i) {
    const std::set<int>& sup = profile.partners[static_cast<std::size_t>(i)];
    if (sup.empty()) continue;
    detail::for_each_candidate(A, sup, mode, [&](const Vector& x) {
      return scan.test(A, cache, i, x, "weak-division");
    });
  }
  if (scan.witness) return {CheckStatus::Fails, scan.witness, mode};
  return {mode.is_exhaustive() ? CheckStatus::Holds : CheckStatus::Unknown,
          std::nullopt, mode};
}

/// i-division check: same shape as the weak check but x ranges over the
/// whole algebra.
inline DivisionVerdict check_i_division(const AlgebraPresentation& A,
                                        const CheckMode& mode) {
  require_mode_valid(A, mode);
  if (A.is_zero_algebra()) return {CheckStatus::Holds, std::nullopt, mode};
  std::set<int> all;
  for (int i = 0; i < A.dim(); ++i) all.insert(i);
  detail::ClosureCache cache(A);
  detail::FactorScan scan;
  for (int i = 0; i < A.dim() && !scan.witness; ++i)
    detail::for_each_candidate(A, all, mode, [&](const Vector& x) {
      return scan.test(A, cache, i, x, "i-division");
    });
  if (scan.witness) return {CheckStatus::Fails, scan.witness, mode};
  return {mode.is_exhaustive() ? CheckStatus::Holds : CheckStatus::Unknown,
          std::nullopt, mode};
}

/// Semi-division check: weak-division plus the finite product clause over
/// producer products. The clause is exact in every mode; only the weak part
/// inherits the mode's Unknown.
inline DivisionVerdict check_semi_division(const AlgebraPresentation& A,
                                           const BasisProfile& profile,
                                           const CheckMode& mode) {
  require_mode_valid(A, mode);
  if (A.is_zero_algebra()) return {CheckStatus::Holds, std::nullopt, mode};
  DivisionVerdict weak = check_weak_division(A, profile, mode);
  if (weak.status == CheckStatus::Fails) return {CheckStatus::Fails, weak.witness, mode};

  detail::ClosureCache cache(A);
  for (int i = 0; i < A.dim(); ++i) {
    for (const Vector& b : profile.producer_products[static_cast<std::size_t>(i)]) {
      for (int j : profile.partners[static_cast<std::size_t>(i)]) {
        Vector ej = A.basis_vector(j);
        const Vector* pairs[2][2] = {{&b, &ej}, {&ej, &b}};
        for (auto& pr : pairs) {
          Vector c = A.product(*pr[0], *pr[1]);
          if (c.is_zero()) continue;
          const Subspace& ideal = cache.of(c);
          const Vector* missing = nullptr;
          if (!ideal.contains(ej)) missing = &ej;
          else if (!ideal.contains(b)) missing = &b;
          if (missing)
            return {CheckStatus::Fails,
                    DivisionWitness{i, "semi-division-products", *pr[0], *pr[1], c,
                                    *missing},
                    mode};
        }
      }
    }
  }
  return {weak.status, std::nullopt, mode};
}

inline DivisionVerdict check_division(const AlgebraPresentation& A, DivisionKind kind,
                                      const CheckMode& mode) {
  switch (kind) {
    case DivisionKind::Weak: return check_weak_division(A, basis_profile(A), mode);
    case DivisionKind::Semi: return check_semi_division(A, basis_profile(A), mode);
    default: return check_i_division(A, mode);
  }
}

/// Replays a witness against the definitions; true when it genuinely
/// violates the claimed rule.
inline bool replay_witness(const AlgebraPresentation& A, const DivisionWitness& w) {
  if (A.product(w.left, w.right) != w.product) return false;
  if (w.product.is_zero()) return false;
  if (!(w.missing == w.left || w.missing == w.right)) return false;
  return !ideal_closure(A, {w.product}).contains(w.missing);
}

}  // namespace basisdiv
