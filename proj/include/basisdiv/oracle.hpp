#pragma once

#include <cstdlib>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "basisdiv/division.hpp"

namespace basisdiv {

/// Size guards for the brute-force enumerations. BASISDIV_CEILING, when set,
/// overrides both with one value.
struct OracleLimits {
  std::uint64_t subspace_ceiling = 256;      // bound on q^dim
  std::uint64_t basis_ceiling = 1'000'000;   // bound on the ordered-basis count

  static OracleLimits from_env() {
    OracleLimits lim;
    if (const char* s = std::getenv("BASISDIV_CEILING")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(s, &end, 10);
      if (end && *end == '\0' && v > 0) {
        lim.subspace_ceiling = v;
        lim.basis_ceiling = v;
      } else {
        throw Error("BASISDIV_CEILING must be a positive integer");
      }
    }
    return lim;
  }
};

namespace detail {

inline std::uint64_t checked_pow(std::uint64_t q, int n) {
  unsigned __int128 acc = 1;
  for (int i = 0; i < n; ++i) {
    acc *= q;
    if (acc > (unsigned __int128)1 << 62) return std::uint64_t{1} << 62;
  }
  return static_cast<std::uint64_t>(acc);
}

inline void require_prime_within(const FieldDescriptor& field, int dim,
                                 const OracleLimits& lim, const char* what) {
  if (!field.is_prime_field())
    throw Error(std::string(what) + " requires a prime field");
  if (checked_pow(field.modulus(), dim) > lim.subspace_ceiling)
    throw Error(std::string(what) + ": q^dim exceeds the enumeration ceiling");
}

// Vector with index `idx` in base-q digit order (coordinate k is digit k).
inline Vector decode_vector(const FieldDescriptor& field, int dim, std::uint64_t idx) {
  std::uint64_t q = field.modulus();
  Vector v(field, dim);
  for (int k = 0; k < dim; ++k) {
    v[k] = Scalar::residue(field, idx % q);
    idx /= q;
  }
  return v;
}

// Scales to leading coefficient one, renders rows, sorts: a canonical key
// for the basis as an unordered set of projective points.
inline std::string unordered_basis_key(const std::vector<Vector>& rows) {
  std::vector<std::string> parts;
  for (const Vector& r : rows) {
    Vector s = r;
    int lead = s.leading_index();
    Scalar c = s[lead];
    if (!c.is_one()) s *= c.inverse();
    std::string t;
    for (int i = 0; i < s.dim(); ++i) {
      t += s[i].render();
      t += ',';
    }
    parts.push_back(std::move(t));
  }
  std::sort(parts.begin(), parts.end());
  std::string key;
  for (const std::string& p : parts) {
    key += p;
    key += ';';
  }
  return key;
}

}  // namespace detail

/// Every subspace of F_q^dim, one canonical echelon matrix each, ordered by
/// rank, then pivot set, then free-entry assignment.
inline std::vector<Subspace> all_subspaces(const FieldDescriptor& field, int dim,
                                           const OracleLimits& lim = {}) {
  detail::require_prime_within(field, dim, lim, "subspace enumeration");
  std::uint64_t q = field.modulus();
  std::vector<Subspace> out;
  for (int r = 0; r <= dim; ++r) {
    // pivot column combinations in lexicographic order
    std::vector<int> piv(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) piv[static_cast<std::size_t>(i)] = i;
    while (true) {
      std::set<int> pivset(piv.begin(), piv.end());
      std::vector<std::pair<int, int>> free_slots;  // (row, col)
      for (int i = 0; i < r; ++i)
        for (int col = piv[static_cast<std::size_t>(i)] + 1; col < dim; ++col)
          if (!pivset.count(col)) free_slots.emplace_back(i, col);

      std::vector<std::uint64_t> digits(free_slots.size(), 0);
      while (true) {
        std::vector<Vector> rows;
        for (int i = 0; i < r; ++i) {
          Vector v(field, dim);
          v[piv[static_cast<std::size_t>(i)]] = Scalar::one(field);
          rows.push_back(std::move(v));
        }
        for (std::size_t s = 0; s < free_slots.size(); ++s)
          rows[static_cast<std::size_t>(free_slots[s].first)][free_slots[s].second] =
              Scalar::residue(field, digits[s]);
        out.push_back(Subspace::span(field, dim, rows));

        std::size_t pos = free_slots.size();
        while (pos > 0 && digits[pos - 1] == q - 1) digits[--pos] = 0;
        if (pos == 0) break;
        ++digits[pos - 1];
      }

      // next r-combination of [0, dim)
      int i = r - 1;
      while (i >= 0 && piv[static_cast<std::size_t>(i)] == dim - r + i) --i;
      if (i < 0) break;
      ++piv[static_cast<std::size_t>(i)];
      for (int t = i + 1; t < r; ++t)
        piv[static_cast<std::size_t>(t)] = piv[static_cast<std::size_t>(t - 1)] + 1;
    }
  }
  return out;
}

/// Every two-sided ideal of A, by filtering the full subspace lattice.
/// Always contains the zero subspace and A itself.
inline std::vector<Subspace> all_ideals(const AlgebraPresentation& A,
                                        const OracleLimits& lim = {}) {
  std::vector<Subspace> out;
  for (const Subspace& S : all_subspaces(A.field(), A.dim(), lim))
    if (is_ideal(A, S)) out.push_back(S);
  return out;
}

/// Simplicity of the subspace I regarded as an algebra in its own right
/// (restricted product): its product is nonzero and its only ideals, i.e.
/// subspaces S of I with SI + IS contained in S, are 0 and I. Note that an
/// ideal of A lying inside I is automatically an ideal of I in this sense,
/// but not conversely.
inline bool is_simple_as_algebra(const AlgebraPresentation& A, const Subspace& I,
                                 const OracleLimits& lim = {}) {
  int r = I.rank();
  if (r == 0) return false;
  bool nonzero_product = false;
  for (const Vector& u : I.rows()) {
    for (const Vector& v : I.rows())
      if (!A.product(u, v).is_zero()) { nonzero_product = true; break; }
    if (nonzero_product) break;
  }
  if (!nonzero_product) return false;

  int ideal_count = 0;
  for (const Subspace& C : all_subspaces(A.field(), r, lim)) {
    // lift the coefficient-space subspace into the ambient space
    std::vector<Vector> lifted;
    for (const Vector& c : C.rows()) lifted.push_back(linear_combination(I.rows(), c));
    Subspace S = Subspace::span(A.field(), A.dim(), lifted);
    bool closed = true;
    for (const Vector& s : S.rows()) {
      for (const Vector& u : I.rows()) {
        if (!S.contains(A.product(s, u)) || !S.contains(A.product(u, s))) {
          closed = false;
          break;
        }
      }
      if (!closed) break;
    }
    if (closed) ++ideal_count;
  }
  return ideal_count == 2;
}

/// True iff the product is nonzero and the only ideals are 0 and A.
inline bool oracle_is_simple(const AlgebraPresentation& A, const OracleLimits& lim = {}) {
  if (A.is_zero_algebra()) return false;
  return all_ideals(A, lim).size() == 2;
}

/// Searches for a family of simple ideals with direct sum A; returns the
/// first one found (deterministic order). Distinct simple ideals must
/// intersect trivially, which is asserted during the search.
inline std::optional<std::vector<Subspace>> oracle_simple_decomposition(
    const AlgebraPresentation& A, const OracleLimits& lim = {}) {
  std::vector<Subspace> candidates;
  for (const Subspace& I : all_ideals(A, lim))
    if (is_simple_as_algebra(A, I, lim)) candidates.push_back(I);

  for (std::size_t a = 0; a < candidates.size(); ++a)
    for (std::size_t b = a + 1; b < candidates.size(); ++b)
      if (intersect(candidates[a], candidates[b]).rank() != 0)
        throw Error("internal inconsistency: distinct simple ideals overlap");

  std::vector<Subspace> chosen;
  std::function<bool(std::size_t, const Subspace&)> search =
      [&](std::size_t from, const Subspace& span_so_far) -> bool {
    if (span_so_far.rank() == A.dim()) return true;
    for (std::size_t k = from; k < candidates.size(); ++k) {
      Subspace bigger = sum(span_so_far, candidates[k]);
      if (bigger.rank() != span_so_far.rank() + candidates[k].rank())
        continue;  // not direct
      chosen.push_back(candidates[k]);
      if (search(k + 1, bigger)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (search(0, Subspace::zero(A.field(), A.dim()))) return chosen;
  return std::nullopt;
}

inline bool oracle_is_semisimple(const AlgebraPresentation& A,
                                 const OracleLimits& lim = {}) {
  return oracle_simple_decomposition(A, lim).has_value();
}

/// Number of ordered bases of F_q^n, clamped at 2^62 on overflow.
inline std::uint64_t ordered_basis_count(std::uint64_t q, int n) {
  std::uint64_t qn = detail::checked_pow(q, n);
  unsigned __int128 acc = 1;
  for (int k = 0; k < n; ++k) {
    acc *= (qn - detail::checked_pow(q, k));
    if (acc > (unsigned __int128)1 << 62) return std::uint64_t{1} << 62;
  }
  return static_cast<std::uint64_t>(acc);
}

/// Enumerates every ordered basis of F_q^n exactly once, in ascending
/// digit-index order. The callback returns false to stop.
inline void for_each_ordered_basis(const FieldDescriptor& field, int n,
                                   const OracleLimits& lim,
                                   const std::function<bool(const std::vector<Vector>&)>& fn) {
  if (!field.is_prime_field()) throw Error("basis enumeration requires a prime field");
  if (ordered_basis_count(field.modulus(), n) > lim.basis_ceiling)
    throw Error("basis enumeration: ordered-basis count exceeds the ceiling");
  std::uint64_t total = detail::checked_pow(field.modulus(), n);
  std::vector<Vector> chosen;
  std::function<bool()> go = [&]() -> bool {
    if (static_cast<int>(chosen.size()) == n) return fn(chosen);
    Subspace sp = Subspace::span(field, n, chosen);
    for (std::uint64_t idx = 1; idx < total; ++idx) {
      Vector v = detail::decode_vector(field, n, idx);
      if (sp.contains(v)) continue;
      chosen.push_back(std::move(v));
      if (!go()) return false;
      chosen.pop_back();
    }
    return true;
  };
  go();
}

struct ExistsBasisResult {
  bool exists = false;
  std::optional<std::vector<Vector>> basis;
};

/// Decides "some basis of A satisfies the predicate" by exhausting bases.
/// Verdicts are invariant under reordering and rescaling of a basis, so one
/// representative per unordered, unscaled basis is checked.
inline ExistsBasisResult exists_division_basis(const AlgebraPresentation& A,
                                               DivisionKind kind,
                                               const OracleLimits& lim = {}) {
  ExistsBasisResult result;
  std::set<std::string> seen;
  for_each_ordered_basis(A.field(), A.dim(), lim, [&](const std::vector<Vector>& rows) {
    if (!seen.insert(detail::unordered_basis_key(rows)).second) return true;
    AlgebraPresentation B = change_of_basis(A, rows);
    if (check_division(B, kind, CheckMode::exhaustive()).status == CheckStatus::Holds) {
      result.exists = true;
      result.basis = rows;
      return false;
    }
    return true;
  });
  return result;
}

/// True iff every basis of A satisfies the predicate (same representative
/// reduction as above).
inline bool every_basis_satisfies(const AlgebraPresentation& A, DivisionKind kind,
                                  const OracleLimits& lim = {}) {
  bool all = true;
  std::set<std::string> seen;
  for_each_ordered_basis(A.field(), A.dim(), lim, [&](const std::vector<Vector>& rows) {
    if (!seen.insert(detail::unordered_basis_key(rows)).second) return true;
    AlgebraPresentation B = change_of_basis(A, rows);
    if (check_division(B, kind, CheckMode::exhaustive()).status != CheckStatus::Holds) {
      all = false;
      return false;
    }
    return true;
  });
  return all;
}

/// Seeded random structure-constant tables for differential testing.
struct FuzzConfig {
  FieldDescriptor field = FieldDescriptor::prime(2);
  int dim = 2;
  double sparsity = 0.3;   // probability that a given c_{ijk} is nonzero
  std::uint64_t seed = 0;
  std::uint64_t trials = 1;

  void validate() const {
    if (dim < 1 || dim > 4) throw Error("fuzz dimension must be in 1..4");
    if (sparsity < 0.0 || sparsity > 1.0) throw Error("sparsity must be in [0, 1]");
  }
};

/// Deterministic in the seed: entries are drawn in (i, j, k) order, each
/// nonzero with probability `sparsity`. Over a prime field values are
/// uniform over the nonzero residues; over Q they are uniform over the
/// nonzero integers in [-3, 3].
inline AlgebraPresentation random_algebra(const FuzzConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  auto nonzero_draw = [&]() -> bool {
    if (cfg.sparsity <= 0.0) { rng(); return false; }
    if (cfg.sparsity >= 1.0) { rng(); return true; }
    long double threshold = cfg.sparsity * 18446744073709551616.0L;  // 2^64
    return static_cast<long double>(rng()) < threshold;
  };
  auto value_draw = [&]() -> Scalar {
    if (cfg.field.is_prime_field()) {
      std::uint64_t q = cfg.field.modulus();
      return Scalar::residue(cfg.field, 1 + rng() % (q - 1));
    }
    static const long long pool[] = {-3, -2, -1, 1, 2, 3};
    return Scalar::from_integer(cfg.field, pool[rng() % 6]);
  };

  ProductTable table;
  for (int i = 0; i < cfg.dim; ++i)
    for (int j = 0; j < cfg.dim; ++j) {
      std::map<int, Scalar> row;
      for (int k = 0; k < cfg.dim; ++k)
        if (nonzero_draw()) row.emplace(k, value_draw());
      if (!row.empty()) table.emplace(std::make_pair(i, j), std::move(row));
    }

  std::vector<std::string> labels;
  for (int i = 1; i <= cfg.dim; ++i) labels.push_back("e" + std::to_string(i));
  return AlgebraPresentation::make(cfg.field, std::move(labels), table);
}

}  // namespace basisdiv
