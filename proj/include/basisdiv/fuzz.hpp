#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "basisdiv/decomposition.hpp"

namespace basisdiv {

struct PropertyViolation {
  std::string property;
  std::string detail;
};

/// Everything the differential properties consume, computed once per
/// instance. Prime fields within the enumeration ceilings only.
struct InstanceFacts {
  int ann_rank = 0;
  bool oracle_ss = false;
  bool oracle_simple = false;
  std::optional<std::vector<Subspace>> family;
  bool exists_semi = false;
  bool exists_i = false;
  CheckStatus weak_given = CheckStatus::Unknown;
  CheckStatus semi_given = CheckStatus::Unknown;
  CheckStatus i_given = CheckStatus::Unknown;
};

inline InstanceFacts gather_facts(const AlgebraPresentation& A,
                                  const OracleLimits& lim = {}) {
  InstanceFacts f;
  f.ann_rank = annihilator(A).rank();
  f.family = oracle_simple_decomposition(A, lim);
  f.oracle_ss = f.family.has_value();
  f.oracle_simple = oracle_is_simple(A, lim);
  f.exists_semi = exists_division_basis(A, DivisionKind::Semi, lim).exists;
  f.exists_i = exists_division_basis(A, DivisionKind::IDivision, lim).exists;
  BasisProfile prof = basis_profile(A);
  f.weak_given = check_weak_division(A, prof, CheckMode::exhaustive()).status;
  f.semi_given = check_semi_division(A, prof, CheckMode::exhaustive()).status;
  f.i_given = check_i_division(A, CheckMode::exhaustive()).status;
  return f;
}

namespace detail {

inline bool theorem_mismatch(const AlgebraPresentation& A, const OracleLimits& lim) {
  bool lhs = annihilator(A).rank() == 0 &&
             exists_division_basis(A, DivisionKind::Semi, lim).exists;
  return lhs != oracle_is_semisimple(A, lim);
}

inline bool corollary_mismatch(const AlgebraPresentation& A, const OracleLimits& lim) {
  bool lhs = annihilator(A).rank() == 0 &&
             exists_division_basis(A, DivisionKind::IDivision, lim).exists;
  return lhs != oracle_is_simple(A, lim);
}

inline bool simple_all_bases_violated(const AlgebraPresentation& A,
                                      const OracleLimits& lim) {
  return oracle_is_simple(A, lim) &&
         !every_basis_satisfies(A, DivisionKind::IDivision, lim);
}

inline bool decomposition_invariants_violated(const AlgebraPresentation& A) {
  try {
    DecompositionReport rep = decompose(A);
    int total = 0;
    for (const Subspace& b : rep.blocks) total += b.rank();
    if (total != A.dim()) return true;
    std::vector<Vector> all_rows;
    for (const Subspace& b : rep.blocks)
      all_rows.insert(all_rows.end(), b.rows().begin(), b.rows().end());
    if (Subspace::span(A.field(), A.dim(), all_rows).rank() != A.dim()) return true;
    // nested partitions
    std::vector<std::vector<int>> finals = rep.levels.final_index_classes();
    detail::validate_partition(rep.levels.level1, A.dim(), "level-1");
    detail::validate_partition(rep.levels.level2,
                               static_cast<int>(rep.levels.level1.size()), "level-2");
    detail::validate_partition(rep.levels.level3,
                               static_cast<int>(rep.levels.level2.size()), "level-3");
    detail::validate_partition(finals, A.dim(), "final classes");
    return false;
  } catch (const Error&) {
    return true;
  }
}

inline bool block_simplicity_violated(const AlgebraPresentation& A,
                                      const OracleLimits& lim) {
  if (annihilator(A).rank() != 0) return false;
  if (check_semi_division(A, basis_profile(A), CheckMode::exhaustive()).status !=
      CheckStatus::Holds)
    return false;
  for (const Subspace& b : decompose(A).blocks)
    if (!is_simple_as_algebra(A, b, lim)) return true;
  return false;
}

inline bool level1_absorption_violated(const AlgebraPresentation& A,
                                       const OracleLimits& lim) {
  if (check_weak_division(A, basis_profile(A), CheckMode::exhaustive()).status !=
      CheckStatus::Holds)
    return false;
  std::vector<std::vector<int>> level1 = connection_levels(A).level1;
  std::vector<Subspace> blocks1;
  for (const auto& cls : level1)
    blocks1.push_back(
        coordinate_subspace(A.field(), A.dim(), std::set<int>(cls.begin(), cls.end())));
  auto class_of = [&](int i) -> const Subspace& {
    for (std::size_t c = 0; c < level1.size(); ++c)
      for (int m : level1[c])
        if (m == i) return blocks1[c];
    throw Error("index not covered by level-1 partition");
  };
  for (const Subspace& I : all_ideals(A, lim))
    for (int i = 0; i < A.dim(); ++i)
      if (I.contains(A.basis_vector(i)) && !I.contains(class_of(i))) return true;
  return false;
}

inline bool constructive_basis_violated(const AlgebraPresentation& A,
                                        const OracleLimits& lim) {
  std::optional<std::vector<Subspace>> family = oracle_simple_decomposition(A, lim);
  if (!family) return false;
  auto [rows, B] = semi_division_basis_from_ideals(A, *family);
  (void)rows;
  return check_semi_division(B, basis_profile(B), CheckMode::exhaustive()).status !=
         CheckStatus::Holds;
}

inline bool hierarchy_violated(const AlgebraPresentation& A) {
  BasisProfile prof = basis_profile(A);
  CheckStatus w = check_weak_division(A, prof, CheckMode::exhaustive()).status;
  CheckStatus s = check_semi_division(A, prof, CheckMode::exhaustive()).status;
  CheckStatus i = check_i_division(A, CheckMode::exhaustive()).status;
  if (i == CheckStatus::Holds && s != CheckStatus::Holds) return true;
  if (s == CheckStatus::Holds && w != CheckStatus::Holds) return true;
  return false;
}

inline bool ss_annihilator_violated(const AlgebraPresentation& A,
                                    const OracleLimits& lim) {
  return oracle_is_semisimple(A, lim) && annihilator(A).rank() != 0;
}

inline bool simple_implies_ss_violated(const AlgebraPresentation& A,
                                       const OracleLimits& lim) {
  return oracle_is_simple(A, lim) && !oracle_is_semisimple(A, lim);
}

}  // namespace detail

/// True when the named differential property is violated on A. Used both by
/// the battery and by the counterexample minimizer re-check.
inline bool violates_property(const AlgebraPresentation& A, const std::string& property,
                              const OracleLimits& lim = {}) {
  if (property == "theorem-equivalence") return detail::theorem_mismatch(A, lim);
  if (property == "corollary-equivalence") return detail::corollary_mismatch(A, lim);
  if (property == "simple-all-bases-i-division")
    return detail::simple_all_bases_violated(A, lim);
  if (property == "decomposition-invariants")
    return detail::decomposition_invariants_violated(A);
  if (property == "block-simplicity") return detail::block_simplicity_violated(A, lim);
  if (property == "level1-class-absorption")
    return detail::level1_absorption_violated(A, lim);
  if (property == "constructive-semi-basis")
    return detail::constructive_basis_violated(A, lim);
  if (property == "division-hierarchy") return detail::hierarchy_violated(A);
  if (property == "semisimple-zero-annihilator")
    return detail::ss_annihilator_violated(A, lim);
  if (property == "simple-implies-semisimple")
    return detail::simple_implies_ss_violated(A, lim);
  throw Error("unknown property: " + property);
}

inline const std::vector<std::string>& battery_properties() {
  static const std::vector<std::string> names = {
      "theorem-equivalence",
      "corollary-equivalence",
      "simple-all-bases-i-division",
      "decomposition-invariants",
      "block-simplicity",
      "level1-class-absorption",
      "constructive-semi-basis",
      "division-hierarchy",
      "semisimple-zero-annihilator",
      "simple-implies-semisimple",
  };
  return names;
}

/// Runs the full differential battery on one instance.
inline std::vector<PropertyViolation> check_instance_properties(
    const AlgebraPresentation& A, const OracleLimits& lim = {}) {
  std::vector<PropertyViolation> out;
  for (const std::string& name : battery_properties()) {
    try {
      if (violates_property(A, name, lim))
        out.push_back({name, "property violated"});
    } catch (const Error& e) {
      out.push_back({name, std::string("check aborted: ") + e.what()});
    }
  }
  return out;
}

/// Greedy structure-constant minimizer: repeatedly drops single entries
/// while the predicate keeps reporting a violation.
inline AlgebraPresentation minimize_counterexample(
    const AlgebraPresentation& A,
    const std::function<bool(const AlgebraPresentation&)>& still_violated) {
  AlgebraPresentation current = A;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::tuple<int, int, int>> entries;
    for (const auto& [ij, row] : current.products())
      for (const auto& [k, c] : row) {
        (void)c;
        entries.emplace_back(ij.first, ij.second, k);
      }
    for (const auto& [i, j, k] : entries) {
      ProductTable table = current.products();
      auto it = table.find({i, j});
      it->second.erase(k);
      if (it->second.empty()) table.erase(it);
      AlgebraPresentation cand =
          AlgebraPresentation::make(current.field(), current.labels(), table);
      bool violated = false;
      try {
        violated = still_violated(cand);
      } catch (const Error&) {
        violated = true;
      }
      if (violated) {
        current = std::move(cand);
        changed = true;
        break;
      }
    }
  }
  return current;
}

}  // namespace basisdiv
