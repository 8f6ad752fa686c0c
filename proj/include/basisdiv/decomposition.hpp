#pragma once

#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "basisdiv/oracle.hpp"

namespace basisdiv {

namespace detail {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
  // classes sorted by least member, members ascending
  std::vector<std::vector<int>> classes() {
    std::map<int, std::vector<int>> by_root;
    for (int x = 0; x < static_cast<int>(parent.size()); ++x)
      by_root[find(x)].push_back(x);
    std::vector<std::vector<int>> out;
    for (auto& [root, members] : by_root) out.push_back(std::move(members));
    return out;
  }
};

inline void validate_partition(const std::vector<std::vector<int>>& classes, int n,
                               const char* what) {
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (const auto& cls : classes) {
    if (cls.empty()) throw Error(std::string(what) + ": empty class");
    for (int i : cls) {
      if (i < 0 || i >= n) throw Error(std::string(what) + ": index out of range");
      if (seen[static_cast<std::size_t>(i)])
        throw Error(std::string(what) + ": index repeated across classes");
      seen[static_cast<std::size_t>(i)] = true;
    }
  }
  for (bool b : seen)
    if (!b) throw Error(std::string(what) + ": indices not covered");
}

}  // namespace detail

/// The three nested partitions produced by the connection construction:
/// level 1 partitions basis indices, level 2 groups level-1 classes by
/// nonzero mutual block products, level 3 groups level-2 classes by nonzero
/// projections of block squares. Edge lists are retained for audit.
struct ConnectionLevels {
  std::vector<std::vector<int>> level1;  // classes of basis indices
  std::vector<std::vector<int>> level2;  // classes of level-1 class ids
  std::vector<std::vector<int>> level3;  // classes of level-2 class ids
  std::vector<std::pair<int, int>> level1_edges;  // between basis indices
  std::vector<std::pair<int, int>> level2_edges;  // between level-1 class ids
  std::vector<std::pair<int, int>> level3_edges;  // between level-2 class ids

  std::vector<std::vector<int>> level2_index_classes() const {
    std::vector<std::vector<int>> out;
    for (const auto& group : level2) {
      std::vector<int> merged;
      for (int cid : group) {
        const auto& cls = level1[static_cast<std::size_t>(cid)];
        merged.insert(merged.end(), cls.begin(), cls.end());
      }
      std::sort(merged.begin(), merged.end());
      out.push_back(std::move(merged));
    }
    return out;
  }

  std::vector<std::vector<int>> final_index_classes() const {
    std::vector<std::vector<int>> l2 = level2_index_classes();
    std::vector<std::vector<int>> out;
    for (const auto& group : level3) {
      std::vector<int> merged;
      for (int cid : group) {
        const auto& cls = l2[static_cast<std::size_t>(cid)];
        merged.insert(merged.end(), cls.begin(), cls.end());
      }
      std::sort(merged.begin(), merged.end());
      out.push_back(std::move(merged));
    }
    return out;
  }
};

/// Computes the connection levels. The default level-1 partition is the
/// connected components of the graph with an edge {i, j} whenever
/// e_i e_j != 0 or e_j e_i != 0; pass `level1_override` to plug in another
/// partition (everything downstream is partition-agnostic).
inline ConnectionLevels connection_levels(
    const AlgebraPresentation& A,
    const std::optional<std::vector<std::vector<int>>>& level1_override = std::nullopt) {
  int n = A.dim();
  ConnectionLevels out;

  if (level1_override) {
    detail::validate_partition(*level1_override, n, "level-1 partition");
    out.level1 = *level1_override;
  } else {
    detail::UnionFind uf(n);
    std::set<std::pair<int, int>> edges;
    for (const auto& [ij, row] : A.products()) {
      (void)row;
      auto [i, j] = ij;
      if (i != j) edges.insert({std::min(i, j), std::max(i, j)});
      uf.unite(i, j);
    }
    out.level1 = uf.classes();
    out.level1_edges.assign(edges.begin(), edges.end());
  }

  int n1 = static_cast<int>(out.level1.size());
  std::vector<Subspace> blocks1;
  for (const auto& cls : out.level1)
    blocks1.push_back(
        coordinate_subspace(A.field(), n, std::set<int>(cls.begin(), cls.end())));

  // level 2: nonzero products between distinct level-1 blocks, in either order
  detail::UnionFind uf2(n1);
  for (int a = 0; a < n1; ++a)
    for (int b = a + 1; b < n1; ++b) {
      bool linked = product_of_subspaces(A, blocks1[static_cast<std::size_t>(a)],
                                         blocks1[static_cast<std::size_t>(b)])
                        .rank() > 0 ||
                    product_of_subspaces(A, blocks1[static_cast<std::size_t>(b)],
                                         blocks1[static_cast<std::size_t>(a)])
                        .rank() > 0;
      if (linked) {
        out.level2_edges.emplace_back(a, b);
        uf2.unite(a, b);
      }
    }
  out.level2 = uf2.classes();

  // level 3: the square of one level-2 block projects nontrivially onto the
  // other, in either direction
  std::vector<std::vector<int>> idx2 = out.level2_index_classes();
  int n2 = static_cast<int>(idx2.size());
  std::vector<Subspace> squares;
  std::vector<std::set<int>> idxsets;
  for (const auto& cls : idx2) {
    std::set<int> s(cls.begin(), cls.end());
    Subspace block = coordinate_subspace(A.field(), n, s);
    squares.push_back(product_of_subspaces(A, block, block));
    idxsets.push_back(std::move(s));
  }
  auto projects_into = [&](const Subspace& sq, const std::set<int>& target) {
    for (const Vector& r : sq.rows())
      for (int i : target)
        if (!r[i].is_zero()) return true;
    return false;
  };
  detail::UnionFind uf3(n2);
  for (int a = 0; a < n2; ++a)
    for (int b = a + 1; b < n2; ++b) {
      bool linked = projects_into(squares[static_cast<std::size_t>(a)],
                                  idxsets[static_cast<std::size_t>(b)]) ||
                    projects_into(squares[static_cast<std::size_t>(b)],
                                  idxsets[static_cast<std::size_t>(a)]);
      if (linked) {
        out.level3_edges.emplace_back(a, b);
        uf3.unite(a, b);
      }
    }
  out.level3 = uf3.classes();
  return out;
}

enum class SemisimpleVerdict { Semisimple, NotSemisimple, Inconclusive };

inline std::string to_string(SemisimpleVerdict v) {
  switch (v) {
    case SemisimpleVerdict::Semisimple: return "semisimple";
    case SemisimpleVerdict::NotSemisimple: return "not semisimple";
    default: return "inconclusive";
  }
}

struct BlockCheck {
  bool ideal = false;
  bool pairwise_zero = false;
  std::optional<bool> oracle_simple;
};

struct DecompositionReport {
  ConnectionLevels levels;
  std::vector<Subspace> blocks;
  std::vector<BlockCheck> block_checks;
  SemisimpleVerdict verdict = SemisimpleVerdict::Inconclusive;
  std::string reason;
  int annihilator_rank = -1;
  std::optional<DivisionWitness> witness;            // failed division check
  std::optional<std::vector<Vector>> witness_basis;  // all-bases witness
};

/// Pure decomposition: blocks spanned by the final connection classes.
/// Every block must be an ideal and distinct blocks must multiply to zero;
/// both facts hold for any level-1 partition, so a violation is an internal
/// inconsistency and throws.
inline DecompositionReport decompose(
    const AlgebraPresentation& A,
    const std::optional<std::vector<std::vector<int>>>& level1_override = std::nullopt) {
  DecompositionReport rep;
  rep.levels = connection_levels(A, level1_override);
  for (const auto& cls : rep.levels.final_index_classes())
    rep.blocks.push_back(
        coordinate_subspace(A.field(), A.dim(), std::set<int>(cls.begin(), cls.end())));
  rep.block_checks.resize(rep.blocks.size());

  for (std::size_t k = 0; k < rep.blocks.size(); ++k) {
    if (!is_ideal(A, rep.blocks[k]))
      throw Error("internal inconsistency: decomposition block is not an ideal");
    rep.block_checks[k].ideal = true;
  }
  for (std::size_t a = 0; a < rep.blocks.size(); ++a)
    for (std::size_t b = a + 1; b < rep.blocks.size(); ++b)
      if (product_of_subspaces(A, rep.blocks[a], rep.blocks[b]).rank() != 0 ||
          product_of_subspaces(A, rep.blocks[b], rep.blocks[a]).rank() != 0)
        throw Error("internal inconsistency: nonzero product between distinct blocks");
  for (auto& bc : rep.block_checks) bc.pairwise_zero = true;

  rep.verdict = SemisimpleVerdict::Inconclusive;
  rep.reason = "decomposition only; no semisimplicity hypothesis checked";
  return rep;
}

enum class BasisMode { GivenBasis, AllBases };

/// Semisimplicity decision: zero annihilator plus a semi-division basis.
/// GivenBasis examines only the presentation basis (a failing basis proves
/// nothing, hence Inconclusive); AllBases exhausts bases over a prime field.
inline DecompositionReport check_semisimple_via_theorem(const AlgebraPresentation& A,
                                                        BasisMode mode,
                                                        const OracleLimits& lim = {}) {
  if (mode == BasisMode::AllBases && A.field().is_rationals())
    throw Error("all-bases mode requires a prime field");

  DecompositionReport rep = decompose(A);
  Subspace ann = annihilator(A);
  rep.annihilator_rank = ann.rank();
  if (ann.rank() > 0) {
    rep.verdict = SemisimpleVerdict::NotSemisimple;
    rep.reason = "nonzero annihilator (rank " + std::to_string(ann.rank()) + ")";
    return rep;
  }

  if (mode == BasisMode::GivenBasis) {
    CheckMode cm = A.field().is_prime_field() ? CheckMode::exhaustive()
                                              : CheckMode::refute();
    DivisionVerdict v = check_semi_division(A, basis_profile(A), cm);
    switch (v.status) {
      case CheckStatus::Holds: {
        rep.verdict = SemisimpleVerdict::Semisimple;
        rep.reason = "zero annihilator and the presentation basis is semi-division";
        bool oracle_available =
            A.field().is_prime_field() &&
            detail::checked_pow(A.field().modulus(), A.dim()) <= lim.subspace_ceiling;
        if (oracle_available)
          for (std::size_t k = 0; k < rep.blocks.size(); ++k)
            rep.block_checks[k].oracle_simple = is_simple_as_algebra(A, rep.blocks[k], lim);
        break;
      }
      case CheckStatus::Fails:
        rep.verdict = SemisimpleVerdict::Inconclusive;
        rep.reason =
            "presentation basis is not semi-division; existence over all bases undecided";
        rep.witness = v.witness;
        break;
      case CheckStatus::Unknown:
        rep.verdict = SemisimpleVerdict::Inconclusive;
        rep.reason = "semi-division undecided over Q (refutation bound exhausted)";
        break;
    }
    return rep;
  }

  ExistsBasisResult ex = exists_division_basis(A, DivisionKind::Semi, lim);
  if (ex.exists) {
    rep.verdict = SemisimpleVerdict::Semisimple;
    rep.reason = "zero annihilator and a semi-division basis exists";
    rep.witness_basis = ex.basis;
  } else {
    rep.verdict = SemisimpleVerdict::NotSemisimple;
    rep.reason = "no semi-division basis";
  }
  return rep;
}

enum class SimpleVerdict { Simple, NotSimple, Inconclusive };

inline std::string to_string(SimpleVerdict v) {
  switch (v) {
    case SimpleVerdict::Simple: return "simple";
    case SimpleVerdict::NotSimple: return "not simple";
    default: return "inconclusive";
  }
}

struct SimplicityReport {
  SimpleVerdict verdict = SimpleVerdict::Inconclusive;
  std::string reason;
  int annihilator_rank = -1;
  std::optional<DivisionWitness> witness;
  std::optional<std::vector<Vector>> witness_basis;
};

/// Simplicity decision: nonzero product, zero annihilator and an i-division
/// basis. Mirrors check_semisimple_via_theorem.
inline SimplicityReport check_simple_via_corollary(const AlgebraPresentation& A,
                                                   BasisMode mode,
                                                   const OracleLimits& lim = {}) {
  if (mode == BasisMode::AllBases && A.field().is_rationals())
    throw Error("all-bases mode requires a prime field");

  SimplicityReport rep;
  if (A.is_zero_algebra()) {
    rep.verdict = SimpleVerdict::NotSimple;
    rep.reason = "the product is identically zero";
    rep.annihilator_rank = A.dim();
    return rep;
  }
  Subspace ann = annihilator(A);
  rep.annihilator_rank = ann.rank();
  if (ann.rank() > 0) {
    rep.verdict = SimpleVerdict::NotSimple;
    rep.reason = "nonzero annihilator (rank " + std::to_string(ann.rank()) + ")";
    return rep;
  }

  if (mode == BasisMode::GivenBasis) {
    CheckMode cm = A.field().is_prime_field() ? CheckMode::exhaustive()
                                              : CheckMode::refute();
    DivisionVerdict v = check_i_division(A, cm);
    switch (v.status) {
      case CheckStatus::Holds:
        rep.verdict = SimpleVerdict::Simple;
        rep.reason = "zero annihilator and the presentation basis is i-division";
        break;
      case CheckStatus::Fails:
        rep.verdict = SimpleVerdict::Inconclusive;
        rep.reason =
            "presentation basis is not i-division; existence over all bases undecided";
        rep.witness = v.witness;
        break;
      case CheckStatus::Unknown:
        rep.verdict = SimpleVerdict::Inconclusive;
        rep.reason = "i-division undecided over Q (refutation bound exhausted)";
        break;
    }
    return rep;
  }

  ExistsBasisResult ex = exists_division_basis(A, DivisionKind::IDivision, lim);
  if (ex.exists) {
    rep.verdict = SimpleVerdict::Simple;
    rep.reason = "zero annihilator and an i-division basis exists";
    rep.witness_basis = ex.basis;
  } else {
    rep.verdict = SimpleVerdict::NotSimple;
    rep.reason = "no i-division basis";
  }
  return rep;
}

/// Concatenates echelon bases of pairwise-independent ideals summing
/// directly to A into a change-of-basis matrix, and re-expresses A in it.
/// When the inputs are simple ideals the resulting presentation basis is
/// semi-division.
inline std::pair<std::vector<Vector>, AlgebraPresentation> semi_division_basis_from_ideals(
    const AlgebraPresentation& A, const std::vector<Subspace>& ideals) {
  int total = 0;
  std::vector<Vector> rows;
  for (const Subspace& I : ideals) {
    if (!is_ideal(A, I)) throw Error("input subspace is not an ideal");
    total += I.rank();
    rows.insert(rows.end(), I.rows().begin(), I.rows().end());
  }
  Subspace stacked = Subspace::span(A.field(), A.dim(), rows);
  if (stacked.rank() < total) throw Error("ideal sum is not direct");
  if (total != A.dim()) throw Error("ideals do not sum to the whole algebra");
  return {rows, change_of_basis(A, rows)};
}

/// DOT rendering of the three edge level lists; final blocks become
/// clusters. Audit aid for the CLI's --dot flag.
inline std::string to_dot(const ConnectionLevels& levels,
                          const std::vector<std::string>& labels) {
  auto quoted = [&](int i) { return "\"" + labels[static_cast<std::size_t>(i)] + "\""; };
  std::string out = "graph connections {\n";
  std::vector<std::vector<int>> finals = levels.final_index_classes();
  for (std::size_t k = 0; k < finals.size(); ++k) {
    out += "  subgraph cluster_" + std::to_string(k) + " {\n";
    out += "    label=\"block " + std::to_string(k) + "\";\n";
    for (int i : finals[k]) out += "    " + quoted(i) + ";\n";
    out += "  }\n";
  }
  for (auto [i, j] : levels.level1_edges)
    out += "  " + quoted(i) + " -- " + quoted(j) + " [style=solid, label=\"L1\"];\n";
  auto representative1 = [&](int cid) { return levels.level1[static_cast<std::size_t>(cid)].front(); };
  for (auto [a, b] : levels.level2_edges)
    out += "  " + quoted(representative1(a)) + " -- " + quoted(representative1(b)) +
           " [style=dashed, label=\"L2\"];\n";
  std::vector<std::vector<int>> idx2 = levels.level2_index_classes();
  for (auto [a, b] : levels.level3_edges)
    out += "  " + quoted(idx2[static_cast<std::size_t>(a)].front()) + " -- " +
           quoted(idx2[static_cast<std::size_t>(b)].front()) +
           " [style=dotted, label=\"L3\"];\n";
  out += "}\n";
  return out;
}

}  // namespace basisdiv
