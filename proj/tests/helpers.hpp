#pragma once

// Shared fixtures for the test suites: tiny presentation builders and the
// named corpus algebras.

#include <string>
#include <vector>

#include "basisdiv/algebra.hpp"

namespace testutil {

using namespace basisdiv;

inline Vector vec(const FieldDescriptor& f, const std::vector<long long>& xs) {
  std::vector<Scalar> coords;
  for (long long x : xs) coords.push_back(Scalar::from_integer(f, x));
  return Vector(f, std::move(coords));
}

struct Entry {
  int i, j, k;
  long long c;
};

inline AlgebraPresentation make_algebra(const FieldDescriptor& f,
                                        std::vector<std::string> labels,
                                        const std::vector<Entry>& entries) {
  ProductTable table;
  for (const Entry& e : entries)
    table[{e.i, e.j}].emplace(e.k, Scalar::from_integer(f, e.c));
  return AlgebraPresentation::make(f, std::move(labels), table);
}

// Example with products b1*b1 = b1 and b2*b2 = b1 + b2.
inline AlgebraPresentation e1_algebra(const FieldDescriptor& f) {
  return make_algebra(f, {"b1", "b2"},
                      {{0, 0, 0, 1}, {1, 1, 0, 1}, {1, 1, 1, 1}});
}

// Two orthogonal idempotents: e1*e1 = e1, e2*e2 = e2.
inline AlgebraPresentation d2_algebra(const FieldDescriptor& f) {
  return make_algebra(f, {"e1", "e2"}, {{0, 0, 0, 1}, {1, 1, 1, 1}});
}

// One-sided action u*v = v; fails weak-division.
inline AlgebraPresentation w_algebra(const FieldDescriptor& f) {
  return make_algebra(f, {"u", "v"}, {{0, 1, 1, 1}});
}

inline AlgebraPresentation zero_algebra(const FieldDescriptor& f, int dim) {
  std::vector<std::string> labels;
  for (int i = 1; i <= dim; ++i) labels.push_back("z" + std::to_string(i));
  return AlgebraPresentation::make(f, std::move(labels), {});
}

// sl2 bracket table on (e, f, h).
inline AlgebraPresentation sl2_algebra(const FieldDescriptor& f) {
  return make_algebra(f, {"e", "f", "h"},
                      {{0, 1, 2, 1},    // e f = h
                       {1, 0, 2, -1},   // f e = -h
                       {2, 0, 0, 2},    // h e = 2e
                       {0, 2, 0, -2},   // e h = -2e
                       {2, 1, 1, -2},   // h f = -2f
                       {1, 2, 1, 2}});  // f h = 2f
}

// 2x2 matrix units over f.
inline AlgebraPresentation m2_algebra(const FieldDescriptor& f) {
  // basis order e11, e12, e21, e22; e_ab * e_cd = delta_bc e_ad
  return make_algebra(f, {"e11", "e12", "e21", "e22"},
                      {{0, 0, 0, 1},
                       {0, 1, 1, 1},
                       {1, 2, 0, 1},
                       {1, 3, 1, 1},
                       {2, 0, 2, 1},
                       {2, 1, 3, 1},
                       {3, 2, 2, 1},
                       {3, 3, 3, 1}});
}

inline std::string corpus_path(const std::string& name) {
  return std::string(BASISDIV_CORPUS_DIR) + "/" + name;
}

}  // namespace testutil
