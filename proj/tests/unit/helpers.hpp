#pragma once

#include "freespec/examples.hpp"
#include "freespec/pencil.hpp"

#include <initializer_list>
#include <vector>

namespace testutil {

using namespace freespec;

inline CMatrix scalar(double v) { return CMatrix::Constant(1, 1, v); }

// Real tuple of 1 x 1 matrices.
inline MatrixTuple point(std::initializer_list<double> xs) {
  std::vector<CMatrix> e;
  for (double v : xs) e.push_back(scalar(v));
  return MatrixTuple(e, Field::kReal);
}

inline CMatrix sz() { return (CMatrix(2, 2) << 1, 0, 0, -1).finished(); }
inline CMatrix sx() { return (CMatrix(2, 2) << 0, 1, 1, 0).finished(); }

inline CMatrix diag(std::initializer_list<double> d) {
  CMatrix m = CMatrix::Zero(static_cast<int>(d.size()), static_cast<int>(d.size()));
  int i = 0;
  for (double v : d) m(i, i) = v, ++i;
  return m;
}

inline LinearPencil cube(int g) { return examples::free_cube(g).pencil; }

// The interval pencil diag(1 - y, 1 + y) in one variable.
inline AffinePencil interval() {
  AffinePencil p;
  p.constant = CMatrix::Identity(2, 2);
  p.directions = {diag({-1, 1})};
  return p;
}

inline AffinePencil level1(const LinearPencil& a) {
  AffinePencil p;
  p.field = a.field();
  p.constant = CMatrix::Identity(a.m(), a.m());
  for (int j = 0; j < a.g(); ++j) p.directions.push_back(-a[j]);
  return p;
}

}  // namespace testutil
