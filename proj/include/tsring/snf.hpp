#pragma once

#include "tsring/matrix.hpp"

namespace tsring {

// d = u * c * v with u, v unimodular and d diagonal, d_1 | d_2 | ... | d_r,
// entries nonnegative, zeros trailing.
struct SnfResult {
  IntMatrix d;
  IntMatrix u;
  IntMatrix v;

  std::vector<Integer> diagonal() const;
};

// Smith normal form with transformation certificates. Pivot is the nonzero
// entry of least absolute value in the active block (ties: row-major order);
// u and v are accumulated from the elementary operations as they happen.
SnfResult snf(const IntMatrix& c);

// Checks all SnfResult invariants against the input matrix.
bool verify_snf(const IntMatrix& c, const SnfResult& r);

}  // namespace tsring
