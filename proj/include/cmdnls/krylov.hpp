#pragma once

#include <functional>

#include "cmdnls/grid.hpp"

namespace cmdnls {

struct KrylovResult {
  CVec x;
  int iterations = 0;
  double residual = 0.0;  // ||b - A x|| / ||b||, recomputed at exit
  bool converged = false;
};

using LinearMap = std::function<CVec(const CVec&)>;

// Restarted GMRES(m) with modified Gram-Schmidt and Givens rotations, zero
// initial guess, no preconditioner.
KrylovResult gmres(const LinearMap& A, const CVec& b, double tol, int restart, int max_iter);

double norm2(const CVec& v);

}  // namespace cmdnls
