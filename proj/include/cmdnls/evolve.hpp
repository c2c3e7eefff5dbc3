#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "cmdnls/grid.hpp"

namespace cmdnls {

struct SolverConfig {
  double dt = 1e-3;
  double t_final = 1.0;
  int snapshot_stride = 100;
  bool dealias = true;
  // Relative chirality leak ||(Id - Pi) u|| / ||u|| tolerated for Hardy data.
  double leak_tol = 1e-8;
  // Extra snapshot times; each must be a whole number of steps.
  std::vector<double> snapshot_times;

  void validate() const;
};

struct StepDiagnostics {
  double t = 0.0;
  double rhs_norm = 0.0;
  double leak = 0.0;  // relative
};

struct TimedField {
  double t;
  Field field;
};

struct Trajectory {
  GridSpec grid;
  bool hardy = false;
  std::vector<TimedField> snapshots;
  std::vector<StepDiagnostics> steps;

  // Snapshot whose time is within `tol` of t.
  const Field& at(double t, double tol = 1e-9) const;
  bool has(double t, double tol = 1e-9) const;
};

struct InstabilityError : std::runtime_error {
  InstabilityError(const std::string& what, double t_last, Field last)
      : std::runtime_error(what), t(t_last), state(std::move(last)) {}
  double t;
  Field state;
};

struct ChiralityLeakError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// i u_xx - 4 u Pi(Re(conj(u) u_x)).
Field rhs(const Field& u, bool dealias = true);
// -4 u Pi(Re(conj(u) u_x)) alone.
Field nonlinearity(const Field& u, bool dealias = true);

// One integrating-factor RK4 step for w = e^{-it d_x^2} u. Throws
// InstabilityError (carrying u) if the result is not finite.
Field step(const Field& u, double dt, bool dealias = true);

Trajectory evolve(const Field& u0, const SolverConfig& cfg);

}  // namespace cmdnls
