#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "cmdnls/evolve.hpp"
#include "cmdnls/formula.hpp"
#include "cmdnls/grid.hpp"

namespace cmdnls {

enum class DatumKind { constant, rational, gaussian_bump, multi_bump };

struct DatumTerm {
  cplx amplitude{0.1, 0.0};
  double width = 1.0;   // Gaussian width, or b of the pole x - x_j + i b
  double offset = 0.0;  // x_j
};

// constant:      c
// rational:      c + sum_j a_j / (x - x_j + i b_j),  b_j > 0
// gaussian_bump: c + a Pi(e^{-((x - x_0)/b)^2})      (one term)
// multi_bump:    c + sum_j a_j Pi(e^{-((x - x_j)/b_j)^2})
struct InitialDatum {
  DatumKind kind = DatumKind::gaussian_bump;
  cplx c{1.0, 0.0};
  std::vector<DatumTerm> terms{DatumTerm{}};
  // Szego-project the sampled rational datum (its samples carry a small
  // negative-frequency part from the cut 1/x tail).
  bool project = false;
  // Rescale the background modulus so the torus mean of |u|^2 - 1 vanishes.
  bool balance_mass = false;

  void validate() const;
};

struct DatumResult {
  Field field;
  std::vector<std::string> warnings;
};
DatumResult build_datum_checked(const InitialDatum& d, const GridSpec& g);
Field build_datum(const InitialDatum& d, const GridSpec& g);

// Named test data used across tests, the acceptance run and the examples.
InitialDatum gaussian_datum(double amplitude = 0.1);
InitialDatum two_bump_datum();
InitialDatum rational_datum(cplx a = 1.0, double b = 1.0);
InitialDatum constant_datum(cplx c = 1.0);

struct SweepGrid {
  std::vector<double> t{0.1, 0.5};
  std::vector<cplx> z{{0.0, 1.0}, {0.0, 2.0}, {1.0, 1.0}};
  std::vector<double> eps{1.0, 0.5, 0.25, 0.125, 0.0625};
};

struct RunConfig {
  int version = 1;
  double L = 50.0;
  std::size_t N = 1024;
  InitialDatum datum;
  SolverConfig solver;
  FormulaSettings formula;
  SweepGrid sweep;
  double compare_gate = 1e-6;
  std::string out_dir = "out";
  int threads = 1;
  std::uint64_t seed = 0;

  GridSpec grid() const { return GridSpec(L, N); }
};

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);
nlohmann::json to_json(const RunConfig& cfg);

// Subcommands; return the process exit code. Progress goes to `log`.
int cmd_evolve(const RunConfig& cfg, std::ostream& log);
int cmd_formula(const RunConfig& cfg, std::ostream& log);
int cmd_compare(const RunConfig& cfg, std::ostream& log);
int cmd_zd(const RunConfig& cfg, std::ostream& log);
int cmd_datum_dump(const RunConfig& cfg, std::ostream& log);

// Runs f(i) for i in [0, n) on `threads` workers; f must only write slot i.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& f);

}  // namespace cmdnls
