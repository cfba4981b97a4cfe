#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rbffd/nodeset.hpp"
#include "rbffd/solvers.hpp"

namespace rbffd {

struct RunConfig {
  std::string problem = "tp1";
  std::string method = "lm2";      // c | lm1 | lm2
  std::string nodeset = "fitted";  // fitted | fitted-interior | unfitted
  int m = 3;
  double ratio = 2.0;
  int k = 1;
  double h = 0.0;      // spacing; 0 means derive from n_interior
  int n_interior = 0;  // target interior count when h == 0
  std::uint64_t seed = 1;
  int fit_iterations = 50;
  std::string out;  // CSV output path, empty for none

  bool operator==(const RunConfig&) const = default;
};

// Throws InvalidConfig: method c needs nodeset fitted, unfitted sets need an
// LM method, one of h/n_interior must be positive, ratio >= 1, m >= 0, k >= 1.
void validate_config(const RunConfig& cfg);
std::string serialize_config(const RunConfig& cfg);  // JSON text
RunConfig parse_config(const std::string& json_text);
RunConfig load_config_file(const std::string& path);

// Node pipeline for the config: unfitted = independent interior + boundary
// sets; fitted = interior repelled off the boundary nodes; fitted-interior =
// same nodes as fitted (the mode changes collocation, not geometry).
NodeSet build_nodes(const RunConfig& cfg);
CollocationMode mode_for_nodeset(const std::string& nodeset);

struct RunResult {
  double h = 0.0;  // representative spacing of the realized set
  int n_interior = 0, n_total = 0;
  SolveReport report;
};

// Generates nodes, solves, writes the solution CSV when cfg.out is set.
RunResult run_single(const RunConfig& cfg);

struct SweepRow {
  int level = 0;
  double h = 0.0;
  int n_interior = 0, n_total = 0;
  std::string method;
  int m = 0;
  double ratio = 0.0;
  double rel_l2_error = 0.0, linear_residual = 0.0;
  double constraint_violation = 0.0;
  std::string status = "ok";  // or the error type of a failed cell
  double assembly_time = 0.0, solve_time = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  // Least-squares log-log slope per "method,m=<m>" group (convergence runs).
  std::map<std::string, double> orders;
};

// One solve per spacing in hs; failed levels are recorded and the sweep
// continues. Orders fit over levels with error above the round-off floor.
SweepResult run_convergence(const RunConfig& base, const std::vector<double>& hs);

// Grid of solves over m x ratio at the base spacing, one shared node set.
SweepResult run_heatmap(const RunConfig& base, const std::vector<int>& ms,
                        const std::vector<double>& ratios);

// methods x hs error-vs-time rows, one shared node set per level.
SweepResult run_timing(const RunConfig& base,
                       const std::vector<std::string>& methods,
                       const std::vector<double>& hs);

// Timing columns sit last so determinism checks can strip them, or can be
// omitted entirely for outputs meant to be reproducible byte for byte.
void write_sweep_csv(const SweepResult& sweep, const std::string& path,
                     bool with_log10 = false, bool with_times = true);

// Least-squares slope of log(err) vs log(h), ignoring pairs with
// err <= 100 * machine epsilon; NaN when fewer than 2 usable pairs remain.
double fit_order(const std::vector<double>& hs,
                 const std::vector<double>& errs);

// Solution dump "x,y[,z],u_num,u_exact,abs_err" over the nodes listed in idx.
void write_solution_csv(const NodeSet& nodes, const std::vector<int>& idx,
                        const Eigen::VectorXd& u,
                        const ManufacturedProblem& prob,
                        const std::string& path);

}  // namespace rbffd
