#include "rbffd/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "rbffd/errors.hpp"
#include "rbffd/nodegen.hpp"

namespace rbffd {
namespace {

using nlohmann::json;

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const char* status_of(const std::exception& e) {
  if (dynamic_cast<const SingularStencil*>(&e)) return "SingularStencil";
  if (dynamic_cast<const SingularGlobalSystem*>(&e))
    return "SingularGlobalSystem";
  if (dynamic_cast<const InvalidConfig*>(&e)) return "InvalidConfig";
  if (dynamic_cast<const MissingNormal*>(&e)) return "MissingNormal";
  return "error";
}

SolveReport solve_with(const ManufacturedProblem& prob, const NodeSet& nodes,
                       const RunConfig& cfg) {
  StencilConfig sc;
  sc.d = prob.dim();
  sc.m = cfg.m;
  sc.ratio = cfg.ratio;
  sc.k = cfg.k;
  if (cfg.method == "c") return solve_collocation(prob, nodes, sc);
  const CollocationMode mode = mode_for_nodeset(cfg.nodeset);
  if (cfg.method == "lm1") return solve_lm1(prob, nodes, mode, sc);
  return solve_lm2(prob, nodes, mode, sc);
}

SweepRow row_from(const RunConfig& cfg, int level, double h,
                  const NodeSet& nodes) {
  SweepRow row;
  row.level = level;
  row.h = h;
  row.n_interior = static_cast<int>(nodes.n_interior());
  row.n_total = static_cast<int>(nodes.size());
  row.method = cfg.method;
  row.m = cfg.m;
  row.ratio = cfg.ratio;
  return row;
}

void fill_row(SweepRow& row, const SolveReport& rep) {
  row.rel_l2_error = rep.rel_l2_error;
  row.linear_residual = rep.linear_residual;
  row.constraint_violation = rep.constraint_violation;
  row.assembly_time = rep.t_weights + rep.t_assembly;
  row.solve_time = rep.t_solve;
}

// One solve into a sweep row; failures are recorded, not propagated.
SweepRow sweep_cell(const ManufacturedProblem& prob, const NodeSet& nodes,
                    const RunConfig& cfg, int level, double h) {
  SweepRow row = row_from(cfg, level, h, nodes);
  try {
    fill_row(row, solve_with(prob, nodes, cfg));
  } catch (const std::exception& e) {
    row.status = status_of(e);
    row.rel_l2_error = std::numeric_limits<double>::quiet_NaN();
    row.linear_residual = std::numeric_limits<double>::quiet_NaN();
    row.constraint_violation = std::numeric_limits<double>::quiet_NaN();
  }
  return row;
}

void fit_group_orders(SweepResult& sweep) {
  std::map<std::string, std::pair<std::vector<double>, std::vector<double>>>
      groups;
  for (const SweepRow& row : sweep.rows) {
    if (row.status != "ok") continue;
    std::string key = row.method + ",m=" + std::to_string(row.m);
    groups[key].first.push_back(row.h);
    groups[key].second.push_back(row.rel_l2_error);
  }
  for (const auto& [key, data] : groups)
    sweep.orders[key] = fit_order(data.first, data.second);
}

}  // namespace

void validate_config(const RunConfig& cfg) {
  if (cfg.problem != "tp1" && cfg.problem != "tp2" && cfg.problem != "tp3" &&
      cfg.problem != "tp4")
    throw InvalidConfig("unknown problem: " + cfg.problem);
  if (cfg.method != "c" && cfg.method != "lm1" && cfg.method != "lm2")
    throw InvalidConfig("unknown method: " + cfg.method);
  if (cfg.nodeset != "fitted" && cfg.nodeset != "fitted-interior" &&
      cfg.nodeset != "unfitted")
    throw InvalidConfig("unknown nodeset: " + cfg.nodeset);
  if (cfg.method == "c" && cfg.nodeset != "fitted")
    throw InvalidConfig("method c requires nodeset fitted");
  if (cfg.m < 0) throw InvalidConfig("m must be >= 0");
  if (cfg.ratio < 1.0) throw InvalidConfig("ratio must be >= 1");
  if (cfg.k < 1) throw InvalidConfig("k must be >= 1");
  if (cfg.h < 0.0) throw InvalidConfig("h must be >= 0");
  if (cfg.h == 0.0 && cfg.n_interior <= 0)
    throw InvalidConfig("one of h or n_interior must be positive");
  if (cfg.fit_iterations < 0)
    throw InvalidConfig("fit_iterations must be >= 0");
}

std::string serialize_config(const RunConfig& cfg) {
  json j;
  j["problem"] = cfg.problem;
  j["method"] = cfg.method;
  j["nodeset"] = cfg.nodeset;
  j["m"] = cfg.m;
  j["ratio"] = cfg.ratio;
  j["k"] = cfg.k;
  j["h"] = cfg.h;
  j["n_interior"] = cfg.n_interior;
  j["seed"] = cfg.seed;
  j["fit_iterations"] = cfg.fit_iterations;
  j["out"] = cfg.out;
  return j.dump(2) + "\n";
}

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw InvalidConfig(std::string("config parse failure: ") + e.what());
  }
  if (!j.is_object()) throw InvalidConfig("config root must be an object");
  RunConfig cfg;
  try {
    cfg.problem = j.value("problem", cfg.problem);
    cfg.method = j.value("method", cfg.method);
    cfg.nodeset = j.value("nodeset", cfg.nodeset);
    cfg.m = j.value("m", cfg.m);
    cfg.ratio = j.value("ratio", cfg.ratio);
    cfg.k = j.value("k", cfg.k);
    cfg.h = j.value("h", cfg.h);
    cfg.n_interior = j.value("n_interior", cfg.n_interior);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.fit_iterations = j.value("fit_iterations", cfg.fit_iterations);
    cfg.out = j.value("out", cfg.out);
  } catch (const json::exception& e) {
    throw InvalidConfig(std::string("config field failure: ") + e.what());
  }
  for (const auto& [key, _] : j.items()) {
    static const char* known[] = {"problem", "method",     "nodeset",
                                  "m",       "ratio",      "k",
                                  "h",       "n_interior", "seed",
                                  "fit_iterations", "out"};
    bool found = false;
    for (const char* name : known) found = found || key == name;
    if (!found) throw InvalidConfig("unknown config key: " + key);
  }
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfig("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

CollocationMode mode_for_nodeset(const std::string& nodeset) {
  return nodeset == "fitted" ? CollocationMode::FittedFull
                             : CollocationMode::InteriorOnly;
}

NodeSet build_nodes(const RunConfig& cfg) {
  validate_config(cfg);
  const ManufacturedProblem prob = problem_from_name(cfg.problem);
  const Domain dom = prob.domain();
  const double h =
      cfg.h > 0.0 ? cfg.h : representative_spacing(dom, cfg.n_interior);
  NodeSet interior = generate_interior_nodes(dom, h, cfg.seed);
  NodeSet boundary = generate_boundary_nodes(dom, h, prob.split);
  if (cfg.nodeset != "unfitted")
    interior = fit_nodes(dom, interior, boundary, cfg.fit_iterations).nodes;
  return merge(interior, boundary);
}

RunResult run_single(const RunConfig& cfg) {
  validate_config(cfg);
  const ManufacturedProblem prob = problem_from_name(cfg.problem);
  const NodeSet nodes = build_nodes(cfg);
  RunResult result;
  result.n_interior = static_cast<int>(nodes.n_interior());
  result.n_total = static_cast<int>(nodes.size());
  result.h = representative_spacing(prob.domain(), result.n_interior);
  result.report = solve_with(prob, nodes, cfg);
  if (!cfg.out.empty()) {
    std::vector<int> idx;
    if (result.report.u.size() == static_cast<Eigen::Index>(nodes.size())) {
      idx.resize(nodes.size());
      for (std::size_t i = 0; i < nodes.size(); ++i) idx[i] = int(i);
    } else {
      idx = nodes.indices(NodeRole::Interior);
    }
    write_solution_csv(nodes, idx, result.report.u, prob, cfg.out);
  }
  return result;
}

SweepResult run_convergence(const RunConfig& base,
                            const std::vector<double>& hs) {
  if (hs.empty()) throw InvalidConfig("convergence run needs spacings");
  RunConfig probe = base;
  probe.h = hs[0];
  probe.n_interior = 0;
  validate_config(probe);
  const ManufacturedProblem prob = problem_from_name(base.problem);
  const Domain dom = prob.domain();
  SweepResult sweep;
  for (std::size_t level = 0; level < hs.size(); ++level) {
    RunConfig cfg = base;
    cfg.h = hs[level];
    cfg.n_interior = 0;
    const NodeSet nodes = build_nodes(cfg);
    const double h =
        representative_spacing(dom, static_cast<int>(nodes.n_interior()));
    sweep.rows.push_back(
        sweep_cell(prob, nodes, cfg, static_cast<int>(level), h));
  }
  fit_group_orders(sweep);
  if (!base.out.empty()) write_sweep_csv(sweep, base.out);
  return sweep;
}

SweepResult run_heatmap(const RunConfig& base, const std::vector<int>& ms,
                        const std::vector<double>& ratios) {
  validate_config(base);
  if (ms.empty() || ratios.empty())
    throw InvalidConfig("heatmap run needs degrees and ratios");
  const ManufacturedProblem prob = problem_from_name(base.problem);
  const Domain dom = prob.domain();
  const NodeSet nodes = build_nodes(base);
  const double h =
      representative_spacing(dom, static_cast<int>(nodes.n_interior()));
  SweepResult sweep;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    for (std::size_t j = 0; j < ratios.size(); ++j) {
      RunConfig cfg = base;
      cfg.m = ms[i];
      cfg.ratio = ratios[j];
      sweep.rows.push_back(sweep_cell(
          prob, nodes, cfg, static_cast<int>(i * ratios.size() + j), h));
    }
  }
  if (!base.out.empty()) write_sweep_csv(sweep, base.out, true);
  return sweep;
}

SweepResult run_timing(const RunConfig& base,
                       const std::vector<std::string>& methods,
                       const std::vector<double>& hs) {
  if (methods.empty() || hs.empty())
    throw InvalidConfig("timing run needs methods and spacings");
  RunConfig probe = base;
  probe.h = hs[0];
  probe.n_interior = 0;
  validate_config(probe);
  const ManufacturedProblem prob = problem_from_name(base.problem);
  const Domain dom = prob.domain();
  SweepResult sweep;
  for (std::size_t level = 0; level < hs.size(); ++level) {
    RunConfig lcfg = base;
    lcfg.h = hs[level];
    lcfg.n_interior = 0;
    const NodeSet nodes = build_nodes(lcfg);
    const double h =
        representative_spacing(dom, static_cast<int>(nodes.n_interior()));
    for (const std::string& method : methods) {
      RunConfig cfg = lcfg;
      cfg.method = method;
      validate_config(cfg);
      sweep.rows.push_back(
          sweep_cell(prob, nodes, cfg, static_cast<int>(level), h));
    }
  }
  if (!base.out.empty()) write_sweep_csv(sweep, base.out);
  return sweep;
}

void write_sweep_csv(const SweepResult& sweep, const std::string& path,
                     bool with_log10, bool with_times) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << "level,h,n_interior,n_total,method,m,ratio,rel_l2_error,"
         "linear_residual,constraint_violation,"
      << (with_log10 ? "log10_error," : "") << "status"
      << (with_times ? ",assembly_time,solve_time" : "") << '\n';
  for (const SweepRow& row : sweep.rows) {
    out << row.level << ',' << g17(row.h) << ',' << row.n_interior << ','
        << row.n_total << ',' << row.method << ',' << row.m << ','
        << g17(row.ratio) << ',' << g17(row.rel_l2_error) << ','
        << g17(row.linear_residual) << ',' << g17(row.constraint_violation)
        << ',';
    if (with_log10) out << g17(std::log10(row.rel_l2_error)) << ',';
    out << row.status;
    if (with_times)
      out << ',' << g17(row.assembly_time) << ',' << g17(row.solve_time);
    out << '\n';
  }
}

double fit_order(const std::vector<double>& hs,
                 const std::vector<double>& errs) {
  const double floor = 100.0 * std::numeric_limits<double>::epsilon();
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < hs.size() && i < errs.size(); ++i) {
    if (!(errs[i] > floor)) continue;
    lx.push_back(std::log(hs[i]));
    ly.push_back(std::log(errs[i]));
  }
  if (lx.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= double(lx.size());
  my /= double(ly.size());
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    num += (lx[i] - mx) * (ly[i] - my);
    den += (lx[i] - mx) * (lx[i] - mx);
  }
  return num / den;
}

void write_solution_csv(const NodeSet& nodes, const std::vector<int>& idx,
                        const Eigen::VectorXd& u,
                        const ManufacturedProblem& prob,
                        const std::string& path) {
  if (u.size() != static_cast<Eigen::Index>(idx.size()))
    throw std::invalid_argument("solution length does not match node list");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << (nodes.dim == 2 ? "x,y,u_num,u_exact,abs_err\n"
                         : "x,y,z,u_num,u_exact,abs_err\n");
  double x[3] = {0.0, 0.0, 0.0};
  for (std::size_t r = 0; r < idx.size(); ++r) {
    nodes.coords(static_cast<std::size_t>(idx[r]), x);
    const double exact = prob.u(x);
    const double num = u[static_cast<Eigen::Index>(r)];
    for (int a = 0; a < nodes.dim; ++a) out << g17(x[a]) << ',';
    out << g17(num) << ',' << g17(exact) << ',' << g17(std::abs(num - exact))
        << '\n';
  }
}

}  // namespace rbffd
