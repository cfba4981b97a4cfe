#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rbffd/errors.hpp"
#include "rbffd/harness.hpp"
#include "rbffd/nodegen.hpp"

namespace {

using rbffd::RunConfig;

struct CommonOpts {
  std::string config_path;
  RunConfig flags;  // values from the command line
  CLI::App* cmd = nullptr;

  void attach(CLI::App* app) {
    cmd = app;
    app->set_help_flag("--help", "print this help");
    app->add_option("--config", config_path, "JSON config file");
    app->add_option("--problem", flags.problem, "tp1|tp2|tp3|tp4");
    app->add_option("--method", flags.method, "c|lm1|lm2");
    app->add_option("--nodeset", flags.nodeset,
                    "fitted|fitted-interior|unfitted");
    app->add_option("--m", flags.m, "augmentation degree");
    app->add_option("--ratio", flags.ratio, "stencil size / basis size");
    app->add_option("--k", flags.k, "spline exponent parameter");
    app->add_option("--h", flags.h, "target node spacing");
    app->add_option("--n-interior", flags.n_interior,
                    "target interior count (alternative to --h)");
    app->add_option("--seed", flags.seed, "node generator seed");
    app->add_option("--fit-iterations", flags.fit_iterations,
                    "boundary repulsion passes");
    app->add_option("--out", flags.out, "output CSV path");
  }

  // Defaults, then the config file, then explicit flags.
  RunConfig resolve() const {
    RunConfig cfg;
    if (cmd->count("--config")) cfg = rbffd::load_config_file(config_path);
    if (cmd->count("--problem")) cfg.problem = flags.problem;
    if (cmd->count("--method")) cfg.method = flags.method;
    if (cmd->count("--nodeset")) cfg.nodeset = flags.nodeset;
    if (cmd->count("--m")) cfg.m = flags.m;
    if (cmd->count("--ratio")) cfg.ratio = flags.ratio;
    if (cmd->count("--k")) cfg.k = flags.k;
    if (cmd->count("--h")) cfg.h = flags.h;
    if (cmd->count("--n-interior")) cfg.n_interior = flags.n_interior;
    if (cmd->count("--seed")) cfg.seed = flags.seed;
    if (cmd->count("--fit-iterations"))
      cfg.fit_iterations = flags.fit_iterations;
    if (cmd->count("--out")) cfg.out = flags.out;
    return cfg;
  }
};

std::vector<double> level_spacings(const RunConfig& cfg,
                                   const std::vector<double>& hs, int levels,
                                   double refine) {
  if (!hs.empty()) return hs;
  if (cfg.h <= 0.0)
    throw rbffd::InvalidConfig("sweep needs --hs or a positive --h");
  if (levels < 1) throw rbffd::InvalidConfig("levels must be >= 1");
  if (refine <= 1.0) throw rbffd::InvalidConfig("refine must be > 1");
  std::vector<double> out(static_cast<std::size_t>(levels));
  for (int i = 0; i < levels; ++i) out[i] = cfg.h / std::pow(refine, i);
  return out;
}

void print_report(const rbffd::RunResult& res) {
  std::printf("h=%.6g n_interior=%d n_total=%d\n", res.h, res.n_interior,
              res.n_total);
  std::printf("rel_l2_error=%.17g\n", res.report.rel_l2_error);
  std::printf("linear_residual=%.17g\n", res.report.linear_residual);
  std::printf("constraint_violation=%.17g\n",
              res.report.constraint_violation);
  std::printf("t_weights=%.3fs t_assembly=%.3fs t_solve=%.3fs\n",
              res.report.t_weights, res.report.t_assembly,
              res.report.t_solve);
}

void print_sweep(const rbffd::SweepResult& sweep) {
  for (const rbffd::SweepRow& row : sweep.rows)
    std::printf(
        "level=%d h=%.6g n_interior=%d method=%s m=%d ratio=%.3g "
        "rel_l2_error=%.6g status=%s\n",
        row.level, row.h, row.n_interior, row.method.c_str(), row.m,
        row.ratio, row.rel_l2_error, row.status.c_str());
  for (const auto& [key, order] : sweep.orders)
    std::printf("order[%s]=%.6g\n", key.c_str(), order);
}

int fail(const std::exception& e) {
  const char* type = "error";
  int code = 1;
  if (dynamic_cast<const rbffd::InvalidConfig*>(&e) ||
      dynamic_cast<const CLI::ParseError*>(&e)) {
    type = "InvalidConfig";
    code = 2;
  } else if (dynamic_cast<const rbffd::SingularStencil*>(&e)) {
    type = "SingularStencil";
  } else if (dynamic_cast<const rbffd::SingularGlobalSystem*>(&e)) {
    type = "SingularGlobalSystem";
  } else if (dynamic_cast<const rbffd::MissingNormal*>(&e)) {
    type = "MissingNormal";
  }
  std::fprintf(stderr, "error: type=%s message=\"%s\"\n", type, e.what());
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"meshfree Poisson solver built on polyharmonic-spline stencils"};
  app.require_subcommand(1);

  CommonOpts solve_opts, conv_opts, heat_opts, time_opts, node_opts;
  std::vector<double> conv_hs, time_hs, heat_ratios{2.0, 2.5, 3.0};
  std::vector<int> heat_ms{2, 3, 4, 5, 6};
  std::vector<std::string> time_methods{"lm1", "lm2"};
  int conv_levels = 4, time_levels = 3;
  double conv_refine = std::sqrt(2.0), time_refine = std::sqrt(2.0);

  CLI::App* solve = app.add_subcommand("solve", "single solve, optional CSV");
  solve_opts.attach(solve);

  CLI::App* conv = app.add_subcommand("converge", "error sweep over spacings");
  conv_opts.attach(conv);
  conv->add_option("--hs", conv_hs, "explicit spacing list")->delimiter(',');
  conv->add_option("--levels", conv_levels, "levels from --h downward");
  conv->add_option("--refine", conv_refine, "spacing shrink factor per level");

  CLI::App* heat = app.add_subcommand("heatmap", "error grid over m x ratio");
  heat_opts.attach(heat);
  heat->add_option("--ms", heat_ms, "degree list")->delimiter(',');
  heat->add_option("--ratios", heat_ratios, "ratio list")->delimiter(',');

  CLI::App* timing = app.add_subcommand("timing", "error vs cost per method");
  time_opts.attach(timing);
  timing->add_option("--hs", time_hs, "explicit spacing list")->delimiter(',');
  timing->add_option("--methods", time_methods, "method list")->delimiter(',');
  timing->add_option("--levels", time_levels, "levels from --h downward");
  timing->add_option("--refine", time_refine, "spacing shrink factor");

  CLI::App* nodes = app.add_subcommand("nodes", "generate a node set CSV");
  node_opts.attach(nodes);

  try {
    app.parse(argc, argv);
    if (solve->parsed()) {
      print_report(rbffd::run_single(solve_opts.resolve()));
    } else if (conv->parsed()) {
      RunConfig cfg = conv_opts.resolve();
      print_sweep(rbffd::run_convergence(
          cfg, level_spacings(cfg, conv_hs, conv_levels, conv_refine)));
    } else if (heat->parsed()) {
      print_sweep(rbffd::run_heatmap(heat_opts.resolve(), heat_ms, heat_ratios));
    } else if (timing->parsed()) {
      RunConfig cfg = time_opts.resolve();
      print_sweep(rbffd::run_timing(
          cfg, time_methods,
          level_spacings(cfg, time_hs, time_levels, time_refine)));
    } else if (nodes->parsed()) {
      RunConfig cfg = node_opts.resolve();
      if (cfg.out.empty())
        throw rbffd::InvalidConfig("nodes subcommand needs --out");
      rbffd::validate_config(cfg);
      const rbffd::NodeSet set = rbffd::build_nodes(cfg);
      rbffd::write_nodeset_csv(set, cfg.out);
      std::printf("n_interior=%zu n_boundary=%zu\n", set.n_interior(),
                  set.size() - set.n_interior());
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error: type=InvalidConfig message=\"%s\"\n",
                 e.what());
    return 2;
  } catch (const std::exception& e) {
    return fail(e);
  }
  return 0;
}
