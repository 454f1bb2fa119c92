#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bw/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "beta Weibull distribution toolkit: fitting, nested-model tests, "
      "moments, curve grids and simulation"};
  app.name("bw");

  std::string command;
  std::string model = "bw";
  std::string format = "json";
  std::string sweep;
  std::string input;
  double a = 0, b = 0, c = 0, lambda = 0, tol = 0, xmin = 0, xmax = 0;
  std::vector<double> r_list;
  std::int64_t n = 0;
  std::uint64_t seed = 0;
  int points = 200;
  bool paper_check = false;

  app.add_option("command", command,
                 "fit | test | moments | curve | simulate | info");
  app.add_option("--model", model,
                 "model family: bw, weibull, exp-weibull, beta-exp")
      ->check(CLI::IsMember({"bw", "weibull", "exp-weibull", "beta-exp"}));
  app.add_option("--input", input,
                 "dataset file: positive values, whitespace or comma "
                 "separated, '#' comments");
  auto* opt_a = app.add_option("--a", a, "first beta shape parameter");
  auto* opt_b = app.add_option("--b", b, "second beta shape parameter");
  auto* opt_c = app.add_option("--c", c, "Weibull shape parameter");
  auto* opt_l = app.add_option("--lambda", lambda, "Weibull rate parameter");
  app.add_option("--r", r_list, "moment orders, comma separated")->delimiter(',');
  app.add_option("--sweep", sweep,
                 "moments: sweep this parameter over [0.5, 5] (defaults "
                 "lambda=1, c=3)")
      ->check(CLI::IsMember({"a", "b"}));
  auto* opt_n = app.add_option("--n", n, "number of draws (simulate)");
  auto* opt_seed = app.add_option("--seed", seed, "random seed (simulate)");
  auto* opt_tol =
      app.add_option("--tol", tol, "fit convergence tolerance")
          ->check(CLI::PositiveNumber);
  app.add_option("--format", format, "output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  auto* opt_xmin = app.add_option("--xmin", xmin, "curve grid lower bound");
  auto* opt_xmax = app.add_option("--xmax", xmax, "curve grid upper bound");
  app.add_option("--points", points, "curve grid size (default 200)");
  app.add_flag("--paper-check", paper_check,
               "compare fitted results against the published device-failure "
               "case study values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  bw::cli::RunConfig cfg;
  try {
    if (!paper_check) {
      if (command.empty())
        throw bw::cli::UsageError(
            "a command is required: fit, test, moments, curve, simulate or "
            "info");
      cfg.command = bw::cli::parse_command(command);
    }
    cfg.model = bw::cli::parse_model(model);
    cfg.paper_check = paper_check;
    cfg.format = format == "csv" ? bw::cli::OutputFormat::Csv
                                 : bw::cli::OutputFormat::Json;
    if (!input.empty())
      cfg.input_path = input;
    if (opt_a->count())
      cfg.a = a;
    if (opt_b->count())
      cfg.b = b;
    if (opt_c->count())
      cfg.c = c;
    if (opt_l->count())
      cfg.lambda = lambda;
    cfg.r_list = r_list;
    cfg.sweep = sweep;
    if (opt_n->count())
      cfg.n = n;
    if (opt_seed->count())
      cfg.seed = seed;
    if (opt_tol->count())
      cfg.tol = tol;
    if (opt_xmin->count())
      cfg.xmin = xmin;
    if (opt_xmax->count())
      cfg.xmax = xmax;
    cfg.points = points;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return bw::cli::run(cfg, std::cout, std::cerr);
}
