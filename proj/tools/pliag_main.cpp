#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pliag/aggregation.hpp"
#include "pliag/config.hpp"
#include "pliag/diagnostics.hpp"
#include "pliag/io.hpp"
#include "pliag/solver.hpp"
#include "pliag/stepsizes.hpp"
#include "pliag/verify.hpp"

namespace {

std::uint64_t env_seed(std::uint64_t fallback) {
  if (const char* env = std::getenv("RNG_SEED")) {
    char* end = nullptr;
    std::uint64_t v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0')
      throw pliag::InvalidConfig("RNG_SEED must be an unsigned integer");
    return v;
  }
  return fallback;
}

int cmd_run(const std::string& path) {
  pliag::RunConfig cfg = pliag::parse_run_config(path);
  cfg.seed = env_seed(cfg.seed);

  pliag::ProblemSpec<double> p = pliag::build_problem(cfg);
  pliag::SolverConfig<double> sc = pliag::build_solver_config(cfg, p);
  pliag::Trace<double> tr = pliag::run(sc);

  if (!cfg.trace_csv.empty())
    pliag::write_text_file(cfg.trace_csv, pliag::trace_to_csv(tr));

  bool pass = true;
  nlohmann::json report;
  if (cfg.certificate == "none") {
    report = {{"kind", "none"},
              {"K", tr.length()},
              {"alpha", tr.alpha},
              {"final_phi", tr.objective_values.back()},
              {"pass", true}};
    if (tr.divergence_at >= 0) {
      report["note"] = "divergence guard fired";
      report["pass"] = false;
      pass = false;
    }
  } else {
    double L = pliag::aggregate_L(p, sc.policy);
    int tau = sc.schedule.tau;
    pliag::Certificate<double> cert;
    if (cfg.certificate == "sublinear") {
      if (!p.solutions || p.solutions->empty())
        throw pliag::UnknownSolutionSet("sublinear certificate needs a stored solution");
      cert = pliag::certify_sublinear(p, tr, (*p.solutions)[0], L, tau);
    } else if (cfg.certificate == "linear") {
      double mu = cfg.mu > 0 ? cfg.mu : (p.growth ? p.growth->mu : 0.0);
      cert = pliag::certify_linear(p, tr, mu, 1e-9, L, tau);
    } else if (cfg.certificate == "holder") {
      double mu = cfg.mu > 0 ? cfg.mu : (p.growth ? p.growth->mu : 0.0);
      double theta = cfg.theta > 0 ? cfg.theta : (p.growth ? p.growth->theta : 0.0);
      cert = pliag::certify_holder(p, tr, mu, theta);
    } else {
      throw pliag::InvalidConfig("unknown certificate kind: " + cfg.certificate);
    }
    pass = cert.pass;
    report = pliag::certificate_to_json(cert);
  }
  report["problem"] = p.name;
  report["method"] = cfg.method;
  report["tau"] = sc.schedule.tau;
  report["seed"] = cfg.seed;
  if (!cfg.report_json.empty())
    pliag::write_text_file(cfg.report_json, report.dump(2) + "\n");

  std::cout << (pass ? "pass" : "fail") << " alpha=" << pliag::format_g17(tr.alpha)
            << " K=" << tr.length() << " phi=" << pliag::format_g17(tr.objective_values.back())
            << "\n";
  return pass ? 0 : 2;
}

int cmd_rates(const std::vector<double>& qs, const std::vector<int>& taus) {
  if (qs.empty() || taus.empty())
    throw pliag::InvalidConfig("rates: need at least one Q and one tau");
  for (double q : qs)
    if (q < 1.0) throw pliag::InvalidConfig("rates: Q must be >= 1");
  for (int t : taus)
    if (t < 0) throw pliag::InvalidConfig("rates: tau must be >= 0");

  auto ell = pliag::identity_ell<double>();
  std::ostringstream out;
  out << "Q,tau,rate_result04,rate_best,better\n";
  for (double q : qs)
    for (int t : taus) {
      double r04 = pliag::rate_bound_result04(q, t, ell);
      double rb = pliag::rate_bound_best(q, t);
      out << pliag::format_g17(q) << ',' << t << ',' << pliag::format_g17(r04) << ','
          << pliag::format_g17(rb) << ',' << (r04 <= rb ? "result04" : "best") << '\n';
    }
  std::cout << out.str();
  return 0;
}

int cmd_verify(const std::string& suite) {
  pliag::SuiteReport rep = pliag::run_suite(suite, env_seed(0));
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : rep.checks)
    checks.push_back(
        {{"name", c.name}, {"pass", c.pass}, {"value", c.value}, {"detail", c.detail}});
  nlohmann::json j{{"suite", rep.suite}, {"pass", rep.pass()}, {"checks", std::move(checks)}};
  std::cout << j.dump(2) << "\n";
  return rep.pass() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"incremental aggregated Bregman proximal solver and rate certifier"};
  app.require_subcommand(1);

  std::string config_path;
  CLI::App* run_cmd = app.add_subcommand("run", "run a configured experiment");
  run_cmd->add_option("config", config_path, "key=value config file")->required();

  std::vector<double> qs;
  std::vector<int> taus;
  CLI::App* rates_cmd = app.add_subcommand("rates", "compare the two linear rate bounds");
  rates_cmd->add_option("--q", qs, "condition numbers L/mu")->required()->delimiter(',');
  rates_cmd->add_option("--tau", taus, "delay bounds")->required()->delimiter(',');

  std::string suite;
  CLI::App* verify_cmd = app.add_subcommand("verify", "run a bundled check suite");
  verify_cmd->add_option("suite", suite, "kernels|descent|sublinear|linear|holder|recursion|appendixB")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(config_path);
    if (rates_cmd->parsed()) return cmd_rates(qs, taus);
    if (verify_cmd->parsed()) return cmd_verify(suite);
  } catch (const pliag::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
