#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qthyper/registry.hpp"

int main(int argc, char** argv) {
  CLI::App app{"qthyper: exact verification of multivariate q-hypergeometric identities"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run checks and report");
  std::vector<std::string> checks, qs;
  std::vector<int> ns;
  std::vector<long> ks;
  int max_weight = 4, degree = 6;
  long jackson_m = -1;
  unsigned threads = 0;
  std::string tol = "1e-10", report = "text", out;
  bool timing = false, list = false;

  run->add_option("--check", checks, "check name (repeatable; default all)");
  run->add_option("--n", ns, "number of variables (repeatable)");
  run->add_option("--k", ks, "t = q^k exponent (repeatable)");
  run->add_option("--q", qs, "q as P/Q (repeatable)");
  run->add_option("--max-weight", max_weight, "largest partition weight");
  run->add_option("--degree", degree, "series truncation degree");
  run->add_option("--jackson-m", jackson_m, "fixed Jackson grid size (default adaptive)");
  run->add_option("--tol", tol, "tolerance for certified checks");
  run->add_option("--report", report, "text or json")->check(CLI::IsMember({"text", "json"}));
  run->add_option("--out", out, "write the report here instead of stdout");
  run->add_option("--threads", threads, "worker threads (0 = all cores)");
  run->add_flag("--timing", timing, "record elapsed ms (reports are then not reproducible)");
  run->add_flag("--list", list, "print check names and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (list) {
    for (const auto& name : qthyper::check_names()) std::cout << name << "\n";
    return 0;
  }

  qthyper::RunConfig cfg;
  std::vector<qthyper::CheckTask> tasks;
  try {
    if (!ns.empty()) cfg.n = ns;
    if (!ks.empty()) cfg.k = ks;
    if (!qs.empty()) {
      cfg.q.clear();
      for (const auto& s : qs) cfg.q.push_back(qthyper::parse_rational(s));
    }
    cfg.max_weight = max_weight;
    cfg.degree = degree;
    if (jackson_m >= 0) cfg.jackson_m = jackson_m;
    cfg.tol = qthyper::parse_rational(tol);
    cfg.timing = timing;
    cfg.threads = threads;
    tasks = qthyper::build_tasks(checks, cfg, std::make_shared<qthyper::BasisCache>());
  } catch (const std::exception& e) {
    std::cerr << "qthyper: " << e.what() << "\n";
    return 2;
  }

  auto reports = qthyper::run_tasks(tasks, cfg);
  std::string text = report == "json" ? qthyper::reports_to_json(reports).dump(2) + "\n"
                                      : qthyper::reports_to_text(reports);
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f || !(f << text)) {
      std::cerr << "qthyper: cannot write " << out << "\n";
      return 2;
    }
  }
  return qthyper::exit_status(reports);
}
