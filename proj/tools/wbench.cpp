// Batch driver: run reduction instances, list the catalog, evaluate terms.

#include "wb/instance.hpp"
#include "wb/omachine.hpp"
#include "wb/tcore.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace {

std::string now_iso8601() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int run_paths(const std::vector<std::string>& paths, const wb::instance::RunOptions& options,
              const std::string& report_dir, unsigned jobs) {
  std::vector<int> codes(paths.size(), 0);
  std::vector<std::string> outputs(paths.size());
  auto work = [&](std::size_t i) {
    try {
      wb::instance::RunOutcome out = wb::instance::run_instance(paths[i], options);
      codes[i] = out.exit_code;
      outputs[i] = out.report_text;
    } catch (const wb::instance::SchemaError& e) {
      codes[i] = wb::instance::kSchemaError;
      outputs[i] = std::string("schema error: ") + e.what() + "\n";
    } catch (const std::exception& e) {
      codes[i] = wb::instance::kSchemaError;
      outputs[i] = std::string("error: ") + e.what() + "\n";
    }
  };
  if (jobs <= 1 || paths.size() <= 1) {
    for (std::size_t i = 0; i < paths.size(); ++i) work(i);
  } else {
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (unsigned t = 0; t < jobs; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < paths.size(); i = next.fetch_add(1)) work(i);
      });
    for (auto& th : pool) th.join();
  }
  int worst = 0;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    std::cout << outputs[i];
    if (paths.size() > 1) std::cout << "\n";
    if (!report_dir.empty()) {
      auto slash = paths[i].find_last_of('/');
      std::string name = slash == std::string::npos ? paths[i] : paths[i].substr(slash + 1);
      std::ofstream out(report_dir + "/" + name + ".report");
      out << outputs[i];
    }
    worst = std::max(worst, codes[i]);
  }
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for exact reals, associates, nets, and oracle-relative reductions"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "run reduction instances from files");
  std::vector<std::string> paths;
  wb::instance::RunOptions options;
  options.timestamp.clear();
  std::string report_dir;
  unsigned jobs = 1;
  run->add_option("instances", paths, "instance files (JSON)")->required();
  run->add_option("--fuel", options.budget.fuel, "step budget for searches and evaluation");
  run->add_option("--precision", options.budget.precision, "default approximation exponent");
  run->add_option("--seed", options.seed, "seed for sampled checks");
  run->add_option("--report-dir", report_dir, "directory for per-instance report files");
  run->add_option("--jobs", jobs, "run independent instances concurrently");
  run->add_option("--timestamp", options.timestamp,
                  "fixed timestamp for reproducible reports (default: current time)");
  run->add_flag("--trace", options.dump_trace, "include full machine traces in reports");

  // list
  auto* list = app.add_subcommand("list", "print the reduction catalog");

  // eval
  auto* eval = app.add_subcommand("eval", "parse, typecheck and evaluate a term file");
  std::string term_path;
  wb::Fuel eval_fuel = 100000;
  eval->add_option("file", term_path, "file containing one term")->required();
  eval->add_option("--fuel", eval_fuel, "step budget");

  CLI11_PARSE(app, argc, argv);

  if (list->parsed()) {
    std::cout << wb::instance::render_catalog();
    return 0;
  }

  if (eval->parsed()) {
    try {
      wb::tcore::Term t = wb::tcore::parse_term(read_file(term_path));
      wb::tcore::OracleTable oracles;
      wb::tcore::Ty ty = wb::tcore::typecheck(t, oracles);
      std::cout << "type: " << ty.to_string() << "\n";
      wb::EvalBudget budget;
      budget.fuel = eval_fuel;
      auto r = wb::tcore::eval(t, oracles, budget);
      if (std::holds_alternative<wb::OutOfFuel>(r)) {
        std::cout << "result: out of fuel\n";
        return wb::instance::kOutOfFuel;
      }
      auto v = std::get<wb::tcore::ValuePtr>(r);
      if (auto ground = wb::tcore::value_ground_type(v); ground && ground->is_nat())
        std::cout << "result: " << wb::tcore::value_nat(v) << "\n";
      else
        std::cout << "result: <function or pair value>\n";
      return 0;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return wb::instance::kSchemaError;
    }
  }

  if (options.timestamp.empty()) options.timestamp = now_iso8601();
  return run_paths(paths, options, report_dir, jobs);
}
