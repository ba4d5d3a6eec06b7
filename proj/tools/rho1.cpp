// rho1: compute (Delta, rho_1) for knots, batch over tables, run the property suites.

#include "rho1/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#ifndef RHO1_DATA_DIR
#define RHO1_DATA_DIR "data"
#endif

using namespace rho1;

namespace {

constexpr int exit_ok = 0, exit_failed = 1, exit_input = 2;

std::string default_table() {
  const char* env = std::getenv("RHO1_DATA_DIR");
  return std::string(env ? env : RHO1_DATA_DIR) + "/knots_12.csv";
}

TableInput load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_table(in);
}

std::string sci(double x) {
  std::ostringstream out;
  out << std::setprecision(3) << x;
  return out.str();
}

int cmd_compute(const std::string& pd, const std::string& dt, const std::string& json_file,
                const std::string& format, bool factored) {
  UprightDiagram d;
  try {
    if (!json_file.empty()) {
      std::ifstream in(json_file);
      if (!in) throw std::runtime_error("cannot open " + json_file);
      d = diagram_from_json(nlohmann::json::parse(in));
      validate(d);
    } else if (!dt.empty()) {
      d = pd_to_upright(parse_dt(dt));
    } else {
      d = pd_to_upright(parse_pd(pd));
    }
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return exit_input;
  }
  KnotRecord rec{"input", dt, std::nullopt, 0.0, {}};
  auto start = std::chrono::steady_clock::now();
  try {
    rec.computed = invariant_pair(d);
  } catch (const std::exception& e) {
    std::cerr << "computation failed: " << e.what() << "\n";
    return exit_failed;
  }
  rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const InvariantPair& p = *rec.computed;
  if (format == "json") {
    nlohmann::json j = record_json(rec);
    if (factored) {
      j["delta"]["factored"] = factor_out(p.delta).str();
      j["rho1"]["factored"] = factor_out(p.rho1).str();
    }
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "delta: " << p.delta.str() << "\n"
              << "rho1: " << p.rho1.str() << "\n";
    if (factored)
      std::cout << "delta factored: " << factor_out(p.delta).str() << "\n"
                << "rho1 factored: " << factor_out(p.rho1).str() << "\n";
    std::cout << "crossings: " << p.crossing_count << "  writhe: " << p.writhe
              << "  rotation: " << p.total_rotation << "  seconds: " << sci(rec.seconds) << "\n";
    for (const auto& w : p.warnings) std::cout << "warning: " << w << "\n";
  }
  return exit_ok;
}

std::vector<KnotRecord> run_table(const TableInput& input, unsigned parallel) {
  for (const auto& e : input.errors) std::cerr << "skipped " << e << "\n";
  auto records = compute_table(input.rows, parallel);
  std::size_t failed = 0;
  for (const auto& r : records)
    if (!r.computed) {
      ++failed;
      std::cerr << "skipped " << r.name << ": " << r.error << "\n";
    }
  if (failed + input.errors.size() > 0)
    std::cerr << (failed + input.errors.size()) << " row(s) skipped\n";
  return records;
}

int cmd_table(const std::string& file, unsigned parallel, const std::string& out_file,
              const std::string& format, bool timing) {
  TableInput input;
  try {
    input = load_table(file);
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return exit_input;
  }
  auto records = run_table(input, parallel);
  std::ofstream file_out;
  if (!out_file.empty()) {
    file_out.open(out_file);
    if (!file_out) {
      std::cerr << "cannot write " << out_file << "\n";
      return exit_input;
    }
  }
  std::ostream& out = out_file.empty() ? std::cout : file_out;
  if (format == "csv" && !records.empty()) out << "name,delta,rho1" << (timing ? ",seconds" : "") << "\n";
  for (const auto& r : records) {
    if (!r.computed) continue;
    if (format == "jsonl") {
      out << record_json(r, timing).dump() << "\n";
    } else {
      out << r.name << ',' << r.computed->delta.str() << ',' << r.computed->rho1.str();
      if (timing) out << ',' << sci(r.seconds);
      out << "\n";
    }
  }
  return exit_ok;
}

int cmd_separation(const std::string& file, bool unoriented, unsigned parallel, bool list) {
  TableInput input;
  try {
    input = load_table(file);
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return exit_input;
  }
  auto rep = separation(run_table(input, parallel), unoriented);
  std::cout << "total " << rep.total_knots << "\n"
            << "distinct " << rep.distinct_values << "\n"
            << "deficit " << rep.deficit << "\n"
            << "collision classes " << rep.collision_classes.size() << "\n";
  if (list)
    for (const auto& names : rep.collision_classes) {
      for (std::size_t k = 0; k < names.size(); ++k) std::cout << (k ? " " : "  ") << names[k];
      std::cout << "\n";
    }
  return exit_ok;
}

bool print_grules() {
  bool ok = true;
  for (const auto& r : run_grules_suite()) {
    std::cout << r.move << " " << (r.holds ? "holds" : "fails");
    if (!r.holds) std::cout << " " << r.difference.str();
    std::cout << "\n";
    ok = ok && r.holds;
  }
  return ok;
}

int cmd_verify(int moves, bool oracle, bool grules, std::uint64_t seed, const std::string& table) {
  bool all = moves < 0 && !oracle && !grules;
  if (all) {
    moves = 200;
    oracle = grules = true;
  }
  TableInput input;
  if (moves > 0 || oracle) {
    try {
      input = load_table(table);
    } catch (const std::exception& e) {
      std::cerr << "input error: " << e.what() << "\n";
      return exit_input;
    }
  }
  bool ok = true;
  if (moves > 0) {
    auto rep = run_move_trials(trial_pool(input.rows, seed), moves, seed);
    std::cout << "moves: " << rep.passed << "/" << rep.trials << " trials kept (Delta, rho1)";
    for (auto [k, n] : rep.used) std::cout << " " << to_string(k) << "=" << n;
    std::cout << "\n";
    if (rep.failure) {
      ok = false;
      std::cout << "moves: FAIL " << to_string(rep.failure->move) << ": " << rep.failure->reason << "\n"
                << to_json(rep.failure->diagram).dump() << "\n";
    }
  }
  if (oracle) {
    auto rep = run_oracle_suite(small_corpus(input.rows));
    std::cout << "oracle: " << rep.comparisons << " comparisons, max error " << sci(rep.max_error) << ", "
              << rep.failures.size() << " failure(s)\n";
    for (const auto& f : rep.failures) std::cout << "oracle: FAIL " << f << "\n";
    ok = ok && rep.failures.empty();
  }
  if (grules) ok = print_grules() && ok;
  std::cout << (ok ? "pass" : "fail") << "\n";
  return ok ? exit_ok : exit_failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Delta and rho_1 of knots"};
  app.require_subcommand(1);

  std::string pd, dt, json_file, format = "text";
  bool factored = false;
  auto* compute = app.add_subcommand("compute", "invariants of one knot");
  auto* pd_opt = compute->add_option("--pd", pd, "PD code, e.g. X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]");
  auto* dt_opt = compute->add_option("--dt", dt, "DT code, e.g. \"4 6 2\"");
  auto* json_opt = compute->add_option("--json", json_file, "upright diagram as JSON");
  pd_opt->excludes(dt_opt, json_opt);
  dt_opt->excludes(json_opt);
  compute->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  compute->add_flag("--factored", factored, "split off content and (T-1)^2 factors");

  std::string table_file, out_file, table_format = "csv";
  unsigned parallel = std::max(1u, std::thread::hardware_concurrency());
  bool no_timing = false;
  auto* table = app.add_subcommand("table", "invariants of every knot in a name,dt CSV");
  table->add_option("file", table_file)->required();
  table->add_option("--parallel", parallel, "worker threads");
  table->add_option("--out", out_file, "output file (default stdout)");
  table->add_option("--format", table_format)->check(CLI::IsMember({"csv", "jsonl"}));
  table->add_flag("--no-timing", no_timing, "omit wall times, for byte-identical output");

  bool unoriented = false, list = false;
  auto* sep = app.add_subcommand("separation", "count distinct (Delta, rho1) values in a table");
  sep->add_option("file", table_file)->required();
  sep->add_flag("--unoriented", unoriented, "identify each value with its mirror");
  sep->add_option("--parallel", parallel, "worker threads");
  sep->add_flag("--list", list, "print the collision classes");

  int moves = -1;
  bool oracle = false, grules = false;
  std::uint64_t seed = 1;
  std::string verify_table = default_table();
  auto* verify = app.add_subcommand("verify", "property suites (all of them when no suite is named)");
  verify->add_option("--moves", moves, "random Reidemeister trials");
  verify->add_flag("--oracle", oracle, "traffic path sums against the exact Green function");
  verify->add_flag("--grules", grules, "symbolic move identities");
  verify->add_option("--seed", seed);
  verify->add_option("--table", verify_table, "knot table for trial and oracle diagrams");

  auto* grules_check = app.add_subcommand("grules-check", "symbolic move identities, one line per move");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? exit_ok : exit_input;
  }

  if (*compute) {
    if (!*pd_opt && !*dt_opt && !*json_opt) {
      std::cerr << "compute needs one of --pd, --dt, --json\n";
      return exit_input;
    }
    return cmd_compute(pd, dt, json_file, format, factored);
  }
  if (*table) return cmd_table(table_file, parallel, out_file, table_format, !no_timing);
  if (*sep) return cmd_separation(table_file, unoriented, parallel, list);
  if (*verify) return cmd_verify(moves, oracle, grules, seed, verify_table);
  if (*grules_check) return print_grules() ? exit_ok : exit_failed;
  return exit_input;
}
