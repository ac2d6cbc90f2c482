#include "locolour/cli.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "locolour/hypergraph.hpp"
#include "locolour/instances.hpp"
#include "locolour/mod2.hpp"
#include "locolour/rational.hpp"
#include "locolour/verify.hpp"

namespace locolour::cli {

namespace {

using Json = nlohmann::ordered_json;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << contents) || !out.flush()) throw IoError("cannot write " + path);
}

void emit(const Json& record, ReportFormat format, std::ostream& out) {
  if (format == ReportFormat::Structured) {
    out << record.dump() << '\n';
    return;
  }
  for (const auto& [key, value] : record.items()) {
    out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
  }
}

double ms(std::chrono::duration<double> d) { return d.count() * 1e3; }

Json bound_json(Algo algo, std::size_t n, std::size_t m) {
  auto b = theoretical_bound(algo, n, m);
  return b ? Json(*b) : Json(nullptr);
}

struct Outcome {
  Colouring colouring;
  std::size_t iterations = 0;
  std::size_t brute_forced = 0;
  std::size_t retries = 0;
  std::optional<BigRational> max_over_min;
  std::chrono::duration<double> elapsed{};
};

// Runs the requested algorithm, routing small inputs away from the rational
// solver. Sets `effective` to the algorithm that actually ran. `lp_threads`
// is passed to the rational solver's LP stage (0 = all cores).
Outcome solve_with(const Hypergraph& h, const RunConfig& config, Algo& effective,
                   unsigned lp_threads) {
  effective = config.algo;
  if (effective == Algo::Rational && h.num_vertices() < kMinRationalVertices) {
    effective = Algo::Mod2;
  }
  Outcome o;
  switch (effective) {
    case Algo::Mod2: {
      auto r = solve_mod2(h, config.brute_threshold);
      o.colouring = std::move(r.colouring);
      o.iterations = r.iterations;
      o.brute_forced = r.brute_forced_vertices;
      o.elapsed = r.elapsed;
      break;
    }
    case Algo::Mod2Edges: {
      auto r = solve_mod2_edges(h);
      o.colouring = std::move(r.colouring);
      o.iterations = r.iterations;
      o.elapsed = r.elapsed;
      break;
    }
    case Algo::Rational: {
      auto r = solve_rational(h, config.seed, config.max_retries, lp_threads);
      o.colouring = std::move(r.colouring);
      o.retries = r.retries;
      o.max_over_min = r.max_over_min;
      o.elapsed = r.elapsed;
      break;
    }
  }
  return o;
}

int run_solve(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const Hypergraph h = parse_hypergraph(read_file(config.input));
  Json rec;
  rec["command"] = "solve";
  rec["algo"] = std::string(to_string(config.algo));
  rec["input"] = config.input;
  rec["n"] = h.num_vertices();
  rec["m"] = h.num_edges();

  Algo effective = config.algo;
  Outcome o;
  try {
    o = solve_with(h, config, effective, 0);
  } catch (const NotLO2Colourable& e) {
    err << "locolour: promise violated: " << e.what() << '\n';
    rec["status"] = "not-lo2-colourable";
    emit(rec, config.report_format, out);
    return kExitFailure;
  } catch (const Infeasible& e) {
    err << "locolour: promise violated: " << e.what() << '\n';
    rec["status"] = "not-lo2-colourable";
    emit(rec, config.report_format, out);
    return kExitFailure;
  } catch (const RetriesExhausted& e) {
    err << "locolour: " << e.what() << '\n';
    rec["status"] = "retries-exhausted";
    emit(rec, config.report_format, out);
    return kExitFailure;
  }

  const VerifyReport verdict = verify_lo_colouring(h, o.colouring);
  if (!config.output.empty()) write_file(config.output, serialize_colouring(o.colouring));

  rec["status"] = "ok";
  rec["fallback"] = effective != config.algo ? Json(std::string(to_string(effective))) : Json(nullptr);
  rec["colours_used"] = verdict.colours_used;
  rec["bound"] = bound_json(effective, h.num_vertices(), h.num_edges());
  rec["within_bound"] = within_bound(effective, verdict.colours_used, h.num_vertices(), h.num_edges());
  if (effective == Algo::Rational) {
    rec["seed"] = config.seed;
    rec["retries"] = o.retries;
    rec["max_over_min"] = o.max_over_min->get_str();
    rec["formula_bound"] = 2 + ceil_log2(*o.max_over_min);
  } else {
    rec["iterations"] = o.iterations;
    if (effective == Algo::Mod2) rec["brute_forced_vertices"] = o.brute_forced;
  }
  rec["elapsed_ms"] = ms(o.elapsed);
  rec["valid"] = verdict.valid;
  emit(rec, config.report_format, out);
  return verdict.valid ? kExitOk : kExitFailure;
}

int run_verify(const RunConfig& config, std::ostream& out) {
  const Hypergraph h = parse_hypergraph(read_file(config.input));
  const Colouring c = parse_colouring(read_file(config.colouring));
  const VerifyReport report = verify_lo_colouring(h, c);
  Json rec;
  rec["command"] = "verify";
  rec["verdict"] = report.valid ? "valid" : "invalid";
  rec["valid"] = report.valid;
  rec["colours_used"] = report.colours_used;
  Json violations = Json::array();
  for (const Violation& v : report.violations) {
    violations.push_back({{"edge", v.edge ? Json(*v.edge) : Json(nullptr)},
                          {"reason", std::string(to_string(v.reason))}});
  }
  rec["violations"] = violations;
  emit(rec, config.report_format, out);
  return report.valid ? kExitOk : kExitFailure;
}

int run_gen(const RunConfig& config, std::ostream& out) {
  Json rec;
  rec["command"] = "gen";
  rec["kind"] = config.kind;
  Hypergraph h;
  std::optional<Colouring> witness;
  if (config.kind == "planted") {
    auto inst = gen_planted(config.n, config.m, config.ones_fraction, config.seed);
    h = std::move(inst.hypergraph);
    witness = std::move(inst.planted);
    rec["seed"] = config.seed;
    rec["ones_fraction"] = config.ones_fraction;
  } else if (config.kind == "clique") {
    h = gen_clique_gadget(config.k);
    Colouring c(h.num_vertices());
    for (Vertex x = 0; x < h.num_vertices(); ++x) c.set(x, x < config.k ? 0 : 1);
    witness = std::move(c);
    rec["k"] = config.k;
  } else {
    throw std::invalid_argument("unknown kind '" + config.kind + "'");
  }
  rec["n"] = h.num_vertices();
  rec["m"] = h.num_edges();

  if (!config.witness.empty()) write_file(config.witness, serialize_colouring(*witness));
  if (config.output.empty()) {
    out << serialize_hypergraph(h);
    return kExitOk;
  }
  write_file(config.output, serialize_hypergraph(h));
  rec["output"] = config.output;
  if (!config.witness.empty()) rec["witness"] = config.witness;
  emit(rec, config.report_format, out);
  return kExitOk;
}

int run_oracle(const RunConfig& config, std::ostream& out) {
  const Hypergraph h = parse_hypergraph(read_file(config.input));
  const std::size_t budget = config.budget ? config.budget : h.num_vertices();
  const auto best = brute_force_min_lo(h, budget);
  Json rec;
  rec["command"] = "oracle";
  rec["n"] = h.num_vertices();
  rec["m"] = h.num_edges();
  rec["budget"] = budget;
  rec["min_colours"] = best ? Json(*best) : Json(nullptr);
  emit(rec, config.report_format, out);
  return best ? kExitOk : kExitFailure;
}

int run_bench_command(const RunConfig& config, std::ostream& out) {
  if (config.sizes.empty()) throw std::invalid_argument("bench needs --sizes");
  const auto rows = run_bench(config);
  bool all_good = true;
  for (const BenchRow& row : rows) {
    all_good = all_good && row.error.empty() && row.valid && row.within_bound;
    if (config.report_format == ReportFormat::Structured) {
      Json rec;
      rec["command"] = "bench";
      rec["algo"] = std::string(to_string(row.algo));
      rec["fallback"] = row.fallback;
      rec["n"] = row.n;
      rec["m"] = row.m;
      rec["seed"] = row.seed;
      rec["colours_used"] = row.colours_used;
      rec["bound"] = row.bound ? Json(*row.bound) : Json(nullptr);
      rec["within_bound"] = row.within_bound;
      rec["valid"] = row.valid;
      rec["elapsed_ms"] = row.elapsed_ms;
      if (!row.error.empty()) rec["status"] = "error";
      out << rec.dump() << '\n';
    } else {
      std::ostringstream line;
      line << "n=" << row.n << " m=" << row.m << " seed=" << row.seed
           << " algo=" << to_string(row.algo) << (row.fallback ? "(fallback)" : "")
           << " colours=" << row.colours_used << " bound=";
      if (row.bound) {
        line << std::fixed << std::setprecision(2) << *row.bound;
      } else {
        line << "-";
      }
      line << " within=" << (row.within_bound ? "yes" : "no")
           << " valid=" << (row.valid ? "yes" : "no") << std::setprecision(3)
           << " ms=" << row.elapsed_ms;
      if (!row.error.empty()) line << " error";
      out << line.str() << '\n';
    }
  }
  return all_good ? kExitOk : kExitFailure;
}

}  // namespace

std::string_view to_string(Algo algo) {
  switch (algo) {
    case Algo::Mod2:
      return "mod2";
    case Algo::Mod2Edges:
      return "mod2-edges";
    case Algo::Rational:
      return "rational";
  }
  return "unknown";
}

std::optional<double> theoretical_bound(Algo algo, std::size_t n, std::size_t m) {
  switch (algo) {
    case Algo::Mod2:
      if (n < 4) return std::nullopt;
      return std::log2(static_cast<double>(n));
    case Algo::Mod2Edges:
      if (m == 0) return std::nullopt;
      return 2 + 0.5 * std::log2(static_cast<double>(m));
    case Algo::Rational: {
      if (n < kMinRationalVertices) return std::nullopt;
      const double x = static_cast<double>(n);
      return 2 + std::ceil(std::log2(8 * std::pow(x, 1.5) * std::sqrt(std::log(x))));
    }
  }
  return std::nullopt;
}

bool within_bound(Algo algo, std::size_t colours, std::size_t n, std::size_t m) {
  switch (algo) {
    case Algo::Mod2:
      // colours <= log2 n  <=>  2^colours <= n
      if (n < 4) return true;
      return colours < 64 && (std::size_t{1} << colours) <= n;
    case Algo::Mod2Edges:
      // colours <= 2 + log2(m)/2  <=>  4^(colours-2) <= m
      if (m == 0 || colours <= 2) return true;
      return colours - 2 < 32 && (std::size_t{1} << (2 * (colours - 2))) <= m;
    case Algo::Rational: {
      auto b = theoretical_bound(algo, n, m);
      return !b || static_cast<double>(colours) <= *b;
    }
  }
  return false;
}

std::vector<BenchRow> run_bench(const RunConfig& config) {
  std::vector<BenchRow> rows;
  for (std::size_t n : config.sizes) {
    for (std::size_t i = 0; i < config.instances; ++i) {
      BenchRow row;
      row.n = n;
      row.m = std::min(config.edge_factor * n, planted_capacity(n, 0.25));
      row.seed = config.seed + rows.size();
      row.algo = config.algo;
      rows.push_back(row);
    }
  }

  unsigned jobs = config.jobs ? config.jobs : std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      BenchRow& row = rows[i];
      try {
        const auto inst = gen_planted(row.n, row.m, 0.25, row.seed);
        RunConfig solo = config;
        solo.seed = row.seed;
        Algo effective = config.algo;
        const Outcome o = solve_with(inst.hypergraph, solo, effective, 1);
        const auto verdict = verify_lo_colouring(inst.hypergraph, o.colouring);
        row.algo = effective;
        row.fallback = effective != config.algo;
        row.colours_used = verdict.colours_used;
        row.valid = verdict.valid;
        row.bound = theoretical_bound(effective, row.n, row.m);
        row.within_bound = within_bound(effective, row.colours_used, row.n, row.m);
        row.elapsed_ms = ms(o.elapsed);
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    }
  };
  if (jobs <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(work);
  }
  return rows;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    switch (config.command) {
      case Command::Solve:
        return run_solve(config, out, err);
      case Command::Verify:
        return run_verify(config, out);
      case Command::Gen:
        return run_gen(config, out);
      case Command::Oracle:
        return run_oracle(config, out);
      case Command::Bench:
        return run_bench_command(config, out);
    }
  } catch (const ParseError& e) {
    err << "locolour: parse error: " << e.what() << '\n';
  } catch (const IoError& e) {
    err << "locolour: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    err << "locolour: " << e.what() << '\n';
  }
  return kExitUsage;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"LO colourings of LO 2-colourable 3-uniform hypergraphs", "locolour"};
  app.require_subcommand(1);
  RunConfig config;
  std::string algo_name = "mod2";
  std::string format_name = "text";

  const std::map<std::string, Algo> algos{
      {"mod2", Algo::Mod2}, {"mod2-edges", Algo::Mod2Edges}, {"rational", Algo::Rational}};
  const std::map<std::string, ReportFormat> formats{{"text", ReportFormat::Text},
                                                    {"structured", ReportFormat::Structured}};
  auto add_report = [&](CLI::App* sub) {
    sub->add_option("--report-format", format_name, "Report format: text or structured")
        ->check(CLI::IsMember({"text", "structured"}))
        ->capture_default_str();
  };
  auto add_algo = [&](CLI::App* sub) {
    sub->add_option("--algo", algo_name, "Algorithm: mod2, mod2-edges or rational")
        ->check(CLI::IsMember({"mod2", "mod2-edges", "rational"}))
        ->capture_default_str();
  };

  auto* solve = app.add_subcommand("solve", "Find an LO colouring of a hypergraph file");
  add_algo(solve);
  solve->add_option("--input", config.input, "Hypergraph file (p lo3 format)")->required();
  solve->add_option("--output", config.output, "Write the colouring to this file");
  solve->add_option("--seed", config.seed, "Random seed for the rational solver")
      ->capture_default_str();
  solve->add_option("--brute-threshold", config.brute_threshold,
                    "Brute-force the residual at this many vertices")
      ->capture_default_str();
  solve->add_option("--max-retries", config.max_retries,
                    "Rejected samples allowed by the rational solver")
      ->capture_default_str();
  add_report(solve);

  auto* verify = app.add_subcommand("verify", "Check an LO colouring against a hypergraph");
  verify->add_option("--input", config.input, "Hypergraph file")->required();
  verify->add_option("--colouring", config.colouring, "Colouring file")->required();
  add_report(verify);

  auto* gen = app.add_subcommand("gen", "Generate an LO 2-colourable instance");
  gen->add_option("--kind", config.kind, "planted or clique")
      ->check(CLI::IsMember({"planted", "clique"}))
      ->capture_default_str();
  gen->add_option("--n", config.n, "Vertices (planted)");
  gen->add_option("--m", config.m, "Edges (planted)");
  gen->add_option("--ones-fraction", config.ones_fraction, "Share of planted 1-vertices")
      ->capture_default_str();
  gen->add_option("--k", config.k, "Clique size (clique)");
  gen->add_option("--seed", config.seed, "Generator seed")->capture_default_str();
  gen->add_option("--output", config.output, "Instance file (default: standard output)");
  gen->add_option("--witness", config.witness, "Write the planted 2-colouring here");
  add_report(gen);

  auto* oracle = app.add_subcommand("oracle", "Exhaustive minimum LO colour count (n <= 10)");
  oracle->add_option("--input", config.input, "Hypergraph file")->required();
  oracle->add_option("--budget", config.budget, "Largest palette to try (0 = n)")
      ->capture_default_str();
  add_report(oracle);

  auto* bench = app.add_subcommand("bench", "Solve planted instances over a size sweep");
  add_algo(bench);
  bench->add_option("--sizes", config.sizes, "Vertex counts, comma separated")
      ->delimiter(',')
      ->required();
  bench->add_option("--edge-factor", config.edge_factor, "Edges per vertex")
      ->capture_default_str();
  bench->add_option("--instances", config.instances, "Instances per size")
      ->capture_default_str();
  bench->add_option("--seed", config.seed, "Base seed")->capture_default_str();
  bench->add_option("--brute-threshold", config.brute_threshold, "As for solve")
      ->capture_default_str();
  bench->add_option("--max-retries", config.max_retries, "As for solve")->capture_default_str();
  bench->add_option("--jobs", config.jobs, "Worker threads (0 = all cores)")
      ->capture_default_str();
  add_report(bench);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  config.algo = algos.at(algo_name);
  config.report_format = formats.at(format_name);
  if (solve->parsed()) config.command = Command::Solve;
  if (verify->parsed()) config.command = Command::Verify;
  if (gen->parsed()) config.command = Command::Gen;
  if (oracle->parsed()) config.command = Command::Oracle;
  if (bench->parsed()) config.command = Command::Bench;
  return run(config, out, err);
}

}  // namespace locolour::cli
