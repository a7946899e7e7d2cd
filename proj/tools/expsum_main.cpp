// Command-line front end: exponential-sum pipelines, zeta evaluation, AE
// query benchmarks, and Hardy-Z zero scans, all emitting line-delimited
// records (JSON by default, CSV with --format csv).

#include <atomic>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "expsum/amp_est.hpp"
#include "expsum/errors.hpp"
#include "expsum/exp_sum.hpp"
#include "expsum/rng.hpp"
#include "expsum/run_record.hpp"
#include "expsum/zeta.hpp"
#include "expsum/zeta_quantum.hpp"

namespace {

using namespace expsum;
using cplx = std::complex<double>;

constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------------------
// Output plumbing
// ---------------------------------------------------------------------------

struct Emitter {
  std::string format = "json";
  bool header_done = false;

  void emit(const RunRecord& rec) {
    if (format == "csv") {
      if (!header_done) {
        std::cout << rec.csv_header() << "\n";
        header_done = true;
      }
      std::cout << rec.csv_row() << "\n";
    } else {
      std::cout << rec.json_line() << "\n";
    }
  }
};

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

// Deterministic order-independent parallel sweep; EXPSUM_THREADS caps the
// worker count.
void parallel_for(std::size_t count,
                  const std::function<void(std::size_t)>& fn) {
  unsigned workers = std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  if (const char* env = std::getenv("EXPSUM_THREADS")) {
    long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) workers = static_cast<unsigned>(cap);
  }
  workers = static_cast<unsigned>(
      std::min<std::size_t>(workers, count > 0 ? count : 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count;
           i = next.fetch_add(1)) {
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

// ---------------------------------------------------------------------------
// Flag parsing helpers
// ---------------------------------------------------------------------------

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

AEConfig parse_ae(const std::string& spec, std::uint64_t seed) {
  AEConfig cfg;
  cfg.seed = seed;
  auto parts = split(spec, ':');
  if (parts[0] == "exact") {
    cfg.method = AEMethod::Exact;
  } else if (parts[0] == "qft") {
    cfg.method = AEMethod::QFT;
    if (parts.size() > 1) cfg.precision_bits = std::stoi(parts[1]);
  } else if (parts[0] == "cpp") {
    cfg.method = AEMethod::ClassicalPP;
    if (parts.size() > 1) cfg.shots = std::stoull(parts[1]);
  } else if (parts[0] == "kitaev") {
    cfg.method = AEMethod::Kitaev;
    if (parts.size() > 1) cfg.precision_bits = std::stoi(parts[1]);
    if (parts.size() > 2) cfg.shots_per_bit = std::stoull(parts[2]);
  } else {
    throw CLI::ValidationError("--ae", "unknown estimator '" + spec + "'");
  }
  return cfg;
}

WeightOracle parse_weights(int n, const std::string& spec) {
  std::uint64_t dim = std::uint64_t{1} << n;
  if (spec == "uniform") return WeightOracle::uniform(n);
  auto parts = split(spec, ':');
  if (parts[0] == "power" && parts.size() == 2) {
    double sigma = std::stod(parts[1]);
    std::vector<double> w(dim);
    double total = 0.0;
    for (std::uint64_t k = 0; k < dim; ++k) {
      w[k] = std::pow(static_cast<double>(k + 1), -sigma);
      total += w[k];
    }
    for (double& x : w) x /= total;
    return WeightOracle::from_weights(n, w);
  }
  if (parts[0] == "file" && parts.size() == 2) {
    std::ifstream in(parts[1]);
    if (!in) throw CLI::ValidationError("--weights", "cannot open " + parts[1]);
    std::vector<double> w;
    double x;
    while (in >> x) w.push_back(x);
    if (w.size() != dim) {
      throw CLI::ValidationError("--weights",
                                 "file must hold exactly 2^n weights");
    }
    double total = 0.0;
    for (double v : w) total += v;
    if (total <= 0.0) {
      throw CLI::ValidationError("--weights", "weights must sum positive");
    }
    for (double& v : w) v /= total;
    return WeightOracle::from_weights(n, w);
  }
  throw CLI::ValidationError("--weights", "unknown weight spec '" + spec + "'");
}

std::function<double(std::uint64_t)> parse_f(const std::string& spec) {
  auto parts = split(spec, ':');
  if (parts[0] == "poly" && parts.size() == 2) {
    std::vector<double> coeffs;
    for (const auto& c : split(parts[1], ',')) coeffs.push_back(std::stod(c));
    if (coeffs.empty()) {
      throw CLI::ValidationError("--f", "poly needs coefficients");
    }
    Polynomial poly{coeffs};
    return [poly](std::uint64_t k) {
      return poly.eval(static_cast<double>(k));
    };
  }
  if (parts[0] == "file" && parts.size() == 2) {
    std::ifstream in(parts[1]);
    if (!in) throw CLI::ValidationError("--f", "cannot open " + parts[1]);
    auto table = std::make_shared<std::map<std::uint64_t, double>>();
    std::uint64_t k;
    double v;
    while (in >> k >> v) (*table)[k] = v;
    return [table](std::uint64_t key) {
      auto it = table->find(key);
      return it == table->end() ? 0.0 : it->second;
    };
  }
  throw CLI::ValidationError("--f", "unknown f spec '" + spec + "'");
}

std::string ae_label(const AEConfig& cfg) {
  switch (cfg.method) {
    case AEMethod::Exact: return "exact";
    case AEMethod::QFT: return "qft:" + std::to_string(cfg.precision_bits);
    case AEMethod::ClassicalPP: return "cpp:" + std::to_string(cfg.shots);
    case AEMethod::Kitaev:
      return "kitaev:" + std::to_string(cfg.precision_bits);
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Subcommand state
// ---------------------------------------------------------------------------

struct EsArgs {
  int n = 2;
  std::string weights = "uniform";
  std::string f;
  std::string part = "re";
  std::string method;
  std::string ae = "exact";
  int m2 = 52;
  std::uint64_t seed = 0;
  bool compare_oracle = false;
};

struct ZetaArgs {
  double sigma = 0.5;
  double t = 0.0;
  int digits = 12;
  std::string method = "em";
  std::string ae = "exact";
  std::uint64_t seed = 0;
};

struct BenchArgs {
  double a = 0.6;
  std::string methods = "exact,qft,cpp,kitaev";
  std::string eps_grid = "0.1,0.05,0.02,0.01";
  int trials = 20;
  std::uint64_t seed = 0;
};

struct ScanArgs {
  double t_min = 10.0;
  double t_max = 30.0;
  double step = 0.5;
  std::string method = "em";
  int digits = 12;
  std::uint64_t seed = 0;
};

int run_es(const EsArgs& args, Emitter& emitter, bool timing) {
  auto start = std::chrono::steady_clock::now();
  ExpSumProblem problem;
  problem.n_qubits = args.n;
  problem.weights = parse_weights(args.n, args.weights);
  problem.f = parse_f(args.f);
  problem.fmt = FixedPointFormat{0, args.m2};

  std::string method = args.method;
  if (method.empty()) method = args.part == "mag" ? "inversion" : "phase";
  bool mag_part = args.part == "mag";
  bool mag_method = method == "inversion" || method == "hadamard";
  if (method != "oracle" && mag_part != mag_method) {
    std::cerr << "error: --part " << args.part << " cannot use --method "
              << method << "\n";
    return 2;
  }

  AEConfig cfg = parse_ae(args.ae, args.seed);
  cplx result;
  double error_bound = 0.0;
  std::uint64_t q_apps = 0;

  if (method == "oracle") {
    cplx oracle = es_classical_oracle(problem);
    if (args.part == "re") result = {oracle.real(), 0.0};
    else if (args.part == "im") result = {0.0, oracle.imag()};
    else result = {es_magnitude_oracle(problem), 0.0};
  } else if (args.part == "re") {
    RealEstimate est = es_real(problem, cfg);
    result = {est.value, 0.0};
    error_bound = est.error_bound;
    q_apps = est.q_applications;
  } else if (args.part == "im") {
    RealEstimate est = es_imag(problem, cfg);
    result = {0.0, est.value};
    error_bound = est.error_bound;
    q_apps = est.q_applications;
  } else if (args.part == "mag") {
    RealEstimate est = method == "inversion"
                           ? es_magnitude_inversion(problem, cfg)
                           : es_magnitude_hadamard(problem, cfg);
    result = {est.value, 0.0};
    error_bound = est.error_bound;
    q_apps = est.q_applications;
  } else {
    std::cerr << "error: unknown --part " << args.part << "\n";
    return 2;
  }

  RunRecord rec;
  rec.add("cmd", std::string("es"));
  rec.add("n", static_cast<std::int64_t>(args.n));
  rec.add("weights", args.weights);
  rec.add("f", args.f);
  rec.add("part", args.part);
  rec.add("method", method);
  rec.add("ae", ae_label(cfg));
  rec.add("result", result);
  rec.add("error_bound", error_bound);
  rec.add("q_applications", q_apps);
  rec.add("seed", args.seed);
  if (args.compare_oracle && method != "oracle") {
    double deviation;
    if (args.part == "mag") {
      double oracle = es_magnitude_oracle(problem, true);
      rec.add("oracle", cplx{oracle, 0.0});
      deviation = std::abs(result.real() - oracle);
    } else {
      cplx oracle = es_classical_oracle(problem, true);
      rec.add("oracle", oracle);
      deviation = args.part == "re" ? std::abs(result.real() - oracle.real())
                                    : std::abs(result.imag() - oracle.imag());
    }
    rec.add("deviation", deviation);
  }
  if (timing) rec.add("wall_time_ms", elapsed_ms(start));
  emitter.emit(rec);
  return 0;
}

int run_zeta(const ZetaArgs& args, Emitter& emitter, bool timing) {
  auto start = std::chrono::steady_clock::now();
  cplx s{args.sigma, args.t};
  AEConfig cfg = parse_ae(args.ae, args.seed);

  RunRecord rec;
  rec.add("cmd", std::string("zeta"));
  rec.add("sigma", args.sigma);
  rec.add("t", args.t);
  rec.add("digits", static_cast<std::int64_t>(args.digits));
  rec.add("method", args.method);

  if (args.method == "em") {
    EMParams params = select_em_params(s, args.digits);
    rec.add("result", zeta_euler_maclaurin(s, args.digits));
    rec.add("error_bound", std::pow(10.0, -args.digits));
    rec.add("N", static_cast<std::int64_t>(params.n_terms));
    rec.add("K", static_cast<std::int64_t>(params.order));
  } else if (args.method == "rs") {
    rec.add("result", riemann_siegel_zeta(s));
    rec.add("error_bound", 1e-8);
    rec.add("N", static_cast<std::int64_t>(rs_main_terms(args.t)));
  } else if (args.method == "hybrid-em" || args.method == "hybrid-rs") {
    HybridMode mode = args.method == "hybrid-em" ? HybridMode::EulerMaclaurin
                                                 : HybridMode::RiemannSiegel;
    ZetaHybridResult res = zeta_hybrid(s, args.digits, mode, cfg);
    rec.add("result", res.value);
    rec.add("ae_error_bound", res.ae_error_bound);
    rec.add("classical_error_bound", res.classical_error_bound);
    rec.add("N", static_cast<std::int64_t>(res.n_terms));
    rec.add("K", static_cast<std::int64_t>(res.order));
    rec.add("q_applications", res.q_applications);
    rec.add("ae", ae_label(cfg));
  } else {
    std::cerr << "error: unknown --method " << args.method << "\n";
    return 2;
  }
  rec.add("seed", args.seed);
  if (timing) rec.add("wall_time_ms", elapsed_ms(start));
  emitter.emit(rec);
  return 0;
}

int run_ae_bench(const BenchArgs& args, Emitter& emitter, bool timing) {
  if (args.a < 0.0 || args.a > 1.0) {
    std::cerr << "error: --a must lie in [0, 1]\n";
    return 2;
  }
  double theta = std::acos(args.a);
  Circuit prep;
  prep.n_qubits = 1;
  prep.add(Gate::rotation(theta, 0));
  PreparedAmplitude amp{prep, 1, 0};

  auto methods = split(args.methods, ',');
  auto eps_values = split(args.eps_grid, ',');
  struct Cell {
    std::string method;
    double eps;
  };
  std::vector<Cell> grid;
  for (const auto& m : methods) {
    for (const auto& e : eps_values) grid.push_back({m, std::stod(e)});
  }

  struct CellResult {
    RunRecord rec;
  };
  std::vector<CellResult> results(grid.size());
  std::atomic<int> bad{0};

  parallel_for(grid.size(), [&](std::size_t idx) {
    auto start = std::chrono::steady_clock::now();
    const Cell& cell = grid[idx];
    AEConfig cfg;
    if (cell.method == "exact") {
      cfg.method = AEMethod::Exact;
    } else if (cell.method == "qft") {
      cfg.method = AEMethod::QFT;
      cfg.precision_bits =
          static_cast<int>(std::ceil(std::log2(kPi / cell.eps)));
    } else if (cell.method == "kitaev") {
      cfg.method = AEMethod::Kitaev;
      cfg.precision_bits =
          static_cast<int>(std::ceil(std::log2(kPi / cell.eps)));
      cfg.shots_per_bit = 4000;
    } else if (cell.method == "cpp") {
      cfg.method = AEMethod::ClassicalPP;
      cfg.shots = classical_pp_shots(cell.eps, 0.05);
    } else {
      bad.store(1);
      return;
    }
    double err_sum = 0.0;
    std::uint64_t q_apps = 0;
    for (int trial = 0; trial < args.trials; ++trial) {
      cfg.seed = derive_seed(args.seed, idx * 10007 + trial);
      AmplitudeEstimate est = estimate_amplitude(amp, cfg);
      err_sum += std::abs(est.a_hat - args.a);
      q_apps = est.q_applications;
    }
    RunRecord& rec = results[idx].rec;
    rec.add("cmd", std::string("ae-bench"));
    rec.add("method", cell.method);
    rec.add("eps", cell.eps);
    rec.add("a", args.a);
    rec.add("trials", static_cast<std::int64_t>(args.trials));
    rec.add("mean_abs_error", err_sum / args.trials);
    rec.add("q_applications", q_apps);
    rec.add("seed", args.seed);
    if (timing) rec.add("wall_time_ms", elapsed_ms(start));
  });

  if (bad.load() != 0) {
    std::cerr << "error: unknown method in --methods\n";
    return 2;
  }
  for (auto& r : results) emitter.emit(r.rec);
  return 0;
}

int run_scan_zeros(const ScanArgs& args, Emitter& emitter, bool timing) {
  if (args.step <= 0.0 || args.t_max < args.t_min) {
    std::cerr << "error: need --step > 0 and --t-max >= --t-min\n";
    return 2;
  }
  ZetaMethod method = args.method == "rs" ? ZetaMethod::RiemannSiegel
                                          : ZetaMethod::EulerMaclaurin;
  std::vector<double> ts;
  for (double t = args.t_min; t <= args.t_max + 1e-12; t += args.step) {
    ts.push_back(t);
  }
  std::vector<double> zs(ts.size());
  parallel_for(ts.size(), [&](std::size_t i) {
    zs[i] = hardy_Z(ts[i], method, args.digits);
  });

  for (std::size_t i = 0; i < ts.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    RunRecord rec;
    rec.add("cmd", std::string("scan-zeros"));
    rec.add("type", std::string("grid"));
    rec.add("t", ts[i]);
    rec.add("Z", zs[i]);
    rec.add("method", args.method);
    rec.add("seed", args.seed);
    if (timing) rec.add("wall_time_ms", elapsed_ms(start));
    emitter.emit(rec);
  }

  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    if (!(zs[i] == 0.0) && !(zs[i + 1] == 0.0) && zs[i] * zs[i + 1] < 0.0) {
      auto start = std::chrono::steady_clock::now();
      double lo = ts[i], hi = ts[i + 1];
      double z_lo = zs[i];
      while (hi - lo > 1e-9) {
        double mid = 0.5 * (lo + hi);
        double z_mid = hardy_Z(mid, method, args.digits);
        if (z_mid == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((z_lo < 0.0) == (z_mid < 0.0)) {
          lo = mid;
          z_lo = z_mid;
        } else {
          hi = mid;
        }
      }
      RunRecord rec;
      rec.add("cmd", std::string("scan-zeros"));
      rec.add("type", std::string("zero"));
      rec.add("bracket_lo", ts[i]);
      rec.add("bracket_hi", ts[i + 1]);
      rec.add("zero", 0.5 * (lo + hi));
      rec.add("method", args.method);
      rec.add("seed", args.seed);
      if (timing) rec.add("wall_time_ms", elapsed_ms(start));
      emitter.emit(rec);
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exponential sums and Riemann zeta on a simulated quantum pipeline"};
  app.require_subcommand(1);

  Emitter emitter;
  bool timing = false;
  app.add_option("--format", emitter.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--timing", timing, "include wall_time_ms in records");

  EsArgs es;
  auto* es_cmd = app.add_subcommand("es", "evaluate an exponential sum");
  es_cmd->add_option("--n", es.n, "qubit count")->required();
  es_cmd->add_option("--weights", es.weights, "uniform | power:sigma | file:PATH");
  es_cmd->add_option("--f", es.f, "poly:c0,c1,... | file:PATH (cycles)")
      ->required();
  es_cmd->add_option("--part", es.part)->check(CLI::IsMember({"re", "im", "mag"}));
  es_cmd->add_option("--method", es.method,
                     "phase | inversion | hadamard | oracle");
  es_cmd->add_option("--ae", es.ae, "exact | qft:m | cpp:shots | kitaev:m");
  es_cmd->add_option("--m2", es.m2, "fixed-point fraction bits");
  es_cmd->add_option("--seed", es.seed);
  es_cmd->add_flag("--compare-oracle", es.compare_oracle);

  ZetaArgs zeta;
  auto* zeta_cmd = app.add_subcommand("zeta", "evaluate zeta(sigma + it)");
  zeta_cmd->add_option("--sigma", zeta.sigma)->required();
  zeta_cmd->add_option("--t", zeta.t)->required();
  zeta_cmd->add_option("--digits", zeta.digits);
  zeta_cmd->add_option("--method", zeta.method)
      ->check(CLI::IsMember({"em", "rs", "hybrid-em", "hybrid-rs"}));
  zeta_cmd->add_option("--ae", zeta.ae);
  zeta_cmd->add_option("--seed", zeta.seed);

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("ae-bench", "amplitude estimation sweep");
  bench_cmd->add_option("--a", bench.a)->required();
  bench_cmd->add_option("--methods", bench.methods);
  bench_cmd->add_option("--eps-grid", bench.eps_grid);
  bench_cmd->add_option("--trials", bench.trials);
  bench_cmd->add_option("--seed", bench.seed);

  ScanArgs scan;
  auto* scan_cmd = app.add_subcommand("scan-zeros", "Hardy-Z sign-change scan");
  scan_cmd->add_option("--t-min", scan.t_min)->required();
  scan_cmd->add_option("--t-max", scan.t_max)->required();
  scan_cmd->add_option("--step", scan.step);
  scan_cmd->add_option("--method", scan.method)
      ->check(CLI::IsMember({"em", "rs"}));
  scan_cmd->add_option("--digits", scan.digits);
  scan_cmd->add_option("--seed", scan.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand(es_cmd)) return run_es(es, emitter, timing);
    if (app.got_subcommand(zeta_cmd)) return run_zeta(zeta, emitter, timing);
    if (app.got_subcommand(bench_cmd)) {
      return run_ae_bench(bench, emitter, timing);
    }
    if (app.got_subcommand(scan_cmd)) {
      return run_scan_zeros(scan, emitter, timing);
    }
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
