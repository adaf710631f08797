// rmtedge command-line front end. Uses only the C API.
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rmtedge/rmtedge.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitArgument = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitCheck = 4;

constexpr double kGueC0Printed = 0.030629;
constexpr double kWishartC0Printed = 0.16952;
constexpr double kTracyWidomTail = 0.030627;
constexpr double kTwoEdgeReal = 0.6921;
constexpr double kTwoEdgeComplex = 0.9397;
constexpr double kWishartExitLimit = 0.1695;

// Published finite-N GUE counting table: N, p(1), p(2), p(3), E(T_N).
struct TableRow {
  int N;
  double p1, p2, p3, expected;
};
constexpr TableRow kTable1[] = {
    {10, 2.868e-2, 1.36e-6, 6.9e-14, 0.028681},  {25, 2.955e-2, 1.70e-6, 1.4e-13, 0.029551},
    {50, 2.994e-2, 1.88e-6, 1.9e-13, 0.029944},  {100, 3.019e-2, 2.00e-6, 2.3e-13, 0.030195},
    {250, 3.039e-2, 2.09e-6, 2.6e-13, 0.030392}, {500, 3.048e-2, 2.14e-6, 2.8e-13, 0.030480},
};

const TableRow* table1_row(int N) {
  for (const auto& r : kTable1)
    if (r.N == N) return &r;
  return nullptr;
}

struct CliError {
  int code;
  std::string message;
};

void call(rmte_status status) {
  if (status == RMTE_OK) return;
  const int code = (status == RMTE_ERR_CONVERGENCE || status == RMTE_ERR_NUMERICAL || status == RMTE_ERR_INTERNAL)
                       ? kExitNumerical
                       : kExitArgument;
  throw CliError{code, std::string(rmte_status_name(status)) + " error: " + rmte_last_error()};
}

struct Common {
  std::string format = "csv";
  std::string out;
  std::uint64_t seed = 1;
  double tol = 0.0;
  int digits = 6;
  bool check = false;
};

using Cell = std::variant<std::string, double, std::int64_t>;

struct Check {
  std::string name;
  bool pass;
  std::string detail;
};

std::string format_number(double v, int digits) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

class Report {
 public:
  Report(std::string command, std::vector<std::string> columns)
      : command_(std::move(command)), columns_(std::move(columns)) {}

  void parameter(const std::string& key, nlohmann::json value) { params_[key] = std::move(value); }
  void row(std::vector<Cell> cells) { rows_.push_back(std::move(cells)); }
  void check(std::string name, bool pass, std::string detail) {
    checks_.push_back({std::move(name), pass, std::move(detail)});
  }
  bool all_checks_pass() const {
    for (const auto& c : checks_)
      if (!c.pass) return false;
    return true;
  }

  std::string csv(int digits) const {
    std::ostringstream os;
    for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << columns_[i];
    os << '\n';
    for (const auto& r : rows_) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << text(r[i], digits);
      os << '\n';
    }
    return os.str();
  }

  std::string json(int digits) const {
    nlohmann::ordered_json doc;
    doc["command"] = command_;
    doc["parameters"] = params_;
    doc["columns"] = columns_;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& r : rows_) {
      nlohmann::ordered_json obj;
      for (std::size_t i = 0; i < r.size(); ++i) obj[columns_[i]] = value(r[i], digits);
      rows.push_back(obj);
    }
    doc["rows"] = rows;
    if (!checks_.empty()) {
      auto checks = nlohmann::ordered_json::array();
      for (const auto& c : checks_) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
      doc["checks"] = checks;
    }
    return doc.dump(2) + "\n";
  }

  void print_checks(std::ostream& os) const {
    for (const auto& c : checks_) os << "check " << c.name << ": " << (c.pass ? "PASS" : "FAIL") << " (" << c.detail << ")\n";
  }

 private:
  static std::string text(const Cell& c, int digits) {
    if (const auto* s = std::get_if<std::string>(&c)) return *s;
    if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
    return format_number(std::get<double>(c), digits);
  }
  static nlohmann::ordered_json value(const Cell& c, int digits) {
    if (const auto* s = std::get_if<std::string>(&c)) return *s;
    if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
    const double v = std::get<double>(c);
    if (!std::isfinite(v)) return nullptr;
    // Round through the printed form so JSON carries the same digits as CSV.
    return std::stod(format_number(v, digits));
  }

  std::string command_;
  std::vector<std::string> columns_;
  nlohmann::ordered_json params_ = nlohmann::ordered_json::object();
  std::vector<std::vector<Cell>> rows_;
  std::vector<Check> checks_;
};

int emit(const Report& report, const Common& common) {
  const std::string body = common.format == "json" ? report.json(common.digits) : report.csv(common.digits);
  if (common.out.empty()) {
    std::cout << body;
  } else {
    std::ofstream f(common.out, std::ios::binary);
    if (!f) throw CliError{kExitArgument, "cannot open output file " + common.out};
    f << body;
  }
  if (common.check) {
    report.print_checks(std::cerr);
    if (!report.all_checks_pass()) return kExitCheck;
  }
  return kExitOk;
}

double rel_dev(double value, double reference) { return std::abs(value - reference) / std::abs(reference); }

std::string deviation_text(double value, double reference, double bound) {
  return format_number(value, 9) + " vs " + format_number(reference, 9) + ", bound " + format_number(bound, 3);
}

void add_common(CLI::App* cmd, Common& c, double default_tol) {
  c.tol = default_tol;
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", c.out, "Write output to PATH instead of standard output");
  cmd->add_option("--seed", c.seed, "Random seed");
  cmd->add_option("--tol", c.tol, "Numerical tolerance")->check(CLI::Range(1e-12, 1e-2));
  cmd->add_option("--digits", c.digits, "Significant digits in the output")->check(CLI::Range(1, 12));
  cmd->add_flag("--check", c.check, "Compare against reference values; exit 4 on mismatch");
}

// ---- constants ------------------------------------------------------------

struct ConstantsArgs {
  std::vector<double> q_list{0.0, 0.5, 1.0, 2.0, 3.0};
};

int run_constants(const ConstantsArgs& a, const Common& c) {
  Report r("constants", {"quantity", "q", "value"});
  r.parameter("q", a.q_list);
  r.parameter("tol", c.tol);

  double c0 = 0.0;
  call(rmte_cq_closed(0.0, &c0));
  r.row({"gue_c0", 0.0, c0});
  r.check("gue_c0", std::abs(c0 - kGueC0Printed) <= 5e-7, deviation_text(c0, kGueC0Printed, 5e-7));

  for (double q : a.q_list) {
    double closed = 0.0, single = 0.0, dbl = 0.0;
    call(rmte_cq_closed(q, &closed));
    call(rmte_cq_quadrature(q, &single, &dbl));
    r.row({"cq_closed", q, closed});
    r.row({"cq_quadrature", q, single});
    r.row({"cq_double_integral", q, dbl});
    const std::string tag = "c_q(q=" + format_number(q, 6) + ")";
    r.check(tag + " closed vs quadrature", std::abs(closed - single) <= 1e-7, deviation_text(single, closed, 1e-7));
    r.check(tag + " quadrature routes", std::abs(dbl - single) <= 1e-7, deviation_text(dbl, single, 1e-7));
  }

  rmte_wishart_constant w{};
  call(rmte_wishart_c0(c.tol, &w));
  r.row({"wishart_c0", 0.0, w.total});
  r.row({"wishart_airy_part", 0.0, w.airy_part});
  r.row({"wishart_boundary_part", 0.0, w.boundary_part});
  r.check("wishart_c0", std::abs(w.total - kWishartC0Printed) <= 5e-6, deviation_text(w.total, kWishartC0Printed, 5e-6));
  r.check("wishart boundary part = 5/36", std::abs(w.boundary_part - 5.0 / 36.0) <= 1e-7,
          deviation_text(w.boundary_part, 5.0 / 36.0, 1e-7));

  rmte_kernel* airy = nullptr;
  call(rmte_kernel_create_airy(&airy));
  rmte_count_dist* dist = nullptr;
  const rmte_status st = rmte_counting_distribution(airy, 0.0, 3, 1e-11, &dist);
  rmte_kernel_destroy(airy);
  call(st);
  double f2 = 0.0;
  rmte_count_dist_prob(dist, 0, &f2);
  rmte_count_dist_destroy(dist);
  r.row({"tw2_tail_at_0", 0.0, 1.0 - f2});
  r.row({"tw2_cdf_at_0_squared", 0.0, f2 * f2});
  r.check("1 - F2(0)", std::abs(1.0 - f2 - kTracyWidomTail) <= 5e-6, deviation_text(1.0 - f2, kTracyWidomTail, 5e-6));
  r.check("F2(0)^2", std::abs(f2 * f2 - kTwoEdgeComplex) <= 1e-3, deviation_text(f2 * f2, kTwoEdgeComplex, 1e-3));
  return emit(r, c);
}

// ---- table1 ---------------------------------------------------------------

struct Table1Args {
  std::vector<int> N_list{10, 25, 50, 100, 250, 500};
  int k_max = 3;
  bool compare = false;
};

int run_table1(const Table1Args& a, const Common& c) {
  if (a.k_max < 3) throw CliError{kExitArgument, "--k-max must be at least 3"};
  const bool compare = a.compare || c.check;
  std::vector<std::string> cols{"N", "p1", "p2", "p3", "E_T", "E_T_counting", "grid", "error_estimate"};
  if (compare) {
    for (const char* s : {"rel_dev_p1", "rel_dev_p2", "rel_dev_p3", "rel_dev_E_T"}) cols.push_back(s);
  }
  Report r("table1", cols);
  r.parameter("N", a.N_list);
  r.parameter("k_max", a.k_max);
  r.parameter("tol", c.tol);
  for (int N : a.N_list) {
    if (N < 1 || N > 1000) throw CliError{kExitArgument, "table1: each N must be in [1, 1000]"};
    rmte_kernel* k = nullptr;
    call(rmte_kernel_create_gue(N, &k));
    rmte_count_dist* d = nullptr;
    const rmte_status st = rmte_counting_distribution(k, std::sqrt(2.0 * N), a.k_max, c.tol, &d);
    rmte_kernel_destroy(k);
    call(st);
    double p[4] = {0, 0, 0, 0}, mean = 0.0, err = 0.0;
    int grid = 0;
    for (int i = 1; i <= 3; ++i) rmte_count_dist_prob(d, i, &p[i]);
    rmte_count_dist_mean(d, &mean);
    rmte_count_dist_info(d, &grid, &err, nullptr);
    rmte_count_dist_destroy(d);
    double expected = 0.0;
    call(rmte_gue_expected_tailsum(N, 0.0, 1e-10, &expected));

    std::vector<Cell> row{std::int64_t{N}, p[1], p[2], p[3], expected, mean, std::int64_t{grid}, err};
    const std::string tag = "N=" + std::to_string(N);
    r.check(tag + " E_T routes", std::abs(expected - mean) <= 1e-6, deviation_text(mean, expected, 1e-6));
    if (compare) {
      if (const TableRow* ref = table1_row(N)) {
        const double d1 = rel_dev(p[1], ref->p1), d2 = rel_dev(p[2], ref->p2), d3 = rel_dev(p[3], ref->p3);
        const double de = rel_dev(expected, ref->expected);
        for (double v : {d1, d2, d3, de}) row.push_back(v);
        r.check(tag + " p1", d1 <= 5e-4, deviation_text(p[1], ref->p1, 5e-4));
        r.check(tag + " p2", d2 <= 5e-3, deviation_text(p[2], ref->p2, 5e-3));
        r.check(tag + " p3 order of magnitude", p[3] > 0.1 * ref->p3 && p[3] < 10.0 * ref->p3,
                deviation_text(p[3], ref->p3, 10.0));
        r.check(tag + " E_T", de <= 1e-4, deviation_text(expected, ref->expected, 1e-4));
      } else {
        for (int i = 0; i < 4; ++i) row.push_back(std::nan(""));
      }
    }
    r.row(row);
  }
  return emit(r, c);
}

// ---- tailsum --------------------------------------------------------------

struct TailsumArgs {
  std::vector<int> N_list{10, 50, 100, 500};
  std::vector<double> q_list{0.0};
};

int run_tailsum(const TailsumArgs& a, const Common& c) {
  Report r("tailsum", {"N", "q", "E_T", "scaled", "c_q"});
  r.parameter("N", a.N_list);
  r.parameter("q", a.q_list);
  r.parameter("tol", c.tol);
  for (double q : a.q_list) {
    double cq = 0.0;
    call(rmte_cq_closed(q, &cq));
    for (int N : a.N_list) {
      double e = 0.0;
      call(rmte_gue_expected_tailsum(N, q, c.tol, &e));
      const double scaled = std::pow(static_cast<double>(N), 2.0 * q / 3.0) * e;
      r.row({std::int64_t{N}, q, e, scaled, cq});
      if (q == 0.0) {
        if (const TableRow* ref = table1_row(N)) {
          r.check("N=" + std::to_string(N) + " E_T", rel_dev(e, ref->expected) <= 1e-4,
                  deviation_text(e, ref->expected, 1e-4));
        }
      }
    }
  }
  return emit(r, c);
}

// ---- wishart-limit --------------------------------------------------------

struct WishartLimitArgs {
  double gamma = 0.5;
  std::vector<double> q_list{0.0, 0.5};
  std::vector<double> s_list{-2.0, -1.0, 0.0, 1.0, 2.0, 3.0};
};

int run_wishart_limit(const WishartLimitArgs& a, const Common& c) {
  Report r("wishart-limit", {"gamma", "q", "s", "integral", "prefactor"});
  r.parameter("gamma", a.gamma);
  r.parameter("q", a.q_list);
  r.parameter("s", a.s_list);
  r.parameter("tol", c.tol);
  for (double q : a.q_list) {
    double previous = INFINITY;
    bool decreasing = true;
    for (double s : a.s_list) {
      double integral = 0.0, prefactor = 0.0;
      call(rmte_wishart_limit_tailsum(a.gamma, q, s, c.tol, &integral, &prefactor));
      r.row({a.gamma, q, s, integral, prefactor});
      if (!(integral < previous)) decreasing = false;
      previous = integral;
      if (q == 0.0 && s == 0.0) {
        r.check("integral at q=0, s=0", std::abs(integral - kWishartC0Printed) <= 5e-6,
                deviation_text(integral, kWishartC0Printed, 5e-6));
      }
    }
    r.check("decreasing in s (q=" + format_number(q, 6) + ")", decreasing, "over the requested s values in order");
  }
  return emit(r, c);
}

// ---- montecarlo -----------------------------------------------------------

struct MonteCarloArgs {
  std::string ensemble;
  int N = 50;
  int n = 0;
  double q = 0.0;
  double window = NAN;
  std::int64_t samples = 10000;
  int workers = 1;
  bool both_edges = false;
};

int run_montecarlo(const MonteCarloArgs& a, const Common& c) {
  rmte_ensemble e{a.ensemble == "gue" ? RMTE_GUE : RMTE_WISHART, a.N, a.n};
  if (e.kind == RMTE_WISHART && a.n == 0) e.n = a.N;

  Report r("montecarlo", {"ensemble", "statistic", "N", "n", "q", "window", "samples", "seed", "mean", "std_error",
                          "ci_low", "ci_high", "analytic", "analytic_source"});
  r.parameter("ensemble", a.ensemble);
  r.parameter("workers", a.workers);

  rmte_mc_estimate est{};
  double window = a.window;
  double analytic = NAN;
  std::string source = "none";
  double allowance = 0.0;
  bool use_max = false;
  if (a.both_edges) {
    call(rmte_mc_both_edges_inside(&e, a.samples, c.seed, a.workers, &est));
    if (e.kind == RMTE_GUE) {
      rmte_kernel* airy = nullptr;
      call(rmte_kernel_create_airy(&airy));
      rmte_count_dist* d = nullptr;
      const rmte_status st = rmte_counting_distribution(airy, 0.0, 1, 1e-11, &d);
      rmte_kernel_destroy(airy);
      call(st);
      double f2 = 0.0;
      rmte_count_dist_prob(d, 0, &f2);
      rmte_count_dist_destroy(d);
      analytic = f2 * f2;
      source = "tw2_cdf_at_0_squared";
    } else {
      analytic = kTwoEdgeReal;
      source = "real_limit_constant";
    }
    allowance = 0.02;
    use_max = true;
    window = NAN;
  } else {
    if (std::isnan(window)) {
      double lo = 0.0, hi = 0.0;
      call(rmte_bulk_interval(&e, &lo, &hi));
      window = hi;
    }
    call(rmte_mc_expected_tailsum(&e, a.q, window, a.samples, c.seed, a.workers, &est));
    double lo = 0.0, hi = 0.0;
    call(rmte_bulk_interval(&e, &lo, &hi));
    if (window == hi) {
      if (e.kind == RMTE_GUE && a.N <= 2000) {
        call(rmte_gue_expected_tailsum(a.N, a.q, 1e-10, &analytic));
        source = "gue_expected_tailsum";
      } else if (e.kind == RMTE_WISHART && a.q == 0.0) {
        rmte_wishart_constant w{};
        call(rmte_wishart_c0(1e-12, &w));
        analytic = w.total;
        source = "wishart_c0_limit";
        allowance = 0.03;
      }
    }
  }
  r.row({a.ensemble, a.both_edges ? "both_edges_inside" : "tailsum", std::int64_t{e.N},
         std::int64_t{e.kind == RMTE_WISHART ? e.n : 0}, a.both_edges ? std::nan("") : a.q, window,
         static_cast<std::int64_t>(est.samples), static_cast<std::int64_t>(est.seed), est.mean, est.std_error,
         est.mean - 1.96 * est.std_error, est.mean + 1.96 * est.std_error, analytic, source});
  if (!std::isnan(analytic)) {
    const double bound = use_max ? std::max(3.0 * est.std_error, allowance) : 3.0 * est.std_error + allowance;
    r.check("mean vs " + source, std::abs(est.mean - analytic) <= bound, deviation_text(est.mean, analytic, bound));
  }
  return emit(r, c);
}

// ---- spiked ---------------------------------------------------------------

struct SpikedArgs {
  std::vector<int> p_list{100, 200, 400};
  double gamma = 0.5;
  std::vector<double> spikes{6.0, 3.0};
  std::string shrinker = "linear";
  double q = 0.5;
  std::int64_t samples = 2000;
  int workers = 1;
  bool fast = false;
  bool loss_demo = false;
  int bins = 20;
};

double f_of_ell(double ell, double c, double gamma) {
  double v = 0.0;
  call(rmte_f_of_ell(ell, c, gamma, &v));
  return v;
}

int run_loss_demo(const SpikedArgs& a, const Common& c) {
  const int p = a.p_list.empty() ? 400 : a.p_list.back();
  const int n = static_cast<int>(std::lround(p / a.gamma));
  std::vector<double> gaps(static_cast<std::size_t>(a.samples));
  call(rmte_precision_loss_gaps(p, n, a.spikes.data(), a.spikes.size(),
                                a.shrinker == "linear" ? RMTE_SHRINK_LINEAR : RMTE_SHRINK_ETA_STAR, a.samples, c.seed,
                                a.workers, gaps.data()));
  const double cp = static_cast<double>(p) / n;
  const double ell_r = a.spikes.empty() ? 1.0 + std::sqrt(cp) : a.spikes.back();
  const double w = f_of_ell(1.0 + std::sqrt(cp), cp, a.gamma) - f_of_ell(ell_r, cp, a.gamma);

  double lo = 0.0, hi = 0.0;
  for (double g : gaps) {
    lo = std::min(lo, g);
    hi = std::max(hi, g);
  }
  hi = std::max(hi, w) * 1.05 + 1e-12;
  const double width = (hi - lo) / a.bins;
  std::vector<std::int64_t> counts(static_cast<std::size_t>(a.bins), 0);
  for (double g : gaps) {
    const int b = std::min(a.bins - 1, static_cast<int>((g - lo) / width));
    ++counts[static_cast<std::size_t>(b)];
  }
  Report r("spiked-loss-demo", {"bin_low", "bin_high", "count", "fraction", "w_limit"});
  r.parameter("p", p);
  r.parameter("n", n);
  r.parameter("spikes", a.spikes);
  r.parameter("shrinker", a.shrinker);
  r.parameter("samples", a.samples);
  r.parameter("seed", c.seed);
  for (int b = 0; b < a.bins; ++b) {
    r.row({lo + b * width, lo + (b + 1) * width, counts[static_cast<std::size_t>(b)],
           static_cast<double>(counts[static_cast<std::size_t>(b)]) / static_cast<double>(a.samples), w});
  }
  return emit(r, c);
}

int run_spiked(const SpikedArgs& a, const Common& c) {
  if (a.samples < 100) throw CliError{kExitArgument, "--samples must be at least 100"};
  if (a.loss_demo) return run_loss_demo(a, c);
  rmte_spiked_config cfg{};
  cfg.p_list = a.p_list.data();
  cfg.p_count = a.p_list.size();
  cfg.gamma = a.gamma;
  cfg.spikes = a.spikes.data();
  cfg.spike_count = a.spikes.size();
  cfg.shrinker = a.shrinker == "linear" ? RMTE_SHRINK_LINEAR : RMTE_SHRINK_ETA_STAR;
  cfg.q = a.q;
  cfg.samples = a.samples;
  cfg.seed = c.seed;
  cfg.dense = a.fast ? 0 : 1;
  cfg.workers = a.workers;
  rmte_spiked_result* res = nullptr;
  call(rmte_spiked_run(&cfg, &res));
  std::size_t count = 0;
  rmte_spiked_result_count(res, &count);
  std::vector<rmte_spiked_row> rows(count);
  for (std::size_t i = 0; i < count; ++i) rmte_spiked_result_row(res, i, &rows[i]);
  rmte_spiked_result_destroy(res);

  Report r("spiked", {"p", "n", "rank", "shrinker", "q", "samples", "mean_gap", "gap_std_error", "mean_exits",
                      "exits_std_error", "exits_0", "exits_1", "exits_2", "exits_3plus", "p_exits_ge3",
                      "exit_reference", "interlacing_checked", "interlacing_violations"});
  r.parameter("gamma", a.gamma);
  r.parameter("spikes", a.spikes);
  r.parameter("seed", c.seed);
  r.parameter("mode", a.fast ? "fast" : "dense");
  std::int64_t violations = 0;
  for (const auto& row : rows) {
    const double ge3 = static_cast<double>(row.exit_histogram[3]) / static_cast<double>(row.samples);
    r.row({std::int64_t{row.p}, std::int64_t{row.n}, std::int64_t{row.rank}, a.shrinker, a.q,
           static_cast<std::int64_t>(row.samples), row.mean_gap, row.gap_std_error, row.mean_exits,
           row.exits_std_error, static_cast<std::int64_t>(row.exit_histogram[0]),
           static_cast<std::int64_t>(row.exit_histogram[1]), static_cast<std::int64_t>(row.exit_histogram[2]),
           static_cast<std::int64_t>(row.exit_histogram[3]), ge3, kWishartExitLimit,
           static_cast<std::int64_t>(row.interlacing_checked), static_cast<std::int64_t>(row.interlacing_violations)});
    violations += row.interlacing_violations;
  }
  if (!rows.empty()) {
    bool decreasing = true;
    for (std::size_t i = 1; i < rows.size(); ++i) decreasing = decreasing && rows[i].mean_gap < rows[i - 1].mean_gap;
    r.check("mean gap decreasing in p", decreasing, "over the requested p values in order");
    r.check("final mean gap < 0.05", rows.back().mean_gap < 0.05, deviation_text(rows.back().mean_gap, 0.05, 0.05));
    const double ge3 = static_cast<double>(rows.back().exit_histogram[3]) / static_cast<double>(rows.back().samples);
    r.check("P(exits >= 3) < 0.001", ge3 < 0.001, deviation_text(ge3, 0.001, 0.001));
    r.check("no interlacing violations", violations == 0, std::to_string(violations) + " violations");
  }
  const int code = emit(r, c);
  if (violations > 0) {
    std::cerr << "error: interlacing violated " << violations << " times\n";
    return kExitNumerical;
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Edge statistics of GUE and real Wishart eigenvalues"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(rmte_version()));

  Common common;
  ConstantsArgs constants;
  Table1Args table1;
  TailsumArgs tailsum;
  WishartLimitArgs wlimit;
  MonteCarloArgs mc;
  SpikedArgs spiked;

  auto* c_cmd = app.add_subcommand("constants", "c_q by closed form and quadrature, Wishart c_0, 1 - F2(0)");
  add_common(c_cmd, common, 1e-12);
  c_cmd->add_option("--q", constants.q_list, "Exponents q")->check(CLI::NonNegativeNumber);

  auto* t_cmd = app.add_subcommand("table1", "Counting probabilities above the GUE edge");
  add_common(t_cmd, common, 1e-11);
  t_cmd->add_option("--N", table1.N_list, "Matrix sizes");
  t_cmd->add_option("--k-max", table1.k_max, "Largest count k");
  t_cmd->add_flag("--compare", table1.compare, "Add relative deviations from the reference table");

  auto* s_cmd = app.add_subcommand("tailsum", "Expected tail sum E(T_N) for finite-N GUE");
  add_common(s_cmd, common, 1e-10);
  s_cmd->add_option("--N", tailsum.N_list, "Matrix sizes")->check(CLI::Range(1, 2000));
  s_cmd->add_option("--q", tailsum.q_list, "Exponents q")->check(CLI::NonNegativeNumber);

  auto* w_cmd = app.add_subcommand("wishart-limit", "Limiting real-Wishart tail sum over s");
  add_common(w_cmd, common, 1e-10);
  w_cmd->add_option("--gamma", wlimit.gamma, "Aspect ratio N/n in (0, 1]");
  w_cmd->add_option("--q", wlimit.q_list, "Exponents q")->check(CLI::NonNegativeNumber);
  w_cmd->add_option("--s", wlimit.s_list, "Window starts s >= -10");

  auto* m_cmd = app.add_subcommand("montecarlo", "Monte Carlo tail sums and edge probabilities");
  add_common(m_cmd, common, 1e-10);
  m_cmd->add_option("ensemble", mc.ensemble, "gue or wishart")->required()->check(CLI::IsMember({"gue", "wishart"}));
  m_cmd->add_option("--N", mc.N, "Matrix size")->check(CLI::PositiveNumber);
  m_cmd->add_option("--n", mc.n, "Wishart sample size (default N)")->check(CLI::PositiveNumber);
  m_cmd->add_option("--q", mc.q, "Exponent q")->check(CLI::NonNegativeNumber);
  m_cmd->add_option("--window", mc.window, "Window start (default: upper bulk edge)");
  m_cmd->add_option("--samples", mc.samples, "Number of draws")->check(CLI::Range(std::int64_t{100}, std::int64_t{100000000}));
  m_cmd->add_option("--workers", mc.workers, "Worker threads")->check(CLI::Range(1, 256));
  m_cmd->add_flag("--both-edges", mc.both_edges, "Estimate P(all eigenvalues inside the bulk)");

  auto* p_cmd = app.add_subcommand("spiked", "Spiked covariance simulator");
  add_common(p_cmd, common, 1e-10);
  p_cmd->add_option("--p", spiked.p_list, "Dimensions p")->check(CLI::Range(2, 500));
  p_cmd->add_option("--gamma", spiked.gamma, "p / n in (0, 1]");
  p_cmd->add_option("--spikes", spiked.spikes, "Spike values, descending, all > 1");
  auto* shrinker_opt = p_cmd->add_option("--shrinker", spiked.shrinker, "linear or eta_star (--loss-demo default: eta_star)")
                           ->check(CLI::IsMember({"linear", "eta_star"}));
  p_cmd->add_option("--q", spiked.q, "Exponent q > 0");
  auto* samples_opt = p_cmd->add_option("--samples", spiked.samples, "Draws per p (--loss-demo default: 200)");
  p_cmd->add_option("--workers", spiked.workers, "Worker threads")->check(CLI::Range(1, 256));
  p_cmd->add_flag("--fast", spiked.fast, "Noise eigenvalues from the bidiagonal model (no interlacing check)");
  p_cmd->add_flag("--loss-demo", spiked.loss_demo, "Histogram of precision-loss differences at the last p");
  p_cmd->add_option("--bins", spiked.bins, "Histogram bins for --loss-demo")->check(CLI::Range(2, 1000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitArgument;
  }

  try {
    if (c_cmd->parsed()) return run_constants(constants, common);
    if (t_cmd->parsed()) return run_table1(table1, common);
    if (s_cmd->parsed()) return run_tailsum(tailsum, common);
    if (w_cmd->parsed()) return run_wishart_limit(wlimit, common);
    if (m_cmd->parsed()) return run_montecarlo(mc, common);
    if (p_cmd->parsed()) {
      if (spiked.loss_demo && shrinker_opt->count() == 0) spiked.shrinker = "eta_star";
      if (spiked.loss_demo && samples_opt->count() == 0) spiked.samples = 200;
      return run_spiked(spiked, common);
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitArgument;
}
