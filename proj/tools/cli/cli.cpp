#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bnladder/decay.hpp"
#include "bnladder/error.hpp"
#include "bnladder/format.hpp"
#include "bnladder/fractional.hpp"
#include "bnladder/gram.hpp"
#include "bnladder/ladder.hpp"
#include "bnladder/mellin.hpp"
#include "bnladder/zeta.hpp"
#include "selfcheck.hpp"

namespace bnladder::cli {

namespace {

namespace fs = std::filesystem;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SelfcheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string out;
  std::string format = "csv";
  int jmax = 3;
  int kmax = 3;
  double W = 5.0;
  double eps = 1e-6;
  double abs_tol = 1e-8;
  double tmax_raw = 2000.0;
  bool exclude_zero_row = true;
  unsigned threads = 1;

  IndexWindow window() const {
    const IndexWindow w{jmax, kmax};
    w.validate();
    return w;
  }
  SmoothingParams smoothing() const {
    const SmoothingParams p{W, eps};
    p.validate();
    return p;
  }
  QuadratureConfig quad() const {
    if (!(abs_tol > 0.0) || !std::isfinite(abs_tol)) {
      throw DomainError("--abs-tol must be a positive finite number");
    }
    QuadratureConfig q = QuadratureConfig::with_tolerance(abs_tol);
    q.t_max_raw = tmax_raw;
    q.validate();
    return q;
  }
  // Every common flag is checked up front, whether or not the subcommand uses it.
  void validate() const {
    window();
    smoothing();
    quad();
  }
};

struct OutputFile {
  fs::path path;
  std::string content;
};

// Primary output plus any sibling files that only exist when --out is given.
struct Outputs {
  std::string primary;
  std::vector<OutputFile> siblings;
};

fs::path sibling_path(const fs::path& out, const std::string& suffix) {
  return out.parent_path() / (out.stem().string() + suffix);
}

// Everything is staged to temporaries first so a failure leaves no target file.
void write_all(const std::vector<OutputFile>& files) {
  std::vector<fs::path> staged;
  auto cleanup = [&] {
    std::error_code ec;
    for (const auto& p : staged) fs::remove(p, ec);
  };
  for (const auto& f : files) {
    fs::path tmp = f.path;
    tmp += ".tmp";
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) {
      cleanup();
      throw IoError("cannot open " + tmp.string() + " for writing");
    }
    staged.push_back(tmp);
    os << f.content;
    os.close();
    if (!os) {
      cleanup();
      throw IoError("failed writing " + tmp.string());
    }
  }
  for (std::size_t i = 0; i < files.size(); ++i) {
    std::error_code ec;
    fs::rename(staged[i], files[i].path, ec);
    if (ec) {
      cleanup();
      throw IoError("cannot move output into place at " + files[i].path.string() + ": " + ec.message());
    }
  }
}

void emit(const Common& c, const Outputs& o, std::ostream& out) {
  if (c.out.empty()) {
    out << o.primary;
    return;
  }
  std::vector<OutputFile> files{{fs::path(c.out), o.primary}};
  files.insert(files.end(), o.siblings.begin(), o.siblings.end());
  write_all(files);
}

// CSV or {"columns": [...], "rows": [[...]]}.
std::string table(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows,
                  const std::string& format) {
  if (format == "json") {
    nlohmann::json j;
    j["columns"] = header;
    j["rows"] = rows;
    return j.dump(1) + "\n";
  }
  std::ostringstream os;
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_double(row[i]);
    os << '\n';
  }
  return os.str();
}

ThetaParam parse_theta(const std::string& text) {
  try {
    std::size_t used = 0;
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
      const double v = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return ThetaParam(v);
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    const double n = std::stod(num, &used);
    if (used != num.size()) throw std::invalid_argument(text);
    const double d = std::stod(den, &used);
    if (used != den.size()) throw std::invalid_argument(text);
    if (n == 1.0 && d >= 1.0 && d == std::floor(d) && d < 9.0e15) {
      return ThetaParam::reciprocal(static_cast<std::uint64_t>(d));
    }
    return ThetaParam(n / d);
  } catch (const DomainError&) {
    throw DomainError("theta '" + text + "' must lie in (0, 1]");
  } catch (const std::exception&) {
    throw DomainError("theta '" + text + "' is not a number or fraction p/q");
  }
}

GramKind parse_kind(const std::string& kind, const Common& c) {
  if (kind == "raw") return GramKind::raw();
  return GramKind::smoothed(c.smoothing());
}

GramMethod parse_method(const std::string& method, const GramKind& kind) {
  if (method == "auto") return kind.is_raw() ? GramMethod::Direct : GramMethod::Spectral;
  const GramMethod m = gram_method_from_string(method);
  if (m == GramMethod::Direct && !kind.is_raw()) {
    throw DomainError("--method direct requires --kind raw (smoothed Gram matrices are spectral only)");
  }
  return m;
}

void check_spectral_range(const GramKind& kind, GramMethod method, const QuadratureConfig& q) {
  if (kind.is_raw() && method == GramMethod::Spectral && q.t_max_raw > kZetaTCap) {
    throw DomainError("--tmax-raw must not exceed the validated zeta range " + format_double(kZetaTCap));
  }
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--out", c.out, "Output file (default: standard output)");
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--jmax", c.jmax, "Largest power of 2 in the window");
  sub->add_option("--kmax", c.kmax, "Largest power of 3 in the window");
  sub->add_option("--W", c.W, "Gaussian smoothing width");
  sub->add_option("--eps", c.eps, "Smoothing floor epsilon");
  sub->add_option("--abs-tol", c.abs_tol, "Absolute tolerance for all integrals");
  sub->add_option("--tmax-raw", c.tmax_raw, "Spectral truncation for raw integrals");
  sub->add_option("--exclude-zero-row", c.exclude_zero_row, "Drop the (0,0) row from shell statistics");
  sub->add_option("--threads", c.threads, "Worker threads for Gram assembly (0: all cores)");
}

// Subcommands. Each validates its inputs, computes, and returns the outputs;
// nothing touches the filesystem until the caller calls emit().

Outputs cmd_profile(const Common& c, const std::vector<std::string>& theta_text, int points) {
  if (theta_text.empty()) throw DomainError("profile needs at least one --theta");
  if (points < 1) throw DomainError("--points must be a positive integer");
  std::vector<ThetaParam> thetas;
  for (const auto& t : theta_text) thetas.push_back(parse_theta(t));
  std::vector<std::vector<double>> rows;
  for (const auto& th : thetas) {
    for (int i = 0; i < points; ++i) {
      const double x = (i + 0.5) / points;
      rows.push_back({x, th.value(), eval_f(th, x)});
    }
  }
  return {table({"x", "theta", "f"}, rows, c.format), {}};
}

Outputs cmd_ladder(const Common& c) {
  const IndexWindow w = c.window();
  std::vector<std::vector<double>> rows;
  for (const LadderPoint& p : ladder_points(w)) {
    rows.push_back({static_cast<double>(p.index.j), static_cast<double>(p.index.k), p.theta, p.log_theta});
  }
  return {table({"j", "k", "theta", "log_theta"}, rows, c.format), {}};
}

Outputs cmd_gram(const Common& c, const std::string& kind_s, const std::string& method_s) {
  const IndexWindow w = c.window();
  const QuadratureConfig q = c.quad();
  const GramKind kind = parse_kind(kind_s, c);
  const GramMethod method = parse_method(method_s, kind);
  check_spectral_range(kind, method, q);
  const GramMatrix g = build_gram(w, kind, method, q, {c.threads, false});
  Outputs o;
  const bool json = c.format == "json";
  o.primary = json ? gram_to_json(g) : gram_to_csv(g);
  if (!c.out.empty()) {
    const fs::path out(c.out);
    o.siblings.push_back({sibling_path(out, ".normalized" + out.extension().string()),
                          json ? normalized_gram_to_json(g) : normalized_gram_to_csv(g)});
  }
  return o;
}

Outputs cmd_spectrum(const Common& c, const std::string& theta_s, double t_min, double t_max, int points,
                     const std::string& spacing) {
  const ThetaParam th = parse_theta(theta_s);
  const SmoothingParams sp = c.smoothing();
  if (!(t_min > 0.0) || !(t_max > t_min) || !std::isfinite(t_max)) {
    throw DomainError("t grid must be positive and ascending: need 0 < --t-min < --t-max");
  }
  if (points < 2) throw DomainError("--points must be at least 2");
  if (t_max > kZetaTCap) throw DomainError("--t-max must not exceed " + format_double(kZetaTCap));
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < points; ++i) {
    const double f = static_cast<double>(i) / (points - 1);
    double t = spacing == "log" ? t_min * std::pow(t_max / t_min, f) : t_min + (t_max - t_min) * f;
    if (i == points - 1) t = t_max;
    const double m = std::abs(mellin_closed(th, t));
    rows.push_back({t, m, psi(t, sp) * m});
  }
  return {table({"t", "abs_M", "abs_M_smoothed"}, rows, c.format), {}};
}

Outputs cmd_decay(const Common& c, const std::string& kind_s, const std::string& method_s,
                  std::optional<int> fit_lo, std::optional<int> fit_hi) {
  const IndexWindow w = c.window();
  const QuadratureConfig q = c.quad();
  const GramKind kind = parse_kind(kind_s, c);
  const GramMethod method = parse_method(method_s, kind);
  check_spectral_range(kind, method, q);
  FitRange range = default_fit_range(w);
  if (fit_lo) range.r_lo = *fit_lo;
  if (fit_hi) range.r_hi = *fit_hi;
  if (range.r_lo < 0 || range.r_hi < range.r_lo) {
    throw DomainError("fit range must satisfy 0 <= --fit-lo <= --fit-hi");
  }
  const GramMatrix g = build_gram(w, kind, method, q, {c.threads, false});
  const DecayReport r = decay_report(g, range, c.exclude_zero_row);
  Outputs o;
  const std::string json = decay_report_to_json(r);
  const std::string csv = shells_to_csv(r.shells);
  o.primary = c.format == "json" ? json : csv;
  if (!c.out.empty()) {
    const fs::path out(c.out);
    if (c.format == "json") {
      o.siblings.push_back({sibling_path(out, ".shells.csv"), csv});
    } else {
      o.siblings.push_back({sibling_path(out, ".report.json"), json});
    }
  }
  return o;
}

Outputs cmd_truncate(const Common& c, const std::string& kind_s, const std::string& method_s,
                     const std::vector<int>& b_list, int iters) {
  const IndexWindow w = c.window();
  const QuadratureConfig q = c.quad();
  const GramKind kind = parse_kind(kind_s, c);
  const GramMethod method = parse_method(method_s, kind);
  check_spectral_range(kind, method, q);
  if (b_list.empty()) throw DomainError("--B needs at least one radius");
  for (const int B : b_list) {
    if (B < 1) throw DomainError("every truncation radius --B must be a positive integer");
  }
  if (iters < 1) throw DomainError("--iters must be a positive integer");
  const GramMatrix g = build_gram(w, kind, method, q, {c.threads, false});
  const TruncationSummary s = truncation_summary(g, b_list, static_cast<std::size_t>(iters));
  for (const auto& t : s.reports) {
    if (t.empirical_opnorm > t.schur_bound * (1.0 + 1e-12) + 1e-15) {
      throw ConvergenceError("Schur dominance violated at B = " + std::to_string(t.B));
    }
  }
  if (c.format == "json") return {truncation_summary_to_json(s), {}};
  std::vector<std::vector<double>> rows;
  for (const auto& t : s.reports) rows.push_back({static_cast<double>(t.B), t.schur_bound, t.empirical_opnorm});
  return {table({"B", "schur_bound", "empirical_opnorm"}, rows, "csv"), {}};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Beurling-Nyman ladder functions: Gram matrices, spectra and decay reports", "bnladder"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  Common c;

  auto* profile = app.add_subcommand("profile", "Sample f_theta on a midpoint grid");
  std::vector<std::string> thetas{"1/2", "1/3", "1/6"};
  int points = 1000;
  add_common(profile, c);
  profile->add_option("--theta", thetas, "Parameters (decimal or p/q)")->delimiter(',');
  profile->add_option("--points", points, "Samples per theta");

  auto* ladder = app.add_subcommand("ladder", "List ladder parameters theta_{j,k}");
  add_common(ladder, c);

  std::string kind = "raw";
  std::string method = "auto";
  auto* gram = app.add_subcommand("gram", "Gram matrix and its normalized variant");
  add_common(gram, c);
  gram->add_option("--kind", kind, "raw or smoothed")->check(CLI::IsMember({"raw", "smoothed"}));
  gram->add_option("--method", method, "direct, spectral, hybrid or auto")
      ->check(CLI::IsMember({"auto", "direct", "spectral", "hybrid"}));

  auto* spectrum = app.add_subcommand("spectrum", "|M f_theta| on the critical line, raw and smoothed");
  std::string theta = "1/2";
  double t_min = 0.1;
  double t_max = 100.0;
  int t_points = 200;
  std::string spacing = "log";
  add_common(spectrum, c);
  spectrum->add_option("--theta", theta, "Parameter (decimal or p/q)");
  spectrum->add_option("--t-min", t_min, "First ordinate");
  spectrum->add_option("--t-max", t_max, "Last ordinate");
  spectrum->add_option("--points", t_points, "Number of ordinates");
  spectrum->add_option("--spacing", spacing, "log or linear")->check(CLI::IsMember({"log", "linear"}));

  auto* decay = app.add_subcommand("decay", "Shell statistics, envelopes and fitted decay exponent");
  std::string decay_kind = "smoothed";
  std::optional<int> fit_lo;
  std::optional<int> fit_hi;
  add_common(decay, c);
  decay->add_option("--kind", decay_kind, "raw or smoothed")->check(CLI::IsMember({"raw", "smoothed"}));
  decay->add_option("--method", method, "direct, spectral, hybrid or auto")
      ->check(CLI::IsMember({"auto", "direct", "spectral", "hybrid"}));
  decay->add_option("--fit-lo", fit_lo, "First shell of the fit range");
  decay->add_option("--fit-hi", fit_hi, "Last shell of the fit range");

  auto* truncate = app.add_subcommand("truncate", "Schur bounds and residual norms of finite sections");
  std::string trunc_kind = "smoothed";
  std::vector<int> b_list{1, 2, 3, 4};
  int iters = 200;
  add_common(truncate, c);
  truncate->add_option("--kind", trunc_kind, "raw or smoothed")->check(CLI::IsMember({"raw", "smoothed"}));
  truncate->add_option("--method", method, "direct, spectral, hybrid or auto")
      ->check(CLI::IsMember({"auto", "direct", "spectral", "hybrid"}));
  truncate->add_option("--B", b_list, "Truncation radii")->delimiter(',');
  truncate->add_option("--iters", iters, "Power iteration steps");

  auto* selfcheck = app.add_subcommand("selfcheck", "Run the built-in verification suite");
  std::optional<std::size_t> perturb;
  bool quick = false;
  add_common(selfcheck, c);
  selfcheck->add_option("--perturb-oracle", perturb, "Shift one stored zeta constant by 1e-6")->group("");
  selfcheck->add_flag("--skip-cross-validation", quick, "Skip the spectral cross-validation group")->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    err << "bnladder: " << e.what() << "\n";
    return kValidation;
  }

  try {
    c.validate();
    Outputs o;
    if (profile->parsed()) {
      o = cmd_profile(c, thetas, points);
    } else if (ladder->parsed()) {
      o = cmd_ladder(c);
    } else if (gram->parsed()) {
      o = cmd_gram(c, kind, method);
    } else if (spectrum->parsed()) {
      o = cmd_spectrum(c, theta, t_min, t_max, t_points, spacing);
    } else if (decay->parsed()) {
      o = cmd_decay(c, decay_kind, method, fit_lo, fit_hi);
    } else if (truncate->parsed()) {
      o = cmd_truncate(c, trunc_kind, method, b_list, iters);
    } else if (selfcheck->parsed()) {
      if (perturb && *perturb >= oracle_constant_count()) {
        throw DomainError("--perturb-oracle must be below " + std::to_string(oracle_constant_count()));
      }
      const SelfcheckSummary s = run_selfcheck({perturb, 1e-6, quick});
      o.primary = s.to_json();
      emit(c, o, out);
      for (const auto& g : s.groups) {
        err << (g.passed() ? "PASS " : "FAIL ") << g.name << "\n";
      }
      return s.passed() ? kOk : kSelfcheckFailed;
    }
    emit(c, o, out);
    return kOk;
  } catch (const DomainError& e) {
    err << "bnladder: invalid input: " << e.what() << "\n";
    return kValidation;
  } catch (const IoError& e) {
    err << "bnladder: " << e.what() << "\n";
    return kComputation;
  } catch (const std::exception& e) {
    err << "bnladder: computation failed: " << e.what() << "\n";
    return kComputation;
  }
}

}  // namespace bnladder::cli
