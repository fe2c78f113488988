#include <sstream>

#include <nlohmann/json.hpp>

#include "bnladder/decay.hpp"
#include "bnladder/format.hpp"

namespace bnladder {

namespace {

using nlohmann::json;

json kind_json(const GramKind& kind) {
  if (kind.is_raw()) return {{"kind", "raw"}};
  return {{"kind", "smoothed"}, {"W", kind.smoothing->W}, {"epsilon", kind.smoothing->epsilon}};
}

json window_json(const IndexWindow& w) { return {{"j_max", w.j_max}, {"k_max", w.k_max}}; }

}  // namespace

std::string shells_to_csv(const std::vector<ShellStats>& shells) {
  std::ostringstream os;
  os << "r,count,mean_abs,max_abs,sum_abs\n";
  for (const ShellStats& s : shells) {
    os << s.r << ',' << s.count << ',' << format_double(s.mean_abs) << ',' << format_double(s.max_abs) << ','
       << format_double(s.sum_abs) << '\n';
  }
  return os.str();
}

std::string decay_report_to_json(const DecayReport& r) {
  json j;
  j["window"] = window_json(r.window);
  j["gram"] = kind_json(r.kind);
  j["gram"]["method"] = to_string(r.method);
  j["exclude_zero_row"] = r.exclude_zero_row;
  json shells = json::array();
  for (const ShellStats& s : r.shells) {
    shells.push_back({{"r", s.r}, {"count", s.count}, {"mean_abs", s.mean_abs}, {"max_abs", s.max_abs},
                      {"sum_abs", s.sum_abs}});
  }
  j["shells"] = std::move(shells);
  j["envelope_shell"] = r.envelope_shell;
  j["envelope_tail"] = r.envelope_tail;
  j["fitted_exponent"] = r.fitted_exponent;
  j["c"] = r.c;
  j["fit_range"] = {r.fit_range.r_lo, r.fit_range.r_hi};
  const DisplacementGapReport& g = r.lambda_gap_report;
  j["lambda_gap_report"] = {{"pairs", g.pairs},
                            {"min_lambda_ratio", g.min_lambda_ratio},
                            {"min_mu_ratio", g.min_mu_ratio},
                            {"lambda_violations", g.lambda_violations},
                            {"lambda_violations_mixed_sign", g.lambda_violations_mixed_sign},
                            {"mu_violations", g.mu_violations}};
  j["shell_sup_monotone"] = r.shell_sup_monotone;
  j["shell_sup_increases_at"] = r.shell_sup_increases;
  j["warnings"] = r.warnings;
  return j.dump(1) + "\n";
}

std::string truncation_summary_to_json(const TruncationSummary& s) {
  json j;
  j["window"] = window_json(s.window);
  j["gram"] = kind_json(s.kind);
  json reports = json::array();
  for (const TruncationReport& t : s.reports) {
    reports.push_back({{"B", t.B},
                       {"schur_bound", t.schur_bound},
                       {"empirical_opnorm", t.empirical_opnorm},
                       {"opnorm_converged", t.opnorm_converged},
                       {"tail_sums", t.tail_sums}});
  }
  j["reports"] = std::move(reports);
  j["fit_exponent_tail"] = s.fit_exponent_tail ? json(*s.fit_exponent_tail) : json(nullptr);
  j["warnings"] = s.warnings;
  return j.dump(1) + "\n";
}

}  // namespace bnladder
