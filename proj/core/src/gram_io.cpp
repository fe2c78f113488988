#include <sstream>

#include <nlohmann/json.hpp>

#include "bnladder/error.hpp"
#include "bnladder/format.hpp"
#include "bnladder/gram.hpp"

namespace bnladder {

namespace {

using nlohmann::json;

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index p = 0; p < m.rows(); ++p) {
    json row = json::array();
    for (Eigen::Index q = 0; q < m.cols(); ++q) {
      row.push_back(m(p, q));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& rows, std::size_t n, const char* what) {
  if (!rows.is_array() || rows.size() != n) {
    throw DomainError(std::string("gram JSON: '") + what + "' must be an n x n array");
  }
  const auto ni = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd m(ni, ni);
  for (std::size_t p = 0; p < n; ++p) {
    if (!rows[p].is_array() || rows[p].size() != n) {
      throw DomainError(std::string("gram JSON: '") + what + "' must be an n x n array");
    }
    for (std::size_t q = 0; q < n; ++q) {
      m(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) = rows[p][q].get<double>();
    }
  }
  return m;
}

json header(const GramMatrix& g) {
  json j;
  j["window"] = {{"j_max", g.window.j_max}, {"k_max", g.window.k_max}};
  j["kind"] = g.kind.is_raw() ? "raw" : "smoothed";
  if (g.kind.smoothing) {
    j["smoothing"] = {{"W", g.kind.smoothing->W}, {"epsilon", g.kind.smoothing->epsilon}};
  } else {
    j["smoothing"] = nullptr;
  }
  j["method"] = to_string(g.method);
  j["quad"] = {{"abs_tol", g.quad.abs_tol},
               {"rel_tol", g.quad.rel_tol},
               {"x_min", g.quad.x_min},
               {"max_subdivisions", g.quad.max_subdivisions},
               {"t_max_raw", g.quad.t_max_raw},
               {"gaussian_tail_tol", g.quad.gaussian_tail_tol}};
  j["t_max"] = g.t_max;
  json index = json::array();
  for (std::size_t p = 0; p < g.window.size(); ++p) {
    const LadderIndex idx = g.window.at(p);
    index.push_back({idx.j, idx.k});
  }
  j["index"] = std::move(index);
  return j;
}

}  // namespace

std::string gram_to_csv(const GramMatrix& g) {
  std::ostringstream os;
  os << "j,k,j2,k2,value,err_estimate\n";
  const std::size_t n = g.size();
  for (std::size_t p = 0; p < n; ++p) {
    const LadderIndex a = g.window.at(p);
    for (std::size_t q = p; q < n; ++q) {
      const LadderIndex b = g.window.at(q);
      const auto pi = static_cast<Eigen::Index>(p);
      const auto qi = static_cast<Eigen::Index>(q);
      os << a.j << ',' << a.k << ',' << b.j << ',' << b.k << ',' << format_double(g.entries(pi, qi)) << ','
         << format_double(g.errors(pi, qi)) << '\n';
    }
  }
  return os.str();
}

std::string normalized_gram_to_csv(const GramMatrix& g) {
  const NormalizedGram ng = normalize(g);
  std::ostringstream os;
  os << "j,k,j2,k2,value,normalized\n";
  const std::size_t n = g.size();
  for (std::size_t p = 0; p < n; ++p) {
    const LadderIndex a = g.window.at(p);
    for (std::size_t q = p; q < n; ++q) {
      const LadderIndex b = g.window.at(q);
      os << a.j << ',' << a.k << ',' << b.j << ',' << b.k << ','
         << format_double(ng.entries(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q))) << ','
         << (ng.valid[p][q] ? "true" : "false") << '\n';
    }
  }
  return os.str();
}

std::string gram_to_json(const GramMatrix& g) {
  json j = header(g);
  j["entries"] = matrix_to_json(g.entries);
  j["errors"] = matrix_to_json(g.errors);
  j["warnings"] = g.warnings;
  if (g.components) {
    j["components"] = {{"i1", matrix_to_json(g.components->i1)},
                       {"i2", matrix_to_json(g.components->i2)},
                       {"displayed", matrix_to_json(g.components->displayed)}};
  }
  return j.dump(1) + "\n";
}

std::string normalized_gram_to_json(const GramMatrix& g) {
  const NormalizedGram ng = normalize(g);
  json j = header(g);
  j["normalized"] = true;
  j["entries"] = matrix_to_json(ng.entries);
  json valid = json::array();
  for (const auto& row : ng.valid) {
    json r = json::array();
    for (const bool v : row) r.push_back(v);
    valid.push_back(std::move(r));
  }
  j["valid"] = std::move(valid);
  return j.dump(1) + "\n";
}

GramMatrix gram_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("gram JSON: ") + e.what());
  }
  try {
    GramMatrix g;
    g.window.j_max = j.at("window").at("j_max").get<int>();
    g.window.k_max = j.at("window").at("k_max").get<int>();
    g.window.validate();
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "smoothed") {
      SmoothingParams p;
      p.W = j.at("smoothing").at("W").get<double>();
      p.epsilon = j.at("smoothing").at("epsilon").get<double>();
      g.kind = GramKind::smoothed(p);
    } else if (kind != "raw") {
      throw DomainError("gram JSON: unknown kind '" + kind + "'");
    }
    g.method = gram_method_from_string(j.at("method").get<std::string>());
    const json& q = j.at("quad");
    g.quad.abs_tol = q.at("abs_tol").get<double>();
    g.quad.rel_tol = q.at("rel_tol").get<double>();
    g.quad.x_min = q.at("x_min").get<double>();
    g.quad.max_subdivisions = q.at("max_subdivisions").get<std::size_t>();
    g.quad.t_max_raw = q.at("t_max_raw").get<double>();
    g.quad.gaussian_tail_tol = q.at("gaussian_tail_tol").get<double>();
    g.t_max = j.at("t_max").get<double>();
    g.entries = matrix_from_json(j.at("entries"), g.window.size(), "entries");
    g.errors = matrix_from_json(j.at("errors"), g.window.size(), "errors");
    g.warnings = j.value("warnings", std::vector<std::string>{});
    if (j.contains("components")) {
      const json& c = j["components"];
      g.components = SpectralComponents{matrix_from_json(c.at("i1"), g.window.size(), "i1"),
                                        matrix_from_json(c.at("i2"), g.window.size(), "i2"),
                                        matrix_from_json(c.at("displayed"), g.window.size(), "displayed")};
    }
    return g;
  } catch (const json::exception& e) {
    throw DomainError(std::string("gram JSON: ") + e.what());
  }
}

}  // namespace bnladder
