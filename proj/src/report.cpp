#include "corrdyn/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace corrdyn {

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const RealVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json to_json(const RealMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json trajectory_row_json(const TrajectoryRow& row) {
  return {{"t", row.time},
          {"rhoA", to_json(row.rho_a)},
          {"alpha", to_json(row.alpha)},
          {"xiNorm", row.xi_norm},
          {"condT", number_or_null(row.cond_t)},
          {"singular", row.singular}};
}

json kraus_json(const KrausSet& k) {
  json ops = json::array();
  for (std::size_t mu = 0; mu < k.env_dim; ++mu)
    for (std::size_t nu = 0; nu < k.env_dim; ++nu)
      ops.push_back({{"mu", mu}, {"nu", nu}, {"operator", to_json(k.at(mu, nu))}});
  const double choi_min = choi_min_eigenvalue(k);
  return {{"systemDim", k.system_dim},
          {"envDim", k.env_dim},
          {"envProbabilities", to_json(k.env_probabilities)},
          {"operators", std::move(ops)},
          {"completenessError", k.completeness_error()},
          {"choiMinEigenvalue", choi_min},
          {"completelyPositive", choi_min >= -kPositivityTol}};
}

namespace {

json convention_json(const ConventionEndpoints& e) {
  auto matched = [&](int i) {
    json names = json::array();
    if (e.matches[i][0]) names.push_back("classical-pair reference");
    if (e.matches[i][1]) names.push_back("entangled-pair reference");
    return names;
  };
  return {{"tensorOrder", to_string(e.order)},
          {"classicalPair", to_json(e.classical)},
          {"entangledPair", to_json(e.entangled)},
          {"traceDistance", e.trace_distance},
          {"endpointsCoincide", e.coincide},
          {"classicalPairMatches", matched(0)},
          {"entangledPairMatches", matched(1)},
          {"classicalPairMatchesOwnReference", e.matches[0][0]},
          {"entangledPairMatchesOwnReference", e.matches[1][1]}};
}

}  // namespace

json cnot_report_json(const CnotReport& r) {
  const CnotConfig& c = r.config;
  json paths = json::array();
  for (const auto& p : r.paths) {
    paths.push_back({{"state", p.state},
                     {"maxTraceDistanceTwoTermVsDirect", p.max_two_term_vs_direct},
                     {"maxTraceDistanceMasterVsExact", p.max_master_vs_exact},
                     {"maxTraceDistanceMasterVsDirect", p.max_master_vs_direct},
                     {"integratedPoints", p.compared_points},
                     {"haltedAt", p.halted_at ? json(*p.halted_at) : json(nullptr)}});
  }
  json conventions = json::array();
  for (const auto& e : r.conventions) conventions.push_back(convention_json(e));

  return {{"scenario", "cnot"},
          {"tensorOrder", to_string(c.order)},
          {"amplitudes", {{"a", to_json(c.a)}, {"b", to_json(c.b)}}},
          {"timeGrid", {{"t0", c.grid.t0}, {"t1", c.grid.t1}, {"steps", c.grid.steps}}},
          {"derivativeStep", c.derivative_step},
          {"marginals",
           {{"rhoA", to_json(r.rho_a_classical)},
            {"rhoB", to_json(r.rho_b_classical)},
            {"maxDifference", r.marginal_difference},
            {"identical", r.marginal_difference <= 1e-14}}},
          {"residualCorrelations",
           {{"classicalPair", to_json(r.gamma_prime_classical)},
            {"entangledPair", to_json(r.gamma_prime_entangled)}}},
          {"referenceEndpoints",
           {{"classicalPair", to_json(r.reference_classical)},
            {"entangledPair", to_json(r.reference_entangled)},
            {"conventions", std::move(conventions)}}},
          {"pathAgreement", std::move(paths)},
          {"singularTimes", r.singular_times},
          {"liouvillianCorrelationDifference", r.liouvillian_correlation_difference}};
}

json swap_report_json(const SwapReport& r) {
  json probes = json::array();
  for (const auto& p : r.probes)
    probes.push_back({{"input", to_json(p.input)},
                      {"output", to_json(p.output)},
                      {"deviation", p.deviation}});
  return {{"scenario", "swap"},
          {"target", to_json(r.target)},
          {"probes", std::move(probes)},
          {"maxDeviation", r.max_deviation},
          {"unitarityError", r.unitarity_error},
          {"selfInverseError", r.self_inverse_error},
          {"allOutputsMatchTarget", r.all_match}};
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string csv_header(std::size_t n) {
  std::ostringstream out;
  out << "t";
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out << ",re(rho" << i << j << "),im(rho" << i << j << ")";
  if (n == 2) {
    out << ",alpha_x,alpha_y,alpha_z";
  } else {
    for (std::size_t k = 1; k < n * n; ++k) out << ",alpha_" << k;
  }
  out << ",xi_norm,cond_T,singular";
  return out.str();
}

std::string trajectory_csv(const std::vector<TrajectoryRow>& rows, std::size_t n) {
  std::ostringstream out;
  out << csv_header(n) << '\n';
  for (const auto& row : rows) {
    out << format_double(row.time);
    for (Eigen::Index i = 0; i < row.rho_a.rows(); ++i)
      for (Eigen::Index j = 0; j < row.rho_a.cols(); ++j)
        out << ',' << format_double(row.rho_a(i, j).real()) << ','
            << format_double(row.rho_a(i, j).imag());
    for (Eigen::Index k = 0; k < row.alpha.size(); ++k) out << ',' << format_double(row.alpha[k]);
    out << ',' << format_double(row.xi_norm) << ',' << format_double(row.cond_t) << ','
        << (row.singular ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace corrdyn
