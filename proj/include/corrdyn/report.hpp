#pragma once

// JSON and CSV emission for scenario results.

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "corrdyn/corrchan.hpp"
#include "corrdyn/densemat.hpp"
#include "corrdyn/scenarios.hpp"

namespace corrdyn {

using json = nlohmann::json;

json to_json(Complex z);
json to_json(const ComplexMatrix& m);
json to_json(const RealVector& v);
json to_json(const RealMatrix& m);
/// Finite numbers as-is, non-finite as null.
json number_or_null(double x);

json trajectory_row_json(const TrajectoryRow& row);
json kraus_json(const KrausSet& k);
json cnot_report_json(const CnotReport& report);
json swap_report_json(const SwapReport& report);

/// Shortest representation that parses back to the same double.
std::string format_double(double x);

/// t,re(rho00),im(rho00),...,alpha_x,alpha_y,alpha_z,xi_norm,cond_T,singular
/// (alpha columns are numbered alpha_1.. when N > 2).
std::string csv_header(std::size_t n);
std::string trajectory_csv(const std::vector<TrajectoryRow>& rows, std::size_t n);

}  // namespace corrdyn
