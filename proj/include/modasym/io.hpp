#pragma once

// JSON and CSV renderings of library results. Integers that can exceed 64
// bits are written as decimal strings; magnitudes as log10 values.

#include <string>
#include <vector>

#include "json.hpp"

#include "modasym/asympt.hpp"
#include "modasym/faber.hpp"
#include "modasym/poincare.hpp"
#include "modasym/qseries.hpp"

namespace modasym::io {

using nlohmann::json;

inline constexpr int kSchema = 1;

/// log10|x| for nonzero x, null for zero.
json log10_or_null(const LogSigned& x);

json to_json(const qseries::LaurentQSeries& s);
json to_json(const faber::FaberElement& e);
json to_json(const faber::DualityReport& r);
json to_json(const poincare::PoincareResult& r);
json to_json(const poincare::NonholoResidual& r);
json to_json(const poincare::RootScan& r);
json to_json(const asympt::ComparisonRow& r);
json to_json(const asympt::TrendReport& r);
json to_json(const asympt::Constants& c);
json to_json(const asympt::Prop21Report& r);
json to_json(const asympt::Prop32Report& r);

/// Fixed header: k,m,r,a_r,lhs_log10,rhs_log10,ratio,tail_log10,verdict.
std::string comparison_csv_header();
std::string to_csv(const asympt::ComparisonRow& r);

/// Decimal rendering with a fixed number of significant digits.
std::string fmt(double v, int digits = 10);

}  // namespace modasym::io
