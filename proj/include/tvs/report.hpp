#pragma once

#include "tvs/csv.hpp"
#include "tvs/selection.hpp"

#include <json.hpp>

namespace tvs {

/// One row per horizon: h, p_s, mspe1_s, p_ls, N_ls, mspe1_ls, mspe2_s, mspe2_ls,
/// ratio2, mspe3_s, mspe3_ls, ratio3, chosen, infeasible.
csv::Table report_table(const SelectionReport& report);

/// One row per (h, forecast index): h, target, forecast.
csv::Table forecast_table(const SelectionReport& report);

nlohmann::json to_json(const SelectionReport& report);

/// JSON numbers cannot hold inf/nan; those become the strings "inf", "-inf", "nan".
nlohmann::json json_number(double value);

} // namespace tvs
