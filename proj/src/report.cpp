#include "tvs/report.hpp"

#include <cmath>
#include <string>

namespace tvs {
namespace {

std::string window_text(const Candidate& c)
{
    return c.cls == ForecastClass::Stationary ? "full" : std::to_string(c.window);
}

std::string_view reason_text(Infeasibility r)
{
    switch (r) {
    case Infeasibility::WindowOutOfRange:
        return "window-out-of-range";
    case Infeasibility::Singular:
        return "singular-window";
    default:
        return "none";
    }
}

} // namespace

nlohmann::json json_number(double value)
{
    if (std::isfinite(value))
        return value;
    return csv::format_double(value);
}

csv::Table report_table(const SelectionReport& report)
{
    csv::Table t;
    t.header = {"h",        "p_s",      "mspe1_s", "p_ls",    "N_ls",     "mspe1_ls", "mspe2_s",
                "mspe2_ls", "ratio2",   "mspe3_s", "mspe3_ls", "ratio3",  "chosen",   "infeasible"};
    for (const auto& r : report.horizons) {
        t.rows.push_back({std::to_string(r.h), std::to_string(r.stationary.order), csv::format_double(r.mspe_s[0]),
                          std::to_string(r.local.order), std::to_string(r.local.window),
                          csv::format_double(r.mspe_ls[0]), csv::format_double(r.mspe_s[1]),
                          csv::format_double(r.mspe_ls[1]), csv::format_double(r.ratio2),
                          csv::format_double(r.mspe_s[2]), csv::format_double(r.mspe_ls[2]),
                          csv::format_double(r.ratio3), std::string(to_string(r.chosen)),
                          std::to_string(r.infeasible.size())});
    }
    return t;
}

csv::Table forecast_table(const SelectionReport& report)
{
    csv::Table t;
    t.header = {"h", "target", "class", "forecast"};
    for (const auto& r : report.horizons) {
        const long first = report.has_test ? report.segments.m3.first : report.T + r.h;
        for (std::size_t i = 0; i < r.forecasts.size(); ++i)
            t.rows.push_back({std::to_string(r.h), std::to_string(first + static_cast<long>(i)),
                              std::string(to_string(r.chosen)), csv::format_double(r.forecasts[i])});
    }
    return t;
}

nlohmann::json to_json(const SelectionReport& report)
{
    using nlohmann::json;
    const auto seg = [](SegmentRange s) { return json::array({s.first, s.last}); };
    json out;
    out["T"] = report.T;
    out["segments"] = {{"M0", seg(report.segments.m0)},
                       {"M1", seg(report.segments.m1)},
                       {"M2", seg(report.segments.m2)},
                       {"M3", seg(report.segments.m3)}};
    out["config"] = {{"m", report.config.m},
                     {"p_min", report.config.p_min},
                     {"p_max", report.config.p_max},
                     {"windows", report.config.windows},
                     {"max_horizon", report.config.max_horizon},
                     {"delta", report.config.delta}};
    out["has_test"] = report.has_test;
    json rows = json::array();
    for (const auto& r : report.horizons) {
        json infeasible = json::array();
        for (const auto& c : r.infeasible)
            infeasible.push_back({{"class", to_string(c.candidate.cls)},
                                  {"p", c.candidate.order},
                                  {"N", window_text(c.candidate)},
                                  {"segment", c.segment},
                                  {"reason", reason_text(c.reason)}});
        json forecasts = json::array();
        for (double f : r.forecasts)
            forecasts.push_back(json_number(f));
        rows.push_back({{"h", r.h},
                        {"stationary", {{"p", r.stationary.order},
                                        {"mspe", {json_number(r.mspe_s[0]), json_number(r.mspe_s[1]),
                                                  json_number(r.mspe_s[2])}}}},
                        {"local", {{"p", r.local.order},
                                   {"N", r.local.window},
                                   {"mspe", {json_number(r.mspe_ls[0]), json_number(r.mspe_ls[1]),
                                             json_number(r.mspe_ls[2])}}}},
                        {"ratio2", json_number(r.ratio2)},
                        {"ratio3", json_number(r.ratio3)},
                        {"chosen", to_string(r.chosen)},
                        {"forecasts", forecasts},
                        {"infeasible", infeasible}});
    }
    out["horizons"] = rows;
    return out;
}

} // namespace tvs
