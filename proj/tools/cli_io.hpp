#pragma once

#include "fedq/cotangent.hpp"
#include "fedq/kahler.hpp"

#include <json.hpp>

#include <string>

namespace fedq::cli {

using nlohmann::ordered_json;

/// Thrown for bad input files; the CLI exits with status 2.
struct InputError : Error {
  using Error::Error;
};

ordered_json read_json_file(const std::string& path);

/// { "dim", "coords", "omega"?, "gamma": [{"indices", "coeff"}], "xcap"? }.
/// `xcap_override` >= 0 replaces the file's cap.
ChartGeometry load_chart(const ordered_json& j, int xcap_override = -1);
/// { "dim", "coords", "g": [[expr]], "jet_order" }.
BaseMetric load_metric(const ordered_json& j);
/// { "n", "K" } over z..., zbar...
PolyJet load_potential(const ordered_json& j);

/// The chart file describing `g`; inverse of load_chart.
ordered_json chart_to_json(const ChartGeometry& g);

ordered_json jet_json(const PolyJet& p);
std::string jet_text(const PolyJet& p);
ordered_json form_json(const WeylForm& w);
std::string form_text(const WeylForm& w);
ordered_json operator_json(const DiffOperator& d);
ordered_json report_json(const CheckReport& r);

}  // namespace fedq::cli
