#pragma once

// Valid workflow documents derived from the Lake Huron example by adding,
// removing and re-parameterizing operations.

#include "support.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace testing_support {

inline std::vector<std::string> valid_corpus() {
  using nlohmann::json;
  const json base = json::parse(lakehuron_text());
  std::vector<json> docs;
  auto variant = [&](auto &&edit) {
    json d = base;
    d["@id"] = "http://example.org/workflows/#v" + std::to_string(docs.size());
    edit(d);
    docs.push_back(std::move(d));
  };
  auto param = [](const std::string &name, json value) { return json{{"tswf:name", name}, {"@value", value}}; };
  auto op = [](const std::string &type) { return json{{"@type", type}}; };
  auto op_with = [&](const std::string &type, std::vector<json> params) {
    return json{{"@type", type}, {"tswf:parameters", {{"@set", params}}}};
  };

  docs.push_back(base);
  variant([](json &) {});
  variant([](json &d) { d["tswf:hasInput"].erase("tswf:hasPlot"); });
  variant([](json &d) { d["tswf:hasInput"].erase("tswf:hasInformationAnalysis"); });
  variant([](json &d) { d["tswf:hasInput"].erase("tswf:hasStationaryAnalysis"); });
  variant([](json &d) {
    d.erase("tswf:performs");
    d.erase("tswf:hasOutput");
  });
  variant([](json &d) { d["tswf:hasInput"]["tswf:frequency"] = 4; });
  variant([&](json &d) {
    d["tswf:hasInput"]["tswf:hasPreprocessing"] = {
        {"@type", "tswf:Preprocessing"},
        {"@set", {op_with("tswf:ImputeMissing", {param("method", "mean")}), op("tswf:Periodogram")}}};
  });
  variant([&](json &d) {
    d["tswf:hasInput"]["tswf:hasPreprocessing"] = {
        {"@type", "tswf:Preprocessing"},
        {"@set", {op_with("tswf:BoxCox", {param("lambda", 0.5)}), op_with("tswf:MovingAverage", {param("window", 5)})}}};
  });
  variant([&](json &d) {
    d["tswf:hasInput"]["tswf:hasPreprocessing"] = {
        {"@type", "tswf:Preprocessing"},
        {"@set", {op_with("tswf:Differencing", {param("order", 1)}), op_with("tswf:ScaleSeries", {param("method", "minmax")})}}};
  });
  variant([&](json &d) {
    d["tswf:performs"]["tswf:hasTSRegression"] = op_with("tswf:ETS", {param("variant", "holt")});
  });
  variant([&](json &d) {
    d["tswf:performs"]["tswf:hasMLAnalysis"] =
        op_with("tswf:SVM", {param("embedding", 3), param("epsilon", 0.05), param("C", 2.0), param("epochs", 50)});
  });
  variant([&](json &d) {
    d["tswf:performs"]["tswf:hasTSAnalysis"] =
        op_with("tswf:ARIMA", {param("order", json::array({1, 1, 0})), param("seasonal", json::array({0, 0, 0}))});
  });
  variant([&](json &d) { d["tswf:performs"]["tswf:hasTSRegression"] = op_with("tswf:AR", {param("order", 2)}); });
  variant([&](json &d) {
    d["tswf:hasOutput"]["@set"][0]["tswf:hasMeasures"] = {op("tswf:MAE"), op("tswf:MASE"), op("tswf:sMAPE"),
                                                        op("tswf:DTW")};
  });
  variant([&](json &d) {
    d["tswf:hasInput"]["tswf:hasStationaryAnalysis"]["@set"] = {op("tswf:RunsTest"),
                                                               op_with("tswf:JungBox", {param("lag", 5)})};
  });
  variant([&](json &d) {
    d["tswf:hasInput"]["tswf:hasInformationAnalysis"]["@set"] = {op_with("tswf:ACF", {param("lag", 20)}),
                                                                op_with("tswf:TrendSTL", {param("period", 4)})};
  });
  variant([](json &d) {
    d["@context"]["dmcc"] = "http://dicits.ugr.es/linkeddata/dmcc-schema/";
    d["dmcc:serviceMeta"] = {{"dmcc:costPerRun", {{"dmcc:amount", 0.25}, {"dmcc:currency", "EUR"}}},
                             {"dmcc:authRequired", true}};
  });
  variant([](json &d) {
    d["@context"]["dmcc"] = "http://dicits.ugr.es/linkeddata/dmcc-schema/";
    d["dmcc:serviceMeta"] = {{"dmcc:authRequired", false}};
  });
  variant([](json &d) {
    d.erase("tswf:description");
    d.erase("tswf:author");
    d.erase("tswf:codeRepository");
  });
  variant([&](json &d) { d["tswf:performs"]["tswf:hasMLAnalysis"] = op("tswf:NeuralNetwork"); });
  variant([](json &d) { d["tswf:dateCreated"] = "2021-03-04"; });
  variant([&](json &d) {
    d["tswf:hasInput"]["tswf:hasPlot"]["@set"] = {op_with("tswf:PlotACF", {param("lag", 15)})};
  });

  std::vector<std::string> out;
  for (const auto &d : docs) out.push_back(d.dump(2) + "\n");
  return out;
}

} // namespace testing_support
