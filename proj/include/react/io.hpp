#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "react/bayes.hpp"
#include "react/decision.hpp"
#include "react/hypotheses.hpp"
#include "react/meta.hpp"
#include "react/regions.hpp"
#include "react/simulate.hpp"

namespace react::io {

using Json = nlohmann::ordered_json;

// Malformed input file. line and column are 1-based; 0 means unknown.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string source, std::size_t line, std::size_t column, const std::string& what);

    const std::string& source() const noexcept { return source_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::string source_;
    std::size_t line_;
    std::size_t column_;
};

std::string read_file(const std::string& path);
Json parse_json(const std::string& text, const std::string& source = "<json>");

Json to_json(const HypothesisRegion& h);
HypothesisRegion hypothesis_from_json(const Json& j);

Json to_json(const IntervalRegion& r);
Json to_json(const EllipsoidRegion& r);
Json to_json(const TestResult& r);
Json to_json(const CoherenceReport& r);

Scenario scenario_from_json(const Json& j);
Json to_json(const Scenario& s);
Json to_json(const ErrorRateReport& r);
Json to_json(const BayesFamilyReport& r);
std::string curve_csv(const std::vector<CurvePoint>& curve);

struct BetaJeffreysPrior {};
using Prior = std::variant<NIGPosterior, BetaJeffreysPrior>;
Prior prior_from_json(const Json& j);

Json to_json(const ForestData& f);

// Header `id,events_t,n_t,events_c,n_c`.
std::vector<StudySummary> parse_studies_csv(const std::string& text, const std::string& source = "<csv>");

struct GroupData {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> values;
};

// Either a single `value` column (one group) or long format `group,value`
// (groups in order of first appearance).
GroupData parse_groups_csv(const std::string& text, const std::string& source = "<csv>");

std::string forest_svg(const ForestData& f);
// One panel per pair of coordinates: projected ellipse, band edges and decision.
std::string family_svg(const EllipsoidRegion& region, const std::vector<std::string>& labels,
                       const std::vector<TestResult>& results, double delta);

}  // namespace react::io
