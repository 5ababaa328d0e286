#include "react/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "react/error.hpp"

namespace react::io {

ParseError::ParseError(std::string source, std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      source_(std::move(source)),
      line_(line),
      column_(column) {}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path, 0, 0, "cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Json parse_json(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // nlohmann reports a byte offset; turn it into line/column.
        std::size_t line = 1, column = 1;
        const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < stop; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw ParseError(source, line, column, "invalid JSON");
    }
}

namespace {

// JSON has no infinities; they travel as the strings "inf" / "-inf".
Json num(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

[[noreturn]] void bad(const std::string& what) { throw ParseError("<json>", 0, 0, what); }

double get_num(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
    const auto& v = j.at(key);
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
    }
    bad(std::string("field '") + key + "' must be a number");
}

double get_num_or(const Json& j, const char* key, double fallback) {
    return j.contains(key) ? get_num(j, key) : fallback;
}

Vector get_vector(const Json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_array()) bad(std::string("field '") + key + "' must be an array");
    const auto& a = j.at(key);
    Vector v(static_cast<Eigen::Index>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i].is_number()) bad(std::string("field '") + key + "' must hold numbers");
        v(static_cast<Eigen::Index>(i)) = a[i].get<double>();
    }
    return v;
}

Json vec_json(const Vector& v) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(num(v(i)));
    return a;
}

std::string hex64(std::uint64_t x) {
    char buf[19];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
    return buf;
}

}  // namespace

Json to_json(const HypothesisRegion& h) {
    return std::visit(
        [&](const auto& v) -> Json {
            using T = std::decay_t<decltype(v)>;
            Json j;
            if constexpr (std::is_same_v<T, Band>) {
                j["type"] = "band";
                j["weights"] = vec_json(v.weights);
                j["offset"] = num(v.offset);
                j["delta"] = num(v.delta);
            } else if constexpr (std::is_same_v<T, HalfSpace>) {
                j["type"] = "halfspace";
                j["weights"] = vec_json(v.weights);
                j["bound"] = num(v.bound);
                j["direction"] = v.direction == Direction::AtMost ? "at_most" : "at_least";
            } else if constexpr (std::is_same_v<T, IntervalSet>) {
                j["type"] = "interval";
                j["lo"] = num(v.lo);
                j["hi"] = num(v.hi);
            } else if constexpr (std::is_same_v<T, MaxPairwiseBand>) {
                j["type"] = "max_pairwise";
                j["delta"] = num(v.delta);
                j["dimension"] = v.dimension;
            } else {
                j["type"] = "complement";
                j["inner"] = to_json(*v.inner);
            }
            j["closed"] = h.closed();
            return j;
        },
        h.variant());
}

HypothesisRegion hypothesis_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) bad("hypothesis needs a string 'type'");
    const auto type = j.at("type").get<std::string>();
    const bool closed = j.value("closed", true);
    if (type == "band") return HypothesisRegion::band(get_vector(j, "weights"), get_num_or(j, "offset", 0.0),
                                                      get_num(j, "delta"), closed);
    if (type == "halfspace") {
        const auto dir = j.value("direction", std::string("at_most"));
        if (dir != "at_most" && dir != "at_least") bad("direction must be 'at_most' or 'at_least'");
        return HypothesisRegion::half_space(get_vector(j, "weights"), get_num(j, "bound"),
                                            dir == "at_most" ? Direction::AtMost : Direction::AtLeast, closed);
    }
    if (type == "interval") return HypothesisRegion::interval(get_num(j, "lo"), get_num(j, "hi"), closed);
    if (type == "max_pairwise") {
        if (!j.contains("dimension") || !j.at("dimension").is_number_unsigned()) bad("dimension must be a positive integer");
        return HypothesisRegion::max_pairwise(get_num(j, "delta"), j.at("dimension").get<std::size_t>(), closed);
    }
    if (type == "complement") {
        if (!j.contains("inner")) bad("complement needs 'inner'");
        return complement(hypothesis_from_json(j.at("inner")));
    }
    bad("unknown hypothesis type '" + type + "'");
}

Json to_json(const IntervalRegion& r) {
    return {{"type", "interval"}, {"lower", num(r.lower)}, {"upper", num(r.upper)}, {"level", r.level},
            {"point_estimate", num(r.point_estimate)}};
}

Json to_json(const EllipsoidRegion& r) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < r.precision.rows(); ++i) rows.push_back(vec_json(r.precision.row(i).transpose()));
    return {{"type", "ellipsoid"}, {"center", vec_json(r.center)}, {"precision", rows}, {"radius_sq", r.radius_sq},
            {"level", r.level}};
}

Json to_json(const TestResult& r) {
    Json j;
    j["hypothesis_id"] = r.hypothesis_id;
    j["hypothesis"] = to_json(r.hypothesis);
    j["decision"] = std::string(to_string(r.decision));
    j["decision_value"] = decision_value(r.decision);
    if (r.extent_used) {
        j["extent"] = Json::array({num(r.extent_used->lower), num(r.extent_used->upper)});
    } else {
        j["extent"] = nullptr;
    }
    j["level"] = r.level;
    j["region_fingerprint"] = hex64(r.region_fingerprint);
    return j;
}

Json to_json(const CoherenceReport& r) {
    Json v = Json::array();
    for (const auto& x : r.violations) v.push_back({{"rule", std::string(to_string(x.rule))}, {"hypotheses", x.hypotheses}});
    return {{"coherent", r.coherent()}, {"violations", v}};
}

Scenario scenario_from_json(const Json& j) {
    if (!j.is_object()) bad("scenario must be an object");
    Scenario s;
    const auto means = get_vector(j, "group_means");
    const auto sds = get_vector(j, "group_sds");
    s.group_means.assign(means.data(), means.data() + means.size());
    s.group_sds.assign(sds.data(), sds.data() + sds.size());
    if (!j.contains("group_ns") || !j.at("group_ns").is_array()) bad("field 'group_ns' must be an array");
    for (const auto& n : j.at("group_ns")) {
        if (!n.is_number_integer()) bad("field 'group_ns' must hold integers");
        s.group_ns.push_back(n.get<long>());
    }
    s.delta = get_num(j, "delta");
    s.alpha = get_num_or(j, "alpha", 0.05);
    return s;
}

Json to_json(const Scenario& s) {
    return {{"group_means", s.group_means}, {"group_sds", s.group_sds}, {"group_ns", s.group_ns},
            {"delta", s.delta}, {"alpha", s.alpha}};
}

Json to_json(const ErrorRateReport& r) {
    return {{"type_i", r.type_i},         {"type_ii", r.type_ii},         {"agnostic_rate", r.agnostic_rate},
            {"accept_rate", r.accept_rate}, {"reject_rate", r.reject_rate}, {"fwer_i", r.fwer_i},
            {"fwer_ii", r.fwer_ii},       {"fwer_any", r.fwer_any},       {"reps", r.reps},
            {"seed", r.seed}};
}

Json to_json(const BayesFamilyReport& r) {
    return {{"sims", r.sims},
            {"draws", r.draws},
            {"decisions", r.decisions},
            {"accepts", r.accepts},
            {"rejects", r.rejects},
            {"accept_violations", r.accept_violations},
            {"reject_violations", r.reject_violations},
            {"min_accept_prob", r.min_accept_prob},
            {"max_reject_prob", r.max_reject_prob},
            {"false_conclusion_rate", r.false_conclusion_rate},
            {"tolerance", r.tolerance}};
}

std::string curve_csv(const std::vector<CurvePoint>& curve) {
    std::ostringstream out;
    out << "n,accept_rate,reject_rate,agnostic_rate\n";
    char buf[128];
    for (const auto& p : curve) {
        std::snprintf(buf, sizeof buf, "%ld,%.17g,%.17g,%.17g\n", p.n, p.accept_rate, p.reject_rate, p.agnostic_rate);
        out << buf;
    }
    return out.str();
}

Prior prior_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("family") || !j.at("family").is_string()) bad("prior needs a string 'family'");
    const auto family = j.at("family").get<std::string>();
    if (family == "nig") {
        NIGPosterior p{get_num(j, "m"), get_num(j, "k"), get_num(j, "a"), get_num(j, "b")};
        p.validate();
        return p;
    }
    if (family == "beta-jeffreys") return BetaJeffreysPrior{};
    bad("unknown prior family '" + family + "'");
}

namespace {

std::string_view kind_name(RowKind k) {
    switch (k) {
        case RowKind::Study: return "study";
        case RowKind::PooledFixed: return "pooled_fixed";
        case RowKind::PooledRandom: return "pooled_random";
    }
    return "study";
}

}  // namespace

Json to_json(const ForestData& f) {
    Json rows = Json::array();
    for (const auto& r : f.rows) {
        rows.push_back({{"label", r.label},
                        {"kind", std::string(kind_name(r.kind))},
                        {"effect", r.effect},
                        {"variance", r.variance},
                        {"interval", Json::array({r.interval.lower, r.interval.upper})},
                        {"decision", std::string(to_string(r.decision))},
                        {"marker_size", r.marker_size}});
    }
    Json j;
    j["region"] = Json::array({f.region_lo, f.region_hi});
    j["alpha"] = f.alpha;
    j["tau_sq"] = f.tau_sq ? Json(*f.tau_sq) : Json(nullptr);
    j["continuity_correction"] = f.continuity_correction;
    j["rows"] = rows;
    return j;
}

namespace {

struct Cell {
    std::string text;
    std::size_t column;
};

std::vector<Cell> split_line(const std::string& line) {
    std::vector<Cell> cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        const auto end = comma == std::string::npos ? line.size() : comma;
        std::size_t a = start, b = end;
        while (a < b && (line[a] == ' ' || line[a] == '\t')) ++a;
        while (b > a && (line[b - 1] == ' ' || line[b - 1] == '\t')) --b;
        cells.push_back({line.substr(a, b - a), a + 1});
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return cells;
}

struct Line {
    std::size_t number;
    std::vector<Cell> cells;
};

std::vector<Line> csv_lines(const std::string& text) {
    std::vector<Line> lines;
    std::istringstream in(text);
    std::string raw;
    std::size_t number = 0;
    while (std::getline(in, raw)) {
        ++number;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        if (raw.find_first_not_of(" \t") == std::string::npos) continue;
        lines.push_back({number, split_line(raw)});
    }
    return lines;
}

double parse_double(const Cell& c, std::size_t line, const std::string& source) {
    double v = 0.0;
    const char* first = c.text.data();
    const char* last = first + c.text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (c.text.empty() || ec != std::errc() || ptr != last || !std::isfinite(v))
        throw ParseError(source, line, c.column, "expected a number, got '" + c.text + "'");
    return v;
}

long parse_long(const Cell& c, std::size_t line, const std::string& source) {
    long v = 0;
    const char* first = c.text.data();
    const char* last = first + c.text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (c.text.empty() || ec != std::errc() || ptr != last)
        throw ParseError(source, line, c.column, "expected an integer, got '" + c.text + "'");
    return v;
}

void expect_header(const Line& line, const std::vector<std::string>& names, const std::string& source) {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i >= line.cells.size() || line.cells[i].text != names[i]) {
            const std::size_t col = i < line.cells.size() ? line.cells[i].column : 1;
            throw ParseError(source, line.number, col, "expected column '" + names[i] + "'");
        }
    }
    if (line.cells.size() != names.size())
        throw ParseError(source, line.number, line.cells[names.size()].column, "unexpected extra column");
}

void expect_width(const Line& line, std::size_t width, const std::string& source) {
    if (line.cells.size() != width)
        throw ParseError(source, line.number, line.cells.size() > width ? line.cells[width].column : 1,
                         "expected " + std::to_string(width) + " fields, got " + std::to_string(line.cells.size()));
}

}  // namespace

std::vector<StudySummary> parse_studies_csv(const std::string& text, const std::string& source) {
    const auto lines = csv_lines(text);
    if (lines.empty()) throw ParseError(source, 1, 1, "empty study file");
    expect_header(lines[0], {"id", "events_t", "n_t", "events_c", "n_c"}, source);
    std::vector<StudySummary> studies;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto& l = lines[k];
        expect_width(l, 5, source);
        studies.push_back({l.cells[0].text, parse_long(l.cells[1], l.number, source),
                           parse_long(l.cells[2], l.number, source), parse_long(l.cells[3], l.number, source),
                           parse_long(l.cells[4], l.number, source)});
    }
    return studies;
}

GroupData parse_groups_csv(const std::string& text, const std::string& source) {
    const auto lines = csv_lines(text);
    if (lines.empty()) throw ParseError(source, 1, 1, "empty data file");
    GroupData data;
    const auto& header = lines[0];
    if (header.cells.size() == 1) {
        expect_header(header, {"value"}, source);
        data.labels.push_back("value");
        data.values.emplace_back();
        for (std::size_t k = 1; k < lines.size(); ++k) {
            expect_width(lines[k], 1, source);
            data.values[0].push_back(parse_double(lines[k].cells[0], lines[k].number, source));
        }
        return data;
    }
    expect_header(header, {"group", "value"}, source);
    std::map<std::string, std::size_t> index;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto& l = lines[k];
        expect_width(l, 2, source);
        if (l.cells[0].text.empty()) throw ParseError(source, l.number, l.cells[0].column, "empty group label");
        auto [it, fresh] = index.try_emplace(l.cells[0].text, data.labels.size());
        if (fresh) {
            data.labels.push_back(l.cells[0].text);
            data.values.emplace_back();
        }
        data.values[it->second].push_back(parse_double(l.cells[1], l.number, source));
    }
    return data;
}

namespace {

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

std::string fmt4(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

// Just enough SVG: rectangles, lines, polygons, text.
class Svg {
public:
    Svg(double width, double height) : width_(width), height_(height) {}

    void raw(const std::string& s) { body_ << s << '\n'; }
    void rect(double x, double y, double w, double h, const std::string& fill, const std::string& extra = "") {
        body_ << "<rect x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" width=\"" << fmt(w) << "\" height=\"" << fmt(h)
              << "\" fill=\"" << fill << '"' << extra << "/>\n";
    }
    void line(double x1, double y1, double x2, double y2, const std::string& stroke, const std::string& extra = "") {
        body_ << "<line x1=\"" << fmt(x1) << "\" y1=\"" << fmt(y1) << "\" x2=\"" << fmt(x2) << "\" y2=\"" << fmt(y2)
              << "\" stroke=\"" << stroke << '"' << extra << "/>\n";
    }
    void polygon(const std::vector<std::pair<double, double>>& pts, const std::string& style) {
        body_ << "<polygon points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) body_ << (i ? " " : "") << fmt(pts[i].first) << ',' << fmt(pts[i].second);
        body_ << "\" " << style << "/>\n";
    }
    void text(double x, double y, const std::string& s, const std::string& anchor = "start") {
        body_ << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" text-anchor=\"" << anchor << "\">" << escape(s)
              << "</text>\n";
    }
    std::string str() const {
        std::ostringstream out;
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width_) << "\" height=\"" << fmt(height_)
            << "\" viewBox=\"0 0 " << fmt(width_) << ' ' << fmt(height_)
            << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
            << body_.str() << "</svg>\n";
        return out.str();
    }

private:
    double width_;
    double height_;
    std::ostringstream body_;
};

std::string decision_color(Decision d) {
    switch (d) {
        case Decision::Accept: return "#1b7837";
        case Decision::Reject: return "#b2182b";
        case Decision::Agnostic: return "#555555";
    }
    return "#000000";
}

}  // namespace

std::string forest_svg(const ForestData& f) {
    const double row_h = 24.0, top = 40.0, x0 = 180.0, x1 = 560.0;
    const double height = top + row_h * static_cast<double>(f.rows.size()) + 50.0;
    double lo = f.region_hi, hi = f.region_hi;
    for (const auto& r : f.rows) {
        lo = std::min(lo, r.interval.lower);
        hi = std::max(hi, r.interval.upper);
    }
    const double pad = 0.05 * std::max(hi - lo, 0.1);
    lo = std::max(-1.0, lo - pad);
    hi = std::min(1.0, hi + pad);
    auto sx = [&](double v) { return x0 + (v - lo) / (hi - lo) * (x1 - x0); };

    Svg svg(760.0, height);
    const double plot_bottom = top + row_h * static_cast<double>(f.rows.size());
    const double band_lo = sx(std::max(f.region_lo, lo));
    const double band_hi = sx(std::min(f.region_hi, hi));
    svg.rect(band_lo, top - 10.0, band_hi - band_lo, plot_bottom - top + 10.0, "#d9ead3", " class=\"region\"");
    svg.line(sx(f.region_hi), top - 10.0, sx(f.region_hi), plot_bottom, "#1b7837",
             " class=\"region-boundary\" data-value=\"" + fmt4(f.region_hi) + "\" stroke-dasharray=\"4 3\"");
    if (lo <= 0.0 && 0.0 <= hi) svg.line(sx(0.0), top - 10.0, sx(0.0), plot_bottom, "#999999");
    svg.text(sx(f.region_hi), top - 16.0, "region [" + fmt4(f.region_lo) + ", " + fmt4(f.region_hi) + "]", "middle");
    svg.text(10.0, top - 16.0, "Study");
    svg.text(580.0, top - 16.0, "Risk difference [CI]");
    svg.text(720.0, top - 16.0, "Decision", "middle");

    for (std::size_t k = 0; k < f.rows.size(); ++k) {
        const auto& r = f.rows[k];
        const double y = top + row_h * (static_cast<double>(k) + 0.5);
        const bool pooled = r.kind != RowKind::Study;
        if (pooled && (k == 0 || f.rows[k - 1].kind == RowKind::Study))
            svg.line(10.0, y - row_h / 2.0, 750.0, y - row_h / 2.0, "#cccccc");
        svg.text(10.0, y + 4.0, r.label);
        const std::string color = decision_color(r.decision);
        if (pooled) {
            svg.polygon({{sx(r.interval.lower), y}, {sx(r.effect), y - 7.0}, {sx(r.interval.upper), y}, {sx(r.effect), y + 7.0}},
                        "fill=\"" + color + "\"");
        } else {
            svg.line(sx(r.interval.lower), y, sx(r.interval.upper), y, color);
            const double side = std::clamp(14.0 * std::sqrt(r.marker_size), 2.0, 14.0);
            svg.rect(sx(r.effect) - side / 2.0, y - side / 2.0, side, side, color, " class=\"marker\"");
        }
        svg.text(580.0, y + 4.0,
                 fmt4(r.effect) + " [" + fmt4(r.interval.lower) + ", " + fmt4(r.interval.upper) + "]");
        svg.text(720.0, y + 4.0, std::string(to_string(r.decision)), "middle");
    }
    svg.line(x0, plot_bottom + 6.0, x1, plot_bottom + 6.0, "#000000");
    for (int t = 0; t <= 4; ++t) {
        const double v = lo + (hi - lo) * t / 4.0;
        svg.line(sx(v), plot_bottom + 6.0, sx(v), plot_bottom + 10.0, "#000000");
        svg.text(sx(v), plot_bottom + 24.0, fmt4(v), "middle");
    }
    if (f.tau_sq) svg.text(10.0, plot_bottom + 40.0, "tau^2 = " + fmt4(*f.tau_sq));
    return svg.str();
}

std::string family_svg(const EllipsoidRegion& region, const std::vector<std::string>& labels,
                       const std::vector<TestResult>& results, double delta) {
    const std::size_t p = region.dimension();
    const double panel = 240.0, margin = 30.0;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i + 1; j < p; ++j) pairs.emplace_back(i, j);
    Svg svg(static_cast<double>(pairs.size()) * (panel + margin) + margin, panel + 3.0 * margin + 20.0);

    auto label = [&](std::size_t i) { return i < labels.size() ? labels[i] : "theta" + std::to_string(i + 1); };
    for (const auto& r : results) {
        if (std::holds_alternative<MaxPairwiseBand>(r.hypothesis.variant())) {
            svg.text(margin, panel + 2.0 * margin + 20.0, "max pairwise |diff| <= " + fmt4(delta) + ": " +
                                                              std::string(to_string(r.decision)));
        }
    }

    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto [i, j] = pairs[k];
        const auto proj = project_ellipsoid(region, {i, j});
        const Eigen::Matrix2d shape = proj.shape();
        const double r = std::sqrt(proj.radius_sq);
        const double h = std::max({1.3 * r * std::sqrt(shape(0, 0)), 1.3 * r * std::sqrt(shape(1, 1)), 1.2 * delta});
        const double cx = proj.center(0), cy = proj.center(1);
        const double ox = margin + static_cast<double>(k) * (panel + margin), oy = margin;
        auto sx = [&](double v) { return ox + (v - (cx - h)) / (2.0 * h) * panel; };
        auto sy = [&](double v) { return oy + panel - (v - (cy - h)) / (2.0 * h) * panel; };

        const std::string clip = "panel" + std::to_string(k);
        svg.raw("<clipPath id=\"" + clip + "\"><rect x=\"" + fmt(ox) + "\" y=\"" + fmt(oy) + "\" width=\"" +
                fmt(panel) + "\" height=\"" + fmt(panel) + "\"/></clipPath>");
        svg.rect(ox, oy, panel, panel, "none", " stroke=\"#000000\"");
        svg.raw("<g clip-path=\"url(#" + clip + ")\">");
        // Band |x - y| <= delta between the lines y = x - delta and y = x + delta.
        const double xa = cx - h - 2.0 * h, xb = cx + h + 2.0 * h;
        svg.polygon({{sx(xa), sy(xa - delta)}, {sx(xb), sy(xb - delta)}, {sx(xb), sy(xb + delta)}, {sx(xa), sy(xa + delta)}},
                    "fill=\"#d9ead3\" class=\"band\"");
        const Eigen::LLT<Eigen::Matrix2d> llt(shape);
        const Eigen::Matrix2d L = llt.matrixL();
        std::vector<std::pair<double, double>> pts;
        for (int t = 0; t < 96; ++t) {
            const double a = 2.0 * std::numbers::pi * t / 96.0;
            const Eigen::Vector2d q = L * Eigen::Vector2d(std::cos(a), std::sin(a)) * r;
            pts.emplace_back(sx(cx + q(0)), sy(cy + q(1)));
        }
        std::string verdict = "n/a";
        for (const auto& res : results) {
            if (const auto* b = std::get_if<Band>(&res.hypothesis.variant())) {
                const auto& w = b->weights;
                bool match = static_cast<std::size_t>(w.size()) == p && w(static_cast<Eigen::Index>(i)) != 0.0 &&
                             w(static_cast<Eigen::Index>(j)) != 0.0;
                for (Eigen::Index m = 0; match && m < w.size(); ++m)
                    if (m != static_cast<Eigen::Index>(i) && m != static_cast<Eigen::Index>(j) && w(m) != 0.0) match = false;
                if (match) verdict = std::string(to_string(res.decision));
            }
        }
        const std::string color = verdict == "accept" ? decision_color(Decision::Accept)
                                  : verdict == "reject" ? decision_color(Decision::Reject)
                                                        : decision_color(Decision::Agnostic);
        svg.polygon(pts, "fill=\"none\" stroke=\"" + color + "\" stroke-width=\"2\" class=\"ellipse\"");
        svg.raw("</g>");
        svg.text(ox + panel / 2.0, oy + panel + 16.0, label(i), "middle");
        svg.text(ox - 6.0, oy + panel / 2.0, label(j), "end");
        svg.text(ox + panel / 2.0, oy - 8.0, label(i) + " vs " + label(j) + ": " + verdict, "middle");
    }
    return svg.str();
}

}  // namespace react::io
