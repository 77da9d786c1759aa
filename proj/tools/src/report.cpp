#include "taustat_cli/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "taustat/csv.hpp"
#include "taustat/error.hpp"

namespace taustat::cli {

std::string data_fingerprint(const CaseSet& cases) {
    std::ostringstream canonical;
    write_cases_csv(canonical, cases);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : canonical.str()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = kHex[h & 0xf];
    return out;
}

Json make_document(std::string_view command, const AnalysisConfig& cfg, const CaseSet& cases) {
    Json doc;
    doc["tool"] = "taustat";
    doc["version"] = std::string(kToolVersion);
    doc["command"] = std::string(command);
    doc["seed"] = cfg.seed;
    doc["config"] = to_json(cfg);
    doc["data"] = {{"n_cases", cases.size()}, {"fingerprint", data_fingerprint(cases)}};
    return doc;
}

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

void write_file(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

void write_json(const std::filesystem::path& path, const Json& doc) { write_file(path, doc.dump(2) + "\n"); }

Json read_json(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, path.string() + ": " + e.what());
    }
}

std::string csv_number(double v) {
    if (std::isnan(v)) return "NA";
    if (std::isinf(v)) return v > 0 ? "Inf" : "-Inf";
    return format_double(v);
}

namespace {

std::string fixed(double v, int precision = 2) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, precision);
    return std::string(buf, r.ptr);
}

std::string escape_xml(std::string_view s) {
    std::string out;
    for (const char c : s) {
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

// Round step for roughly `target` ticks over [lo, hi].
double tick_step(double lo, double hi, int target = 6) {
    const double raw = (hi - lo) / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (const double m : {1.0, 2.0, 5.0, 10.0}) {
        if (m * mag >= raw) return m * mag;
    }
    return 10.0 * mag;
}

}  // namespace

SvgPlot::SvgPlot(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

void SvgPlot::line(std::span<const double> x, std::span<const double> y, std::string colour, bool dashed) {
    series_.push_back({Series::Kind::Line, {x.begin(), x.end()}, {y.begin(), y.end()}, {}, {}, std::move(colour), dashed});
}

void SvgPlot::ribbon(std::span<const double> x, std::span<const double> lo, std::span<const double> hi,
                     std::string colour) {
    series_.push_back({Series::Kind::Ribbon, {x.begin(), x.end()}, {lo.begin(), lo.end()}, {hi.begin(), hi.end()},
                       {}, std::move(colour), false});
}

void SvgPlot::points(std::span<const double> x, std::span<const double> y, std::span<const std::string> colours) {
    series_.push_back({Series::Kind::Points, {x.begin(), x.end()}, {y.begin(), y.end()}, {},
                       {colours.begin(), colours.end()}, {}, false});
}

void SvgPlot::bars(std::span<const double> left, std::span<const double> right, std::span<const double> height,
                   std::string colour) {
    series_.push_back({Series::Kind::Bars, {left.begin(), left.end()}, {height.begin(), height.end()},
                       {right.begin(), right.end()}, {}, std::move(colour), false});
}

void SvgPlot::hline(double y, std::string colour) {
    series_.push_back({Series::Kind::HLine, {}, {y}, {}, {}, std::move(colour), true});
}

void SvgPlot::vline(double x, std::string colour) {
    series_.push_back({Series::Kind::VLine, {x}, {}, {}, {}, std::move(colour), true});
}

std::string SvgPlot::render(double width, double height) const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    double x0 = inf, x1 = -inf, y0 = inf, y1 = -inf;
    auto grow = [](double v, double& lo, double& hi) {
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    };
    for (const auto& s : series_) {
        for (const double v : s.x) grow(v, x0, x1);
        for (const double v : s.y) grow(v, y0, y1);
        if (s.kind == Series::Kind::Bars) {
            for (const double v : s.y2) grow(v, x0, x1);
            grow(0.0, y0, y1);
        } else {
            for (const double v : s.y2) grow(v, y0, y1);
        }
    }
    if (!(x0 < x1)) { x0 = std::isfinite(x0) ? x0 - 1 : 0; x1 = x0 + 2; }
    if (!(y0 < y1)) { y0 = std::isfinite(y0) ? y0 - 1 : 0; y1 = y0 + 2; }
    const double pad_y = 0.05 * (y1 - y0);
    y0 -= pad_y;
    y1 += pad_y;

    const double left = 70, right = 20, top = 40, bottom = 55;
    const double pw = width - left - right, ph = height - top - bottom;
    auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
    auto py = [&](double y) { return top + (1.0 - (y - y0) / (y1 - y0)) * ph; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(width, 0) << "\" height=\""
        << fixed(height, 0) << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << fixed(width / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
        << escape_xml(title_) << "</text>\n";
    svg << "<rect x=\"" << fixed(left) << "\" y=\"" << fixed(top) << "\" width=\"" << fixed(pw) << "\" height=\""
        << fixed(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

    const double xs = tick_step(x0, x1);
    for (double t = std::ceil(x0 / xs) * xs; t <= x1 + 1e-9 * xs; t += xs) {
        svg << "<line x1=\"" << fixed(px(t)) << "\" y1=\"" << fixed(top + ph) << "\" x2=\"" << fixed(px(t))
            << "\" y2=\"" << fixed(top + ph + 5) << "\" stroke=\"black\"/>"
            << "<text x=\"" << fixed(px(t)) << "\" y=\"" << fixed(top + ph + 18) << "\" text-anchor=\"middle\">"
            << format_double(std::round(t / xs) * xs) << "</text>\n";
    }
    const double ys = tick_step(y0, y1);
    for (double t = std::ceil(y0 / ys) * ys; t <= y1 + 1e-9 * ys; t += ys) {
        svg << "<line x1=\"" << fixed(left - 5) << "\" y1=\"" << fixed(py(t)) << "\" x2=\"" << fixed(left)
            << "\" y2=\"" << fixed(py(t)) << "\" stroke=\"black\"/>"
            << "<text x=\"" << fixed(left - 8) << "\" y=\"" << fixed(py(t) + 4) << "\" text-anchor=\"end\">"
            << format_double(std::round(t / ys) * ys) << "</text>\n";
    }
    svg << "<text x=\"" << fixed(left + pw / 2) << "\" y=\"" << fixed(height - 12) << "\" text-anchor=\"middle\">"
        << escape_xml(x_label_) << "</text>\n";
    svg << "<text transform=\"translate(18," << fixed(top + ph / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
        << escape_xml(y_label_) << "</text>\n";

    auto clamp_y = [&](double y) { return std::clamp(y, y0, y1); };
    for (const auto& s : series_) {
        switch (s.kind) {
            case Series::Kind::Line: {
                // Break the polyline wherever a value is undefined.
                std::string pts;
                auto flush = [&] {
                    if (!pts.empty()) {
                        svg << "<polyline fill=\"none\" stroke=\"" << s.colour << "\" stroke-width=\"1.5\""
                            << (s.dashed ? " stroke-dasharray=\"5,3\"" : "") << " points=\"" << pts << "\"/>\n";
                    }
                    pts.clear();
                };
                for (std::size_t i = 0; i < s.x.size(); ++i) {
                    if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
                        flush();
                        continue;
                    }
                    pts += fixed(px(s.x[i])) + "," + fixed(py(clamp_y(s.y[i]))) + " ";
                }
                flush();
                break;
            }
            case Series::Kind::Ribbon: {
                std::string pts;
                for (std::size_t i = 0; i < s.x.size(); ++i) {
                    if (std::isfinite(s.y2[i])) pts += fixed(px(s.x[i])) + "," + fixed(py(clamp_y(s.y2[i]))) + " ";
                }
                for (std::size_t i = s.x.size(); i-- > 0;) {
                    if (std::isfinite(s.y[i])) pts += fixed(px(s.x[i])) + "," + fixed(py(clamp_y(s.y[i]))) + " ";
                }
                svg << "<polygon fill=\"" << s.colour << "\" fill-opacity=\"0.3\" stroke=\"none\" points=\"" << pts
                    << "\"/>\n";
                break;
            }
            case Series::Kind::Points:
                for (std::size_t i = 0; i < s.x.size(); ++i) {
                    svg << "<circle cx=\"" << fixed(px(s.x[i])) << "\" cy=\"" << fixed(py(s.y[i]))
                        << "\" r=\"2.5\" fill=\"" << (i < s.colours.size() ? s.colours[i] : "black") << "\"/>\n";
                }
                break;
            case Series::Kind::Bars:
                for (std::size_t i = 0; i < s.x.size(); ++i) {
                    const double top_px = py(s.y[i]);
                    svg << "<rect x=\"" << fixed(px(s.x[i])) << "\" y=\"" << fixed(top_px) << "\" width=\""
                        << fixed(px(s.y2[i]) - px(s.x[i])) << "\" height=\"" << fixed(py(0.0) - top_px)
                        << "\" fill=\"" << s.colour << "\" stroke=\"white\"/>\n";
                }
                break;
            case Series::Kind::HLine:
                if (s.y[0] >= y0 && s.y[0] <= y1) {
                    svg << "<line x1=\"" << fixed(left) << "\" y1=\"" << fixed(py(s.y[0])) << "\" x2=\""
                        << fixed(left + pw) << "\" y2=\"" << fixed(py(s.y[0])) << "\" stroke=\"" << s.colour
                        << "\" stroke-dasharray=\"4,4\"/>\n";
                }
                break;
            case Series::Kind::VLine:
                if (s.x[0] >= x0 && s.x[0] <= x1) {
                    svg << "<line x1=\"" << fixed(px(s.x[0])) << "\" y1=\"" << fixed(top) << "\" x2=\""
                        << fixed(px(s.x[0])) << "\" y2=\"" << fixed(top + ph) << "\" stroke=\"" << s.colour
                        << "\" stroke-dasharray=\"4,4\"/>\n";
                }
                break;
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace taustat::cli
