#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "taustat/cases.hpp"
#include "taustat_cli/config.hpp"

namespace taustat::cli {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kToolVersion = "0.1.0";

/// FNV-1a 64 of the canonical CSV rendering of the cases, as 16 hex digits. Independent of
/// the input file's formatting, so it identifies the data rather than the file.
[[nodiscard]] std::string data_fingerprint(const CaseSet& cases);

/// Skeleton shared by every result document: tool, version, command, config echo, data.
[[nodiscard]] Json make_document(std::string_view command, const AnalysisConfig& cfg, const CaseSet& cases);

/// JSON number or null for non-finite values.
[[nodiscard]] Json number_or_null(double v);

void write_file(const std::filesystem::path& path, std::string_view content);
void write_json(const std::filesystem::path& path, const Json& doc);
[[nodiscard]] Json read_json(const std::filesystem::path& path);

/// Locale-independent CSV cell: shortest round-trip decimal, "NA" for NaN, "Inf"/"-Inf".
[[nodiscard]] std::string csv_number(double v);

/// Minimal SVG line chart used for the optional plot renderings.
class SvgPlot {
public:
    SvgPlot(std::string title, std::string x_label, std::string y_label);

    void line(std::span<const double> x, std::span<const double> y, std::string colour, bool dashed = false);
    void ribbon(std::span<const double> x, std::span<const double> lo, std::span<const double> hi,
                std::string colour);
    void points(std::span<const double> x, std::span<const double> y, std::span<const std::string> colours);
    void bars(std::span<const double> left, std::span<const double> right, std::span<const double> height,
              std::string colour);
    void hline(double y, std::string colour);
    void vline(double x, std::string colour);

    [[nodiscard]] std::string render(double width = 720, double height = 480) const;

private:
    struct Series {
        enum class Kind { Line, Ribbon, Points, Bars, HLine, VLine } kind;
        std::vector<double> x, y, y2;
        std::vector<std::string> colours;
        std::string colour;
        bool dashed = false;
    };
    std::string title_, x_label_, y_label_;
    std::vector<Series> series_;
};

}  // namespace taustat::cli
