#include "taustat/bands.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "taustat/error.hpp"

namespace taustat {

DistanceBandSet::DistanceBandSet(std::vector<DistanceBand> bands) : bands_(std::move(bands)) {
    if (bands_.empty()) throw Error(ErrorCode::InvalidArgument, "distance band set is empty");
    midpoints_.reserve(bands_.size());
    for (std::size_t k = 0; k < bands_.size(); ++k) {
        const auto& b = bands_[k];
        if (!std::isfinite(b.d_low) || std::isnan(b.d_high) || b.d_low < 0.0 || !(b.d_low < b.d_high)) {
            throw Error(ErrorCode::InvalidArgument,
                        "band " + std::to_string(k) + " violates 0 <= d_low < d_high");
        }
        const double mid = b.midpoint();
        if (!midpoints_.empty() && !(mid > midpoints_.back())) {
            throw Error(ErrorCode::InvalidArgument,
                        "band midpoints must be strictly increasing (band " + std::to_string(k) + ")");
        }
        midpoints_.push_back(mid);
    }
}

namespace {

std::string format_edge(double v) {
    if (std::isinf(v)) return "inf";
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(17);
    os << v;
    return os.str();
}

double parse_edge(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (s == "inf" || s == "Inf") return INFINITY;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw Error(ErrorCode::InvalidArgument, "cannot parse band edge '" + std::string(s) + "'");
    }
    return v;
}

}  // namespace

std::string DistanceBandSet::to_string() const {
    std::string out;
    for (std::size_t k = 0; k < bands_.size(); ++k) {
        if (k) out += ',';
        out += format_edge(bands_[k].d_low);
        out += ':';
        out += format_edge(bands_[k].d_high);
    }
    return out;
}

DistanceBandSet DistanceBandSet::parse(std::string_view text) {
    std::vector<DistanceBand> bands;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const auto item = text.substr(0, comma);
        const auto colon = item.find(':');
        if (colon == std::string_view::npos) {
            throw Error(ErrorCode::InvalidArgument, "band '" + std::string(item) + "' must be written lo:hi");
        }
        bands.push_back({parse_edge(item.substr(0, colon)), parse_edge(item.substr(colon + 1))});
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return DistanceBandSet(std::move(bands));
}

DistanceBandSet DistanceBandSet::overlapping() {
    std::vector<DistanceBand> bands;
    for (int hi = 10; hi <= 50; hi += 2) bands.push_back({0.0, double(hi)});
    for (int lo = 2; lo <= 74; lo += 2) bands.push_back({double(lo), double(lo + 50)});
    return DistanceBandSet(std::move(bands));
}

DistanceBandSet DistanceBandSet::non_overlapping() {
    std::vector<DistanceBand> bands{{0.0, 7.0}, {7.0, 15.0}};
    for (int lo = 15; lo < 200; lo += 5) bands.push_back({double(lo), double(lo + 5)});
    return DistanceBandSet(std::move(bands));
}

}  // namespace taustat
