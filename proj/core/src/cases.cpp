#include "taustat/cases.hpp"

#include <cmath>
#include <unordered_set>

#include "taustat/error.hpp"

namespace taustat {

std::vector<double> CaseSet::onsets() const {
    std::vector<double> out;
    out.reserve(cases_.size());
    for (const auto& c : cases_) out.push_back(c.onset);
    return out;
}

CaseSet CaseSet::with_onsets(std::span<const double> onsets) const {
    if (onsets.size() != cases_.size()) {
        throw Error(ErrorCode::InvalidArgument, "onset vector length does not match case count");
    }
    std::vector<CaseRecord> out = cases_;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!std::isfinite(onsets[i])) throw Error(ErrorCode::NonFiniteField, "onset of case " + out[i].id);
        out[i].onset = onsets[i];
    }
    return CaseSet(std::move(out));
}

CaseSet validate_case_set(std::vector<CaseRecord> raw) {
    if (raw.size() < 2) {
        throw Error(ErrorCode::EmptyOrSingleton,
                    "tau is a pairwise statistic and needs at least 2 cases, got " + std::to_string(raw.size()));
    }
    std::unordered_set<std::string> seen;
    seen.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const auto& c = raw[i];
        if (!std::isfinite(c.x) || !std::isfinite(c.y) || !std::isfinite(c.onset)) {
            throw Error(ErrorCode::NonFiniteField, "case '" + c.id + "' (row " + std::to_string(i) + ")");
        }
        if (!seen.insert(c.id).second) {
            throw Error(ErrorCode::DuplicateId, "case id '" + c.id + "' appears more than once");
        }
    }
    return CaseSet(std::move(raw));
}

RelatednessRule RelatednessRule::make(double t_lower, double t_upper, bool directional) {
    if (!std::isfinite(t_lower) || !std::isfinite(t_upper)) {
        throw Error(ErrorCode::InvalidArgument, "relatedness bounds must be finite");
    }
    if (t_lower > t_upper) {
        throw Error(ErrorCode::InvalidArgument, "relatedness window requires t_lower <= t_upper");
    }
    return RelatednessRule{t_lower, t_upper, directional};
}

}  // namespace taustat
