#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace taustat {

/// One geolocated case. Coordinates are planar metres, onset is in days.
struct CaseRecord {
    std::string id;
    double x = 0.0;
    double y = 0.0;
    double onset = 0.0;

    friend bool operator==(const CaseRecord&, const CaseRecord&) = default;
};

/// Immutable, validated collection of cases (n >= 2, finite fields, unique ids).
/// Row order is preserved from construction.
class CaseSet {
public:
    [[nodiscard]] std::size_t size() const noexcept { return cases_.size(); }
    [[nodiscard]] const CaseRecord& operator[](std::size_t i) const { return cases_[i]; }
    [[nodiscard]] std::span<const CaseRecord> cases() const noexcept { return cases_; }

    [[nodiscard]] std::vector<double> onsets() const;

    /// Same locations, onset times replaced in order. Used by the permutation null.
    [[nodiscard]] CaseSet with_onsets(std::span<const double> onsets) const;

    auto begin() const noexcept { return cases_.begin(); }
    auto end() const noexcept { return cases_.end(); }

    friend bool operator==(const CaseSet&, const CaseSet&) = default;

private:
    friend CaseSet validate_case_set(std::vector<CaseRecord> raw);
    explicit CaseSet(std::vector<CaseRecord> cases) : cases_(std::move(cases)) {}

    std::vector<CaseRecord> cases_;
};

/// Throws Error{EmptyOrSingleton | NonFiniteField | DuplicateId}.
[[nodiscard]] CaseSet validate_case_set(std::vector<CaseRecord> raw);

/// Temporal relatedness of an ordered case pair (i, j).
///
/// Directional: z_ij = 1 iff (t_j - t_i) lies in [t_lower, t_upper].
/// Symmetric:   z_ij = 1 iff |t_j - t_i| lies in [t_lower, t_upper].
struct RelatednessRule {
    double t_lower = 0.0;
    double t_upper = 0.0;
    bool directional = true;

    /// Throws Error{InvalidArgument} when bounds are non-finite or reversed.
    static RelatednessRule make(double t_lower, double t_upper, bool directional);

    [[nodiscard]] bool related(double onset_i, double onset_j) const noexcept {
        const double dt = directional ? onset_j - onset_i : (onset_j >= onset_i ? onset_j - onset_i : onset_i - onset_j);
        return dt >= t_lower && dt <= t_upper;
    }

    friend bool operator==(const RelatednessRule&, const RelatednessRule&) = default;
};

}  // namespace taustat
