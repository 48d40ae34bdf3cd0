#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace grk {

// A finite subset of {1, 2, ...}, stored as a strictly increasing sequence.
//
// Ordering: I < J iff the smallest element of the symmetric difference of I
// and J belongs to J. On sorted sequences this is decided at the first index
// where the two differ: the sequence holding the *smaller* element there is
// the greater set (that element is the least one of the symmetric difference,
// because all earlier entries agree and everything after it is larger). If
// one sequence is a prefix of the other, the extra elements form the whole
// symmetric difference and the longer sequence is the greater set. The empty
// set is therefore the minimum.
class GRMeasure {
public:
    using value_type = std::uint32_t;

    GRMeasure() = default;
    GRMeasure(std::initializer_list<value_type> elems);
    explicit GRMeasure(std::vector<value_type> elems);

    std::span<const value_type> elements() const noexcept { return elems_; }
    std::size_t size() const noexcept { return elems_.size(); }
    bool empty() const noexcept { return elems_.empty(); }
    value_type max() const;
    bool contains(value_type x) const noexcept;

    friend bool operator==(const GRMeasure&, const GRMeasure&) = default;
    friend std::strong_ordering operator<=>(const GRMeasure& a, const GRMeasure& b) noexcept;

private:
    std::vector<value_type> elems_;
};

std::strong_ordering compare(const GRMeasure& a, const GRMeasure& b) noexcept;

// I << J: I is a proper subset of J and every new element exceeds max(I).
bool ll_relation(const GRMeasure& i, const GRMeasure& j) noexcept;

// J starts with I: I == J or I << J.
bool starts_with(const GRMeasure& j, const GRMeasure& i) noexcept;

// I u {len}; len must exceed max(I).
GRMeasure extend(const GRMeasure& i, GRMeasure::value_type len);

// {1, 2, 4, ..., 2m}
GRMeasure mu_lower(unsigned m);
// {1, 2, 4, ..., 2m, 2m+1}
GRMeasure mu_upper(unsigned m);

// Any element K of the catalog with lo < K < hi (the smallest such, so the
// answer is deterministic). Requires lo < hi.
std::optional<GRMeasure> find_between(const GRMeasure& lo, const GRMeasure& hi,
                                      std::span<const GRMeasure> catalog);

GRMeasure parse_measure(std::string_view text);
std::string format_measure(const GRMeasure& m);

} // namespace grk
