#include "grk/gr_order.hpp"

#include "grk/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace grk {

namespace {

void check_ascending(const std::vector<GRMeasure::value_type>& v) {
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k] == 0)
            throw InputError("measure elements must be positive");
        if (k > 0 && v[k] <= v[k - 1])
            throw InputError("measure elements must be strictly increasing");
    }
}

} // namespace

GRMeasure::GRMeasure(std::initializer_list<value_type> elems) : elems_(elems) {
    check_ascending(elems_);
}

GRMeasure::GRMeasure(std::vector<value_type> elems) : elems_(std::move(elems)) {
    check_ascending(elems_);
}

GRMeasure::value_type GRMeasure::max() const {
    if (elems_.empty())
        throw PreconditionError("max of the empty measure");
    return elems_.back();
}

bool GRMeasure::contains(value_type x) const noexcept {
    return std::binary_search(elems_.begin(), elems_.end(), x);
}

std::strong_ordering operator<=>(const GRMeasure& a, const GRMeasure& b) noexcept {
    const auto& x = a.elems_;
    const auto& y = b.elems_;
    const std::size_t common = std::min(x.size(), y.size());
    for (std::size_t k = 0; k < common; ++k) {
        if (x[k] != y[k])
            return x[k] < y[k] ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return x.size() <=> y.size();
}

std::strong_ordering compare(const GRMeasure& a, const GRMeasure& b) noexcept {
    return a <=> b;
}

bool ll_relation(const GRMeasure& i, const GRMeasure& j) noexcept {
    const auto a = i.elements();
    const auto b = j.elements();
    if (a.size() >= b.size())
        return false;
    return std::equal(a.begin(), a.end(), b.begin());
}

bool starts_with(const GRMeasure& j, const GRMeasure& i) noexcept {
    return i == j || ll_relation(i, j);
}

GRMeasure extend(const GRMeasure& i, GRMeasure::value_type len) {
    if (!i.empty() && len <= i.max())
        throw InputError("extend: new length must exceed the current maximum");
    std::vector<GRMeasure::value_type> v(i.elements().begin(), i.elements().end());
    v.push_back(len);
    return GRMeasure(std::move(v));
}

GRMeasure mu_lower(unsigned m) {
    if (m == 0)
        throw InputError("mu_lower: m must be positive");
    std::vector<GRMeasure::value_type> v{1};
    for (unsigned k = 1; k <= m; ++k)
        v.push_back(2 * k);
    return GRMeasure(std::move(v));
}

GRMeasure mu_upper(unsigned m) {
    return extend(mu_lower(m), 2 * m + 1);
}

std::optional<GRMeasure> find_between(const GRMeasure& lo, const GRMeasure& hi,
                                      std::span<const GRMeasure> catalog) {
    if (!(lo < hi))
        throw PreconditionError("find_between: requires lo < hi");
    std::optional<GRMeasure> best;
    for (const auto& k : catalog) {
        if (lo < k && k < hi && (!best || k < *best))
            best = k;
    }
    return best;
}

GRMeasure parse_measure(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
            s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
            s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    if (text.size() < 2 || text.front() != '{' || text.back() != '}')
        throw InputError("measure must be written as {a1,a2,...}: '" + std::string(text) + "'");
    std::string_view body = trim(text.substr(1, text.size() - 2));
    std::vector<GRMeasure::value_type> v;
    while (!body.empty()) {
        const auto comma = body.find(',');
        const std::string_view item = trim(body.substr(0, comma));
        GRMeasure::value_type x = 0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), x);
        if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size())
            throw InputError("bad measure element '" + std::string(item) + "'");
        v.push_back(x);
        if (comma == std::string_view::npos)
            break;
        body = body.substr(comma + 1);
        if (trim(body).empty())
            throw InputError("trailing comma in measure");
    }
    return GRMeasure(std::move(v));
}

std::string format_measure(const GRMeasure& m) {
    std::ostringstream out;
    out << '{';
    bool first = true;
    for (auto x : m.elements()) {
        if (!first)
            out << ',';
        out << x;
        first = false;
    }
    out << '}';
    return out.str();
}

} // namespace grk
