#ifndef CHIRAL_DIODE_GRID_HPP
#define CHIRAL_DIODE_GRID_HPP

#include <charconv>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace chiral_diode
{

/// Inclusive uniform grid lo..hi with count points. count == 1 gives {lo}.
struct Grid
{
    double lo = 0.0;
    double hi = 0.0;
    std::size_t count = 1;

    std::size_t size() const { return count; }

    double operator[](std::size_t i) const
    {
        if (count == 1) return lo;
        if (i + 1 == count) return hi;
        return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    }

    std::vector<double> values() const
    {
        std::vector<double> v(count);
        for (std::size_t i = 0; i < count; ++i) v[i] = (*this)[i];
        return v;
    }
};

inline Grid make_grid(double lo, double hi, std::size_t count, std::string_view name = "grid")
{
    if (!std::isfinite(lo) || !std::isfinite(hi))
        throw std::invalid_argument(std::string(name) + ": range must be finite");
    if (count < 1) throw std::invalid_argument(std::string(name) + ": count must be >= 1");
    return Grid{lo, hi, count};
}

inline Grid single_point(double v)
{
    return make_grid(v, v, 1);
}

namespace detail
{
inline double parse_double(std::string_view s, std::string_view name)
{
    double v = 0.0;
    const auto* end = s.data() + s.size();
    auto [p, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || p != end || s.empty())
        throw std::invalid_argument(std::string(name) + ": cannot parse number '" + std::string(s) + "'");
    return v;
}
} // namespace detail

/// Parses "lo:hi:count" or a single number (one-point grid).
inline Grid parse_grid(std::string_view text, std::string_view name = "grid")
{
    const auto c1 = text.find(':');
    if (c1 == std::string_view::npos)
    {
        const double v = detail::parse_double(text, name);
        return make_grid(v, v, 1, name);
    }

    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string_view::npos || text.find(':', c2 + 1) != std::string_view::npos)
        throw std::invalid_argument(std::string(name) + ": expected lo:hi:count, got '" + std::string(text) + "'");

    const double lo = detail::parse_double(text.substr(0, c1), name);
    const double hi = detail::parse_double(text.substr(c1 + 1, c2 - c1 - 1), name);
    const auto count_text = text.substr(c2 + 1);
    long long count = 0;
    auto [p, ec] = std::from_chars(count_text.data(), count_text.data() + count_text.size(), count);
    if (ec != std::errc() || p != count_text.data() + count_text.size() || count < 1)
        throw std::invalid_argument(std::string(name) + ": count must be an integer >= 1");
    return make_grid(lo, hi, static_cast<std::size_t>(count), name);
}

} // namespace chiral_diode

#endif // CHIRAL_DIODE_GRID_HPP
