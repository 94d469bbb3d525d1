#ifndef CHIRAL_DIODE_IO_HPP
#define CHIRAL_DIODE_IO_HPP

#include <array>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "diode_analysis.hpp"
#include "single_photon.hpp"
#include "two_photon.hpp"

namespace chiral_diode
{

class IoError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Shortest decimal string that parses back to the same double.
inline std::string format_double(double v)
{
    std::array<char, 64> buf{};
    auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc()) throw IoError("cannot format number");
    return std::string(buf.data(), p);
}

inline std::ofstream open_output(const std::filesystem::path& path, bool binary = false)
{
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path, binary ? std::ios::binary | std::ios::trunc : std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    return out;
}

inline void check_stream(std::ostream& os, const std::string& what)
{
    os.flush();
    if (!os) throw IoError("write failed: " + what);
}

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows)
{
    os << "detuning_over_Gamma,gamma1_over_Gamma,T,R,loss\n";
    for (const auto& r : rows)
        os << format_double(r.detuning_over_Gamma) << ',' << format_double(r.gamma1_over_Gamma) << ','
           << format_double(r.T) << ',' << format_double(r.R) << ',' << format_double(r.loss) << '\n';
}

/// Long format, x1 outer and x2 inner.
inline void write_map_csv(std::ostream& os, const TwoPhotonMap& m)
{
    const bool all = !m.rr.empty();
    os << (all ? "x1,x2,psi_tt_sq,psi_rr_sq,psi_rt_sq\n" : "x1,x2,psi_tt_sq\n");
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
        {
            const std::size_t k = i * m.cols + j;
            os << format_double(m.x[i]) << ',' << format_double(m.x[j]) << ',' << format_double(m.tt[k]);
            if (all) os << ',' << format_double(m.rr[k]) << ',' << format_double(m.rt[k]);
            os << '\n';
        }
}

inline void write_curve_csv(std::ostream& os, const WorkingAreaCurve& c)
{
    os << "gamma1_over_Gamma,Gamma_abs_x,branch,diverges\n";
    for (const auto& p : c.points)
        os << format_double(p.gamma1_over_Gamma) << ',' << format_double(p.Gamma_abs_x) << ',' << p.branch << ','
           << (p.diverges ? 1 : 0) << '\n';
}

inline void write_zero_scan_csv(std::ostream& os, const ZeroScanResult& r)
{
    os << "gamma1_over_Gamma,Gamma_abs_x,psi_tt_sq,is_null\n";
    for (const auto& m : r.minima)
        os << format_double(m.gamma1_over_Gamma) << ',' << format_double(m.Gamma_abs_x) << ','
           << format_double(m.psi_sq) << ',' << (m.is_null ? 1 : 0) << '\n';
}

/// Binary map layout (host byte order, little-endian on all supported targets):
///   bytes 0-7   magic "CDMAP001"
///   bytes 8-11  uint32 rows
///   bytes 12-15 uint32 cols
///   bytes 16-23 double x_min
///   bytes 24-31 double x_max
///   then rows*cols doubles |psi_tt|^2, row-major (row = x1 index)
inline constexpr char map_magic[8] = {'C', 'D', 'M', 'A', 'P', '0', '0', '1'};

inline void write_map_binary(std::ostream& os, const TwoPhotonMap& m)
{
    const auto rows = static_cast<std::uint32_t>(m.rows);
    const auto cols = static_cast<std::uint32_t>(m.cols);
    os.write(map_magic, 8);
    os.write(reinterpret_cast<const char*>(&rows), 4);
    os.write(reinterpret_cast<const char*>(&cols), 4);
    os.write(reinterpret_cast<const char*>(&m.x_min), 8);
    os.write(reinterpret_cast<const char*>(&m.x_max), 8);
    os.write(reinterpret_cast<const char*>(m.tt.data()), static_cast<std::streamsize>(m.tt.size() * sizeof(double)));
}

inline TwoPhotonMap read_map_binary(std::istream& is)
{
    char magic[8];
    std::uint32_t rows = 0, cols = 0;
    TwoPhotonMap m;
    is.read(magic, 8);
    if (!is || std::memcmp(magic, map_magic, 8) != 0) throw IoError("not a two-photon map file");
    is.read(reinterpret_cast<char*>(&rows), 4);
    is.read(reinterpret_cast<char*>(&cols), 4);
    is.read(reinterpret_cast<char*>(&m.x_min), 8);
    is.read(reinterpret_cast<char*>(&m.x_max), 8);
    if (!is) throw IoError("truncated map header");
    m.rows = rows;
    m.cols = cols;
    m.tt.resize(static_cast<std::size_t>(rows) * cols);
    is.read(reinterpret_cast<char*>(m.tt.data()), static_cast<std::streamsize>(m.tt.size() * sizeof(double)));
    if (!is) throw IoError("truncated map data");
    m.x = make_grid(m.x_min, m.x_max, rows).values();
    return m;
}

} // namespace chiral_diode

#endif // CHIRAL_DIODE_IO_HPP
