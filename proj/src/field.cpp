#include "nlslab/field.hpp"

#include "nlslab/errors.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace nlslab {

namespace {
constexpr std::uint32_t kMagic = 0x4653'4c4e; // "NLSF" little-endian
constexpr std::uint32_t kFormatVersion = 1;
} // namespace

Field make_field(const Grid& g) {
    Field f;
    f.grid = g;
    f.values.assign(g.size(), cplx{0.0, 0.0});
    return f;
}

bool all_finite(const Field& f) {
    for (const cplx& z : f.values)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

void save_field(const Field& f, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
    auto put_u32 = [&](std::uint32_t v) { out.write(reinterpret_cast<const char*>(&v), 4); };
    put_u32(kMagic);
    put_u32(kFormatVersion);
    put_u32(static_cast<std::uint32_t>(f.grid.dim));
    put_u32(static_cast<std::uint32_t>(f.grid.points));
    double L = f.grid.length;
    out.write(reinterpret_cast<const char*>(&L), 8);
    out.write(reinterpret_cast<const char*>(f.values.data()),
              static_cast<std::streamsize>(f.values.size() * sizeof(cplx)));
    if (!out) throw ConfigError("short write to " + path.string());
}

Field load_field(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open " + path.string());
    auto get_u32 = [&] {
        std::uint32_t v = 0;
        in.read(reinterpret_cast<char*>(&v), 4);
        return v;
    };
    if (get_u32() != kMagic) throw ConfigError(path.string() + ": not a field snapshot");
    if (get_u32() != kFormatVersion) throw ConfigError(path.string() + ": unknown format version");
    int dim = static_cast<int>(get_u32());
    int points = static_cast<int>(get_u32());
    double L = 0.0;
    in.read(reinterpret_cast<char*>(&L), 8);
    Field f = make_field(make_grid(dim, L, points));
    in.read(reinterpret_cast<char*>(f.values.data()),
            static_cast<std::streamsize>(f.values.size() * sizeof(cplx)));
    if (!in) throw ConfigError(path.string() + ": truncated snapshot");
    return f;
}

} // namespace nlslab
