#include "clab/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "clab/errors.hpp"
#include "json.hpp"

namespace clab::io {

namespace {

static_assert(std::endian::native == std::endian::little, "field IO assumes a little-endian host");

template <class T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is) throw IoError("truncated field file");
    return v;
}

const char* role_name(AxisRole r) {
    switch (r) {
        case AxisRole::Time: return "t";
        case AxisRole::Space: return "x";
        case AxisRole::Z: return "z";
    }
    return "?";
}

void ensure_parent(const std::filesystem::path& path) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
}

}  // namespace

void write_field(const std::filesystem::path& path, const Field& u, std::string_view meta_json) {
    nlohmann::json meta;
    try {
        meta = nlohmann::json::parse(meta_json);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("field metadata is not valid JSON: ") + e.what());
    }
    ensure_parent(path);
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open " + path.string() + " for writing");
    os.write("CLF1", 4);
    const auto& g = u.grid();
    put<std::uint32_t>(os, static_cast<std::uint32_t>(g.rank()));
    nlohmann::json axes = nlohmann::json::array();
    for (const auto& a : g.axes()) {
        put<std::uint64_t>(os, a.count);
        put<double>(os, a.spacing);
        put<double>(os, a.origin);
        put<std::uint8_t>(os, static_cast<std::uint8_t>(a.role));
        axes.push_back({{"count", a.count}, {"spacing", a.spacing}, {"origin", a.origin}, {"role", role_name(a.role)}});
    }
    put<std::uint8_t>(os, u.side() == Side::Physical ? 0 : 1);
    for (const auto& v : u.data()) {
        put<float>(os, static_cast<float>(v.real()));
        put<float>(os, static_cast<float>(v.imag()));
    }
    if (!os) throw IoError("write failed for " + path.string());

    nlohmann::json side;
    side["format"] = "CLF1";
    side["axes"] = axes;
    side["side"] = u.side() == Side::Physical ? "physical" : "fourier";
    side["sample_type"] = "complex64";
    side["meta"] = meta;
    write_text(path.string() + ".json", side.dump(2) + "\n");
}

Field read_field(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open " + path.string());
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "CLF1", 4) != 0) throw IoError(path.string() + " is not a CLF1 field file");
    const auto rank = get<std::uint32_t>(is);
    if (rank == 0 || rank > 16) throw IoError("implausible field rank");
    std::vector<Axis> axes;
    for (std::uint32_t i = 0; i < rank; ++i) {
        Axis a;
        a.count = get<std::uint64_t>(is);
        a.spacing = get<double>(is);
        a.origin = get<double>(is);
        const auto role = get<std::uint8_t>(is);
        if (role > 2) throw IoError("unknown axis role");
        a.role = static_cast<AxisRole>(role);
        axes.push_back(a);
    }
    const auto side = get<std::uint8_t>(is);
    GridSpec grid(axes);
    std::vector<cplx> data(grid.size());
    for (auto& v : data) {
        const float re = get<float>(is);
        const float im = get<float>(is);
        v = {re, im};
    }
    return Field(grid, std::move(data), side == 0 ? Side::Physical : Side::Fourier);
}

void write_text(const std::filesystem::path& path, std::string_view content) {
    ensure_parent(path);
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open " + path.string() + " for writing");
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!os) throw IoError("write failed for " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << v;
    return os.str();
}

}  // namespace clab::io
