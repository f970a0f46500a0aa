#include "crackdet/volume_io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <type_traits>

namespace crackdet {

static_assert(std::endian::native == std::endian::little, "payload I/O assumes a little-endian host");

std::string_view kind_name(ValueKind k) noexcept {
    switch (k) {
        case ValueKind::U8: return "u8";
        case ValueKind::U16: return "u16";
        case ValueKind::F32: return "f32";
        case ValueKind::Bit: return "bit";
    }
    return "?";
}

std::size_t VolumeHeader::payload_bytes() const noexcept {
    const std::size_t n = dims.count();
    switch (kind) {
        case ValueKind::U8: return n;
        case ValueKind::U16: return 2 * n;
        case ValueKind::F32: return 4 * n;
        case ValueKind::Bit: return (n + 7) / 8;
    }
    return 0;
}

VolumePaths volume_paths(const std::filesystem::path& path) {
    std::filesystem::path base = path;
    if (base.extension() == ".raw" || base.extension() == ".meta") base.replace_extension();
    VolumePaths out;
    out.raw = base;
    out.raw += ".raw";
    out.meta = base;
    out.meta += ".meta";
    return out;
}

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace

VolumeHeader parse_header(std::string_view text) {
    VolumeHeader h;
    bool have_dims = false;
    bool have_kind = false;
    bool have_order = false;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw FormatError("header line " + std::to_string(lineno) + ": expected key=value, got '" + t + "'");
        }
        const std::string key = trim(std::string_view(t).substr(0, eq));
        const std::string value = trim(std::string_view(t).substr(eq + 1));
        if (key == "dims") {
            std::istringstream vs(value);
            long long nx = 0, ny = 0, nz = 0;
            std::string rest;
            if (!(vs >> nx >> ny >> nz) || (vs >> rest) || nx < 1 || ny < 1 || nz < 1) {
                throw FormatError("header field 'dims': expected three positive integers, got '" + value + "'");
            }
            h.dims = {static_cast<std::size_t>(nx), static_cast<std::size_t>(ny), static_cast<std::size_t>(nz)};
            have_dims = true;
        } else if (key == "kind") {
            if (value == "u8") h.kind = ValueKind::U8;
            else if (value == "u16") h.kind = ValueKind::U16;
            else if (value == "f32") h.kind = ValueKind::F32;
            else if (value == "bit") h.kind = ValueKind::Bit;
            else throw FormatError("header field 'kind': unsupported value '" + value + "'");
            have_kind = true;
        } else if (key == "order") {
            if (value != "x-fastest") throw FormatError("header field 'order': unsupported value '" + value + "'");
            have_order = true;
        } else if (key == "endian") {
            if (value != "little") throw FormatError("header field 'endian': unsupported value '" + value + "'");
        } else {
            throw FormatError("header field '" + key + "' is not recognized");
        }
    }
    if (!have_dims) throw FormatError("header field 'dims' is missing");
    if (!have_kind) throw FormatError("header field 'kind' is missing");
    if (!have_order) throw FormatError("header field 'order' is missing");
    return h;
}

std::string format_header(const VolumeHeader& header) {
    std::ostringstream out;
    out << "dims=" << header.dims.nx << ' ' << header.dims.ny << ' ' << header.dims.nz << '\n'
        << "kind=" << kind_name(header.kind) << '\n'
        << "order=x-fastest\n";
    return out.str();
}

namespace {

std::string slurp_text(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw FormatError("cannot open header '" + p.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::uint8_t> slurp_bytes(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw IoError("cannot open payload '" + p.string() + "'");
    in.seekg(0, std::ios::end);
    const auto n = static_cast<std::size_t>(in.tellg());
    in.seekg(0, std::ios::beg);
    std::vector<std::uint8_t> buf(n);
    if (n > 0 && !in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(n))) {
        throw IoError("short read from '" + p.string() + "'");
    }
    return buf;
}

void write_file(const std::filesystem::path& p, const void* data, std::size_t n) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + p.string() + "' for writing");
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
    out.flush();
    if (!out) throw IoError("write to '" + p.string() + "' failed");
}

}  // namespace

VolumeHeader read_header(const std::filesystem::path& path) {
    const auto paths = volume_paths(path);
    try {
        return parse_header(slurp_text(paths.meta));
    } catch (const FormatError& e) {
        throw FormatError(paths.meta.string() + ": " + e.what());
    }
}

std::vector<std::uint8_t> pack_bits(std::span<const std::uint8_t> bits) {
    std::vector<std::uint8_t> out((bits.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] != 0) out[i >> 3] |= static_cast<std::uint8_t>(1u << (i & 7));
    }
    return out;
}

std::vector<std::uint8_t> unpack_bits(std::span<const std::uint8_t> packed, std::size_t count) {
    std::vector<std::uint8_t> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = (packed[i >> 3] >> (i & 7)) & 1u;
    return out;
}

AnyVolume read_volume(const std::filesystem::path& path) {
    const auto paths = volume_paths(path);
    const VolumeHeader h = read_header(path);
    const auto bytes = slurp_bytes(paths.raw);
    if (bytes.size() != h.payload_bytes()) {
        throw SizeError(paths.raw.string() + ": payload has " + std::to_string(bytes.size()) +
                        " bytes, header dims " + std::to_string(h.dims.nx) + "x" + std::to_string(h.dims.ny) +
                        "x" + std::to_string(h.dims.nz) + " kind=" + std::string(kind_name(h.kind)) +
                        " requires " + std::to_string(h.payload_bytes()));
    }
    const std::size_t n = h.dims.count();
    switch (h.kind) {
        case ValueKind::Bit: return BinaryVolume(h.dims, unpack_bits(bytes, n));
        case ValueKind::U8: {
            std::vector<float> v(n);
            for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<float>(bytes[i]) / 255.0f;
            return GrayVolume(h.dims, std::move(v));
        }
        case ValueKind::U16: {
            std::vector<float> v(n);
            for (std::size_t i = 0; i < n; ++i) {
                const auto raw = static_cast<std::uint16_t>(bytes[2 * i] | (bytes[2 * i + 1] << 8));
                v[i] = static_cast<float>(raw) / 65535.0f;
            }
            return GrayVolume(h.dims, std::move(v));
        }
        case ValueKind::F32: {
            std::vector<float> v(n);
            std::memcpy(v.data(), bytes.data(), bytes.size());
            GrayVolume vol(h.dims, std::move(v));
            check_gray_range(vol);
            return vol;
        }
    }
    throw FormatError("unreachable value kind");
}

GrayVolume read_gray_volume(const std::filesystem::path& path) {
    auto v = read_volume(path);
    if (auto* g = std::get_if<GrayVolume>(&v)) return std::move(*g);
    throw FormatError(path.string() + ": expected a grayscale volume, found kind=bit");
}

BinaryVolume read_binary_volume(const std::filesystem::path& path) {
    auto v = read_volume(path);
    if (auto* b = std::get_if<BinaryVolume>(&v)) return std::move(*b);
    throw FormatError(path.string() + ": expected a binary volume (kind=bit)");
}

namespace {

void write_pair(const std::filesystem::path& path, const VolumeHeader& h, const std::vector<std::uint8_t>& payload) {
    const auto paths = volume_paths(path);
    write_file(paths.raw, payload.data(), payload.size());
    const std::string meta = format_header(h);
    write_file(paths.meta, meta.data(), meta.size());
}

}  // namespace

void write_volume(const GrayVolume& vol, const std::filesystem::path& path, ValueKind kind) {
    const VolumeHeader h{vol.dims(), kind};
    const auto data = vol.data();
    std::vector<std::uint8_t> payload(h.payload_bytes());
    switch (kind) {
        case ValueKind::F32: std::memcpy(payload.data(), data.data(), payload.size()); break;
        case ValueKind::U8:
            for (std::size_t i = 0; i < data.size(); ++i) payload[i] = quantize_u8(data[i]);
            break;
        case ValueKind::U16:
            for (std::size_t i = 0; i < data.size(); ++i) {
                const double c = std::clamp(static_cast<double>(data[i]), 0.0, 1.0);
                const auto q = static_cast<std::uint16_t>(std::floor(c * 65535.0 + 0.5));
                payload[2 * i] = static_cast<std::uint8_t>(q & 0xff);
                payload[2 * i + 1] = static_cast<std::uint8_t>(q >> 8);
            }
            break;
        case ValueKind::Bit: throw ParameterError("gray volumes cannot be written with kind=bit");
    }
    write_pair(path, h, payload);
}

void write_volume(const BinaryVolume& vol, const std::filesystem::path& path) {
    write_pair(path, VolumeHeader{vol.dims(), ValueKind::Bit}, pack_bits(vol.data()));
}

std::uint8_t quantize_u8(float v) noexcept {
    const double c = std::clamp(static_cast<double>(v), 0.0, 1.0);
    return static_cast<std::uint8_t>(std::floor(c * 255.0 + 0.5));
}

GrayImage8 render_slice(const AnyVolume& any, int axis, std::size_t index) {
    return std::visit(
        [&](const auto& vol) -> GrayImage8 {
            const Dims& d = vol.dims();
            if (axis < 0 || axis > 2) throw DomainError("render axis must be 0, 1 or 2");
            if (index >= d[axis]) {
                throw DomainError("slice index " + std::to_string(index) + " out of range [0, " +
                                  std::to_string(d[axis]) + ") along axis " + std::to_string(axis));
            }
            const int ua = axis == 0 ? 1 : 0;
            const int va = axis == 2 ? 1 : 2;
            GrayImage8 img;
            img.width = d[ua];
            img.height = d[va];
            img.pixels.resize(img.width * img.height);
            std::array<std::size_t, 3> p{};
            p[axis] = index;
            for (std::size_t v = 0; v < img.height; ++v) {
                for (std::size_t u = 0; u < img.width; ++u) {
                    p[ua] = u;
                    p[va] = v;
                    const auto value = vol(p[0], p[1], p[2]);
                    if constexpr (std::is_same_v<std::decay_t<decltype(vol)>, BinaryVolume>) {
                        img.pixels[u + img.width * v] = value ? 255 : 0;
                    } else {
                        img.pixels[u + img.width * v] = quantize_u8(value);
                    }
                }
            }
            return img;
        },
        any);
}

GrayImage8 render_slice(const BinarySlice& slice) {
    GrayImage8 img{slice.width(), slice.height(), {}};
    img.pixels.reserve(slice.data().size());
    for (auto b : slice.data()) img.pixels.push_back(b ? 255 : 0);
    return img;
}

std::vector<std::uint8_t> encode_pgm(const GrayImage8& img) {
    const std::string head = "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
    std::vector<std::uint8_t> out(head.begin(), head.end());
    out.insert(out.end(), img.pixels.begin(), img.pixels.end());
    return out;
}

void write_pgm(const GrayImage8& img, const std::filesystem::path& path) {
    const auto bytes = encode_pgm(img);
    write_file(path, bytes.data(), bytes.size());
}

}  // namespace crackdet
