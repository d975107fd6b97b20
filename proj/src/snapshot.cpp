#include "modica/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace modica {

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
    put_u64(out, std::bit_cast<std::uint64_t>(v));
}

struct Cursor {
    const std::vector<std::uint8_t>& data;
    std::size_t pos = 0;
    std::uint8_t byte() {
        if (pos >= data.size()) throw std::runtime_error("truncated PLMF data");
        return data[pos++];
    }
    std::uint32_t u32() {
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(byte()) << (8 * i);
        return v;
    }
    std::uint64_t u64() {
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(byte()) << (8 * i);
        return v;
    }
    double f64() { return std::bit_cast<double>(u64()); }
};

}  // namespace

std::vector<std::uint8_t> encode_plmf(const ScalarField& field, double time) {
    std::vector<std::uint8_t> out;
    out.reserve(4 + 4 + 4 + 8 * (field.grid.dim + 2) + 8 * field.v.size());
    for (char c : {'P', 'L', 'M', 'F'}) out.push_back(static_cast<std::uint8_t>(c));
    put_u32(out, 1u);
    put_u32(out, static_cast<std::uint32_t>(field.grid.dim));
    put_u64(out, static_cast<std::uint64_t>(field.grid.nx()));
    if (field.grid.dim == 2) put_u64(out, static_cast<std::uint64_t>(field.grid.ny()));
    put_f64(out, field.grid.h);
    put_f64(out, time);
    for (double v : field.v) put_f64(out, v);
    return out;
}

SnapshotData decode_plmf(const std::vector<std::uint8_t>& bytes) {
    Cursor c{bytes};
    if (c.byte() != 'P' || c.byte() != 'L' || c.byte() != 'M' || c.byte() != 'F')
        throw std::runtime_error("not a PLMF file");
    const std::uint32_t version = c.u32();
    if (version != 1) throw std::runtime_error("unsupported PLMF version");
    SnapshotData s;
    s.dim = c.u32();
    if (s.dim != 1 && s.dim != 2) throw std::runtime_error("PLMF dimension must be 1 or 2");
    std::uint64_t total = 1;
    for (std::uint32_t a = 0; a < s.dim; ++a) {
        s.cells.push_back(c.u64());
        total *= s.cells.back();
    }
    s.h = c.f64();
    s.time = c.f64();
    s.values.resize(total);
    for (std::uint64_t i = 0; i < total; ++i) s.values[i] = c.f64();
    return s;
}

void write_plmf(const std::string& path, const ScalarField& field, double time) {
    const std::vector<std::uint8_t> bytes = encode_plmf(field, time);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("cannot write " + path);
}

SnapshotData read_plmf(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return decode_plmf(bytes);
}

}  // namespace modica
