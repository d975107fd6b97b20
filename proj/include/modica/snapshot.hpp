#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "modica/grid.hpp"

namespace modica {

// PLMF field snapshot: magic "PLMF", u32 version = 1, u32 n, u64 cell count
// per axis (n of them), f64 spacing, f64 time, then the cell values as f64,
// all little-endian, values in row-major order.
struct SnapshotData {
    std::uint32_t dim = 1;
    std::vector<std::uint64_t> cells;
    double h = 0.0;
    double time = 0.0;
    std::vector<double> values;
};

void write_plmf(const std::string& path, const ScalarField& field, double time);
SnapshotData read_plmf(const std::string& path);

// Serialized bytes (used by the writer and by format tests).
std::vector<std::uint8_t> encode_plmf(const ScalarField& field, double time);
SnapshotData decode_plmf(const std::vector<std::uint8_t>& bytes);

}  // namespace modica
