#pragma once

#include "qsplit/grid.hpp"

#include <string>

namespace qsplit {

/// Field snapshot file: magic "QSPL", version u32, n u32, N_1..N_n u32,
/// R_1..R_n f64, time f64, per-axis state u8, then interleaved (re, im) f64
/// values in storage order. All multi-byte values little-endian.
struct Snapshot {
  Field field;
  double time = 0;
};

void write_snapshot(const std::string& path, const Field& f, double time);
Snapshot read_snapshot(const std::string& path);

}  // namespace qsplit
