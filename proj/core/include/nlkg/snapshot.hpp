#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nlkg/box.hpp"
#include "nlkg/radial.hpp"

namespace nlkg {

// Field snapshot file, format "NLKG1":
//   bytes 0-4   magic "NLKG1"
//   byte  5     grid kind (0 radial, 1 box)
//   bytes 6-9   d, little-endian u32
//   bytes 10-17 point count (radial: nodes; box: points per side), LE u64
//   bytes 18-25 extent (radial: r_max; box: side length L), LE f64
//   then the samples as LE f64 in storage order (radial: by node;
//   box: row-major, axis 0 slowest)
// Round trips are bit exact.
struct Snapshot {
  enum class Kind : std::uint8_t { Radial = 0, Box = 1 };
  Kind kind = Kind::Radial;
  int d = 1;
  std::uint64_t n = 0;  // nodes (radial) or points per side (box)
  double extent = 0.0;
  std::vector<double> values;
};

void write_snapshot(const std::string& path, const Snapshot& s);
Snapshot read_snapshot(const std::string& path);

Snapshot make_radial_snapshot(const RadialGrid& g,
                              const std::vector<double>& values);
Snapshot make_box_snapshot(const BoxGrid& g, const std::vector<double>& values);

RadialGrid radial_grid_of(const Snapshot& s);
BoxGrid box_grid_of(const Snapshot& s);

}  // namespace nlkg
