#pragma once

#include <filesystem>
#include <string>

#include "eulerperm/field.hpp"

namespace eulerperm {

/// Text header of a field snapshot file.  The header is a sequence of
/// "key value" lines closed by "end_header", followed by n^3 little-endian
/// float64 samples in x1-fastest order.
struct SnapshotHeader {
  int n = 0;
  double box_length = 0.0;
  std::string kind;   // e.g. "w1", "u", "omega"
  int component = 1;  // 1-based component index
  SymmetryFlag symmetry = SymmetryFlag::none;
  double time = 0.0;
};

struct Snapshot {
  SnapshotHeader header;
  ScalarField field;
};

void write_snapshot(const std::filesystem::path& path, const ScalarField& f, const SnapshotHeader& header);
/// Throws InvalidInput on malformed headers or truncated payloads.
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace eulerperm
