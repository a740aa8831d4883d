#pragma once

#include <string>

#include "wpfp/grid.hpp"
#include "wpfp/observables.hpp"

namespace wpfp {

// Snapshot file: ASCII header "WPFP1 M N a b c d t\n" followed by M*N
// little-endian IEEE float64 payload, row-major with x-major rows.
void write_snapshot(const WignerField& w, const std::string& path);
WignerField read_snapshot(const std::string& path);

// CSV with header "t,N,J,E", 17 significant digits.
void write_series(const ObservableSeries& series, const std::string& path);

// Optional plotting export: "x,xi,W" triples.
void write_heatmap(const WignerField& w, const std::string& path);

} // namespace wpfp
