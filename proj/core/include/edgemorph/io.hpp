#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "edgemorph/types.hpp"

namespace edgemorph {

/// One line of the depth-metric table: four error columns and the three
/// delta accuracy columns (fractions under thresholds 1.25, 1.25^2, 1.25^3).
struct MetricRow {
    std::string name;
    double abs_rel = 0.0;
    double sq_rel = 0.0;
    double rmse = 0.0;
    double rmse_log = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
    double d3 = 0.0;
};

/// Grayscale PFM ("Pf") reader. Rows are normalized to top-down in memory;
/// byte order follows the sign of the scale line. Values round-trip
/// bit-exactly. The unit tag is the caller's to assign.
ScalarMap read_pfm(const std::filesystem::path& path, Unit unit = Unit::unitless);

/// Writes grayscale PFM, little-endian (scale -1.0), bottom-up rows per the
/// format convention.
void write_pfm(const ScalarMap& map, const std::filesystem::path& path);

/// Binary PGM ("P5", maxval <= 255). Any pixel > 0 maps to true.
BinaryMask read_mask_pgm(const std::filesystem::path& path);

/// Writes a P5 PGM with 255 for set bits and 0 otherwise.
void write_mask_pgm(const BinaryMask& mask, const std::filesystem::path& path);

/// CSV with header "name,abs_rel,sq_rel,rmse,rmse_log,d125,d125_2,d125_3",
/// one row per entry in input order, values at 6 significant digits.
void write_metrics_csv(const std::vector<MetricRow>& rows, const std::filesystem::path& path);

}  // namespace edgemorph
