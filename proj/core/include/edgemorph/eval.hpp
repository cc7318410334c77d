#pragma once

#include <optional>
#include <string>
#include <vector>

#include "edgemorph/edges.hpp"
#include "edgemorph/io.hpp"
#include "edgemorph/types.hpp"

namespace edgemorph {

enum class Crop { none, garg };

/// Half-open pixel rectangle [x0, x1) x [y0, y1).
struct CropRect {
    int x0 = 0;
    int y0 = 0;
    int x1 = 0;
    int y1 = 0;

    bool contains(int x, int y) const { return x >= x0 && x < x1 && y >= y0 && y < y1; }
};

/// The standard interior evaluation window with fractional bounds
/// rows [0.40810811 H, 0.99189189 H), cols [0.03594771 W, 0.96405229 W).
CropRect garg_crop(int width, int height);

CropRect crop_rect(Crop crop, int width, int height);

/// The seven depth metrics over valid pixels: in-crop, gt in (0, cap],
/// optionally restricted to mask-true pixels; predictions clamp to
/// [1e-3, cap]. Both maps must carry the depth_m tag. Throws when no pixel
/// qualifies.
MetricRow depth_metrics(const ScalarMap& pred, const ScalarMap& gt, double cap, Crop crop,
                        const BinaryMask* mask = nullptr, const std::string& name = "");

struct RegionSplit {
    double near_band_px = 3.0;
};

/// Rows "O" (off edge), "W" (whole), "N" (near edge: within near_band_px of
/// a segmentation edge). Empty regions come back absent rather than as an
/// error. With no segmentation edges, N is absent and O equals W.
struct RegionMetrics {
    std::optional<MetricRow> off_edge;
    std::optional<MetricRow> whole;
    std::optional<MetricRow> near_edge;
};

RegionMetrics region_split_metrics(const ScalarMap& pred, const ScalarMap& gt,
                                   const EdgeSet& seg_edges, const RegionSplit& split,
                                   double cap, Crop crop);

/// delta < 1.25 accuracy bucketed by rounded signed distance to the nearest
/// segmentation edge: negative on the background side of the mask, positive
/// on the foreground side. Bins with no pixels are omitted.
struct DeltaProfileBin {
    int offset = 0;
    std::size_t count = 0;
    double delta1 = 0.0;
};

std::vector<DeltaProfileBin> delta_profile(const ScalarMap& pred, const ScalarMap& gt,
                                           const EdgeSet& seg_edges, const BinaryMask& seg,
                                           int min_offset, int max_offset, double cap,
                                           Crop crop);

/// Number of pixels whose gradient magnitude exceeds k1; per-image border
/// sharpness proxy (lower is thinner).
long edge_count(const ScalarMap& disp, double k1);

/// median(gt) / median(pred) over valid pixels, for optional scale
/// alignment of scale-ambiguous predictions.
double median_scale_factor(const ScalarMap& pred, const ScalarMap& gt, double cap, Crop crop);

/// Returns a copy of the map with every value multiplied by factor.
ScalarMap scale_map(const ScalarMap& map, double factor);

}  // namespace edgemorph
