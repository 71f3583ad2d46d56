#pragma once

#include <cstdint>
#include <string>

#include "lbscan/dataset.hpp"

namespace lbscan {

// Synthetic fixtures with geometric ground-truth labels. All kinds live in a
// [0, 1000] x [0, 1000] world:
//  - blobs: `clusters` isotropic Gaussian blobs on a circle (sigma 12)
//  - moons: two interleaved crescents
//  - rings: two concentric annuli (non-convex sanity fixture)
//  - noisy: six non-convex clusters (annulus, blob inside its hole, crescent,
//    serpentine stripe, spiral, disk with a bay) plus uniform background
enum class DatasetKind { blobs, moons, rings, noisy };

std::string to_string(DatasetKind kind);
DatasetKind dataset_kind_from_string(const std::string& s);

struct GenParams {
    std::size_t n = 1000;          // total rows, background noise included
    std::size_t clusters = 3;      // blobs only
    double noise_fraction = -1.0;  // < 0: kind default (0.12 noisy, else 0)
    std::uint64_t seed = 1;
};

// Same params -> identical dataset, independent of platform.
Dataset generate_dataset(DatasetKind kind, const GenParams& params);

}  // namespace lbscan
