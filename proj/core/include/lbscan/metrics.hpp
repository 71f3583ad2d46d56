#pragma once

#include <cstdint>
#include <span>

#include "lbscan/dataset.hpp"

namespace lbscan {

// Counts over the n(n-1)/2 point pairs of two labelings of the same points:
//   a  same cluster in both
//   b  different clusters in both
//   c  same in the first, different in the second
//   d  different in the first, same in the second
// Noise is treated as one ordinary cluster, so two noise points count as
// "same cluster".
struct PairCounts {
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    std::uint64_t c = 0;
    std::uint64_t d = 0;

    std::uint64_t total() const { return a + b + c + d; }
};

// Exact pair counts via a contingency table; requires equal lengths and at
// least two points.
PairCounts pair_counts(std::span<const Label> p, std::span<const Label> q);

// Rand (a+b)/total, Jaccard a/(a+c+d), Fowlkes-Mallows a/sqrt((a+c)(a+d)).
// Jaccard and FM are defined as 0 when their denominator vanishes; Rand of an
// empty pair set is 1 (vacuously identical partitions).
double rand_index(const PairCounts& pc);
double jaccard_index(const PairCounts& pc);
double fowlkes_mallows_index(const PairCounts& pc);

}  // namespace lbscan
