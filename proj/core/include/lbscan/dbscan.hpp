#pragma once

#include <vector>

#include "lbscan/dataset.hpp"

namespace lbscan {

struct DbscanParams {
    double eps = 0.0;
    std::size_t min_pts = 0;
};

// A point is core when at least min_pts points (itself included) lie within
// distance eps of it.
bool is_core(const Dataset& ds, PointId id, const DbscanParams& params);

// Full-access reference clustering used as ground truth. Deterministic:
//  - core points within eps of each other share a cluster,
//  - a border point joins the cluster of the lowest-id core within eps,
//  - cluster ids are 0..h-1 in order of each cluster's lowest member id,
//  - everything else is noise (-1).
std::vector<Label> dbscan(const std::vector<Point2D>& points,
                          const DbscanParams& params);
std::vector<Label> dbscan(const Dataset& ds, const DbscanParams& params);

}  // namespace lbscan
