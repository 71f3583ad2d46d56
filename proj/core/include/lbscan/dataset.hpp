#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "lbscan/geometry.hpp"

namespace lbscan {

using PointId = std::uint32_t;
using Label = std::int32_t;

// Label value for points that belong to no cluster.
constexpr Label kNoise = -1;

enum class FileFormat { csv, tsv };

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Immutable 2D point database. Points are identified by their position in the
// file (0-based). An optional third column carries ground-truth labels.
class Dataset {
  public:
    Dataset() = default;
    explicit Dataset(std::vector<Point2D> points,
                     std::vector<Label> truth = {});

    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }
    Point2D point(PointId id) const { return points_[id]; }
    const std::vector<Point2D>& points() const { return points_; }

    bool has_truth() const { return !truth_.empty(); }
    const std::vector<Label>& truth() const { return truth_; }

    // Smallest closed box containing every point.
    BoundingBox bounds() const;

  private:
    std::vector<Point2D> points_;
    std::vector<Label> truth_;
};

// Reads "x,y" or "x,y,label" rows (tab / whitespace separated for tsv).
// Blank lines are skipped; any malformed row aborts with its line number.
Dataset load_dataset(std::istream& in, FileFormat format);
Dataset load_dataset_file(const std::string& path, FileFormat format);

// Picks csv for ".csv", tsv otherwise.
FileFormat format_for_path(const std::string& path);

void save_dataset_file(const Dataset& ds, const std::string& path);

// "id,label" rows, one per point, in id order.
void save_labels_file(const std::vector<Label>& labels,
                      const std::string& path);
std::vector<Label> load_labels_file(const std::string& path);

}  // namespace lbscan
