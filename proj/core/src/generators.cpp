#include "lbscan/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "lbscan/rng.hpp"

namespace lbscan {

namespace {

constexpr double kWorld = 1000.0;
constexpr double kPi = std::numbers::pi;

struct Sink {
    std::vector<Point2D> pts;
    std::vector<Label> truth;

    void add(Point2D p, Label label) {
        pts.push_back(p);
        truth.push_back(label);
    }
};

// Uniform in area over the annular arc r in [r_lo, r_hi], theta in
// [th_lo, th_hi].
Point2D arc_point(Rng& rng, Point2D c, double r_lo, double r_hi, double th_lo,
                  double th_hi) {
    const double u = uniform_double(rng, 0.0, 1.0);
    const double r = std::sqrt(r_lo * r_lo + u * (r_hi * r_hi - r_lo * r_lo));
    const double th = uniform_double(rng, th_lo, th_hi);
    return {c.x + r * std::cos(th), c.y + r * std::sin(th)};
}

// Largest remainder split of `total` by weight; deterministic tie-break by
// position.
std::vector<std::size_t> split_counts(std::size_t total,
                                      std::vector<double> weights) {
    double sum = 0.0;
    for (double w : weights) sum += w;
    std::vector<std::size_t> out(weights.size(), 0);
    std::vector<std::pair<double, std::size_t>> frac;
    std::size_t used = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const double exact = double(total) * weights[i] / sum;
        out[i] = std::size_t(exact);
        used += out[i];
        frac.emplace_back(exact - double(out[i]), i);
    }
    std::sort(frac.begin(), frac.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    for (std::size_t j = 0; used < total; ++j, ++used) ++out[frac[j].second];
    return out;
}

void gen_blobs(std::size_t body, std::size_t clusters, Rng& rng, Sink& sink) {
    const double sigma = 12.0;
    const Point2D mid{500.0, 500.0};
    const auto counts =
        split_counts(body, std::vector<double>(clusters, 1.0));
    for (std::size_t c = 0; c < clusters; ++c) {
        Point2D center = mid;
        if (clusters > 1) {
            const double th = 2.0 * kPi * double(c) / double(clusters);
            center = {mid.x + 300.0 * std::cos(th),
                      mid.y + 300.0 * std::sin(th)};
        }
        for (std::size_t i = 0; i < counts[c]; ++i)
            sink.add({normal_double(rng, center.x, sigma),
                      normal_double(rng, center.y, sigma)},
                     Label(c));
    }
}

void gen_moons(std::size_t body, Rng& rng, Sink& sink) {
    const double r = 260.0, sx = 370.0, sy = 400.0, sigma = 14.0;
    const auto counts = split_counts(body, {1.0, 1.0});
    for (std::size_t i = 0; i < counts[0]; ++i) {
        const double t = uniform_double(rng, 0.0, kPi);
        sink.add({normal_double(rng, sx + r * std::cos(t), sigma),
                  normal_double(rng, sy + r * std::sin(t), sigma)},
                 0);
    }
    for (std::size_t i = 0; i < counts[1]; ++i) {
        const double t = uniform_double(rng, 0.0, kPi);
        sink.add({normal_double(rng, sx + r - r * std::cos(t), sigma),
                  normal_double(rng, sy + r / 2.0 - r * std::sin(t), sigma)},
                 1);
    }
}

void gen_rings(std::size_t body, Rng& rng, Sink& sink) {
    const Point2D c{500.0, 500.0};
    const auto counts = split_counts(body, {0.32, 0.68});
    for (std::size_t i = 0; i < counts[0]; ++i)
        sink.add(arc_point(rng, c, 130.0, 165.0, 0.0, 2.0 * kPi), 0);
    for (std::size_t i = 0; i < counts[1]; ++i)
        sink.add(arc_point(rng, c, 290.0, 325.0, 0.0, 2.0 * kPi), 1);
}

// Scene extent of the noisy kind; shapes are laid out so a 20-wide grid
// over [0, kScene]^2 sees thick, well-separated runs of dense cells.
constexpr double kScene = 640.0;

void gen_noisy(std::size_t body, Rng& rng, Sink& sink) {
    const auto counts =
        split_counts(body, {0.16, 0.05, 0.17, 0.22, 0.27, 0.13});

    const auto deg = [](double d) { return d * kPi / 180.0; };

    // fat band bent around `c`, radii [r0, r1], mouth of half-width `gap`
    // degrees centered on direction `dir` degrees
    const auto bent = [&rng, &deg](Point2D c, double r0, double r1, double dir,
                                   double gap) {
        return arc_point(rng, c, r0, r1, deg(dir + gap),
                         deg(dir - gap + 360.0));
    };

    // disk of radius `rad` with a 90-degree bay bitten out beyond `hub`,
    // opening towards direction `dir` degrees
    const auto bay_disk = [&rng, &deg](Point2D c, double rad, double hub,
                                       double dir) {
        while (true) {
            const Point2D p = arc_point(rng, c, 0.0, rad, 0.0, 2.0 * kPi);
            const double dx = p.x - c.x, dy = p.y - c.y;
            double off = std::atan2(dy, dx) - deg(dir);
            while (off > kPi) off -= 2.0 * kPi;
            while (off < -kPi) off += 2.0 * kPi;
            const bool in_bay =
                dx * dx + dy * dy > hub * hub && std::abs(off) < kPi / 4.0;
            if (!in_bay) return p;
        }
    };

    // fat annulus, north-west
    for (std::size_t i = 0; i < counts[0]; ++i)
        sink.add(bent({115.0, 120.0}, 42.0, 76.0, 0.0, 0.0), 0);
    // small disk with a bay opening south, mid-east
    for (std::size_t i = 0; i < counts[1]; ++i)
        sink.add(bay_disk({590.0, 330.0}, 40.0, 12.0, -90.0), 1);
    // fat crescent with its mouth opening east, north
    for (std::size_t i = 0; i < counts[2]; ++i)
        sink.add(bent({480.0, 120.0}, 18.0, 75.0, 0.0, 40.0), 2);
    // big disk with a bay opening west, south-west
    for (std::size_t i = 0; i < counts[3]; ++i)
        sink.add(bay_disk({138.0, 544.0}, 81.0, 20.0, 180.0), 3);
    // bigger disk with a bay opening east, south-east
    for (std::size_t i = 0; i < counts[4]; ++i)
        sink.add(bay_disk({475.0, 545.0}, 93.0, 20.0, 0.0), 4);
    // disk with a bay opening east, center
    for (std::size_t i = 0; i < counts[5]; ++i)
        sink.add(bay_disk({290.0, 320.0}, 60.0, 18.0, 0.0), 5);
}

}  // namespace

std::string to_string(DatasetKind kind) {
    switch (kind) {
        case DatasetKind::blobs: return "blobs";
        case DatasetKind::moons: return "moons";
        case DatasetKind::rings: return "rings";
        case DatasetKind::noisy: return "noisy";
    }
    throw std::invalid_argument("bad dataset kind");
}

DatasetKind dataset_kind_from_string(const std::string& s) {
    if (s == "blobs") return DatasetKind::blobs;
    if (s == "moons") return DatasetKind::moons;
    if (s == "rings") return DatasetKind::rings;
    if (s == "noisy") return DatasetKind::noisy;
    throw std::invalid_argument("unknown dataset kind: " + s);
}

Dataset generate_dataset(DatasetKind kind, const GenParams& params) {
    if (params.n == 0) throw std::invalid_argument("n must be positive");
    if (kind == DatasetKind::blobs && params.clusters == 0)
        throw std::invalid_argument("clusters must be positive");
    double f = params.noise_fraction;
    if (f < 0.0) f = kind == DatasetKind::noisy ? 0.12 : 0.0;
    if (f > 0.95) throw std::invalid_argument("noise_fraction too large");

    Rng rng(params.seed);
    const auto noise = std::size_t(std::llround(f * double(params.n)));
    const std::size_t body = params.n - noise;

    Sink sink;
    sink.pts.reserve(params.n);
    sink.truth.reserve(params.n);
    switch (kind) {
        case DatasetKind::blobs: gen_blobs(body, params.clusters, rng, sink); break;
        case DatasetKind::moons: gen_moons(body, rng, sink); break;
        case DatasetKind::rings: gen_rings(body, rng, sink); break;
        case DatasetKind::noisy: gen_noisy(body, rng, sink); break;
    }
    const double extent = kind == DatasetKind::noisy ? kScene : kWorld;
    for (std::size_t i = 0; i < noise; ++i)
        sink.add({uniform_double(rng, 0.0, extent),
                  uniform_double(rng, 0.0, extent)},
                 kNoise);
    return Dataset(std::move(sink.pts), std::move(sink.truth));
}

}  // namespace lbscan
