#include "lbscan/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace lbscan {

namespace {

// Remaps arbitrary labels (noise included) to 0..m-1.
std::vector<std::uint32_t> normalize(std::span<const Label> labels,
                                     std::uint32_t& count) {
    std::unordered_map<Label, std::uint32_t> ids;
    std::vector<std::uint32_t> out;
    out.reserve(labels.size());
    for (Label l : labels) {
        auto [it, inserted] = ids.emplace(l, std::uint32_t(ids.size()));
        out.push_back(it->second);
    }
    count = std::uint32_t(ids.size());
    return out;
}

std::uint64_t choose2(std::uint64_t n) { return n * (n - 1) / 2; }

}  // namespace

PairCounts pair_counts(std::span<const Label> p, std::span<const Label> q) {
    if (p.size() != q.size())
        throw std::invalid_argument("labelings differ in length");
    if (p.size() < 2)
        throw std::invalid_argument("pair counts need at least two points");

    std::uint32_t np = 0, nq = 0;
    const auto pn = normalize(p, np);
    const auto qn = normalize(q, nq);

    // Contingency table n_ij plus marginals.
    std::vector<std::uint64_t> cell(std::size_t(np) * nq, 0);
    std::vector<std::uint64_t> rowsum(np, 0), colsum(nq, 0);
    for (std::size_t i = 0; i < pn.size(); ++i) {
        ++cell[std::size_t(pn[i]) * nq + qn[i]];
        ++rowsum[pn[i]];
        ++colsum[qn[i]];
    }

    std::uint64_t same_both = 0;
    for (std::uint64_t v : cell) same_both += choose2(v);
    std::uint64_t same_p = 0;
    for (std::uint64_t v : rowsum) same_p += choose2(v);
    std::uint64_t same_q = 0;
    for (std::uint64_t v : colsum) same_q += choose2(v);

    PairCounts pc;
    pc.a = same_both;
    pc.c = same_p - same_both;
    pc.d = same_q - same_both;
    pc.b = choose2(p.size()) - pc.a - pc.c - pc.d;
    return pc;
}

double rand_index(const PairCounts& pc) {
    const std::uint64_t t = pc.total();
    if (t == 0) return 1.0;
    return double(pc.a + pc.b) / double(t);
}

double jaccard_index(const PairCounts& pc) {
    const std::uint64_t denom = pc.a + pc.c + pc.d;
    if (denom == 0) return 0.0;
    return double(pc.a) / double(denom);
}

double fowlkes_mallows_index(const PairCounts& pc) {
    // Product form: counts stay below 2^53, so a perfect match divides
    // exactly to 1.0 instead of sqrt(a)*sqrt(a) rounding noise.
    const double denom = std::sqrt(double(pc.a + pc.c) * double(pc.a + pc.d));
    if (denom == 0.0) return 0.0;
    return double(pc.a) / denom;
}

}  // namespace lbscan
