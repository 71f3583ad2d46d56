#include "lbscan/cluster1d.hpp"

#include <stdexcept>

namespace lbscan {

namespace {

void shift_all(const std::vector<Refinement>& rs, std::int64_t& v) {
    for (const Refinement& r : rs) v = r.shift(v);
}

void append(std::vector<Refinement>& into, const std::vector<Refinement>& rs) {
    into.insert(into.end(), rs.begin(), rs.end());
}

}  // namespace

ExpSearchResult exponential_search(CellDomain& domain, std::int64_t a,
                                   std::int64_t b) {
    const CellStatusStore& store = domain.store();
    if (a < -1 || b <= a || b >= std::int64_t(store.size()))
        throw std::invalid_argument("bad exponential search range");

    ExpSearchResult out;
    std::int64_t cursor = a;  // everything in (a, cursor] is settled pointless
    std::int64_t step = 1;
    while (cursor < b) {
        const std::size_t nxt = std::size_t(cursor + 1);
        if (store.has_point(nxt) || store.status(nxt) == CellStatus::dense) {
            out.cell = nxt;
            return out;
        }
        if (store.status(nxt) == CellStatus::sparse) {
            // Proven empty, or probed sparse without point evidence; either
            // way it cannot be the cell we are after.
            ++cursor;
            continue;
        }
        // Jump ahead; fall back towards the frontier until the target is
        // still undecided (nxt itself always is).
        if (step > b - cursor) step = b - cursor;  // also stops overflow
        std::int64_t p = cursor + step;
        while (store.status(std::size_t(p)) != CellStatus::unknown) --p;
        const ProbeOutcome probe = domain.probe(std::size_t(p));
        shift_all(probe.refinements, cursor);
        shift_all(probe.refinements, b);
        append(out.refinements, probe.refinements);
        step *= 2;
    }
    return out;  // nothing in (a, b]
}

namespace {

// Shared binary-search step: resolves mid's status, reusing knowledge, and
// keeps lo/hi/mid consistent across refinements.
CellStatus resolve(CellDomain& domain, std::int64_t& lo, std::int64_t& hi,
                   std::int64_t& mid, std::vector<Refinement>& refs) {
    const CellStatus known = domain.store().status(std::size_t(mid));
    if (known != CellStatus::unknown) return known;
    const ProbeOutcome out = domain.probe(std::size_t(mid));
    for (const Refinement& r : out.refinements) {
        lo = r.shift(lo);
        hi = r.shift(hi);
    }
    mid = std::int64_t(out.cell);
    append(refs, out.refinements);
    return out.verdict;
}

}  // namespace

BoundaryResult boundary_search_left(CellDomain& domain, std::int64_t a,
                                    std::size_t q) {
    const CellStatusStore& store = domain.store();
    if (a < -1 || a >= std::int64_t(q))
        throw std::invalid_argument("anchor must lie left of the dense cell");
    if (store.status(q) != CellStatus::dense)
        throw std::invalid_argument("boundary search needs a dense cell");

    BoundaryResult out;
    std::int64_t lo = a, hi = std::int64_t(q);  // lo sparse, hi dense
    while (hi - lo > 1) {
        std::int64_t mid = lo + (hi - lo) / 2;
        const CellStatus st = resolve(domain, lo, hi, mid, out.refinements);
        if (st == CellStatus::dense)
            hi = mid;
        else
            lo = mid;
    }
    out.boundary = std::size_t(hi);
    return out;
}

BoundaryResult boundary_search_right(CellDomain& domain, std::size_t q,
                                     std::int64_t b) {
    const CellStatusStore& store = domain.store();
    if (b <= std::int64_t(q) || b > std::int64_t(store.size()))
        throw std::invalid_argument("anchor must lie right of the dense cell");
    if (store.status(q) != CellStatus::dense)
        throw std::invalid_argument("boundary search needs a dense cell");

    BoundaryResult out;
    std::int64_t lo = std::int64_t(q), hi = b;  // lo dense, hi sparse
    while (hi - lo > 1) {
        std::int64_t mid = lo + (hi - lo) / 2;
        const CellStatus st = resolve(domain, lo, hi, mid, out.refinements);
        if (st == CellStatus::dense)
            lo = mid;
        else
            hi = mid;
    }
    out.boundary = std::size_t(lo);
    return out;
}

CSampleResult c_sample_test(CellDomain& domain, std::size_t lo, std::size_t hi,
                            std::size_t c, Rng& rng) {
    const CellStatusStore& store = domain.store();
    if (lo > hi || hi >= store.size())
        throw std::invalid_argument("bad sample range");

    CSampleResult out;
    std::size_t probes = 0;
    while (true) {
        // Knowledge first: any sparse cell inside the range fails it.
        std::vector<std::size_t> pool;
        for (std::size_t i = lo; i <= hi; ++i) {
            if (store.status(i) == CellStatus::sparse) {
                out.sparse_cell = i;
                return out;
            }
            if (store.status(i) == CellStatus::unknown) pool.push_back(i);
        }
        if (pool.empty() || probes == c) return out;  // all dense

        std::size_t target = pool[uniform_index(rng, pool.size())];
        const ProbeOutcome probe = domain.probe(target);
        ++probes;
        for (const Refinement& r : probe.refinements) {
            lo = r.shift(lo);
            hi = r.shift(hi);
        }
        append(out.refinements, probe.refinements);
        if (probe.verdict == CellStatus::sparse) {
            out.sparse_cell = probe.cell;
            return out;
        }
    }
}

namespace {

// Keeps the driver's long-lived indices aligned with the 1D axis while
// probes inside helper calls refine cells. Registered for the lifetime of
// one hdbscan_1d run.
struct DriverState {
    std::vector<DenseSegment> segments;
    std::int64_t a = -1, b = 0;
    std::int64_t q = -1, l = -1, r = -1;  // -1: not currently held
    bool in_discovery = false;

    void shift(const Refinement& ref) {
        for (DenseSegment& s : segments) {
            s.lo = ref.shift(s.lo);
            s.hi = ref.shift(s.hi);
        }
        if (!in_discovery) return;
        a = ref.shift(a);
        b = ref.shift(b);
        if (q >= 0) q = ref.shift(q);
        if (l >= 0) l = ref.shift(l);
        if (r >= 0) r = ref.shift(r);
    }
};

struct ListenerGuard {
    CellDomain& domain;
    std::size_t token;

    ~ListenerGuard() { domain.drop_listener(token); }
};

}  // namespace

std::vector<DenseSegment> hdbscan_1d(CellDomain& domain, std::size_t c,
                                     Rng& rng) {
    CellStatusStore& store = domain.store();
    DriverState state;
    const std::size_t token =
        domain.on_refinement([&state](const Refinement& r) { state.shift(r); });
    ListenerGuard guard{domain, token};

    auto record = [&](std::size_t lo, std::size_t hi, bool provisional) {
        for (std::size_t i = lo; i <= hi; ++i)
            if (store.status(i) == CellStatus::unknown)
                store.set_status(i, CellStatus::dense);
        state.segments.push_back({lo, hi, provisional});
    };

    try {
        while (auto pick = store.random_unknown(rng)) {
            state.in_discovery = false;
            state.q = state.l = state.r = -1;

            const ProbeOutcome first = domain.probe(*pick);
            if (first.verdict != CellStatus::dense) continue;

            state.in_discovery = true;
            state.q = std::int64_t(first.cell);
            state.a = store.nearest_sparse_left(std::size_t(state.q));
            state.b = store.nearest_sparse_right(std::size_t(state.q));

            while (true) {
                state.l = -1;
                state.r = -1;
                // Helper results already reflect any refinement their own
                // probes caused; the listener kept a/b/q aligned too.
                const auto left =
                    boundary_search_left(domain, state.a, std::size_t(state.q));
                state.l = std::int64_t(left.boundary);
                const auto right = boundary_search_right(
                    domain, std::size_t(state.q), state.b);
                state.r = std::int64_t(right.boundary);

                const auto sample =
                    c_sample_test(domain, std::size_t(state.l),
                                  std::size_t(state.r), c, rng);
                if (!sample.sparse_cell) break;
                const std::int64_t d = std::int64_t(*sample.sparse_cell);
                if (d < state.q)
                    state.a = d;
                else
                    state.b = d;
            }
            record(std::size_t(state.l), std::size_t(state.r), false);
            state.in_discovery = false;
        }
    } catch (const BudgetExhausted&) {
        // Keep whatever part of the current discovery is trustworthy: both
        // boundaries if found, else fall back on the probed dense cell.
        if (state.in_discovery && state.q >= 0) {
            const std::size_t lo =
                std::size_t(state.l >= 0 ? state.l : state.q);
            const std::size_t hi =
                std::size_t(state.r >= 0 ? state.r : state.q);
            record(lo, hi, true);
        }
    }

    // The status map, not the discovery log, is authoritative: boundary
    // probes that wandered into a neighboring run leave dense marks no
    // discovery ever claimed. Joining adjacent dense cells recovers them
    // and keeps the output sorted and disjoint by construction.
    std::vector<DenseSegment> out;
    const std::size_t n = store.size();
    std::size_t i = 0;
    while (i < n) {
        if (store.status(i) != CellStatus::dense) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < n && store.status(j + 1) == CellStatus::dense) ++j;
        // A run is settled only once both borders are known sparse and no
        // interrupted discovery stamped part of it.
        bool provisional =
            (i > 0 && store.status(i - 1) == CellStatus::unknown) ||
            (j + 1 < n && store.status(j + 1) == CellStatus::unknown);
        for (const DenseSegment& s : state.segments)
            if (s.provisional && s.lo <= j && i <= s.hi) provisional = true;
        out.push_back({i, j, provisional});
        i = j + 1;
    }
    return out;
}

}  // namespace lbscan
