#include "lorentz/loci.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>

#include "lorentz/parallel.hpp"

namespace lorentz {

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

double bundle_field(const FormBundle& b, LocusField field) {
    switch (field) {
        case LocusField::Delta: return b.delta;
        case LocusField::LplDisc: return b.lpl_disc;
        case LocusField::Kbar: return b.kbar;
    }
    return kNaN;
}

// Edge between two adjacent samples; horizontal edges vary in u.
struct EdgeId {
    std::int64_t key;
    bool operator==(const EdgeId& o) const { return key == o.key; }
};

EdgeId h_edge(int i, int k, int nv) { return {(static_cast<std::int64_t>(i) * nv + k) * 2}; }
EdgeId v_edge(int i, int k, int nv) { return {(static_cast<std::int64_t>(i) * nv + k) * 2 + 1}; }

struct EdgeHash {
    std::size_t operator()(const EdgeId& e) const { return std::hash<std::int64_t>()(e.key); }
};

struct Segment {
    EdgeId a, b;
};

// Root of the field along the straight parameter segment pa-pb, starting
// from a sign change. Illinois false position: the stale endpoint's value
// is halved, which keeps the bracket shrinking superlinearly.
std::pair<double, double> refine_crossing(
    const ScalarGrid& grid, std::pair<double, double> pa, std::pair<double, double> pb,
    double fa, double fb, double tol) {
    double lo = 0.0, hi = 1.0, flo = fa, fhi = fb;
    auto at = [&](double t) {
        return std::make_pair(pa.first + t * (pb.first - pa.first),
                              pa.second + t * (pb.second - pa.second));
    };
    double t = flo / (flo - fhi);  // linear interpolation
    if (!grid.field) return at(t);
    int side = 0;
    for (int it = 0; it < 20; ++it) {
        const auto p = at(t);
        const double f = grid.field(p.first, p.second);
        if (!(f == f)) break;  // drifted into a masked spot; keep the estimate
        if (std::fabs(f) <= tol) return p;
        if ((f > 0) == (flo > 0)) {
            lo = t;
            flo = f;
            if (side == -1) fhi *= 0.5;
            side = -1;
        } else {
            hi = t;
            fhi = f;
            if (side == +1) flo *= 0.5;
            side = +1;
        }
        t = (lo * fhi - hi * flo) / (fhi - flo);
        if (!(t > lo && t < hi)) t = 0.5 * (lo + hi);
    }
    return at(t);
}

}  // namespace

double ScalarGrid::max_abs() const {
    double m = 0.0;
    for (double v : values)
        if (v == v) m = std::max(m, std::fabs(v));
    return m;
}

ScalarGrid grid_sample(const SurfacePatch& patch, LocusField field, int nu, int nv) {
    ScalarGrid g;
    g.nu = nu;
    g.nv = nv;
    g.domain = patch.domain();
    g.values.assign(static_cast<std::size_t>(nu) * nv, kNaN);
    g.field = [patch, field](double u, double v) -> double {
        if (patch.masked_at(u, v)) return kNaN;
        try {
            return bundle_field(form_bundle(patch.jet2(u, v)), field);
        } catch (const Error&) {
            return kNaN;
        }
    };
    auto* vals = g.values.data();
    const ScalarGrid& gc = g;
    parallel_for(static_cast<std::size_t>(nu), [&](std::size_t i) {
        const double u = gc.u_at(static_cast<int>(i));
        for (int k = 0; k < nv; ++k)
            vals[i * nv + k] = gc.field(u, gc.v_at(k));
    });
    return g;
}

std::vector<LocusCurve> extract_zero_set(const ScalarGrid& grid, double refine_tol,
                                         LocusKind kind) {
    const int nu = grid.nu, nv = grid.nv;
    std::unordered_map<EdgeId, std::pair<double, double>, EdgeHash> points;
    std::vector<Segment> segments;

    auto corner = [&](int i, int k) {
        return std::make_pair(grid.u_at(i), grid.v_at(k));
    };
    auto crossing = [&](EdgeId e, int i0, int k0, int i1, int k1) {
        auto it = points.find(e);
        if (it != points.end()) return;
        const double fa = grid.value(i0, k0), fb = grid.value(i1, k1);
        points.emplace(e, refine_crossing(grid, corner(i0, k0), corner(i1, k1), fa, fb,
                                          refine_tol));
    };

    for (int i = 0; i + 1 < nu; ++i) {
        for (int k = 0; k + 1 < nv; ++k) {
            if (grid.masked(i, k) || grid.masked(i + 1, k) || grid.masked(i, k + 1) ||
                grid.masked(i + 1, k + 1))
                continue;
            const bool s00 = grid.value(i, k) > 0;
            const bool s10 = grid.value(i + 1, k) > 0;
            const bool s11 = grid.value(i + 1, k + 1) > 0;
            const bool s01 = grid.value(i, k + 1) > 0;
            const int caseId = (s00 ? 1 : 0) | (s10 ? 2 : 0) | (s11 ? 4 : 0) | (s01 ? 8 : 0);
            if (caseId == 0 || caseId == 15) continue;

            const EdgeId B = h_edge(i, k, nv), T = h_edge(i, k + 1, nv);
            const EdgeId L = v_edge(i, k, nv), R = v_edge(i + 1, k, nv);
            auto emit = [&](EdgeId a, EdgeId b) {
                if (a.key == B.key || b.key == B.key) crossing(B, i, k, i + 1, k);
                if (a.key == T.key || b.key == T.key) crossing(T, i, k + 1, i + 1, k + 1);
                if (a.key == L.key || b.key == L.key) crossing(L, i, k, i, k + 1);
                if (a.key == R.key || b.key == R.key) crossing(R, i + 1, k, i + 1, k + 1);
                segments.push_back({a, b});
            };

            switch (caseId) {
                case 1: case 14: emit(L, B); break;
                case 2: case 13: emit(B, R); break;
                case 4: case 11: emit(R, T); break;
                case 8: case 7:  emit(T, L); break;
                case 3: case 12: emit(L, R); break;
                case 6: case 9:  emit(B, T); break;
                case 5: case 10: {
                    // saddle: the sign at the cell center picks the pairing
                    double fc;
                    if (grid.field) {
                        fc = grid.field(0.5 * (grid.u_at(i) + grid.u_at(i + 1)),
                                        0.5 * (grid.v_at(k) + grid.v_at(k + 1)));
                        if (!(fc == fc))
                            fc = 0.25 * (grid.value(i, k) + grid.value(i + 1, k) +
                                         grid.value(i, k + 1) + grid.value(i + 1, k + 1));
                    } else {
                        fc = 0.25 * (grid.value(i, k) + grid.value(i + 1, k) +
                                     grid.value(i, k + 1) + grid.value(i + 1, k + 1));
                    }
                    const bool center_pos = fc > 0;
                    if ((caseId == 5) == center_pos) {
                        emit(L, B);
                        emit(R, T);
                    } else {
                        emit(L, T);
                        emit(B, R);
                    }
                    break;
                }
                default: break;
            }
        }
    }

    // chain segments into polylines via shared edge crossings
    std::unordered_map<EdgeId, std::vector<std::size_t>, EdgeHash> at_edge;
    for (std::size_t s = 0; s < segments.size(); ++s) {
        at_edge[segments[s].a].push_back(s);
        at_edge[segments[s].b].push_back(s);
    }
    std::vector<bool> used(segments.size(), false);
    std::vector<LocusCurve> curves;

    auto walk = [&](std::size_t s0, bool from_a) {
        std::vector<EdgeId> chain;
        EdgeId cur = from_a ? segments[s0].b : segments[s0].a;
        std::size_t s = s0;
        while (true) {
            chain.push_back(cur);
            std::size_t next = segments.size();
            for (std::size_t cand : at_edge[cur])
                if (cand != s && !used[cand]) { next = cand; break; }
            if (next == segments.size()) break;
            used[next] = true;
            cur = (segments[next].a.key == cur.key) ? segments[next].b : segments[next].a;
            s = next;
        }
        return chain;
    };

    for (std::size_t s0 = 0; s0 < segments.size(); ++s0) {
        if (used[s0]) continue;
        used[s0] = true;
        std::vector<EdgeId> fwd = walk(s0, true);   // from b onward
        std::vector<EdgeId> bwd = walk(s0, false);  // from a onward

        LocusCurve c;
        c.kind = kind;
        std::vector<EdgeId> edges;
        for (auto it = bwd.rbegin(); it != bwd.rend(); ++it) edges.push_back(*it);
        for (const auto& e : fwd) edges.push_back(e);
        c.closed = edges.size() > 2 && edges.front().key == edges.back().key;
        if (c.closed) edges.pop_back();
        c.points.reserve(edges.size());
        for (const auto& e : edges) c.points.push_back(points.at(e));
        if (c.points.size() >= 2) curves.push_back(std::move(c));
    }

    // deterministic order for output/export
    std::sort(curves.begin(), curves.end(), [](const LocusCurve& a, const LocusCurve& b) {
        return a.points.front() < b.points.front();
    });
    return curves;
}

namespace {

std::vector<LocusCurve> locus(const SurfacePatch& patch, LocusField field, LocusKind kind,
                              int nu, int nv, double refine_tol_rel) {
    const ScalarGrid g = grid_sample(patch, field, nu, nv);
    return extract_zero_set(g, refine_tol_rel * g.max_abs(), kind);
}

}  // namespace

std::vector<LocusCurve> ld_locus(const SurfacePatch& patch, int nu, int nv,
                                 double refine_tol_rel) {
    return locus(patch, LocusField::Delta, LocusKind::LD, nu, nv, refine_tol_rel);
}

std::vector<LocusCurve> lpl_locus(const SurfacePatch& patch, int nu, int nv,
                                  double refine_tol_rel) {
    return locus(patch, LocusField::LplDisc, LocusKind::LPL, nu, nv, refine_tol_rel);
}

std::vector<LocusCurve> parabolic_locus(const SurfacePatch& patch, int nu, int nv,
                                        double refine_tol_rel) {
    return locus(patch, LocusField::Kbar, LocusKind::Parabolic, nu, nv, refine_tol_rel);
}

}  // namespace lorentz
