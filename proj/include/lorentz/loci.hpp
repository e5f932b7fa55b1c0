#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "lorentz/forms.hpp"
#include "lorentz/surface.hpp"

namespace lorentz {

// Scalar field of the form bundle sampled on a parameter grid.
enum class LocusField { Delta, LplDisc, Kbar };

enum class LocusKind { LD, LPL, Parabolic };

// nu x nv samples taken at cell centers of the domain rectangle. Masked
// cells hold NaN. The sampling closure is kept so that zero-set extraction
// can refine crossings along grid edges.
struct ScalarGrid {
    int nu = 0, nv = 0;
    Domain domain;
    std::vector<double> values;  // row-major, index = i * nv + k
    std::function<double(double, double)> field;  // may be null

    double u_at(int i) const { return domain.u_min + (i + 0.5) * du(); }
    double v_at(int k) const { return domain.v_min + (k + 0.5) * dv(); }
    double du() const { return domain.u_extent() / nu; }
    double dv() const { return domain.v_extent() / nv; }
    double value(int i, int k) const { return values[static_cast<std::size_t>(i) * nv + k]; }
    bool masked(int i, int k) const { return !(value(i, k) == value(i, k)); }
    double max_abs() const;
};

// Polyline approximating one connected component of a zero set, in
// parameter space.
struct LocusCurve {
    std::vector<std::pair<double, double>> points;  // (u, v)
    LocusKind kind = LocusKind::LD;
    bool closed = false;
};

// Evaluates the chosen field at cell centers; cells where the patch mask is
// false (or jet evaluation is impossible) are NaN. Parallel over rows.
ScalarGrid grid_sample(const SurfacePatch& patch, LocusField field, int nu, int nv);

// Marching squares on the sample grid with per-edge refinement of each
// crossing until |field| <= refine_tol (absolute), up to 20 iterations.
// Cells touching masked samples are skipped; saddle cells are disambiguated
// by the field value at the cell center. Curves come out chained and
// ordered, closed where the chain loops.
std::vector<LocusCurve> extract_zero_set(const ScalarGrid& grid, double refine_tol,
                                         LocusKind kind = LocusKind::LD);

// Convenience compositions; refine_tol_rel is relative to the grid's
// max |field|.
std::vector<LocusCurve> ld_locus(const SurfacePatch& patch, int nu, int nv,
                                 double refine_tol_rel = 1e-9);
std::vector<LocusCurve> lpl_locus(const SurfacePatch& patch, int nu, int nv,
                                  double refine_tol_rel = 1e-9);
std::vector<LocusCurve> parabolic_locus(const SurfacePatch& patch, int nu, int nv,
                                        double refine_tol_rel = 1e-9);

}  // namespace lorentz
