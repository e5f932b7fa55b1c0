#include "lorentz/mesh_io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <vector>

namespace lorentz {

MeshStats export_mesh(const SurfacePatch& patch, int nu, int nv, std::ostream& out) {
    const Domain& dom = patch.domain();
    const auto node_u = [&](int i) {
        return nu == 1 ? dom.u_min : dom.u_min + i * dom.u_extent() / (nu - 1);
    };
    const auto node_v = [&](int k) {
        return nv == 1 ? dom.v_min : dom.v_min + k * dom.v_extent() / (nv - 1);
    };

    std::vector<int> index(static_cast<std::size_t>(nu) * nv, 0);  // 1-based, 0 = masked
    MeshStats stats;
    char buf[128];
    for (int i = 0; i < nu; ++i) {
        for (int k = 0; k < nv; ++k) {
            const double u = node_u(i), v = node_v(k);
            if (patch.masked_at(u, v)) continue;
            const Vec3 p = patch.eval_unchecked(u, v);
            index[static_cast<std::size_t>(i) * nv + k] = ++stats.n_vertices;
            std::snprintf(buf, sizeof buf, "v %.12g %.12g %.12g\n", p.x0, p.x1, p.x2);
            out << buf;
        }
    }
    for (int i = 0; i + 1 < nu; ++i) {
        for (int k = 0; k + 1 < nv; ++k) {
            const int a = index[static_cast<std::size_t>(i) * nv + k];
            const int b = index[static_cast<std::size_t>(i + 1) * nv + k];
            const int c = index[static_cast<std::size_t>(i + 1) * nv + k + 1];
            const int d = index[static_cast<std::size_t>(i) * nv + k + 1];
            if (!a || !b || !c || !d) continue;
            std::snprintf(buf, sizeof buf, "f %d %d %d\nf %d %d %d\n", a, b, c, a, c, d);
            out << buf;
            stats.n_triangles += 2;
        }
    }
    return stats;
}

MeshStats export_mesh(const SurfacePatch& patch, int nu, int nv, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("export_mesh: cannot open " + path);
    return export_mesh(patch, nu, nv, out);
}

}  // namespace lorentz
