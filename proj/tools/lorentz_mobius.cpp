// Command-line front end: surface presets, loci/line exporters, pushforward
// verification, inverted-sphere reports, and the ovaloid translation search.
//
// Exit codes: 0 success, 1 usage error, 2 verification-contract failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lorentz/flow.hpp"
#include "lorentz/loci.hpp"
#include "lorentz/mesh_io.hpp"
#include "lorentz/mobius_forms.hpp"
#include "lorentz/sphere_analysis.hpp"
#include "lorentz/surface_presets.hpp"

using json = nlohmann::ordered_json;
using namespace lorentz;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitContract = 2;

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

Vec3 parse_vec3(const std::string& s) {
    double a, b, c;
    if (std::sscanf(s.c_str(), "%lf,%lf,%lf", &a, &b, &c) != 3)
        throw CLI::ValidationError("expected three comma-separated numbers, got '" + s + "'");
    return {a, b, c};
}

void parse_grid(const std::string& s, int& nu, int& nv) {
    if (std::sscanf(s.c_str(), "%dx%d", &nu, &nv) != 2 || nu < 2 || nv < 2)
        throw CLI::ValidationError("expected a grid like 256x256, got '" + s + "'");
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw IoError("cannot open output file " + path);
    return file;
}

struct SurfaceArgs {
    std::string preset = "sphere:2,0,0,1";
    std::string translate_by;
    bool invert = false;
    double lc_tol = 1e-9;

    void attach(CLI::App* cmd, bool with_invert = true) {
        cmd->add_option("--surface", preset, "surface preset, e.g. sphere:2,0,0,1")
            ->capture_default_str();
        cmd->add_option("--translate", translate_by, "translate the surface by dx,dy,dz");
        if (with_invert)
            cmd->add_flag("--invert", invert, "operate on the Mobius-inverted surface");
        cmd->add_option("--lc-tol", lc_tol, "light-cone mask tolerance on |<p,p>|")
            ->capture_default_str();
    }

    SurfacePatch build() const {
        SurfacePatch patch = parse_surface_preset(preset);
        if (!translate_by.empty()) patch = translate(patch, parse_vec3(translate_by));
        if (invert) patch = invert_patch(patch, lc_tol);
        return patch;
    }
};

int run_invert_point(const std::string& point, double tol) {
    const Vec3 p = parse_vec3(point);
    json out;
    out["point"] = {fmt(p.x0), fmt(p.x1), fmt(p.x2)};
    out["pairing"] = fmt(minkowski_dot(p, p));
    try {
        const Vec3 q = mobius_point(p, tol);
        out["image"] = {fmt(q.x0), fmt(q.x1), fmt(q.x2)};
    } catch (const NearLightCone& e) {
        out["error"] = e.what();
        std::cout << out.dump(2) << "\n";
        return kExitContract;
    }
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int run_loci(const SurfaceArgs& surf, const std::string& field_name,
             const std::string& grid, double refine_tol_rel, const std::string& out_path) {
    const SurfacePatch patch = surf.build();
    int nu, nv;
    parse_grid(grid, nu, nv);

    std::vector<LocusCurve> curves;
    if (field_name == "ld") curves = ld_locus(patch, nu, nv, refine_tol_rel);
    else if (field_name == "lpl") curves = lpl_locus(patch, nu, nv, refine_tol_rel);
    else if (field_name == "parabolic") curves = parabolic_locus(patch, nu, nv, refine_tol_rel);
    else throw CLI::ValidationError("--field must be ld, lpl, or parabolic");

    std::ofstream file;
    std::ostream& out = open_out(file, out_path);
    out << "curve_id,u,v,x0,x1,x2\n";
    int id = 0;
    for (const auto& c : curves) {
        for (const auto& [u, v] : c.points) {
            const Vec3 p = patch.eval_unchecked(u, v);
            out << id << ',' << fmt(u) << ',' << fmt(v) << ',' << fmt(p.x0) << ','
                << fmt(p.x1) << ',' << fmt(p.x2) << '\n';
        }
        ++id;
    }
    std::cerr << "loci: " << curves.size() << " curve(s)\n";
    return kExitOk;
}

int run_lines(const SurfaceArgs& surf, const std::string& seeds_path, int branch,
              double step, int n_steps, bool check_preserved, double check_tol,
              const std::string& out_path) {
    const SurfacePatch patch = surf.build();

    std::vector<std::pair<double, double>> seeds;
    std::ifstream in(seeds_path);
    if (!in) throw IoError("cannot open seeds file " + seeds_path);
    std::string line;
    while (std::getline(in, line)) {
        double u, v;
        if (std::sscanf(line.c_str(), "%lf,%lf", &u, &v) == 2) seeds.push_back({u, v});
    }

    std::ofstream file;
    std::ostream& out = open_out(file, out_path);
    out << "line_id,t_index,u,v,x0,x1,x2,residual\n";
    bool violated = false;
    for (std::size_t id = 0; id < seeds.size(); ++id) {
        PrincipalLine pl;
        try {
            pl = integrate_line(patch, seeds[id], branch, step, n_steps);
        } catch (const BadStart& e) {
            std::cerr << "lines: seed " << id << " skipped: " << e.what() << "\n";
            continue;
        }
        const auto res = polyline_bde_residual_samples(patch, pl.samples);
        for (std::size_t t = 0; t < pl.samples.size(); ++t) {
            const auto& [u, v] = pl.samples[t];
            const Vec3 p = patch.eval_unchecked(u, v);
            out << id << ',' << t << ',' << fmt(u) << ',' << fmt(v) << ',' << fmt(p.x0)
                << ',' << fmt(p.x1) << ',' << fmt(p.x2) << ',' << fmt(res[t]) << '\n';
        }
        if (check_preserved) {
            const double r = verify_line_preserved(patch, pl, surf.lc_tol);
            if (r > check_tol) {
                std::cerr << "lines: seed " << id << " inverted-BDE residual " << fmt(r)
                          << " exceeds " << fmt(check_tol) << "\n";
                violated = true;
            }
        }
    }
    return violated ? kExitContract : kExitOk;
}

int run_verify_pushforward(const SurfaceArgs& surf, const std::string& grid, double tol,
                           const std::string& out_path) {
    const SurfacePatch patch = surf.build();
    int nu, nv;
    parse_grid(grid, nu, nv);

    std::ofstream file;
    std::ostream& out = open_out(file, out_path);
    out << "u,v,rho,max_rel_err,lambda_err\n";
    const Domain& dom = patch.domain();
    double worst = 0, worst_lambda = 0;
    int n_checked = 0;
    for (int i = 0; i < nu; ++i) {
        const double u = dom.u_min + (i + 0.5) * dom.u_extent() / nu;
        for (int k = 0; k < nv; ++k) {
            const double v = dom.v_min + (k + 0.5) * dom.v_extent() / nv;
            if (patch.masked_at(u, v)) continue;
            PushforwardReport rep;
            double lambda_err;
            try {
                rep = verify_pushforward(patch, u, v, surf.lc_tol);
                const double lambda = bde_scaling_factor(patch, u, v, surf.lc_tol);
                const double expected = -1.0 / std::pow(rep.rho, 5);
                lambda_err = std::fabs(lambda - expected) / std::fabs(expected);
            } catch (const Error&) {
                continue;  // LD points and degenerate BDEs are not comparable
            }
            ++n_checked;
            worst = std::max(worst, rep.max_rel_err);
            worst_lambda = std::max(worst_lambda, lambda_err);
            out << fmt(u) << ',' << fmt(v) << ',' << fmt(rep.rho) << ','
                << fmt(rep.max_rel_err) << ',' << fmt(lambda_err) << '\n';
        }
    }
    std::cerr << "verify-pushforward: " << n_checked << " points, max_rel_err = "
              << fmt(worst) << ", lambda_err = " << fmt(worst_lambda) << "\n";
    return (worst > tol || worst_lambda > 1e-9) ? kExitContract : kExitOk;
}

int run_sphere_check(const std::string& center, double radius, int grid_n,
                     const std::string& out_path) {
    const Vec3 c = parse_vec3(center);
    const SphereSpec s{c.x0, c.x1, c.x2, radius};
    const OvaloidCheck check = check_inverted_sphere(s, grid_n);

    json out;
    out["center"] = {fmt(s.a), fmt(s.b), fmt(s.c)};
    out["radius"] = fmt(s.r);
    out["is_closed"] = check.is_closed;
    out["parabolic_empty"] = check.parabolic_empty;
    out["is_ovaloid"] = check.is_ovaloid;
    out["dist_to_lc"] = fmt(dist_to_lightcone(c));
    out["f_roots"] = json::array();
    for (double t : f_cosv_roots(s)) out["f_roots"].push_back(fmt(t));
    out["witnesses"] = json::array();
    for (const auto& [u, v] : check.witnesses)
        out["witnesses"].push_back({fmt(u), fmt(v)});

    std::ofstream file;
    std::ostream& os = open_out(file, out_path);
    os << out.dump(2) << "\n";
    return kExitOk;
}

int run_ovaloid_search(const SurfaceArgs& surf, int sample_n, int census_grid) {
    const SurfacePatch patch = surf.build();
    const double R = enclosing_radius(patch, sample_n);
    const Vec3 t = translation_search(patch, sample_n);
    const bool verified =
        parabolic_empty_bruteforce(invert_patch(translate(patch, t), surf.lc_tol),
                                   census_grid, census_grid);
    json out;
    out["R"] = fmt(R);
    out["translation"] = {fmt(t.x0), fmt(t.x1), fmt(t.x2)};
    out["verified"] = verified;
    std::cout << out.dump(2) << "\n";
    return verified ? kExitOk : kExitContract;
}

int run_mesh(const SurfaceArgs& surf, const std::string& grid, const std::string& out_path) {
    const SurfacePatch patch = surf.build();
    int nu, nv;
    parse_grid(grid, nu, nv);
    std::ofstream file;
    std::ostream& out = open_out(file, out_path);
    const MeshStats stats = export_mesh(patch, nu, nv, out);
    if (stats.n_vertices == 0) std::cerr << "mesh: warning: all nodes masked, empty mesh\n";
    std::cerr << "mesh: " << stats.n_vertices << " vertices, " << stats.n_triangles
              << " triangles\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mobius inversion of surfaces in the Minkowski 3-space"};
    app.require_subcommand(1);

    // invert
    auto* cmd_invert = app.add_subcommand("invert", "invert a single point");
    std::string point = "2,0,0";
    double point_tol = 1e-9;
    cmd_invert->add_option("--point", point, "point x,y,z")->capture_default_str();
    cmd_invert->add_option("--tol", point_tol, "light-cone tolerance")->capture_default_str();

    // loci
    auto* cmd_loci = app.add_subcommand("loci", "extract LD/LPL/parabolic curves");
    SurfaceArgs loci_surf;
    loci_surf.attach(cmd_loci);
    std::string loci_field = "ld", loci_grid = "256x256", loci_out;
    double loci_refine = 1e-9;
    cmd_loci->add_option("--field", loci_field, "ld | lpl | parabolic")->capture_default_str();
    cmd_loci->add_option("--grid", loci_grid, "sample grid NxM")->capture_default_str();
    cmd_loci->add_option("--refine-tol", loci_refine, "refinement tolerance, relative to max |field|")
        ->capture_default_str();
    cmd_loci->add_option("--out", loci_out, "output CSV ('-' for stdout)");

    // lines
    auto* cmd_lines = app.add_subcommand("lines", "integrate principal curvature lines");
    SurfaceArgs lines_surf;
    lines_surf.attach(cmd_lines);
    std::string seeds_path, lines_out;
    int branch = 1, n_steps = 10000;
    double step = 1e-3, lines_check_tol = 1e-6;
    bool check_preserved = false;
    cmd_lines->add_option("--seeds", seeds_path, "CSV of u,v seed points")->required();
    cmd_lines->add_option("--branch", branch, "principal branch, 1 or 2")
        ->check(CLI::Range(1, 2))->capture_default_str();
    cmd_lines->add_option("--step", step, "integration step")->capture_default_str();
    cmd_lines->add_option("--n-steps", n_steps, "step cap")->capture_default_str();
    cmd_lines->add_flag("--check-preserved", check_preserved,
                        "verify each line against the inverted surface's BDE");
    cmd_lines->add_option("--check-tol", lines_check_tol, "residual tolerance for the check")
        ->capture_default_str();
    cmd_lines->add_option("--out", lines_out, "output CSV ('-' for stdout)");

    // verify-pushforward
    auto* cmd_push = app.add_subcommand("verify-pushforward",
                                        "compare closed-form vs direct inverted forms");
    SurfaceArgs push_surf;
    push_surf.attach(cmd_push, /*with_invert=*/false);
    std::string push_grid = "16x16", push_out;
    double push_tol = 1e-6;
    cmd_push->add_option("--grid", push_grid, "sample grid NxM")->capture_default_str();
    cmd_push->add_option("--tol", push_tol, "max relative error tolerance")
        ->capture_default_str();
    cmd_push->add_option("--out", push_out, "output CSV ('-' for stdout)");

    // sphere-check
    auto* cmd_sphere = app.add_subcommand("sphere-check",
                                          "closed-form report for an inverted sphere");
    std::string sphere_center = "2,0,0", sphere_out;
    double sphere_radius = 1.0;
    int sphere_grid_n = 128;
    cmd_sphere->add_option("--center", sphere_center, "center a,b,c")->capture_default_str();
    cmd_sphere->add_option("--radius", sphere_radius, "radius r")->capture_default_str();
    cmd_sphere->add_option("--grid-n", sphere_grid_n, "witness scan resolution")
        ->capture_default_str();
    cmd_sphere->add_option("--out", sphere_out, "output JSON ('-' for stdout)");

    // ovaloid-search
    auto* cmd_oval = app.add_subcommand("ovaloid-search",
                                        "translation making the inversion an ovaloid");
    SurfaceArgs oval_surf;
    oval_surf.attach(cmd_oval, /*with_invert=*/false);
    int sample_n = 24, census_grid = 512;
    cmd_oval->add_option("--sample-n", sample_n, "surface sample grid per axis")
        ->capture_default_str();
    cmd_oval->add_option("--census-grid", census_grid, "verification census resolution")
        ->capture_default_str();

    // mesh
    auto* cmd_mesh = app.add_subcommand("mesh", "export a triangulated OBJ mesh");
    SurfaceArgs mesh_surf;
    mesh_surf.attach(cmd_mesh);
    std::string mesh_grid = "128x128", mesh_out;
    cmd_mesh->add_option("--grid", mesh_grid, "node grid NxM")->capture_default_str();
    cmd_mesh->add_option("--out", mesh_out, "output OBJ ('-' for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (cmd_invert->parsed()) return run_invert_point(point, point_tol);
        if (cmd_loci->parsed())
            return run_loci(loci_surf, loci_field, loci_grid, loci_refine, loci_out);
        if (cmd_lines->parsed())
            return run_lines(lines_surf, seeds_path, branch, step, n_steps,
                             check_preserved, lines_check_tol, lines_out);
        if (cmd_push->parsed())
            return run_verify_pushforward(push_surf, push_grid, push_tol, push_out);
        if (cmd_sphere->parsed())
            return run_sphere_check(sphere_center, sphere_radius, sphere_grid_n, sphere_out);
        if (cmd_oval->parsed()) return run_ovaloid_search(oval_surf, sample_n, census_grid);
        if (cmd_mesh->parsed()) return run_mesh(mesh_surf, mesh_grid, mesh_out);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitContract;
    }
    return kExitUsage;
}
