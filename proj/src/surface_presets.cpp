#include "lorentz/surface_presets.hpp"

#include <cstdlib>
#include <sstream>
#include <vector>

namespace lorentz {

namespace {

std::vector<double> parse_numbers(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        char* end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        if (end == item.c_str() || *end != '\0')
            throw Error("parse_surface_preset: bad number '" + item + "'");
        out.push_back(v);
    }
    return out;
}

}  // namespace

SurfacePatch parse_surface_preset(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);

    if (name == "sphere") {
        const auto p = parse_numbers(rest.empty() ? "2,0,0,1" : rest);
        if (p.size() != 4) throw Error("sphere preset needs cx,cy,cz,r");
        return builtin_sphere({p[0], p[1], p[2]}, p[3]);
    }
    if (name == "ellipsoid") {
        const auto p = parse_numbers(rest.empty() ? "2.5,0,0,1,0.8,0.6" : rest);
        if (p.size() != 6) throw Error("ellipsoid preset needs cx,cy,cz,ax,ay,az");
        return builtin_ellipsoid({p[0], p[1], p[2]}, {p[3], p[4], p[5]});
    }
    if (name == "graph") {
        const auto colon2 = rest.find(':');
        const std::string kind = rest.substr(0, colon2);
        const std::string params =
            colon2 == std::string::npos ? "" : rest.substr(colon2 + 1);
        const auto p = params.empty() ? std::vector<double>{} : parse_numbers(params);
        auto at = [&](std::size_t i, double dflt) { return i < p.size() ? p[i] : dflt; };
        if (kind == "flat")
            return builtin_graph_quadratic(0, 0, 0, {0, 0, at(0, 0.0)}, at(1, 1.0));
        if (kind == "saddle") {
            const double s = at(0, 3.0);
            return builtin_graph_quadratic(s, 0, -s, {0, 0, at(1, 6.0)}, at(2, 1.0));
        }
        if (kind == "paraboloid") {
            const double s = at(0, 1.0);
            return builtin_graph_quadratic(s, 0, s, {0, 0, at(1, 6.0)}, at(2, 1.0));
        }
        throw Error("unknown graph preset '" + kind + "'");
    }
    throw Error("unknown surface preset '" + name + "'");
}

}  // namespace lorentz
