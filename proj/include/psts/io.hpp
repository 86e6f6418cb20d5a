#pragma once

// Text and mesh emission: CSV tables, OBJ/PLY surface meshes, OBJ polylines.
// Floats are written with 17 significant digits so files round-trip exactly.

#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <ostream>
#include <string>
#include <vector>

#include "psts/confocal.hpp"
#include "psts/surface.hpp"
#include "psts/tangles.hpp"

namespace psts::io {

inline std::string fmt(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

/// One row per u sample: Jacobi angles t_i, vertex coordinates, then the
/// (constant) pair parameters so each file is self-describing.
inline void write_family_csv(std::ostream& os, const ConfocalPair& pair, int samples) {
    std::vector<double> grid;
    for (int k = 0; k < samples; ++k) grid.push_back(k * pair.period() / samples);
    const auto rows = angular_positions(pair, grid);
    os << "u,t1,t2,t3,x1,y1,x2,y2,x3,y3,a,b,a_c,b_c,m,K\n";
    const std::string tail = "," + fmt(pair.a) + "," + fmt(pair.b) + "," + fmt(pair.a_c) + "," +
                             fmt(pair.b_c) + "," + fmt(pair.m) + "," + fmt(pair.K) + "\n";
    for (const AngularRow& r : rows) {
        os << fmt(r.u) << ',' << fmt(r.t[0]) << ',' << fmt(r.t[1]) << ',' << fmt(r.t[2]);
        for (int i = 1; i <= 3; ++i) {
            Point2 p = vertex(pair, i, r.u);
            os << ',' << fmt(p.x) << ',' << fmt(p.y);
        }
        os << tail;
    }
}

inline void write_curvature_csv(std::ostream& os, const CurvatureFields& f) {
    os << "u,v,K,H\n";
    for (int i = 0; i < f.gaussian.rows(); ++i)
        for (int j = 0; j < f.gaussian.nv; ++j)
            os << fmt(f.gaussian.u[i]) << ',' << fmt(f.gaussian.v[j]) << ',' << fmt(f.gaussian.at(i, j)) << ','
               << fmt(f.mean.at(i, j)) << '\n';
}

struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;
};

/// Cool-to-warm diverging map on t in [0, 1]: blue, near-white at 0.5, red.
inline Rgb diverging_color(double t) {
    static constexpr double anchors[3][3] = {{59, 76, 192}, {221, 221, 221}, {180, 4, 38}};
    t = std::clamp(t, 0.0, 1.0);
    const int seg = t < 0.5 ? 0 : 1;
    const double w = t < 0.5 ? 2.0 * t : 2.0 * t - 1.0;
    auto mix = [&](int c) {
        return static_cast<std::uint8_t>(std::lround((1.0 - w) * anchors[seg][c] + w * anchors[seg + 1][c]));
    };
    return {mix(0), mix(1), mix(2)};
}

enum class ColorBy { gaussian, mean, none };

struct Mesh {
    std::vector<Point3> vertices;
    std::vector<double> gaussian, mean;
    std::vector<Rgb> colors;  // empty when uncolored
    std::vector<std::array<std::uint32_t, 3>> faces;
    double color_min = 0.0, color_max = 0.0;
};

/// Three facet sub-meshes on a shared u grid. In the toroidal embedding the
/// u = T row is dropped and faces wrap to u = 0, welding the two ends.
/// Curvature scalars always come from the straight embedding.
inline Mesh surface_mesh(const ConfocalPair& pair, int nu, int nv, Embedding embedding, double major_radius,
                         ColorBy color_by) {
    Mesh mesh;
    const bool welded = embedding == Embedding::toroidal;
    const int rows = welded ? nu : nu + 1;
    for (int facet = 1; facet <= 3; ++facet) {
        SurfacePatch geom = patch(pair, facet, nu, nv, embedding, major_radius);
        SurfacePatch flat = embedding == Embedding::straight ? geom : patch(pair, facet, nu, nv);
        CurvatureFields fields = curvature_numeric(fundamental_forms(flat));
        const auto base = static_cast<std::uint32_t>(mesh.vertices.size());
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < nv; ++j) {
                mesh.vertices.push_back(geom.node(i, j).position);
                mesh.gaussian.push_back(fields.gaussian.at(i, j));
                mesh.mean.push_back(fields.mean.at(i, j));
            }
        const int quads_u = nu;
        for (int i = 0; i < quads_u; ++i) {
            const int i1 = welded ? (i + 1) % nu : i + 1;
            for (int j = 0; j + 1 < nv; ++j) {
                auto id = [&](int r, int c) { return base + static_cast<std::uint32_t>(r * nv + c); };
                mesh.faces.push_back({id(i, j), id(i1, j), id(i1, j + 1)});
                mesh.faces.push_back({id(i, j), id(i1, j + 1), id(i, j + 1)});
            }
        }
    }
    if (color_by != ColorBy::none) {
        const auto& s = color_by == ColorBy::gaussian ? mesh.gaussian : mesh.mean;
        mesh.color_min = *std::min_element(s.begin(), s.end());
        mesh.color_max = *std::max_element(s.begin(), s.end());
        const double span = mesh.color_max - mesh.color_min;
        for (double x : s) mesh.colors.push_back(diverging_color(span > 0.0 ? (x - mesh.color_min) / span : 0.5));
    }
    return mesh;
}

/// OBJ with optional per-vertex colors ("v x y z r g b", components in [0,1]).
inline void write_obj(std::ostream& os, const Mesh& mesh) {
    os << "# psts surface mesh\n";
    for (size_t k = 0; k < mesh.vertices.size(); ++k) {
        const Point3& p = mesh.vertices[k];
        os << "v " << fmt(p.x) << ' ' << fmt(p.y) << ' ' << fmt(p.z);
        if (!mesh.colors.empty()) {
            const Rgb& c = mesh.colors[k];
            os << ' ' << fmt(c.r / 255.0) << ' ' << fmt(c.g / 255.0) << ' ' << fmt(c.b / 255.0);
        }
        os << '\n';
    }
    for (const auto& f : mesh.faces) os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
}

namespace detail {

template <class T>
void put_le(std::ostream& os, T value) {
    static_assert(std::endian::native == std::endian::little, "PLY writer assumes a little-endian host");
    char bytes[sizeof(T)];
    std::memcpy(bytes, &value, sizeof(T));
    os.write(bytes, sizeof(T));
}

}  // namespace detail

/// Binary little-endian PLY carrying raw gaussian/mean curvature per vertex.
inline void write_ply(std::ostream& os, const Mesh& mesh) {
    const bool colored = !mesh.colors.empty();
    os << "ply\nformat binary_little_endian 1.0\n";
    os << "comment color range " << fmt(mesh.color_min) << ' ' << fmt(mesh.color_max) << '\n';
    os << "element vertex " << mesh.vertices.size() << '\n';
    os << "property double x\nproperty double y\nproperty double z\n";
    if (colored) os << "property uchar red\nproperty uchar green\nproperty uchar blue\n";
    os << "property double gaussian\nproperty double mean\n";
    os << "element face " << mesh.faces.size() << '\n';
    os << "property list uchar uint vertex_indices\nend_header\n";
    for (size_t k = 0; k < mesh.vertices.size(); ++k) {
        detail::put_le(os, mesh.vertices[k].x);
        detail::put_le(os, mesh.vertices[k].y);
        detail::put_le(os, mesh.vertices[k].z);
        if (colored) {
            detail::put_le(os, mesh.colors[k].r);
            detail::put_le(os, mesh.colors[k].g);
            detail::put_le(os, mesh.colors[k].b);
        }
        detail::put_le(os, mesh.gaussian[k]);
        detail::put_le(os, mesh.mean[k]);
    }
    for (const auto& f : mesh.faces) {
        detail::put_le(os, std::uint8_t{3});
        for (std::uint32_t idx : f) detail::put_le(os, idx);
    }
}

/// Closed polyline as OBJ vertices plus one "l" element.
inline void write_polyline_obj(std::ostream& os, const SpaceCurve& c) {
    os << "# " << c.label.name() << '\n';
    for (const Point3& p : c.points) os << "v " << fmt(p.x) << ' ' << fmt(p.y) << ' ' << fmt(p.z) << '\n';
    os << 'l';
    for (size_t k = 1; k <= c.points.size(); ++k) os << ' ' << k;
    os << " 1\n";
}

}  // namespace psts::io
