#pragma once

// Exact volume of a bounded region: irredundant facets, vertex enumeration,
// then a fan from the vertex centroid over recursively pulled facet
// triangulations.  Lower-dimensional regions have ambient volume zero.

#include <contexture/bitset.hpp>
#include <contexture/polytope.hpp>

#include <map>

namespace ctx {

namespace detail {

// Pulling triangulation of the face with the given vertex set, memoized.
// Faces are identified by vertex-incidence bitsets; the facets of a face are
// the maximal proper intersections with the polytope's facet vertex sets.
template <Scalar S>
struct FaceTriangulator {
    const std::vector<Bits>& facet_verts;  // per polytope facet
    size_t nverts;
    std::map<Bits, std::vector<std::vector<size_t>>> memo;

    const std::vector<std::vector<size_t>>& run(const Bits& face) {
        auto it = memo.find(face);
        if (it != memo.end()) return it->second;
        std::vector<std::vector<size_t>> tris;
        size_t apex = nverts;
        for (size_t v = 0; v < nverts; ++v)
            if (face.test(v)) {
                apex = v;
                break;
            }
        size_t members = face.count();
        if (members == 1) {
            tris.push_back({apex});
        } else {
            std::vector<Bits> subs;
            for (const Bits& fv : facet_verts) {
                Bits cut = Bits::intersect(face, fv);
                size_t c = cut.count();
                if (c == 0 || c == members) continue;
                subs.push_back(std::move(cut));
            }
            std::sort(subs.begin(), subs.end());
            subs.erase(std::unique(subs.begin(), subs.end()), subs.end());
            for (const Bits& g : subs) {
                if (g.test(apex)) continue;
                bool maximal = true;
                for (const Bits& other : subs)
                    if (!(other == g) && g.subset_of(other)) {
                        maximal = false;
                        break;
                    }
                if (!maximal) continue;
                for (const auto& t : run(g)) {
                    std::vector<size_t> tri{apex};
                    tri.insert(tri.end(), t.begin(), t.end());
                    tris.push_back(std::move(tri));
                }
            }
        }
        return memo.emplace(face, std::move(tris)).first->second;
    }
};

}  // namespace detail

template <Scalar S>
S volume(const HRep<S>& region) {
    MinimalForm<S> mf = minimize_h(region);
    if (mf.empty || !mf.h.eqs.empty()) return S(0);
    const size_t d = mf.h.dim;
    if (d == 0) return S(1);
    VRep<S> vr = h_to_v(mf.h);
    const auto& pts = vr.points;
    if (pts.size() < d + 1) return S(0);
    {
        Mat<S> dirs;
        for (size_t i = 1; i < pts.size(); ++i) {
            Vec<S> v(d);
            for (size_t r = 0; r < d; ++r) v[r] = pts[i][r] - pts[0][r];
            dirs.push_back(std::move(v));
        }
        if (rank(dirs) < d) return S(0);
    }

    const size_t nf = mf.h.ineqs.size();
    std::vector<Bits> facet_verts(nf, Bits(pts.size()));
    for (size_t f = 0; f < nf; ++f)
        for (size_t v = 0; v < pts.size(); ++v)
            if (dot(mf.h.ineqs[f].a, pts[v]) == mf.h.ineqs[f].b) facet_verts[f].set(v);

    Vec<S> center(d, S(0));
    for (const auto& p : pts)
        for (size_t r = 0; r < d; ++r) center[r] += p[r];
    for (auto& v : center) v = v / S(Rat(static_cast<long>(pts.size())));

    detail::FaceTriangulator<S> tri{facet_verts, pts.size(), {}};
    S total{};
    for (size_t f = 0; f < nf; ++f) {
        for (const auto& t : tri.run(facet_verts[f])) {
            // t has d vertices; the fan simplex adds the center
            Mat<S> m(d, Vec<S>(d));
            for (size_t i = 0; i < d; ++i)
                for (size_t r = 0; r < d; ++r) m[i][r] = pts[t[i]][r] - center[r];
            S dv = det(m);
            if (sgn(dv) < 0) dv = -dv;
            total += dv;
        }
    }
    Rat fact(1);
    for (long i = 2; i <= static_cast<long>(d); ++i) fact *= i;
    return total / S(fact);
}

}  // namespace ctx
