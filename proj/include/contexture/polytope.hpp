#pragma once

// Polyhedral computations, all exact.
//
// minimize_h   irredundant representation: duplicate rows merged, implied
//              rows dropped, implicit equalities converted, or an emptiness
//              certificate when the region has no point.
// dimension    affine dimension of the region; throws on an empty one.
// h_to_v       vertex enumeration of a bounded region (closure of it when
//              strict rows are present) by incremental double description.
// v_to_h       facets of a finite point set: affine hull coordinates, then
//              the polar body around the centroid, then h_to_v on the polar.
// eliminate    coordinate projection by equation substitution where
//              possible, Fourier-Motzkin with pruning otherwise; output
//              minimized, an empty projection comes back as {0.x <= -1}.
// complement_project
//              per-row negation of a constraint system intersected with a
//              base region and projected: the union of parts where some
//              eliminated assignment violates the constraint.

#include <contexture/bitset.hpp>
#include <contexture/hrep.hpp>
#include <contexture/linalg.hpp>
#include <contexture/lp.hpp>
#include <contexture/scalar.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>

namespace ctx {

struct PolytopeError : std::runtime_error {
    explicit PolytopeError(const std::string& what) : std::runtime_error(what) {}
};

template <Scalar S>
struct MinimalForm {
    bool empty = false;
    HRep<S> h;     // canonical irredundant form when nonempty
    Vec<S> cert;   // emptiness combo over the input rows, see verify_empty_cert
};

// Merge scaled duplicates, keeping the tightest right-hand side per normal.
template <Scalar S>
void dedupe_rows(HRep<S>& h) {
    for (auto& c : h.ineqs) canonicalize_ineq(c);
    for (auto& c : h.eqs) canonicalize_eq(c);
    std::map<Vec<S>, size_t, decltype([](const Vec<S>& a, const Vec<S>& b) {
                 return cmp_vec(a, b) < 0;
             })>
        seen;
    std::vector<LinIneq<S>> kept;
    for (auto& c : h.ineqs) {
        auto [it, fresh] = seen.emplace(c.a, kept.size());
        if (fresh) {
            kept.push_back(std::move(c));
            continue;
        }
        LinIneq<S>& prev = kept[it->second];
        int cmp = sgn(rhs_pair(c) - rhs_pair(prev));
        if (cmp < 0) prev = std::move(c);
    }
    h.ineqs = std::move(kept);
    std::map<Vec<S>, S, decltype([](const Vec<S>& a, const Vec<S>& b) {
                 return cmp_vec(a, b) < 0;
             })>
        eq_seen;
    std::vector<LinEq<S>> eq_kept;
    for (auto& c : h.eqs) {
        auto it = eq_seen.find(c.a);
        if (it == eq_seen.end()) {
            eq_seen.emplace(c.a, c.b);
            eq_kept.push_back(std::move(c));
        }
        // contradictory duplicate normals are left to the feasibility check
        else if (it->second != c.b)
            eq_kept.push_back(std::move(c));
    }
    h.eqs = std::move(eq_kept);
}

template <Scalar S>
MinimalForm<S> minimize_h(const HRep<S>& input) {
    using V = DPair<S>;
    MinimalForm<S> out;
    out.h = input;
    HRep<S>& h = out.h;
    {
        auto p = feasible_point(input);
        if (!p.ok) {
            out.empty = true;
            out.cert = std::move(p.cert);
            out.h = HRep<S>{};
            out.h.dim = input.dim;
            return out;
        }
    }
    dedupe_rows(h);

    // Inequalities whose bound is attained everywhere are implicit equations.
    // Decide first, convert after: the probes run against all of h.
    {
        std::vector<char> to_eq(h.ineqs.size(), 0);
        for (size_t i = 0; i < h.ineqs.size(); ++i) {
            const auto& c = h.ineqs[i];
            if (c.strict) continue;
            auto lo = lp_extreme<S, V>(h, c.a, Sense::minimize);
            if (lo.status == LpStatus::optimal && lo.value == V{c.b}) to_eq[i] = 1;
        }
        std::vector<LinIneq<S>> keep;
        for (size_t i = 0; i < h.ineqs.size(); ++i)
            if (to_eq[i])
                h.eqs.push_back({std::move(h.ineqs[i].a), std::move(h.ineqs[i].b)});
            else
                keep.push_back(std::move(h.ineqs[i]));
        h.ineqs = std::move(keep);
        dedupe_rows(h);
    }

    // Drop equations implied by everything else.
    for (size_t k = 0; k < h.eqs.size();) {
        LinEq<S> probe = h.eqs[k];
        HRep<S> rest = h;
        rest.eqs.erase(rest.eqs.begin() + k);
        auto hi = lp_extreme<S, V>(rest, probe.a, Sense::maximize);
        bool implied = hi.status == LpStatus::optimal && hi.value == V{probe.b};
        if (implied) {
            auto lo = lp_extreme<S, V>(rest, probe.a, Sense::minimize);
            implied = lo.status == LpStatus::optimal && lo.value == V{probe.b};
        }
        if (implied)
            h.eqs.erase(h.eqs.begin() + k);
        else
            ++k;
    }

    // Drop inequalities implied by everything else.
    for (size_t i = 0; i < h.ineqs.size();) {
        LinIneq<S> probe = h.ineqs[i];
        HRep<S> rest = h;
        rest.ineqs.erase(rest.ineqs.begin() + i);
        auto hi = lp_extreme<S, V>(rest, probe.a, Sense::maximize);
        bool drop = false;
        if (hi.status == LpStatus::optimal) {
            int cmp = sgn(hi.value - V{probe.b});
            drop = probe.strict ? cmp < 0 : cmp <= 0;
        }
        if (drop)
            h.ineqs.erase(h.ineqs.begin() + i);
        else
            ++i;
    }

    // Unique rendering: equations as the echelon basis of their row space,
    // inequality normals reduced to zero on the pivot columns.  Equivalent
    // minimal systems then compare byte-equal after canonicalize.
    if (!h.eqs.empty()) {
        Mat<S> aug;
        for (const auto& e : h.eqs) {
            aug.push_back(e.a);
            aug.back().push_back(e.b);
        }
        std::vector<size_t> piv = rref(aug);
        h.eqs.clear();
        for (size_t r = 0; r < piv.size(); ++r) {
            Vec<S> a(aug[r].begin(), aug[r].end() - 1);
            h.eqs.push_back({std::move(a), aug[r].back()});
        }
        for (auto& c : h.ineqs)
            for (size_t r = 0; r < piv.size(); ++r) {
                if (piv[r] >= h.dim) continue;  // unreachable: region is nonempty
                const S f = c.a[piv[r]];        // rref scales pivots to one
                if (is_zero(f)) continue;
                for (size_t j = 0; j < h.dim; ++j) c.a[j] -= f * h.eqs[r].a[j];
                c.b -= f * h.eqs[r].b;
            }
        dedupe_rows(h);  // reduction merges renderings of one facet
    }
    canonicalize(h);
    return out;
}

template <Scalar S>
long dimension(const HRep<S>& h) {
    if (!feasible_point(h).ok) throw PolytopeError("dimension: empty region");
    using V = DPair<S>;
    Mat<S> normals;
    for (const auto& e : h.eqs) normals.push_back(e.a);
    for (const auto& c : h.ineqs) {
        auto lo = lp_extreme<S, V>(h, c.a, Sense::minimize);
        if (lo.status == LpStatus::optimal && lo.value == V{c.b}) normals.push_back(c.a);
    }
    return static_cast<long>(h.dim) - static_cast<long>(rank(normals));
}

// ---------------------------------------------------------------------------
// Equation elimination: parameterize {x : E x = f} as x0 + N z.

template <Scalar S>
struct AffineChart {
    bool consistent = true;
    Vec<S> x0;   // particular solution
    Mat<S> dirs; // nullspace basis, one direction per free coordinate
};

template <Scalar S>
AffineChart<S> solve_affine(const Mat<S>& e, const Vec<S>& f, size_t dim) {
    AffineChart<S> ch;
    Mat<S> aug = e;
    for (size_t i = 0; i < aug.size(); ++i) aug[i].push_back(f[i]);
    std::vector<size_t> piv = rref(aug);
    for (size_t p : piv)
        if (p == dim) {
            ch.consistent = false;
            return ch;
        }
    std::vector<bool> is_piv(dim, false);
    for (size_t p : piv) is_piv[p] = true;
    ch.x0.assign(dim, S(0));
    for (size_t r = 0; r < piv.size(); ++r) ch.x0[piv[r]] = aug[r][dim];
    for (size_t j = 0; j < dim; ++j) {
        if (is_piv[j]) continue;
        Vec<S> v(dim, S(0));
        v[j] = S(1);
        for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -aug[r][j];
        ch.dirs.push_back(std::move(v));
    }
    return ch;
}

// ---------------------------------------------------------------------------
// Vertex enumeration.

namespace detail {

template <Scalar S>
struct DDVertex {
    Vec<S> z;
    Bits tight;
};

// Vertices of the intersection of halfspaces, seeded with a simplex known to
// strictly contain the region.  Standard double description on points: each
// cut keeps inside vertices and spawns one point per crossing edge, with
// edges recognized combinatorially from shared tight sets.
template <Scalar S>
std::vector<DDVertex<S>> dd_run(size_t k, const std::vector<DDVertex<S>>& simplex,
                                const Mat<S>& rows, const Vec<S>& rhs, size_t base) {
    std::vector<DDVertex<S>> verts = simplex;
    for (size_t c = 0; c < rows.size(); ++c) {
        const Vec<S>& a = rows[c];
        std::vector<int> side(verts.size());
        std::vector<S> val(verts.size());
        bool any_out = false;
        for (size_t i = 0; i < verts.size(); ++i) {
            val[i] = rhs[c] - dot(a, verts[i].z);
            side[i] = sgn(val[i]);
            any_out |= side[i] < 0;
        }
        if (!any_out) {
            for (size_t i = 0; i < verts.size(); ++i)
                if (side[i] == 0) verts[i].tight.set(base + c);
            continue;
        }
        // crossing edges first: one endpoint strictly in, one strictly out
        std::vector<DDVertex<S>> born;
        for (size_t i = 0; i < verts.size(); ++i) {
            if (side[i] <= 0) continue;
            for (size_t j = 0; j < verts.size(); ++j) {
                if (side[j] >= 0) continue;
                if (Bits::count_intersect(verts[i].tight, verts[j].tight) + 1 < k) continue;
                Bits common = Bits::intersect(verts[i].tight, verts[j].tight);
                bool edge = true;
                for (size_t t = 0; t < verts.size() && edge; ++t)
                    if (t != i && t != j && common.subset_of(verts[t].tight)) edge = false;
                if (!edge) continue;
                DDVertex<S> w;
                // val_i > 0 > val_j: the crossing point of the segment
                S span = val[i] - val[j];
                w.z.reserve(k);
                for (size_t r = 0; r < k; ++r)
                    w.z.push_back((verts[i].z[r] * (-val[j]) + verts[j].z[r] * val[i]) / span);
                w.tight = common;
                w.tight.set(base + c);
                born.push_back(std::move(w));
            }
        }
        std::vector<DDVertex<S>> next;
        for (size_t i = 0; i < verts.size(); ++i)
            if (side[i] >= 0) {
                if (side[i] == 0) verts[i].tight.set(base + c);
                next.push_back(std::move(verts[i]));
            }
        for (auto& w : born) next.push_back(std::move(w));
        verts = std::move(next);
    }
    // interior collapse can leave duplicates behind on degenerate inputs
    std::sort(verts.begin(), verts.end(),
              [](const DDVertex<S>& a, const DDVertex<S>& b) { return cmp_vec(a.z, b.z) < 0; });
    verts.erase(std::unique(verts.begin(), verts.end(),
                            [](const DDVertex<S>& a, const DDVertex<S>& b) {
                                return cmp_vec(a.z, b.z) == 0;
                            }),
                verts.end());
    return verts;
}

}  // namespace detail

template <Scalar S>
VRep<S> h_to_v(const HRep<S>& input) {
    using V = DPair<S>;
    VRep<S> out;
    out.dim = input.dim;
    if (!feasible_point(input).ok) return out;

    Mat<S> emat;
    Vec<S> evec;
    for (const auto& e : input.eqs) {
        emat.push_back(e.a);
        evec.push_back(e.b);
    }
    AffineChart<S> ch = solve_affine(emat, evec, input.dim);
    // consistent: the region is nonempty
    const size_t k = ch.dirs.size();
    auto lift = [&](const Vec<S>& z) {
        Vec<S> x = ch.x0;
        for (size_t j = 0; j < k; ++j)
            for (size_t r = 0; r < input.dim; ++r) x[r] += ch.dirs[j][r] * z[j];
        return x;
    };

    // inequalities in chart coordinates (closure: strictness dropped)
    Mat<S> rows;
    Vec<S> rhs;
    for (const auto& c : input.ineqs) {
        Vec<S> a(k, S(0));
        for (size_t j = 0; j < k; ++j)
            for (size_t r = 0; r < input.dim; ++r) a[j] += c.a[r] * ch.dirs[j][r];
        S b = c.b - dot(c.a, ch.x0);
        if (std::all_of(a.begin(), a.end(), [](const S& v) { return is_zero(v); })) continue;
        rows.push_back(std::move(a));
        rhs.push_back(std::move(b));
    }
    if (k == 0) {
        out.points.push_back(ch.x0);
        return out;
    }

    HRep<S> chart;
    chart.dim = k;
    for (size_t i = 0; i < rows.size(); ++i) chart.ineqs.push_back({rows[i], rhs[i], false});
    Vec<S> lo(k), hi(k);
    for (size_t j = 0; j < k; ++j) {
        Vec<S> unit(k, S(0));
        unit[j] = S(1);
        auto mn = lp_extreme<S, V>(chart, unit, Sense::minimize);
        auto mx = lp_extreme<S, V>(chart, unit, Sense::maximize);
        if (mn.status != LpStatus::optimal || mx.status != LpStatus::optimal)
            throw PolytopeError("h_to_v: region is unbounded");
        lo[j] = mn.value.v;
        hi[j] = mx.value.v;
    }

    // strictly containing simplex: z_j >= lo_j - 1, sum z_j <= sum hi_j + 1
    const size_t nbits = k + 1 + rows.size();
    std::vector<detail::DDVertex<S>> simplex;
    S m{};
    for (size_t j = 0; j < k; ++j) m += hi[j];
    m += S(1);
    {
        detail::DDVertex<S> corner;
        corner.tight = Bits(nbits);
        for (size_t j = 0; j < k; ++j) {
            corner.z.push_back(lo[j] - S(1));
            corner.tight.set(j);
        }
        for (size_t peak = 0; peak < k; ++peak) {
            detail::DDVertex<S> v = corner;
            v.tight.reset(peak);
            v.tight.set(k);  // on the sum facet
            S rest{};
            for (size_t j = 0; j < k; ++j)
                if (j != peak) rest += v.z[j];
            v.z[peak] = m - rest;
            simplex.push_back(std::move(v));
        }
        simplex.push_back(std::move(corner));
    }

    auto verts = detail::dd_run(k, simplex, rows, rhs, k + 1);
    for (auto& v : verts) out.points.push_back(lift(v.z));
    std::sort(out.points.begin(), out.points.end(),
              [](const Vec<S>& a, const Vec<S>& b) { return cmp_vec(a, b) < 0; });
    return out;
}

// ---------------------------------------------------------------------------
// Facet enumeration of a finite point set.

template <Scalar S>
HRep<S> v_to_h(const VRep<S>& input) {
    const size_t d = input.dim;
    HRep<S> out;
    out.dim = d;
    if (input.points.empty()) {
        out.ineqs.push_back({Vec<S>(d, S(0)), S(-1), false});  // unsatisfiable
        return out;
    }

    // affine hull: directions from the first point, equations from its kernel
    const Vec<S>& x0 = input.points[0];
    Mat<S> dirs;
    for (size_t i = 1; i < input.points.size(); ++i) {
        Vec<S> v(d);
        for (size_t r = 0; r < d; ++r) v[r] = input.points[i][r] - x0[r];
        dirs.push_back(std::move(v));
    }
    Mat<S> red = dirs;
    std::vector<size_t> piv = rref(red);
    const size_t k = piv.size();
    for (auto& n : nullspace(dirs, d)) {
        S b = dot(n, x0);
        out.eqs.push_back({std::move(n), std::move(b)});
    }
    if (k == 0) {
        canonicalize(out);
        return out;
    }

    // chart coordinates: components at pivot columns (rref has identity there)
    auto to_chart = [&](const Vec<S>& x) {
        Vec<S> z(k);
        for (size_t j = 0; j < k; ++j) z[j] = x[piv[j]] - x0[piv[j]];
        return z;
    };
    std::vector<Vec<S>> zs;
    zs.reserve(input.points.size());
    for (const auto& p : input.points) zs.push_back(to_chart(p));

    Vec<S> centroid(k, S(0));
    for (const auto& z : zs)
        for (size_t j = 0; j < k; ++j) centroid[j] += z[j];
    for (auto& v : centroid) v = v / S(Rat(static_cast<long>(zs.size())));

    // polar body around the centroid; its vertices are our facets
    HRep<S> polar;
    polar.dim = k;
    for (const auto& z : zs) {
        Vec<S> a(k);
        for (size_t j = 0; j < k; ++j) a[j] = z[j] - centroid[j];
        if (std::all_of(a.begin(), a.end(), [](const S& v) { return is_zero(v); })) continue;
        polar.ineqs.push_back({std::move(a), S(1), false});
    }
    dedupe_rows(polar);
    VRep<S> pv = h_to_v(polar);

    // y.(z - centroid) <= 1 back to ambient coordinates: the chart is a
    // coordinate projection, so scatter the normal to the pivot columns.
    for (const auto& y : pv.points) {
        Vec<S> a(d, S(0));
        for (size_t j = 0; j < k; ++j) a[piv[j]] = y[j];
        S b = S(1) + dot(y, centroid);
        // undo the x0 shift: a.x <= b + a.x0
        b += [&] {
            S acc{};
            for (size_t j = 0; j < k; ++j) acc += y[j] * x0[piv[j]];
            return acc;
        }();
        out.ineqs.push_back({std::move(a), std::move(b), false});
    }
    canonicalize(out);
    return out;
}

// ---------------------------------------------------------------------------
// Projection.

// Remove redundant inequalities only; used to control growth mid-projection.
template <Scalar S>
void drop_redundant_ineqs(HRep<S>& h) {
    using V = DPair<S>;
    dedupe_rows(h);
    for (size_t i = 0; i < h.ineqs.size();) {
        LinIneq<S> probe = h.ineqs[i];
        HRep<S> rest = h;
        rest.ineqs.erase(rest.ineqs.begin() + i);
        auto hi = lp_extreme<S, V>(rest, probe.a, Sense::maximize);
        bool drop = false;
        if (hi.status == LpStatus::optimal) {
            int cmp = sgn(hi.value - V{probe.b});
            drop = probe.strict ? cmp < 0 : cmp <= 0;
        }
        if (drop)
            h.ineqs.erase(h.ineqs.begin() + i);
        else
            ++i;
    }
}

namespace detail {

// Inequality plus the set of input rows it descends from.  Two classical
// Fourier-Motzkin prunes apply to these: after k combination stages a row
// descending from more than k+1 inputs is redundant (Kohler), and a row
// whose ancestor set strictly contains another surviving row's is redundant
// (Chernikov).  Both only ever drop implied rows, so the projection stays
// exact; they exist to keep the pairwise combination step from exploding.
template <Scalar S>
struct FmRow {
    LinIneq<S> c;
    Bits hist;
};

template <Scalar S>
void fm_dedupe(std::vector<FmRow<S>>& rows) {
    for (auto& r : rows) canonicalize_ineq(r.c);
    std::map<Vec<S>, size_t, decltype([](const Vec<S>& a, const Vec<S>& b) {
                 return cmp_vec(a, b) < 0;
             })>
        seen;
    std::vector<FmRow<S>> kept;
    for (auto& r : rows) {
        auto [it, fresh] = seen.emplace(r.c.a, kept.size());
        if (fresh) {
            kept.push_back(std::move(r));
            continue;
        }
        FmRow<S>& prev = kept[it->second];
        if (sgn(rhs_pair(r.c) - rhs_pair(prev.c)) < 0) prev = std::move(r);
    }
    rows = std::move(kept);
}

template <Scalar S>
void fm_dominance(std::vector<FmRow<S>>& rows) {
    std::vector<char> dead(rows.size(), 0);
    for (size_t i = 0; i < rows.size(); ++i) {
        for (size_t j = 0; j < rows.size() && !dead[i]; ++j) {
            if (i == j || dead[j]) continue;
            if (rows[j].hist.subset_of(rows[i].hist) && !rows[i].hist.subset_of(rows[j].hist))
                dead[i] = 1;
        }
    }
    size_t w = 0;
    for (size_t i = 0; i < rows.size(); ++i)
        if (!dead[i]) {
            if (w != i) rows[w] = std::move(rows[i]);
            ++w;
        }
    rows.resize(w);
}

}  // namespace detail

// Project away the coordinates in vars (indices into the input space); the
// result lives on the remaining coordinates in their original order.
// eliminate_min exposes the emptiness flag; eliminate folds an empty
// projection into the single unsatisfiable row 0.x <= -1.
template <Scalar S>
MinimalForm<S> eliminate_min(const HRep<S>& input, std::vector<size_t> vars) {
    using V = DPair<S>;
    std::sort(vars.begin(), vars.end());
    size_t dim = input.dim;
    std::vector<LinEq<S>> eqs = input.eqs;
    std::vector<detail::FmRow<S>> rows;

    size_t stages = 0;  // combination stages since the ancestor sets were reset
    auto reset_hist = [&] {
        stages = 0;
        for (size_t i = 0; i < rows.size(); ++i) {
            rows[i].hist = Bits(rows.size());
            rows[i].hist.set(i);
        }
    };
    for (const auto& c : input.ineqs) rows.push_back({c, Bits{}});
    reset_hist();

    auto lp_prune = [&] {
        HRep<S> cur;
        cur.dim = dim;
        cur.eqs = eqs;
        for (const auto& r : rows) cur.ineqs.push_back(r.c);
        for (size_t i = 0; i < rows.size();) {
            HRep<S> rest = cur;
            rest.ineqs.erase(rest.ineqs.begin() + i);
            auto hi = lp_extreme<S, V>(rest, rows[i].c.a, Sense::maximize);
            bool drop = false;
            if (hi.status == LpStatus::optimal) {
                int cmp = sgn(hi.value - V{rows[i].c.b});
                drop = rows[i].c.strict ? cmp < 0 : cmp <= 0;
            }
            if (drop) {
                cur.ineqs.erase(cur.ineqs.begin() + i);
                rows.erase(rows.begin() + i);
            } else
                ++i;
        }
    };

    for (size_t step = vars.size(); step-- > 0;) {
        const size_t v = vars[step];  // descending: keeps earlier indices valid
        auto strip = [v](Vec<S>& a) {
            a.erase(a.begin() + v);
        };

        // substitution via an equation that mentions the variable
        size_t sub = eqs.size();
        for (size_t e = 0; e < eqs.size(); ++e)
            if (!is_zero(eqs[e].a[v])) {
                sub = e;
                break;
            }
        if (sub < eqs.size()) {
            const LinEq<S> src = eqs[sub];
            const S& c = src.a[v];
            std::vector<LinEq<S>> next_eqs;
            for (size_t e = 0; e < eqs.size(); ++e) {
                if (e == sub) continue;
                LinEq<S> row = eqs[e];
                const S f = row.a[v] / c;
                if (!is_zero(f)) {
                    for (size_t j = 0; j < row.a.size(); ++j) row.a[j] -= f * src.a[j];
                    row.b -= f * src.b;
                }
                strip(row.a);
                next_eqs.push_back(std::move(row));
            }
            eqs = std::move(next_eqs);
            for (auto& r : rows) {
                const S f = r.c.a[v] / c;
                if (!is_zero(f)) {
                    for (size_t j = 0; j < r.c.a.size(); ++j) r.c.a[j] -= f * src.a[j];
                    r.c.b -= f * src.b;
                }
                strip(r.c.a);
            }
            --dim;
            detail::fm_dedupe(rows);
            reset_hist();  // substitution rewrites rows, old ancestry is void
            continue;
        }

        for (auto& e : eqs) strip(e.a);
        std::vector<size_t> pos, neg;
        std::vector<detail::FmRow<S>> next;
        for (size_t i = 0; i < rows.size(); ++i) {
            int s = sgn(rows[i].c.a[v]);
            if (s > 0)
                pos.push_back(i);
            else if (s < 0)
                neg.push_back(i);
            else {
                detail::FmRow<S> r = std::move(rows[i]);
                strip(r.c.a);
                next.push_back(std::move(r));
            }
        }
        ++stages;
        for (size_t p : pos)
            for (size_t n : neg) {
                const LinIneq<S>&P = rows[p].c, &N = rows[n].c;
                const S cp = P.a[v], cn = N.a[v];  // cp > 0 > cn
                detail::FmRow<S> r;
                r.c.a.resize(dim);
                for (size_t j = 0; j < dim; ++j) r.c.a[j] = P.a[j] * (-cn) + N.a[j] * cp;
                r.c.b = P.b * (-cn) + N.b * cp;
                r.c.strict = P.strict || N.strict;
                strip(r.c.a);
                r.hist = Bits::unite(rows[p].hist, rows[n].hist);
                if (r.hist.count() > stages + 1) continue;  // Kohler
                next.push_back(std::move(r));
            }
        rows = std::move(next);
        --dim;
        detail::fm_dedupe(rows);
        detail::fm_dominance(rows);
        if (rows.size() > 24) lp_prune();
    }

    HRep<S> h;
    h.dim = dim;
    h.eqs = std::move(eqs);
    for (auto& r : rows) h.ineqs.push_back(std::move(r.c));
    return minimize_h(h);
}

template <Scalar S>
HRep<S> eliminate(const HRep<S>& input, std::vector<size_t> vars) {
    MinimalForm<S> m = eliminate_min(input, std::move(vars));
    if (!m.empty) return std::move(m.h);
    HRep<S> none;
    none.dim = m.h.dim;
    none.ineqs.push_back({Vec<S>(none.dim, S(0)), S(-1), false});
    return none;
}

// ---------------------------------------------------------------------------
// Complement projection.

namespace detail {

// One inequality per part of the complement: a weak row flips to its strict
// reverse, a strict row to its weak reverse, an equation splits into the two
// strict sides.
template <Scalar S>
std::vector<LinIneq<S>> negated_rows(const HRep<S>& constr) {
    std::vector<LinIneq<S>> out;
    auto flip = [](const Vec<S>& a) {
        Vec<S> r(a.size());
        for (size_t j = 0; j < a.size(); ++j) r[j] = -a[j];
        return r;
    };
    for (const auto& c : constr.ineqs) out.push_back({flip(c.a), -c.b, !c.strict});
    for (const auto& e : constr.eqs) {
        out.push_back({e.a, e.b, true});
        out.push_back({flip(e.a), -e.b, true});
    }
    return out;
}

template <Scalar S>
RegionSet<S> complement_project_rows(const HRep<S>& base, std::vector<LinIneq<S>> negs,
                                     const std::vector<size_t>& vars) {
    RegionSet<S> out;
    out.dim = base.dim - vars.size();
    for (auto& row : negs) {
        HRep<S> part = base;
        part.ineqs.push_back(std::move(row));
        MinimalForm<S> m = eliminate_min(part, vars);
        if (!m.empty) out.parts.push_back(std::move(m.h));
    }
    std::sort(out.parts.begin(), out.parts.end(),
              [](const HRep<S>& a, const HRep<S>& b) { return cmp_hrep(a, b) < 0; });
    out.parts.erase(std::unique(out.parts.begin(), out.parts.end(),
                                [](const HRep<S>& a, const HRep<S>& b) {
                                    return cmp_hrep(a, b) == 0;
                                }),
                    out.parts.end());
    return out;
}

}  // namespace detail

// Points of the projected space reachable, for some assignment of the
// eliminated coordinates inside base, while violating constr.  Used as the
// bridge from "couplings that escape a constraint" to explicit regions.
// Strict rows stay symbolic: feasibility and projection treat a strict bound
// b as b minus an infinitesimal, so no numeric fudge factor is involved.
template <Scalar S>
RegionSet<S> complement_project(const HRep<S>& base, const HRep<S>& constr,
                                const std::vector<size_t>& vars) {
    return detail::complement_project_rows(base, detail::negated_rows(constr), vars);
}

// Sweep variant: every strict row is closed off as a.x <= b - delta before
// projecting, reproducing the small-positive-number approximation.  Results
// should stabilize to the symbolic answer as delta shrinks.
template <Scalar S>
RegionSet<S> complement_project(const HRep<S>& base, const HRep<S>& constr,
                                const std::vector<size_t>& vars, const S& delta) {
    if (sgn(delta) <= 0) throw PolytopeError("complement_project: delta must be positive");
    auto negs = detail::negated_rows(constr);
    HRep<S> closed = base;
    auto close = [&](LinIneq<S>& c) {
        if (!c.strict) return;
        c.b = c.b - delta;
        c.strict = false;
    };
    for (auto& c : closed.ineqs) close(c);
    for (auto& c : negs) close(c);
    return detail::complement_project_rows(closed, negs, vars);
}

}  // namespace ctx
