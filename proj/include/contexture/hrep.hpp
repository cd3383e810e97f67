#pragma once

// Constraint-form (H) and vertex-form (V) descriptions of convex polytopes,
// plus finite unions of H-form parts (RegionSet).  Inequalities may be
// strict; equations never are.  Canonical form scales every constraint to a
// primitive integer vector and sorts, so equal sets compare byte-equal after
// minimization.

#include <contexture/linalg.hpp>
#include <contexture/scalar.hpp>

#include <algorithm>
#include <vector>

namespace ctx {

template <Scalar S>
struct LinIneq {
    Vec<S> a;
    S b{};
    bool strict = false;  // true: a.x < b, else a.x <= b
};

template <Scalar S>
struct LinEq {
    Vec<S> a;
    S b{};
};

template <Scalar S>
struct HRep {
    size_t dim = 0;
    std::vector<LinIneq<S>> ineqs;
    std::vector<LinEq<S>> eqs;
};

template <Scalar S>
struct VRep {
    size_t dim = 0;
    Mat<S> points;
};

template <Scalar S>
struct RegionSet {
    size_t dim = 0;
    std::vector<HRep<S>> parts;
};

// rhs of an inequality as a lexicographic pair: a.x < b  <=>  a.x <= b - delta.
template <Scalar S>
DPair<S> rhs_pair(const LinIneq<S>& c) {
    return {c.b, c.strict ? S(-1) : S(0)};
}

template <Scalar S>
int cmp_vec(const Vec<S>& a, const Vec<S>& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        int s = sgn(a[i] - b[i]);
        if (s != 0) return s;
    }
    return 0;
}

// Primitive integer scaling.  Inequalities only admit positive factors;
// equations are additionally sign-normalized on the first nonzero entry.
template <Scalar S>
void canonicalize_ineq(LinIneq<S>& c) {
    Vec<S> row = c.a;
    row.push_back(c.b);
    make_primitive(row);
    c.b = row.back();
    row.pop_back();
    c.a = std::move(row);
}

template <Scalar S>
void canonicalize_eq(LinEq<S>& c) {
    Vec<S> row = c.a;
    row.push_back(c.b);
    make_primitive(row);
    for (const S& x : row)
        if (int s = sgn(x); s != 0) {
            if (s < 0)
                for (S& y : row) y = -y;
            break;
        }
    c.b = row.back();
    row.pop_back();
    c.a = std::move(row);
}

template <Scalar S>
void canonicalize(HRep<S>& h) {
    for (auto& c : h.ineqs) canonicalize_ineq(c);
    for (auto& c : h.eqs) canonicalize_eq(c);
    std::sort(h.ineqs.begin(), h.ineqs.end(), [](const LinIneq<S>& x, const LinIneq<S>& y) {
        int c = cmp_vec(x.a, y.a);
        if (c != 0) return c < 0;
        int cb = sgn(x.b - y.b);
        if (cb != 0) return cb < 0;
        return x.strict < y.strict;
    });
    std::sort(h.eqs.begin(), h.eqs.end(), [](const LinEq<S>& x, const LinEq<S>& y) {
        int c = cmp_vec(x.a, y.a);
        if (c != 0) return c < 0;
        return sgn(x.b - y.b) < 0;
    });
}

// Total order on canonicalized representations, for sorting RegionSet parts.
template <Scalar S>
int cmp_hrep(const HRep<S>& x, const HRep<S>& y) {
    if (x.eqs.size() != y.eqs.size()) return x.eqs.size() < y.eqs.size() ? -1 : 1;
    if (x.ineqs.size() != y.ineqs.size()) return x.ineqs.size() < y.ineqs.size() ? -1 : 1;
    for (size_t i = 0; i < x.eqs.size(); ++i) {
        int c = cmp_vec(x.eqs[i].a, y.eqs[i].a);
        if (c != 0) return c;
        c = sgn(x.eqs[i].b - y.eqs[i].b);
        if (c != 0) return c;
    }
    for (size_t i = 0; i < x.ineqs.size(); ++i) {
        int c = cmp_vec(x.ineqs[i].a, y.ineqs[i].a);
        if (c != 0) return c;
        c = sgn(x.ineqs[i].b - y.ineqs[i].b);
        if (c != 0) return c;
        if (x.ineqs[i].strict != y.ineqs[i].strict) return x.ineqs[i].strict ? 1 : -1;
    }
    return 0;
}

template <Scalar S>
bool identical(const HRep<S>& a, const HRep<S>& b) {
    if (a.dim != b.dim || a.ineqs.size() != b.ineqs.size() || a.eqs.size() != b.eqs.size())
        return false;
    for (size_t i = 0; i < a.ineqs.size(); ++i) {
        const auto& x = a.ineqs[i];
        const auto& y = b.ineqs[i];
        if (x.strict != y.strict || sgn(x.b - y.b) != 0 || cmp_vec(x.a, y.a) != 0) return false;
    }
    for (size_t i = 0; i < a.eqs.size(); ++i) {
        const auto& x = a.eqs[i];
        const auto& y = b.eqs[i];
        if (sgn(x.b - y.b) != 0 || cmp_vec(x.a, y.a) != 0) return false;
    }
    return true;
}

template <Scalar S>
bool contains(const HRep<S>& h, const Vec<S>& x) {
    for (const auto& c : h.ineqs) {
        int s = sgn(dot(c.a, x) - c.b);
        if (s > 0 || (s == 0 && c.strict)) return false;
    }
    for (const auto& c : h.eqs)
        if (!is_zero(dot(c.a, x) - c.b)) return false;
    return true;
}

template <Scalar S>
bool contains(const RegionSet<S>& r, const Vec<S>& x) {
    for (const auto& p : r.parts)
        if (contains(p, x)) return true;
    return false;
}

// Convenience builders.
template <Scalar S>
HRep<S> box(size_t dim, const S& lo, const S& hi) {
    HRep<S> h;
    h.dim = dim;
    for (size_t i = 0; i < dim; ++i) {
        Vec<S> up(dim, S(0)), down(dim, S(0));
        up[i] = S(1);
        down[i] = S(-1);
        h.ineqs.push_back({std::move(up), hi, false});
        h.ineqs.push_back({std::move(down), -lo, false});
    }
    return h;
}

template <Scalar S>
HRep<S> intersect(HRep<S> a, const HRep<S>& b) {
    a.ineqs.insert(a.ineqs.end(), b.ineqs.begin(), b.ineqs.end());
    a.eqs.insert(a.eqs.end(), b.eqs.begin(), b.eqs.end());
    return a;
}

}  // namespace ctx
