// homogeneous.hpp
//
// The homogeneous 2x2 binary system: both outputs equiprobable under every
// treatment, so each treatment's distribution is determined by a single
// probability p_ij = Pr[A_ij=+1, B_ij=+1], and each coupling of the two
// copies of an output across treatments by e = Pr[both copies +1].  This
// header holds the vector types, the signed-sum machinery, the closed-form
// membership predicates, and the benchmark constraint kinds.

#pragma once

#include <array>
#include <bit>
#include <stdexcept>
#include <string>
#include <utility>

#include "contexture/hrep.hpp"
#include "contexture/scalar.hpp"
#include "contexture/system.hpp"

namespace ctx {

// Empirical probabilities, one per treatment.  Valid range is [0, 1/2]:
// Pr[both +1] cannot exceed either 1/2 marginal.
template <Scalar S>
struct PVec {
    S p11{}, p12{}, p21{}, p22{};

    std::array<S, 4> comps() const { return {p11, p12, p21, p22}; }
    bool valid() const {
        for (const S& x : comps())
            if (sgn(x) < 0 || x > S(rat(1, 2))) return false;
        return true;
    }
};

// Connection probabilities e{level}{output side}: e11 and e21 couple the two
// A-side copies sharing alpha level 1 resp. 2, e12 and e22 the B-side copies
// sharing beta level 1 resp. 2.  Same [0, 1/2] range as PVec.
template <Scalar S>
struct EVec {
    S e11{}, e21{}, e12{}, e22{};

    std::array<S, 4> comps() const { return {e11, e21, e12, e22}; }
    bool valid() const {
        for (const S& x : comps())
            if (sgn(x) < 0 || x > S(rat(1, 2))) return false;
        return true;
    }
};

using PVector = PVec<Rat>;
using EVector = EVec<Rat>;

// Recenter a 4-vector at 1/4 and form all 16 signed sums.  values[m] uses
// sign pattern m: bit k of m set means component k enters with '+'.  The
// maxima are split by the parity of the number of '+' signs: max_s0 over
// even patterns, max_s1 over odd.
template <Scalar S>
struct SSplit {
    std::array<S, 16> values{};
    S max_s0{}, max_s1{};

    static bool even_mask(unsigned m) { return std::popcount(m) % 2 == 0; }
    static std::string sign_label(unsigned m) {
        std::string s(4, '-');
        for (int k = 0; k < 4; ++k)
            if (m >> k & 1) s[size_t(k)] = '+';
        return s;
    }
};

template <Scalar S>
SSplit<S> s_split(const std::array<S, 4>& v) {
    std::array<S, 4> c;
    for (size_t k = 0; k < 4; ++k) c[k] = v[k] - S(rat(1, 4));
    SSplit<S> out;
    bool seen0 = false, seen1 = false;
    for (unsigned m = 0; m < 16; ++m) {
        S acc{};
        for (size_t k = 0; k < 4; ++k) {
            if (m >> k & 1)
                acc += c[k];
            else
                acc -= c[k];
        }
        bool even = SSplit<S>::even_mask(m);
        bool& seen = even ? seen0 : seen1;
        S& best = even ? out.max_s0 : out.max_s1;
        if (!seen || acc > best) {
            best = acc;
            seen = true;
        }
        out.values[m] = std::move(acc);
    }
    return out;
}

template <Scalar S>
SSplit<S> s_split(const PVec<S>& p) {
    return s_split(p.comps());
}
template <Scalar S>
SSplit<S> s_split(const EVec<S>& e) {
    return s_split(e.comps());
}

// The four combinations that negate exactly one component: sum - 2*v[k].
template <Scalar S>
std::array<S, 4> chsh_combos(const std::array<S, 4>& v) {
    S total = v[0] + v[1] + v[2] + v[3];
    std::array<S, 4> out;
    for (size_t k = 0; k < 4; ++k) out[k] = total - S(2) * v[k];
    return out;
}

namespace detail {

template <Scalar S>
bool combos_within(const PVec<S>& p, const QuadRat& lo, const QuadRat& hi) {
    for (const S& c : chsh_combos(p.comps())) {
        QuadRat q = to_quad(c);
        if (q < lo || q > hi) return false;
    }
    return true;
}

}  // namespace detail

// Bell/CHSH: every one-minus combination of the p's lies in [0, 1].
template <Scalar S>
bool bell_chsh(const PVec<S>& p) {
    return detail::combos_within(p, QuadRat(0), QuadRat(1));
}

// Cirel'son band: combinations within [(1-sqrt2)/2, (1+sqrt2)/2].
template <Scalar S>
bool cirelson(const PVec<S>& p) {
    QuadRat half_root{rat(1, 2), rat(1, 2)};  // (1+sqrt2)/2
    return detail::combos_within(p, QuadRat(1) - half_root, half_root);
}

// No-constraint band: combinations within [-1/2, 3/2].  On the valid box
// this always holds; it is the widest the combinations can get.
template <Scalar S>
bool chaos_bound(const PVec<S>& p) {
    return detail::combos_within(p, QuadRat(rat(-1, 2)), QuadRat(rat(3, 2)));
}

// Compact membership test for the coupling polytope: a pair (p, e) admits a
// joint distribution over all eight output copies reproducing both the
// treatment joints and the connection probabilities iff
//   max(maxS0 p + maxS1 e, maxS1 p + maxS0 e) <= 3/2.
template <Scalar S>
bool elfp_member(const PVec<S>& p, const EVec<S>& e) {
    auto sp = s_split(p), se = s_split(e);
    const S cap = S(rat(3, 2));
    return sp.max_s0 + se.max_s1 <= cap && sp.max_s1 + se.max_s0 <= cap;
}

// Slack budgets of a connection vector, each the literal minimum of eight
// affine terms.  They bound the reach of the p combinations compatible with
// e: every one-minus combination must lie in [-slack_even, 1 + slack_even],
// the full sum in [-slack_odd, 2 + slack_odd], and each two-minus
// combination in [-(1 + slack_odd), 1 + slack_odd].  Tests check the
// equivalent identities slack_even = 1 - maxS0 e, slack_odd = 1/2 - maxS1 e.
template <Scalar S>
S slack_even(const EVec<S>& e) {
    const S one = S(1);
    std::array<S, 8> t = {
        one - e.e11 - e.e12 + e.e21 + e.e22,
        one - e.e11 + e.e12 - e.e21 + e.e22,
        one - e.e11 + e.e12 + e.e21 - e.e22,
        one + e.e11 - e.e12 - e.e21 + e.e22,
        one + e.e11 - e.e12 + e.e21 - e.e22,
        one + e.e11 + e.e12 - e.e21 - e.e22,
        e.e11 + e.e12 + e.e21 + e.e22,
        S(2) - e.e11 - e.e12 - e.e21 - e.e22,
    };
    S best = t[0];
    for (size_t k = 1; k < 8; ++k)
        if (t[k] < best) best = t[k];
    return best;
}

template <Scalar S>
S slack_odd(const EVec<S>& e) {
    const S one = S(1);
    std::array<S, 8> t = {
        -e.e11 + e.e12 + e.e21 + e.e22,
        e.e11 - e.e12 + e.e21 + e.e22,
        e.e11 + e.e12 - e.e21 + e.e22,
        e.e11 + e.e12 + e.e21 - e.e22,
        one - e.e11 - e.e12 - e.e21 + e.e22,
        one - e.e11 - e.e12 + e.e21 - e.e22,
        one - e.e11 + e.e12 - e.e21 - e.e22,
        one + e.e11 - e.e12 - e.e21 - e.e22,
    };
    S best = t[0];
    for (size_t k = 1; k < 8; ++k)
        if (t[k] < best) best = t[k];
    return best;
}

// ---------------------------------------------------------------------------
// Benchmark constraints on p.

enum class ConstraintTag { chaos, quant, classical, fix, custom };

enum class SetKind { all, fit, force, equi };

struct ConstraintKind {
    ConstraintTag tag = ConstraintTag::chaos;
    PVector fixed{};    // tag == fix
    HRep<Rat> region;   // tag == custom; constraints on (p11, p12, p21, p22)

    static ConstraintKind chaos() { return {ConstraintTag::chaos, {}, {}}; }
    static ConstraintKind quant() { return {ConstraintTag::quant, {}, {}}; }
    static ConstraintKind classical() { return {ConstraintTag::classical, {}, {}}; }
    static ConstraintKind fix(PVector p) { return {ConstraintTag::fix, std::move(p), {}}; }
    static ConstraintKind custom(HRep<Rat> h) {
        if (h.dim != 4) throw std::invalid_argument("ConstraintKind::custom: constraints must be 4-dimensional");
        return {ConstraintTag::custom, {}, std::move(h)};
    }
};

// Does p satisfy the constraint?  p is assumed to be in the valid box.
template <Scalar S>
bool constraint_member(const ConstraintKind& c, const PVec<S>& p) {
    switch (c.tag) {
        case ConstraintTag::chaos:
            return chaos_bound(p);
        case ConstraintTag::quant:
            return cirelson(p);
        case ConstraintTag::classical:
            return bell_chsh(p);
        case ConstraintTag::fix: {
            auto x = p.comps();
            auto f = PVec<S>{S(c.fixed.p11), S(c.fixed.p12), S(c.fixed.p21), S(c.fixed.p22)}.comps();
            for (size_t k = 0; k < 4; ++k)
                if (!is_zero(S(x[k] - f[k]))) return false;
            return true;
        }
        case ConstraintTag::custom: {
            auto x = p.comps();
            auto eval = [&x](const Vec<Rat>& a) {
                S acc{};
                for (size_t k = 0; k < 4; ++k) acc += S(a[k]) * x[k];
                return acc;
            };
            for (const auto& eq : c.region.eqs)
                if (!is_zero(eval(eq.a) - S(eq.b))) return false;
            for (const auto& in : c.region.ineqs) {
                S lhs = eval(in.a);
                if (in.strict ? !(lhs < S(in.b)) : !(lhs <= S(in.b))) return false;
            }
            return true;
        }
    }
    throw std::logic_error("constraint_member: bad tag");
}

// Closed-form membership for the Fit/Force/Equi sets of the three benchmark
// constraints (these sets constrain e alone; All needs p as well, and fix
// and custom have no closed forms here).
template <Scalar S>
bool closed_form_member(ConstraintTag tag, SetKind kind, const EVec<S>& e) {
    if (kind == SetKind::all) throw std::invalid_argument("closed_form_member: All is a set of (p, e) pairs");
    auto se = s_split(e);
    const S half = S(rat(1, 2));
    switch (tag) {
        case ConstraintTag::chaos:
            // Force is the whole box; Fit and Equi coincide.
            return kind == SetKind::force || (se.max_s0 <= half && se.max_s1 <= half);
        case ConstraintTag::quant: {
            const QuadRat thr{rat(3, 2), rat(-1, 2)};  // (3 - sqrt2)/2
            if (kind == SetKind::fit) return to_quad(se.max_s0) <= thr && se.max_s1 <= half;
            if (kind == SetKind::force) return to_quad(se.max_s0) >= thr;
            bool hit = false;
            for (unsigned m = 0; m < 16 && !hit; ++m)
                hit = SSplit<S>::even_mask(m) && to_quad(se.values[m]) == thr;
            return hit && se.max_s1 <= half;
        }
        case ConstraintTag::classical: {
            if (kind == SetKind::fit) return se.max_s1 <= half;
            // Force: some even signed sum reaches 1, which already caps the
            // odd sums at 1/2, so Equi coincides with Force.
            for (unsigned m = 0; m < 16; ++m)
                if (SSplit<S>::even_mask(m) && is_zero(se.values[m] - S(1))) return true;
            return false;
        }
        default:
            throw std::invalid_argument("closed_form_member: only chaos, quant, and class have closed forms");
    }
}

// Bounds describing the fit set of a single fixed p: e fits p exactly when
//   maxS1 e <= 3/2 - maxS0 p   and   maxS0 e <= 3/2 - maxS1 p.
// Returns the two right-hand sides in that order.
template <Scalar S>
std::pair<S, S> fit_fix_bounds(const PVec<S>& p) {
    auto sp = s_split(p);
    const S cap = S(rat(3, 2));
    return {cap - sp.max_s0, cap - sp.max_s1};
}

// Normalized volume of the fit set of a fixed p as a function of
// x = maxS0 p, y = maxS1 p.  The attainable (x, y) pairs form the triangle
// with corners (0,0), (1/2,1), (1,1/2); anything else is rejected.
template <Scalar S>
S fit_fix_volume_polynomial(const S& x, const S& y) {
    if (y > S(2) * x || x > S(2) * y || x + y > S(rat(3, 2)))
        throw std::domain_error("fit_fix_volume_polynomial: no p has these signed-sum maxima");
    auto quartic = [](const S& z) {
        return S(-1) + S(8) * z - S(24) * z * z + S(32) * z * z * z - S(16) * z * z * z * z;
    };
    const S half = S(rat(1, 2));
    S out = S(1);
    if (x >= half) out += quartic(x) / S(3);
    if (y >= half) out += quartic(y) / S(3);
    return out;
}

// The factorial system realizing p under equiprobable marginals: each
// treatment table is (p, 1/2-p, 1/2-p, p).
inline FactorialSystem homogeneous_system(const PVector& p) {
    auto mk = [](const Rat& x) { return OutcomeTable{x, rat(1, 2) - x, rat(1, 2) - x, x}; };
    auto c = p.comps();
    return FactorialSystem{{mk(c[0]), mk(c[1]), mk(c[2]), mk(c[3])}};
}

}  // namespace ctx
