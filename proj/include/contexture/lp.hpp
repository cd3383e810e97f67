#pragma once

// Exact linear programming.
//
// EqSimplex      min c.x s.t. A x = b, x >= 0: revised simplex with an
//                explicit basis inverse.  Bland's rule throughout (least
//                eligible index enters, least basis index breaks ratio
//                ties), so every pivot sequence terminates.  Values (b, c,
//                objective) live in a module V over the scalar field S:
//                V = S for plain problems, V = DPair<S> when right-hand
//                sides or costs carry an infinitesimal that encodes strict
//                inequalities.
//
// feasible       decides M q = p, q >= 0; returns the point or a Farkas
//                vector y with y.M >= 0 and y.p < 0.
//
// lp_extreme     max/min of a linear functional over an HRep, solved via
//                the LP dual so the simplex row count equals the ambient
//                dimension rather than the constraint count.  The primal
//                point is read off the simplex multipliers.
//
// feasible_point rational point of an HRep (strict inequalities honored)
//                or a per-constraint infeasibility certificate.

#include <contexture/hrep.hpp>
#include <contexture/linalg.hpp>
#include <contexture/scalar.hpp>

#include <stdexcept>
#include <variant>
#include <vector>

namespace ctx {

enum class Sense { minimize, maximize };
enum class LpStatus { optimal, infeasible, unbounded };

struct LpError : std::runtime_error {
    explicit LpError(const std::string& what) : std::runtime_error(what) {}
};

template <Scalar S, class V>
struct EqResult {
    LpStatus status = LpStatus::optimal;
    V value{};           // objective at termination (min sense)
    std::vector<V> x;    // length n, basic solution when optimal
    std::vector<V> y;    // row multipliers: Farkas (infeasible) or duals (optimal)
    std::vector<S> ray;  // unbounded: A ray = 0, ray >= 0, c.ray < 0
};

template <Scalar S, class V>
class EqSimplex {
public:
    EqSimplex(size_t m, size_t n) : m_(m), n_(n), cols_(n, Vec<S>(m, S(0))), b_(m), c_(n) {}

    S& a(size_t row, size_t col) { return cols_[col][row]; }
    V& b(size_t row) { return b_[row]; }
    V& c(size_t col) { return c_[col]; }

    EqResult<S, V> solve() {
        if (m_ == 0) return solve_rowless();
        flip_.assign(m_, false);
        for (size_t i = 0; i < m_; ++i)
            if (sgn(b_[i]) < 0) {
                flip_[i] = true;
                b_[i] = -b_[i];
                for (size_t j = 0; j < n_; ++j) cols_[j][i] = -cols_[j][i];
            }
        basis_.resize(m_);
        in_basis_.assign(n_, false);
        for (size_t i = 0; i < m_; ++i) basis_[i] = n_ + i;  // artificial start
        binv_.assign(m_, Vec<S>(m_, S(0)));
        for (size_t i = 0; i < m_; ++i) binv_[i][i] = S(1);
        xb_ = b_;

        // Phase 1.  Artificials never re-enter; one left basic at level zero
        // sits on a dependent row and stays zero through phase 2.
        run(true);
        V art{};
        for (size_t i = 0; i < m_; ++i)
            if (basis_[i] >= n_) art += xb_[i];
        EqResult<S, V> r;
        if (sgn(art) > 0) {
            r.status = LpStatus::infeasible;
            r.value = art;
            r.y = unflipped_multipliers(true);
            return r;
        }
        drive_out_artificials();
        if (!run(false)) {
            r.status = LpStatus::unbounded;
            r.ray.assign(n_, S(0));
            r.ray[ray_col_] = S(1);
            for (size_t i = 0; i < m_; ++i)
                if (basis_[i] < n_) r.ray[basis_[i]] = -ray_dir_[i];
            return r;
        }
        r.x.assign(n_, V{});
        for (size_t i = 0; i < m_; ++i)
            if (basis_[i] < n_) r.x[basis_[i]] = xb_[i];
        for (size_t i = 0; i < m_; ++i)
            if (basis_[i] < n_ && sgn(c_[basis_[i]]) != 0) r.value += vmul(c_[basis_[i]], xb_[i]);
        r.y = unflipped_multipliers(false);
        return r;
    }

private:
    size_t m_, n_;
    Mat<S> cols_;
    std::vector<V> b_, c_;
    std::vector<bool> flip_;
    std::vector<size_t> basis_;
    std::vector<bool> in_basis_;
    Mat<S> binv_;
    std::vector<V> xb_;
    Vec<S> ray_dir_;
    size_t ray_col_ = 0;

    // Product of two module values.  At most one factor ever carries an
    // infinitesimal here (costs and amounts never both do), so the dual
    // number truncation below is exact in every use.
    static S vmul(const S& a, const S& b) { return a * b; }
    static DPair<S> vmul(const DPair<S>& a, const DPair<S>& b) {
        return {a.v * b.v, a.v * b.e + a.e * b.v};
    }

    EqResult<S, V> solve_rowless() {
        EqResult<S, V> r;
        for (size_t j = 0; j < n_; ++j)
            if (sgn(c_[j]) < 0) {
                r.status = LpStatus::unbounded;
                r.ray.assign(n_, S(0));
                r.ray[j] = S(1);
                return r;
            }
        r.x.assign(n_, V{});
        return r;
    }

    V cost_of(size_t col, bool phase1) const {
        if (phase1) return col >= n_ ? V{S(1)} : V{};
        return col >= n_ ? V{} : c_[col];
    }

    std::vector<V> multipliers(bool phase1) const {
        std::vector<V> y(m_, V{});
        for (size_t i = 0; i < m_; ++i) {
            V ci = cost_of(basis_[i], phase1);
            if (sgn(ci) == 0) continue;
            for (size_t k = 0; k < m_; ++k)
                if (!is_zero(binv_[i][k])) y[k] += ci * binv_[i][k];
        }
        return y;
    }

    std::vector<V> unflipped_multipliers(bool phase1) const {
        std::vector<V> y = multipliers(phase1);
        for (size_t k = 0; k < m_; ++k)
            if (flip_[k]) y[k] = -y[k];
        return y;
    }

    // Bland loop; false means unbounded (possible in phase 2 only).
    bool run(bool phase1) {
        for (;;) {
            std::vector<V> y = multipliers(phase1);
            size_t enter = n_;
            for (size_t j = 0; j < n_; ++j) {
                if (in_basis_[j]) continue;
                V rc = cost_of(j, phase1);
                for (size_t k = 0; k < m_; ++k)
                    if (!is_zero(cols_[j][k])) rc -= y[k] * cols_[j][k];
                if (sgn(rc) < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == n_) return true;
            Vec<S> d(m_, S(0));
            for (size_t i = 0; i < m_; ++i)
                for (size_t k = 0; k < m_; ++k)
                    if (!is_zero(binv_[i][k]) && !is_zero(cols_[enter][k]))
                        d[i] += binv_[i][k] * cols_[enter][k];
            size_t leave = m_;
            for (size_t i = 0; i < m_; ++i) {
                if (sgn(d[i]) <= 0) continue;
                if (leave == m_) {
                    leave = i;
                    continue;
                }
                int cmp = sgn(xb_[i] * d[leave] - xb_[leave] * d[i]);
                if (cmp < 0 || (cmp == 0 && basis_[i] < basis_[leave])) leave = i;
            }
            if (leave == m_) {
                ray_col_ = enter;
                ray_dir_ = d;
                return false;
            }
            pivot(leave, enter, d);
        }
    }

    // Swap zero-level artificials for original columns via degenerate pivots.
    // A row where no original column applies is linearly dependent: every
    // later direction has a zero there, so the artificial never moves and
    // never blocks, and phase 2 rays stay valid for the original columns.
    void drive_out_artificials() {
        for (size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_) continue;
            for (size_t j = 0; j < n_; ++j) {
                if (in_basis_[j]) continue;
                S piv{};
                for (size_t k = 0; k < m_; ++k)
                    if (!is_zero(binv_[i][k]) && !is_zero(cols_[j][k]))
                        piv += binv_[i][k] * cols_[j][k];
                if (is_zero(piv)) continue;
                Vec<S> d(m_, S(0));
                for (size_t t = 0; t < m_; ++t)
                    for (size_t k = 0; k < m_; ++k)
                        if (!is_zero(binv_[t][k]) && !is_zero(cols_[j][k]))
                            d[t] += binv_[t][k] * cols_[j][k];
                pivot(i, j, d);
                break;
            }
        }
    }

    void pivot(size_t r, size_t j, const Vec<S>& d) {
        const S piv = d[r];
        for (size_t k = 0; k < m_; ++k)
            if (!is_zero(binv_[r][k])) binv_[r][k] = binv_[r][k] / piv;
        xb_[r] = xb_[r] / piv;
        for (size_t i = 0; i < m_; ++i) {
            if (i == r || is_zero(d[i])) continue;
            for (size_t k = 0; k < m_; ++k)
                if (!is_zero(binv_[r][k])) binv_[i][k] = binv_[i][k] - d[i] * binv_[r][k];
            xb_[i] -= xb_[r] * d[i];
        }
        if (basis_[r] < n_) in_basis_[basis_[r]] = false;
        in_basis_[j] = true;
        basis_[r] = j;
    }
};

// ---------------------------------------------------------------------------
// Feasibility of M q = p, q >= 0.

template <Scalar S>
struct FeasibilityProblem {
    size_t rows = 0, cols = 0;
    Mat<S> m;  // rows x cols
    Vec<S> p;  // length rows
};

template <Scalar S>
struct Certificate {
    Vec<S> q;
};

template <Scalar S>
struct FarkasWitness {
    Vec<S> y;  // y.M >= 0 componentwise, y.p < 0
};

template <Scalar S>
using FeasibilityOutcome = std::variant<Certificate<S>, FarkasWitness<S>>;

template <Scalar S>
bool verify_certificate(const FeasibilityProblem<S>& fp, const Certificate<S>& c) {
    if (c.q.size() != fp.cols) return false;
    for (const S& v : c.q)
        if (sgn(v) < 0) return false;
    for (size_t i = 0; i < fp.rows; ++i)
        if (!is_zero(dot(fp.m[i], c.q) - fp.p[i])) return false;
    return true;
}

template <Scalar S>
bool verify_farkas(const FeasibilityProblem<S>& fp, const FarkasWitness<S>& w) {
    if (w.y.size() != fp.rows) return false;
    S yp{};
    for (size_t i = 0; i < fp.rows; ++i) yp += w.y[i] * fp.p[i];
    if (sgn(yp) >= 0) return false;
    for (size_t j = 0; j < fp.cols; ++j) {
        S ym{};
        for (size_t i = 0; i < fp.rows; ++i)
            if (!is_zero(fp.m[i][j])) ym += w.y[i] * fp.m[i][j];
        if (sgn(ym) < 0) return false;
    }
    return true;
}

template <Scalar S>
FeasibilityOutcome<S> feasible(const FeasibilityProblem<S>& fp) {
    if (fp.m.size() != fp.rows || fp.p.size() != fp.rows)
        throw LpError("feasible: shape mismatch");
    EqSimplex<S, S> lp(fp.rows, fp.cols);
    for (size_t i = 0; i < fp.rows; ++i) {
        if (fp.m[i].size() != fp.cols) throw LpError("feasible: ragged matrix");
        for (size_t j = 0; j < fp.cols; ++j) lp.a(i, j) = fp.m[i][j];
        lp.b(i) = fp.p[i];
    }
    auto r = lp.solve();
    if (r.status == LpStatus::infeasible) {
        FarkasWitness<S> w;
        w.y.reserve(fp.rows);
        for (const S& v : r.y) w.y.push_back(-v);
        if (!verify_farkas(fp, w)) throw LpError("feasible: Farkas verification failed");
        return w;
    }
    Certificate<S> c;
    c.q = std::move(r.x);
    if (!verify_certificate(fp, c)) throw LpError("feasible: certificate verification failed");
    return c;
}

// ---------------------------------------------------------------------------
// Extremes of a linear functional over an HRep, via the dual.

template <Scalar S, class V>
struct Extremum {
    LpStatus status = LpStatus::optimal;
    V value{};             // optimum; with strict constraints a sup/inf
    std::vector<V> point;  // attaining point (pseudo-point when strict bind)
    Vec<S> dual;           // per-constraint multipliers (ineqs then eqs)
    Vec<S> cert;           // infeasible: combo with sum a_i = 0, rhs combo < 0
};

namespace detail {

template <Scalar S, class V>
V ineq_rhs(const LinIneq<S>& c) {
    if constexpr (std::is_same_v<V, S>) {
        if (c.strict) throw LpError("strict inequality needs DPair values");
        return c.b;
    } else {
        return rhs_pair(c);
    }
}

template <Scalar S>
S main_of(const S& v) {
    return v;
}
template <Scalar S>
S main_of(const DPair<S>& v) {
    return v.v;
}

}  // namespace detail

// Nonnegative combination of the constraints that sums to 0 <= (negative),
// where strict rows push the right side below zero at infinitesimal order.
template <Scalar S>
bool verify_empty_cert(const HRep<S>& h, const Vec<S>& cert) {
    const size_t ni = h.ineqs.size();
    if (cert.size() != ni + h.eqs.size()) return false;
    for (size_t i = 0; i < ni; ++i)
        if (sgn(cert[i]) < 0) return false;
    Vec<S> lhs(h.dim, S(0));
    DPair<S> rhs{};
    for (size_t i = 0; i < ni; ++i) {
        if (is_zero(cert[i])) continue;
        for (size_t r = 0; r < h.dim; ++r) lhs[r] += cert[i] * h.ineqs[i].a[r];
        rhs += rhs_pair(h.ineqs[i]) * cert[i];
    }
    for (size_t k = 0; k < h.eqs.size(); ++k) {
        const S& y = cert[ni + k];
        if (is_zero(y)) continue;
        for (size_t r = 0; r < h.dim; ++r) lhs[r] += y * h.eqs[k].a[r];
        rhs += DPair<S>{h.eqs[k].b} * y;
    }
    for (const S& v : lhs)
        if (!is_zero(v)) return false;
    return sgn(rhs) < 0;
}

template <Scalar S, class V = S>
Extremum<S, V> lp_extreme(const HRep<S>& h, const Vec<S>& obj, Sense sense);

// Rational point of the region, honoring strict inequalities.
template <Scalar S>
struct PointOutcome {
    bool ok = false;
    Vec<S> point;
    Vec<S> cert;  // per-constraint emptiness combo, see verify_empty_cert
};

template <Scalar S>
PointOutcome<S> feasible_point(const HRep<S>& h) {
    using V = DPair<S>;
    const size_t d = h.dim;
    HRep<S> aug;
    aug.dim = d + 1;
    aug.ineqs.reserve(h.ineqs.size() + 1);
    for (const auto& c : h.ineqs) {
        LinIneq<S> e{c.a, c.b, c.strict};
        e.a.push_back(S(1));
        aug.ineqs.push_back(std::move(e));
    }
    {
        LinIneq<S> cap{Vec<S>(d + 1, S(0)), S(1), false};
        cap.a[d] = S(1);
        aug.ineqs.push_back(std::move(cap));
    }
    for (const auto& c : h.eqs) {
        LinEq<S> e{c.a, c.b};
        e.a.push_back(S(0));
        aug.eqs.push_back(std::move(e));
    }
    Vec<S> obj(d + 1, S(0));
    obj[d] = S(1);
    auto r = lp_extreme<S, V>(aug, obj, Sense::maximize);
    PointOutcome<S> out;
    auto drop_cap = [&](const Vec<S>& per) {
        // aug constraint order is ineqs..., cap, eqs...
        Vec<S> kept;
        kept.reserve(h.ineqs.size() + h.eqs.size());
        for (size_t i = 0; i < h.ineqs.size(); ++i) kept.push_back(per[i]);
        for (size_t k = 0; k < h.eqs.size(); ++k) kept.push_back(per[h.ineqs.size() + 1 + k]);
        return kept;
    };
    if (r.status == LpStatus::infeasible) {
        // Only an inconsistent equation system can make max-t infeasible.
        out.cert = drop_cap(r.cert);
        if (!verify_empty_cert(h, out.cert)) throw LpError("feasible_point: bad emptiness witness");
        return out;
    }
    if (r.status != LpStatus::optimal) throw LpError("feasible_point: unexpected status");
    if (sgn(r.value) < 0) {
        // max t below zero: the optimal duals combine the constraints into
        // 0 <= negative, a verifiable emptiness witness (cap slot dropped;
        // its contribution to the right side is nonnegative).
        out.cert = drop_cap(r.dual);
        if (!verify_empty_cert(h, out.cert)) throw LpError("feasible_point: bad emptiness witness");
        return out;
    }
    // Realize a rational point from the (possibly infinitesimal) solution
    // x0 + x1 dt.  Rows binding in the main part have room along x1, so a
    // small enough step keeps every constraint satisfied; half the slack
    // bounds the step on the rest.
    Vec<S> x0(d), x1(d);
    bool perturbed = false;
    for (size_t i = 0; i < d; ++i) {
        x0[i] = r.point[i].v;
        x1[i] = r.point[i].e;
        perturbed |= !is_zero(x1[i]);
    }
    if (perturbed) {
        S lambda(1);
        for (const auto& c : h.ineqs) {
            S slack = c.b - dot(c.a, x0);
            S along = dot(c.a, x1);
            if (sgn(along) > 0 && sgn(slack) > 0) {
                S cand = slack / (along * S(2));
                if (cand < lambda) lambda = cand;
            }
        }
        for (size_t i = 0; i < d; ++i) x0[i] += lambda * x1[i];
    }
    if (!contains(h, x0)) throw LpError("feasible_point: constructed point fails containment");
    out.ok = true;
    out.point = std::move(x0);
    return out;
}

template <Scalar S, class V>
Extremum<S, V> lp_extreme(const HRep<S>& h, const Vec<S>& obj, Sense sense) {
    const size_t d = h.dim, ni = h.ineqs.size(), ne = h.eqs.size();
    if (obj.size() != d) throw LpError("lp_extreme: objective dimension mismatch");
    EqSimplex<S, V> lp(d, ni + 2 * ne);
    for (size_t j = 0; j < ni; ++j) {
        if (h.ineqs[j].a.size() != d) throw LpError("lp_extreme: constraint dimension mismatch");
        for (size_t r = 0; r < d; ++r) lp.a(r, j) = h.ineqs[j].a[r];
        lp.c(j) = detail::ineq_rhs<S, V>(h.ineqs[j]);
    }
    for (size_t k = 0; k < ne; ++k) {
        if (h.eqs[k].a.size() != d) throw LpError("lp_extreme: constraint dimension mismatch");
        for (size_t r = 0; r < d; ++r) {
            lp.a(r, ni + 2 * k) = h.eqs[k].a[r];
            lp.a(r, ni + 2 * k + 1) = -h.eqs[k].a[r];
        }
        lp.c(ni + 2 * k) = V{h.eqs[k].b};
        lp.c(ni + 2 * k + 1) = V{-h.eqs[k].b};
    }
    for (size_t r = 0; r < d; ++r) lp.b(r) = V{sense == Sense::maximize ? obj[r] : -obj[r]};
    auto res = lp.solve();
    Extremum<S, V> out;
    auto fold_dual = [&](const Vec<S>& raw) {
        Vec<S> per;
        per.reserve(ni + ne);
        for (size_t j = 0; j < ni; ++j) per.push_back(raw[j]);
        for (size_t k = 0; k < ne; ++k) per.push_back(raw[ni + 2 * k] - raw[ni + 2 * k + 1]);
        return per;
    };
    if (res.status == LpStatus::unbounded) {
        // Dual unbounded: the primal region is empty.
        out.status = LpStatus::infeasible;
        out.cert = fold_dual(res.ray);
        if (!verify_empty_cert(h, out.cert)) throw LpError("lp_extreme: bad emptiness witness");
        return out;
    }
    if (res.status == LpStatus::infeasible) {
        // Dual infeasible: primal empty or unbounded; settle by finding a point.
        auto fp = feasible_point(h);
        if (fp.ok) {
            out.status = LpStatus::unbounded;
            return out;
        }
        out.status = LpStatus::infeasible;
        out.cert = std::move(fp.cert);
        return out;
    }
    out.status = LpStatus::optimal;
    out.value = sense == Sense::maximize ? res.value : -res.value;
    out.point = std::move(res.y);
    Vec<S> raw;
    raw.reserve(res.x.size());
    for (const V& v : res.x) raw.push_back(detail::main_of<S>(v));
    out.dual = fold_dual(raw);
    return out;
}

}  // namespace ctx
