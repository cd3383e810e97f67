// system.hpp
//
// The 2x2 factorial experiment with binary outcomes: one OutcomeTable per
// treatment (alpha_i, beta_j), holding the joint distribution of the two
// +1/-1 outputs.  Marginals are arbitrary here; the equiprobable special
// case lives in homogeneous.hpp.

#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>

#include "contexture/scalar.hpp"

namespace ctx {

// Joint distribution of (A, B) for one treatment:
//   p = Pr[A=+1, B=+1]   q = Pr[A=+1, B=-1]
//   r = Pr[A=-1, B=+1]   s = Pr[A=-1, B=-1]
struct OutcomeTable {
    Rat p, q, r, s;

    bool valid() const {
        return sgn(p) >= 0 && sgn(q) >= 0 && sgn(r) >= 0 && sgn(s) >= 0 &&
               is_zero(p + q + r + s - Rat(1));
    }
    Rat a_plus() const { return p + q; }  // Pr[A=+1]
    Rat b_plus() const { return p + r; }  // Pr[B=+1]
    // E[A*B]
    Rat expectation() const { return p + s - q - r; }
};

// The four treatments of the 2x2 design, indexed by the two input levels.
struct FactorialSystem {
    std::array<OutcomeTable, 4> t;  // row-major: (1,1), (1,2), (2,1), (2,2)

    OutcomeTable& table(int i, int j) { return t[size_t(2 * (i - 1) + (j - 1))]; }
    const OutcomeTable& table(int i, int j) const { return t[size_t(2 * (i - 1) + (j - 1))]; }

    bool valid() const {
        for (const auto& x : t)
            if (!x.valid()) return false;
        return true;
    }
};

// Marginal selectivity: the distribution of A does not depend on the beta
// level, nor B on the alpha level.
inline bool marginal_selectivity(const FactorialSystem& sys) {
    for (int i = 1; i <= 2; ++i)
        if (!is_zero(sys.table(i, 1).a_plus() - sys.table(i, 2).a_plus())) return false;
    for (int j = 1; j <= 2; ++j)
        if (!is_zero(sys.table(1, j).b_plus() - sys.table(2, j).b_plus())) return false;
    return true;
}

// Product expectations E[A_ij * B_ij], in treatment order (1,1), (1,2), (2,1), (2,2).
inline std::array<Rat, 4> expectations(const FactorialSystem& sys) {
    std::array<Rat, 4> e;
    for (size_t k = 0; k < 4; ++k) e[k] = sys.t[k].expectation();
    return e;
}

// CHSH criterion on the expectations: every combination that negates exactly
// one of the four terms must stay within [-2, 2].
inline bool chsh_general(const FactorialSystem& sys) {
    auto e = expectations(sys);
    Rat total = e[0] + e[1] + e[2] + e[3];
    for (size_t k = 0; k < 4; ++k) {
        Rat combo = total - 2 * e[k];
        if (combo > Rat(2) || combo < Rat(-2)) return false;
    }
    return true;
}

}  // namespace ctx
