#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <contexture/homogeneous.hpp>
#include <contexture/system.hpp>
#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

using namespace ctx;

namespace {

OutcomeTable table(long p_n, long q_n, long r_n, long s_n, long den) {
    return {rat(p_n, den), rat(q_n, den), rat(r_n, den), rat(s_n, den)};
}

// The intro example that breaks the CHSH criterion (one combination hits -3).
FactorialSystem chsh_violating_system() {
    FactorialSystem sys;
    sys.table(1, 1) = table(1, 0, 0, 3, 4);
    sys.table(1, 2) = table(0, 1, 2, 1, 4);
    sys.table(2, 1) = table(0, 2, 1, 1, 4);
    sys.table(2, 2) = table(0, 2, 2, 0, 4);
    return sys;
}

// Same marginals, CHSH satisfied exactly at the +2 boundary.
FactorialSystem chsh_boundary_system() {
    FactorialSystem sys = chsh_violating_system();
    sys.table(1, 2) = table(1, 0, 1, 2, 4);
    return sys;
}

FactorialSystem uniform_system() {
    FactorialSystem sys;
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j) sys.table(i, j) = table(1, 1, 1, 1, 4);
    return sys;
}

long ri(std::mt19937_64& rng, long lo, long hi) {
    return lo + long(rng() % (unsigned long)(hi - lo + 1));
}

// random component of [0, 1/2] with small fixed denominator
Rat rhalf(std::mt19937_64& rng, long half_den = 16) {
    return rat(ri(rng, 0, half_den), 2 * half_den);
}

PVector random_p(std::mt19937_64& rng, long half_den = 16) {
    return {rhalf(rng, half_den), rhalf(rng, half_den), rhalf(rng, half_den), rhalf(rng, half_den)};
}

EVector random_e(std::mt19937_64& rng, long half_den = 16) {
    return {rhalf(rng, half_den), rhalf(rng, half_den), rhalf(rng, half_den), rhalf(rng, half_den)};
}

// Independent route to the 16 signed sums: explicit nested sign choices.
struct SplitOracle {
    std::vector<Rat> values;
    Rat max0, max1;
};

SplitOracle split_oracle(const std::array<Rat, 4>& v) {
    SplitOracle out;
    bool seen0 = false, seen1 = false;
    const Rat quarter = rat(1, 4);
    for (int s0 : {1, -1})
        for (int s1 : {1, -1})
            for (int s2 : {1, -1})
                for (int s3 : {1, -1}) {
                    Rat sum = s0 * (v[0] - quarter) + s1 * (v[1] - quarter) + s2 * (v[2] - quarter) +
                              s3 * (v[3] - quarter);
                    int plus = (s0 > 0) + (s1 > 0) + (s2 > 0) + (s3 > 0);
                    if (plus % 2 == 0) {
                        if (!seen0 || sum > out.max0) out.max0 = sum;
                        seen0 = true;
                    } else {
                        if (!seen1 || sum > out.max1) out.max1 = sum;
                        seen1 = true;
                    }
                    out.values.push_back(sum);
                }
    return out;
}

// Membership via the slack budgets: the bounds the two budgets place on the
// one-minus combinations, the full sum, and the three two-two splits.
bool slack_member(const PVector& p, const EVector& e) {
    Rat g = slack_even(e), l = slack_odd(e);
    for (const Rat& c : chsh_combos(p.comps()))
        if (c < -g || c > 1 + g) return false;
    Rat sum = p.p11 + p.p12 + p.p21 + p.p22;
    if (sum < -l || sum > 2 + l) return false;
    const Rat cap = 1 + l;
    std::array<Rat, 3> splits = {
        Rat(p.p12 + p.p22 - p.p11 - p.p21),
        Rat(p.p21 + p.p22 - p.p11 - p.p12),
        Rat(p.p21 + p.p12 - p.p11 - p.p22),
    };
    for (const Rat& d : splits)
        if (d < -cap || d > cap) return false;
    return true;
}

const PVec<QuadRat> tsirelson_p = {
    {rat(1, 4), rat(1, 8)}, {rat(1, 4), rat(1, 8)}, {rat(1, 4), rat(1, 8)}, {rat(1, 4), rat(-1, 8)}};

}  // namespace

TEST_CASE("outcome tables expose marginals and expectations") {
    OutcomeTable t = table(1, 0, 0, 3, 4);
    CHECK(t.valid());
    CHECK(t.a_plus() == rat(1, 4));
    CHECK(t.b_plus() == rat(1, 4));
    CHECK(t.expectation() == rat(1));

    CHECK_FALSE(table(3, 1, 1, 1, 4).valid());   // sums to 3/2
    CHECK_FALSE(table(-1, 1, 1, 3, 4).valid());  // negative cell
    CHECK(uniform_system().valid());
    CHECK(chsh_violating_system().valid());
    CHECK(chsh_boundary_system().valid());
}

TEST_CASE("marginal selectivity holds for the example systems and fails when one table moves") {
    CHECK(marginal_selectivity(chsh_violating_system()));
    CHECK(marginal_selectivity(chsh_boundary_system()));
    CHECK(marginal_selectivity(uniform_system()));

    FactorialSystem bad = chsh_violating_system();
    bad.table(1, 1) = table(1, 1, 1, 1, 4);  // A-marginal now 1/2 at beta1 vs 1/4 at beta2
    CHECK(bad.valid());
    CHECK_FALSE(marginal_selectivity(bad));
}

TEST_CASE("expectations match direct table arithmetic") {
    auto e5 = expectations(chsh_violating_system());
    CHECK(e5[0] == rat(1));
    CHECK(e5[1] == rat(-1, 2));
    CHECK(e5[2] == rat(-1, 2));
    CHECK(e5[3] == rat(-1));

    auto e6 = expectations(chsh_boundary_system());
    CHECK(e6[0] == rat(1));
    CHECK(e6[1] == rat(1, 2));
    CHECK(e6[2] == rat(-1, 2));
    CHECK(e6[3] == rat(-1));

    for (const Rat& e : expectations(uniform_system())) CHECK(is_zero(e));
}

TEST_CASE("chsh criterion flags the violating system and passes the boundary one") {
    CHECK_FALSE(chsh_general(chsh_violating_system()));
    CHECK(chsh_general(chsh_boundary_system()));
    CHECK(chsh_general(uniform_system()));

    // the offending combination negates the (1,1) term and reaches -3
    auto e = expectations(chsh_violating_system());
    Rat combo = e[1] + e[2] + e[3] - e[0];
    CHECK(combo == rat(-3));

    // the boundary system attains +2 when the (2,2) term is negated
    auto f = expectations(chsh_boundary_system());
    CHECK(f[0] + f[1] + f[2] - f[3] == rat(2));
}

TEST_CASE("signed-sum split agrees with an independent enumeration") {
    std::mt19937_64 rng(41);
    for (int round = 0; round < 200; ++round) {
        std::array<Rat, 4> v;
        for (auto& x : v) x = rhalf(rng);
        auto sp = s_split(v);
        auto ora = split_oracle(v);
        CHECK(sp.max_s0 == ora.max0);
        CHECK(sp.max_s1 == ora.max1);
        std::vector<Rat> got(sp.values.begin(), sp.values.end());
        std::sort(got.begin(), got.end());
        std::sort(ora.values.begin(), ora.values.end());
        CHECK(got == ora.values);
    }
}

TEST_CASE("signed-sum split: pinned values and labels") {
    auto center = s_split<Rat>({rat(1, 4), rat(1, 4), rat(1, 4), rat(1, 4)});
    for (const Rat& x : center.values) CHECK(is_zero(x));
    CHECK(is_zero(center.max_s0));
    CHECK(is_zero(center.max_s1));

    auto three = s_split<Rat>({rat(1, 2), rat(1, 2), rat(1, 2), rat(0)});
    CHECK(three.max_s0 == rat(1, 2));
    CHECK(three.max_s1 == rat(1));

    auto full = s_split<Rat>({rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 2)});
    CHECK(full.max_s0 == rat(1));
    CHECK(full.max_s1 == rat(1, 2));
    // the even maximum is the all-plus pattern
    CHECK(full.values[0b1111] == rat(1));
    CHECK(SSplit<Rat>::even_mask(0b1111));
    CHECK_FALSE(SSplit<Rat>::even_mask(0b0111));
    CHECK(SSplit<Rat>::sign_label(0b0101) == "+-+-");
    CHECK(SSplit<Rat>::sign_label(0b1111) == "++++");
}

TEST_CASE("bell, cirelson, and chaos bands on pinned points") {
    PVector center{rat(1, 4), rat(1, 4), rat(1, 4), rat(1, 4)};
    CHECK(center.valid());
    CHECK(bell_chsh(center));
    CHECK(cirelson(center));
    CHECK(chaos_bound(center));

    PVector pr{rat(1, 2), rat(1, 2), rat(1, 2), rat(0)};
    CHECK(pr.valid());
    CHECK_FALSE(bell_chsh(pr));
    CHECK_FALSE(cirelson(pr));
    CHECK(chaos_bound(pr));  // 3/2 sits exactly on the upper band edge
    auto combos = chsh_combos(pr.comps());
    Rat top = *std::max_element(combos.begin(), combos.end());
    CHECK(top == rat(3, 2));

    CHECK(tsirelson_p.valid());
    CHECK_FALSE(bell_chsh(tsirelson_p));
    CHECK(cirelson(tsirelson_p));
    CHECK(chaos_bound(tsirelson_p));
    auto qc = chsh_combos(tsirelson_p.comps());
    QuadRat qtop = *std::max_element(qc.begin(), qc.end());
    CHECK(qtop == QuadRat(rat(1, 2), rat(1, 2)));  // exactly (1+sqrt2)/2
}

TEST_CASE("bell iff odd maximum at most 1/2; band nesting on random points") {
    std::mt19937_64 rng(42);
    for (int round = 0; round < 10000; ++round) {
        PVector p = random_p(rng);
        auto sp = s_split(p);
        auto combos = chsh_combos(p.comps());
        // each odd signed sum is a combination shifted by 1/2
        for (size_t t = 0; t < 4; ++t) {
            unsigned three_plus = 0b1111u ^ (1u << t);
            unsigned one_plus = 1u << t;
            CHECK(sp.values[three_plus] == combos[t] - rat(1, 2));
            CHECK(sp.values[one_plus] == rat(1, 2) - combos[t]);
        }
        bool bell = bell_chsh(p);
        CHECK(bell == (sp.max_s1 <= rat(1, 2)));
        bool quant = cirelson(p);
        if (bell) CHECK(quant);
        if (quant) CHECK(chaos_bound(p));
        CHECK(chaos_bound(p));
    }
}

TEST_CASE("coupling membership: pinned examples") {
    PVector pc{rat(1, 4), rat(1, 4), rat(1, 4), rat(1, 4)};
    EVector ec{rat(1, 4), rat(1, 4), rat(1, 4), rat(1, 4)};
    EVector identity{rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 2)};
    PVector pr{rat(1, 2), rat(1, 2), rat(1, 2), rat(0)};
    CHECK(elfp_member(pc, ec));
    CHECK_FALSE(elfp_member(pr, identity));
    CHECK(elfp_member(pc, identity));
}

TEST_CASE("coupling membership agrees with the slack-budget system") {
    std::mt19937_64 rng(43);
    for (int round = 0; round < 100000; ++round) {
        PVector p = random_p(rng, 8);
        EVector e = random_e(rng, 8);
        CHECK(elfp_member(p, e) == slack_member(p, e));
    }
}

TEST_CASE("slack budgets: pinned values and split identities") {
    EVector center{rat(1, 4), rat(1, 4), rat(1, 4), rat(1, 4)};
    CHECK(slack_even(center) == rat(1));
    CHECK(slack_odd(center) == rat(1, 2));

    EVector zero{rat(0), rat(0), rat(0), rat(0)};
    CHECK(is_zero(slack_even(zero)));
    CHECK(is_zero(slack_odd(zero)));

    EVector identity{rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 2)};
    CHECK(is_zero(slack_even(identity)));
    CHECK(is_zero(slack_odd(identity)));

    std::mt19937_64 rng(44);
    for (int round = 0; round < 2000; ++round) {
        EVector e = random_e(rng);
        auto se = s_split(e);
        CHECK(slack_even(e) == 1 - se.max_s0);
        CHECK(slack_odd(e) == rat(1, 2) - se.max_s1);
    }
}

TEST_CASE("reflections: one component swaps the parity maxima, even flips keep membership") {
    std::mt19937_64 rng(45);
    for (int round = 0; round < 500; ++round) {
        std::array<Rat, 4> v;
        for (auto& x : v) x = rhalf(rng);
        auto sp = s_split(v);
        size_t t = size_t(ri(rng, 0, 3));
        auto w = v;
        w[t] = rat(1, 2) - w[t];
        auto sw = s_split(w);
        CHECK(sw.max_s0 == sp.max_s1);
        CHECK(sw.max_s1 == sp.max_s0);
    }

    for (int round = 0; round < 2000; ++round) {
        PVector p = random_p(rng);
        EVector e = random_e(rng);
        unsigned mask;
        do {
            mask = unsigned(rng() & 0xffu);
        } while (std::popcount(mask) % 2 != 0);
        std::array<Rat, 4> pv = p.comps(), ev = e.comps();
        for (size_t k = 0; k < 4; ++k) {
            if (mask >> k & 1) pv[k] = rat(1, 2) - pv[k];
            if (mask >> (k + 4) & 1) ev[k] = rat(1, 2) - ev[k];
        }
        PVector p2{pv[0], pv[1], pv[2], pv[3]};
        EVector e2{ev[0], ev[1], ev[2], ev[3]};
        CHECK(elfp_member(p, e) == elfp_member(p2, e2));
    }
}

TEST_CASE("identity coupling reduces membership to the bell inequalities") {
    EVector identity{rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 2)};
    long mismatches = 0;
    for (long i = 0; i <= 20; ++i)
        for (long j = 0; j <= 20; ++j)
            for (long k = 0; k <= 20; ++k)
                for (long l = 0; l <= 20; ++l) {
                    PVector p{rat(i, 40), rat(j, 40), rat(k, 40), rat(l, 40)};
                    if (elfp_member(p, identity) != bell_chsh(p)) ++mismatches;
                }
    CHECK(mismatches == 0);
}

TEST_CASE("closed-form set membership for the benchmark constraints") {
    EVector center{rat(1, 4), rat(1, 4), rat(1, 4), rat(1, 4)};
    EVector identity{rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 2)};

    CHECK(closed_form_member(ConstraintTag::classical, SetKind::equi, identity));
    CHECK_FALSE(closed_form_member(ConstraintTag::classical, SetKind::equi, center));
    CHECK(closed_form_member(ConstraintTag::quant, SetKind::force, identity));

    // chaos: Fit and Equi cap every signed sum at 1/2, Force is everything
    CHECK(closed_form_member(ConstraintTag::chaos, SetKind::fit, center));
    CHECK_FALSE(closed_form_member(ConstraintTag::chaos, SetKind::fit, identity));
    CHECK(closed_form_member(ConstraintTag::chaos, SetKind::force, identity));
    CHECK(closed_form_member(ConstraintTag::chaos, SetKind::equi, center));

    // class: Force needs an even signed sum of exactly 1
    EVector two_two{rat(1, 2), rat(1, 2), rat(0), rat(0)};
    CHECK(closed_form_member(ConstraintTag::classical, SetKind::force, two_two));
    EVector three_one{rat(1, 2), rat(1, 2), rat(1, 2), rat(0)};
    CHECK_FALSE(closed_form_member(ConstraintTag::classical, SetKind::force, three_one));
    CHECK(closed_form_member(ConstraintTag::classical, SetKind::fit, three_one));

    // quant: constant vector hitting the threshold exactly sits in Equi
    QuadRat at = QuadRat(rat(5, 8), rat(-1, 8));  // (5 - sqrt2)/8
    EVec<QuadRat> eq{at, at, at, at};
    CHECK(closed_form_member(ConstraintTag::quant, SetKind::equi, eq));
    CHECK(closed_form_member(ConstraintTag::quant, SetKind::force, eq));
    CHECK(closed_form_member(ConstraintTag::quant, SetKind::fit, eq));
    EVec<QuadRat> qcenter{QuadRat(rat(1, 4)), QuadRat(rat(1, 4)), QuadRat(rat(1, 4)), QuadRat(rat(1, 4))};
    CHECK_FALSE(closed_form_member(ConstraintTag::quant, SetKind::equi, qcenter));
    CHECK_FALSE(closed_form_member(ConstraintTag::quant, SetKind::force, qcenter));
    CHECK(closed_form_member(ConstraintTag::quant, SetKind::fit, qcenter));

    CHECK_THROWS_AS(closed_form_member(ConstraintTag::classical, SetKind::all, center), std::invalid_argument);
    CHECK_THROWS_AS(closed_form_member(ConstraintTag::fix, SetKind::fit, center), std::invalid_argument);
    CHECK_THROWS_AS(closed_form_member(ConstraintTag::custom, SetKind::fit, center), std::invalid_argument);
}

TEST_CASE("constraint membership dispatch") {
    PVector center{rat(1, 4), rat(1, 4), rat(1, 4), rat(1, 4)};
    PVector pr{rat(1, 2), rat(1, 2), rat(1, 2), rat(0)};

    CHECK(constraint_member(ConstraintKind::chaos(), pr));
    CHECK_FALSE(constraint_member(ConstraintKind::quant(), pr));
    CHECK_FALSE(constraint_member(ConstraintKind::classical(), pr));
    CHECK(constraint_member(ConstraintKind::classical(), center));

    CHECK(constraint_member(ConstraintKind::fix(center), center));
    CHECK_FALSE(constraint_member(ConstraintKind::fix(center), pr));

    // custom region: p11 <= 1/3
    HRep<Rat> h;
    h.dim = 4;
    h.ineqs.push_back({{rat(1), rat(0), rat(0), rat(0)}, rat(1, 3), false});
    auto custom = ConstraintKind::custom(h);
    CHECK(constraint_member(custom, center));
    CHECK_FALSE(constraint_member(custom, pr));
    HRep<Rat> bad;
    bad.dim = 3;
    CHECK_THROWS_AS(ConstraintKind::custom(bad), std::invalid_argument);

    CHECK(constraint_member(ConstraintKind::quant(), tsirelson_p));
    CHECK_FALSE(constraint_member(ConstraintKind::classical(), tsirelson_p));
}

TEST_CASE("fixed-p fit bounds") {
    PVector center{rat(1, 4), rat(1, 4), rat(1, 4), rat(1, 4)};
    auto [b1, b2] = fit_fix_bounds(center);
    CHECK(b1 == rat(3, 2));
    CHECK(b2 == rat(3, 2));

    PVector pr{rat(1, 2), rat(1, 2), rat(1, 2), rat(0)};
    auto [c1, c2] = fit_fix_bounds(pr);
    CHECK(c1 == rat(1));
    CHECK(c2 == rat(1, 2));

    auto [q1, q2] = fit_fix_bounds(tsirelson_p);
    CHECK(q1 == QuadRat(rat(3, 2), rat(-1, 4)));
    CHECK(q2 == QuadRat(rat(3, 2), rat(-1, 2)));
}

TEST_CASE("fixed-p fit volume polynomial") {
    CHECK(fit_fix_volume_polynomial(rat(0), rat(0)) == rat(1));
    CHECK(fit_fix_volume_polynomial(rat(1, 2), rat(1, 2)) == rat(1));
    CHECK(fit_fix_volume_polynomial(rat(1), rat(1, 2)) == rat(2, 3));
    CHECK(fit_fix_volume_polynomial(rat(1, 2), rat(1)) == rat(2, 3));
    CHECK(fit_fix_volume_polynomial(rat(1, 2), rat(3, 4)) == fit_fix_volume_polynomial(rat(3, 4), rat(1, 2)));

    // the signed-sum maxima of an actual p always land inside the triangle
    std::mt19937_64 rng(46);
    for (int round = 0; round < 500; ++round) {
        auto sp = s_split(random_p(rng));
        CHECK_NOTHROW(fit_fix_volume_polynomial(sp.max_s0, sp.max_s1));
    }

    CHECK_THROWS_AS(fit_fix_volume_polynomial(rat(1), rat(0)), std::domain_error);
    CHECK_THROWS_AS(fit_fix_volume_polynomial(rat(0), rat(1)), std::domain_error);
    CHECK_THROWS_AS(fit_fix_volume_polynomial(rat(1), rat(1)), std::domain_error);

    // quadratic scalars work the same way
    QuadRat x{rat(0), rat(1, 4)};  // sqrt2/4
    QuadRat y{rat(0), rat(1, 2)};  // sqrt2/2
    QuadRat vol = fit_fix_volume_polynomial(x, y);
    auto sp = s_split(tsirelson_p);
    CHECK(sp.max_s0 == x);
    CHECK(sp.max_s1 == y);
    // y >= 1/2, so only the y quartic contributes
    QuadRat z = y;
    QuadRat quart = QuadRat(-1) + QuadRat(8) * z - QuadRat(24) * z * z + QuadRat(32) * z * z * z -
                    QuadRat(16) * z * z * z * z;
    CHECK(vol == QuadRat(1) + quart / QuadRat(3));
}

TEST_CASE("homogeneous systems realize p with flat marginals") {
    std::mt19937_64 rng(47);
    for (int round = 0; round < 300; ++round) {
        PVector p = random_p(rng);
        FactorialSystem sys = homogeneous_system(p);
        CHECK(sys.valid());
        CHECK(marginal_selectivity(sys));
        auto e = expectations(sys);
        auto c = p.comps();
        for (size_t k = 0; k < 4; ++k) CHECK(e[k] == 4 * c[k] - 1);
        CHECK(chsh_general(sys) == bell_chsh(p));
    }
}
