#pragma once

// Exact scalar types used across the library.
//
// Rat      arbitrary-precision rational, always canonical (lowest terms,
//          positive denominator; GMP keeps this invariant for us).
// QuadRat  element of the quadratic extension Q(sqrt2), stored as a pair
//          of rationals r + q*sqrt2.  Ordering is decided exactly by
//          comparing squares, never through floating point.
// DPair    value of the form v + e*delta for an infinitesimal delta > 0,
//          ordered lexicographically.  Used internally to carry strict
//          inequalities through LP and elimination code.

#include <boost/multiprecision/gmp.hpp>

#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ctx {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

inline Int num(const Rat& x) { return boost::multiprecision::numerator(x); }
inline Int den(const Rat& x) { return boost::multiprecision::denominator(x); }

inline int sgn(const Int& x) { return x.sign(); }
inline int sgn(const Rat& x) { return x.sign(); }

inline Rat rat(long n, long d = 1) {
    if (d == 0) throw std::domain_error("rat: zero denominator");
    if (d < 0) {  // the (long, long) ctor reads the denominator as unsigned
        n = -n;
        d = -d;
    }
    return Rat(n, d);
}

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// "num/den" or plain "num".  Whitespace at either end is accepted.
inline Rat parse_rat(std::string_view s) {
    auto trim = [](std::string_view v) {
        while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
        while (!v.empty() && (v.back() == ' ' || v.back() == '\t')) v.remove_suffix(1);
        return v;
    };
    s = trim(s);
    if (s.empty()) throw ParseError("parse_rat: empty string");
    auto slash = s.find('/');
    try {
        if (slash == std::string_view::npos) return Rat(Int(std::string(s)));
        Int n{std::string(trim(s.substr(0, slash)))};
        Int d{std::string(trim(s.substr(slash + 1)))};
        if (d == 0) throw ParseError("parse_rat: zero denominator");
        return Rat(n, d);
    } catch (const std::runtime_error&) {
        throw ParseError("parse_rat: bad rational '" + std::string(s) + "'");
    }
}

// Always emits the two-part form, e.g. "3/2", "0/1", "-5/1".
inline std::string rat_str(const Rat& x) {
    return num(x).str() + "/" + den(x).str();
}

inline double to_double(const Rat& x) { return x.convert_to<double>(); }

// ---------------------------------------------------------------------------

struct QuadRat {
    Rat r;  // rational part
    Rat q;  // coefficient of sqrt2

    QuadRat() = default;
    QuadRat(const Rat& rational) : r(rational) {}  // NOLINT: deliberate promotion
    QuadRat(Rat rational, Rat radical) : r(std::move(rational)), q(std::move(radical)) {}
    QuadRat(long n, long d = 1) : r(Rat(n, d)) {}

    bool is_rational() const { return q == 0; }

    friend QuadRat operator+(const QuadRat& a, const QuadRat& b) { return {a.r + b.r, a.q + b.q}; }
    friend QuadRat operator-(const QuadRat& a, const QuadRat& b) { return {a.r - b.r, a.q - b.q}; }
    friend QuadRat operator-(const QuadRat& a) { return {-a.r, -a.q}; }
    friend QuadRat operator*(const QuadRat& a, const QuadRat& b) {
        return {a.r * b.r + 2 * (a.q * b.q), a.r * b.q + a.q * b.r};
    }
    friend QuadRat operator/(const QuadRat& a, const QuadRat& b) {
        // 1/(c+d*sqrt2) = (c-d*sqrt2)/(c^2-2d^2); the norm vanishes only at 0.
        Rat norm = b.r * b.r - 2 * (b.q * b.q);
        if (norm == 0) throw std::domain_error("QuadRat: division by zero");
        return {(a.r * b.r - 2 * (a.q * b.q)) / norm, (a.q * b.r - a.r * b.q) / norm};
    }
    QuadRat& operator+=(const QuadRat& o) { return *this = *this + o; }
    QuadRat& operator-=(const QuadRat& o) { return *this = *this - o; }
    QuadRat& operator*=(const QuadRat& o) { return *this = *this * o; }
    QuadRat& operator/=(const QuadRat& o) { return *this = *this / o; }

    friend bool operator==(const QuadRat& a, const QuadRat& b) { return a.r == b.r && a.q == b.q; }
    friend bool operator!=(const QuadRat& a, const QuadRat& b) { return !(a == b); }
};

// Exact sign of r + q*sqrt2: when the two terms disagree in sign the
// comparison reduces to r^2 vs 2q^2.
inline int sgn(const QuadRat& x) {
    int sr = sgn(x.r), sq = sgn(x.q);
    if (sq == 0) return sr;
    if (sr == 0) return sq;
    if (sr == sq) return sr;
    int cmp = Rat(x.r * x.r).compare(Rat(2 * (x.q * x.q)));  // |r|^2 vs |q*sqrt2|^2
    return cmp == 0 ? 0 : (cmp > 0 ? sr : sq);
}

inline bool operator<(const QuadRat& a, const QuadRat& b) { return sgn(a - b) < 0; }
inline bool operator>(const QuadRat& a, const QuadRat& b) { return sgn(a - b) > 0; }
inline bool operator<=(const QuadRat& a, const QuadRat& b) { return sgn(a - b) <= 0; }
inline bool operator>=(const QuadRat& a, const QuadRat& b) { return sgn(a - b) >= 0; }

inline QuadRat sqrt2() { return {Rat(0), Rat(1)}; }

inline QuadRat to_quad(const Rat& x) { return QuadRat(x); }
inline QuadRat to_quad(const QuadRat& x) { return x; }

inline double to_double(const QuadRat& x) {
    return to_double(x.r) + to_double(x.q) * 1.41421356237309504880168872420969808;
}

// "r_num/r_den + q_num/q_den*sqrt2"; parse also accepts a bare rational.
inline std::string quadrat_str(const QuadRat& x) {
    return rat_str(x.r) + " + " + rat_str(x.q) + "*sqrt2";
}

inline QuadRat parse_quadrat(std::string_view s) {
    auto star = s.find("*sqrt2");
    if (star == std::string_view::npos) return QuadRat(parse_rat(s));
    auto plus = s.rfind(" + ", star);
    if (plus == std::string_view::npos)
        throw ParseError("parse_quadrat: bad value '" + std::string(s) + "'");
    return {parse_rat(s.substr(0, plus)), parse_rat(s.substr(plus + 3, star - plus - 3))};
}

// ---------------------------------------------------------------------------
// Scalar trait layer: the polytope/LP code is generic over S in {Rat, QuadRat}.

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rat> {
    static constexpr bool is_quadratic = false;
    static std::string str(const Rat& x) { return rat_str(x); }
    static Rat parse(std::string_view s) { return parse_rat(s); }
    // Rational components of x, for joint integer scaling.
    static void components(const Rat& x, std::vector<Rat>& out) { out.push_back(x); }
    static Rat from_components(const Rat* c) { return *c; }
    static constexpr int component_count = 1;
};

template <>
struct scalar_traits<QuadRat> {
    static constexpr bool is_quadratic = true;
    static std::string str(const QuadRat& x) { return quadrat_str(x); }
    static QuadRat parse(std::string_view s) { return parse_quadrat(s); }
    static void components(const QuadRat& x, std::vector<Rat>& out) {
        out.push_back(x.r);
        out.push_back(x.q);
    }
    static QuadRat from_components(const Rat* c) { return {c[0], c[1]}; }
    static constexpr int component_count = 2;
};

template <class S>
concept Scalar = requires(S a, S b) {
    { a + b } -> std::convertible_to<S>;
    { a - b } -> std::convertible_to<S>;
    { a* b } -> std::convertible_to<S>;
    { a / b } -> std::convertible_to<S>;
    { sgn(a) } -> std::convertible_to<int>;
    scalar_traits<S>::str(a);
};

template <Scalar S>
bool is_zero(const S& x) { return sgn(x) == 0; }

// Scale a row of scalars to a primitive integer vector: multiply by the lcm
// of all component denominators, divide by the gcd of all numerators.  The
// result is a deterministic canonical representative of the ray {t*row, t>0}.
template <Scalar S>
void make_primitive(std::vector<S>& row) {
    std::vector<Rat> comps;
    for (const S& x : row) scalar_traits<S>::components(x, comps);
    Int l = 1, g = 0;
    for (const Rat& c : comps) {
        l = boost::multiprecision::lcm(l, den(c));
        g = boost::multiprecision::gcd(g, num(c));
    }
    if (g == 0) return;  // all-zero row
    Rat f(l, g);         // g>0 since gcd of mpz is nonnegative and some num!=0
    for (S& x : row) x = x * S(f);
}

// ---------------------------------------------------------------------------

// v + e*delta with delta an infinitesimal.  Only a module over S (never
// divided by another DPair), which is all the LP layer needs.
template <Scalar S>
struct DPair {
    S v{};
    S e{};

    DPair() = default;
    DPair(S main) : v(std::move(main)) {}  // NOLINT: deliberate promotion
    DPair(S main, S eps) : v(std::move(main)), e(std::move(eps)) {}

    friend DPair operator+(const DPair& a, const DPair& b) { return {a.v + b.v, a.e + b.e}; }
    friend DPair operator-(const DPair& a, const DPair& b) { return {a.v - b.v, a.e - b.e}; }
    friend DPair operator-(const DPair& a) { return {-a.v, -a.e}; }
    friend DPair operator*(const DPair& a, const S& s) { return {a.v * s, a.e * s}; }
    friend DPair operator*(const S& s, const DPair& a) { return a * s; }
    friend DPair operator/(const DPair& a, const S& s) { return {a.v / s, a.e / s}; }
    DPair& operator+=(const DPair& o) { return *this = *this + o; }
    DPair& operator-=(const DPair& o) { return *this = *this - o; }

    friend bool operator==(const DPair& a, const DPair& b) { return a.v == b.v && a.e == b.e; }
    friend bool operator!=(const DPair& a, const DPair& b) { return !(a == b); }
};

template <Scalar S>
int sgn(const DPair<S>& x) {
    int s = sgn(x.v);
    return s != 0 ? s : sgn(x.e);
}

template <Scalar S> bool operator<(const DPair<S>& a, const DPair<S>& b) { return sgn(a - b) < 0; }
template <Scalar S> bool operator>(const DPair<S>& a, const DPair<S>& b) { return sgn(a - b) > 0; }
template <Scalar S> bool operator<=(const DPair<S>& a, const DPair<S>& b) { return sgn(a - b) <= 0; }
template <Scalar S> bool operator>=(const DPair<S>& a, const DPair<S>& b) { return sgn(a - b) >= 0; }

// ---------------------------------------------------------------------------
// Exact decimal rendering (round half away from zero), e.g. for reports.

inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;  // mpz division truncates toward zero
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

// floor(x * scale), exact.
inline Int floor_scaled(const Rat& x, const Int& scale) {
    return floor_div(num(x) * scale, den(x));
}

// floor(q * sqrt2), exact via integer square roots.
inline Int floor_rad(const Rat& q) {
    if (q == 0) return 0;
    Int n = num(q), d = den(q);
    Int s = boost::multiprecision::sqrt(Int(2 * n * n));  // floor(|n|*sqrt2)
    // |n|*sqrt2 is irrational, so it is never a multiple of d.
    return n > 0 ? floor_div(s, d) : Int(-floor_div(s, d) - 1);
}

// exact comparison q*sqrt2 <=> t
inline int cmp_rad_rat(const Rat& q, const Rat& t) {
    int sq = sgn(q), st = sgn(t);
    if (sq >= 0 && st < 0) return 1;
    if (sq < 0 && st >= 0) return -1;
    if (sq == 0) return -st;
    int c = Rat(2 * q * q).compare(Rat(t * t));
    return sq > 0 ? c : -c;  // both negative: order flips
}

inline Int floor_scaled(const QuadRat& x, const Int& scale) {
    Rat rs = x.r * Rat(scale), qs = x.q * Rat(scale);
    Int rad = floor_rad(qs);
    Int base = floor_scaled(rs, Int(1)) + rad;
    // One correction step: the two fractional parts may sum past 1.
    Rat frac = rs - Rat(floor_scaled(rs, Int(1)));
    // frac(qs*sqrt2) >= 1 - frac(rs)  <=>  qs*sqrt2 >= rad + 1 - frac(rs)
    if (cmp_rad_rat(qs, Rat(rad) + 1 - frac) >= 0) ++base;
    return base;
}

template <Scalar S>
std::string decimal_str(const S& x, unsigned digits = 12) {
    Int scale2 = 2 * boost::multiprecision::pow(Int(10), digits);
    bool neg = sgn(x) < 0;
    Int y = floor_scaled(neg ? S(-x) : x, scale2);
    Int mag = floor_div(y + 1, 2);  // round(|x|*10^d), halves up
    std::string u = mag.str();
    if (digits > 0) {
        if (u.size() <= digits) u.insert(0, digits + 1 - u.size(), '0');
        u.insert(u.size() - digits, ".");
    }
    return (neg ? "-" : "") + u;
}

}  // namespace ctx
