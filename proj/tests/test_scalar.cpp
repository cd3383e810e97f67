#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <contexture/scalar.hpp>
#include <doctest.h>

#include <cstdlib>
#include <random>

using namespace ctx;

TEST_CASE("rational arithmetic and canonical form") {
    CHECK(rat(1, 3) + rat(1, 6) == rat(1, 2));
    CHECK(rat(2, 4) == rat(1, 2));
    CHECK(rat_str(rat(1, 2)) == "1/2");
    CHECK(rat_str(rat(-5)) == "-5/1");
    CHECK(rat_str(rat(0)) == "0/1");
    CHECK(rat_str(rat(3, -6)) == "-1/2");
    CHECK(sgn(rat(0)) == 0);
    CHECK(sgn(rat(-2, 7)) == -1);
}

TEST_CASE("rational parsing") {
    CHECK(parse_rat("3/4") == rat(3, 4));
    CHECK(parse_rat(" -12 ") == rat(-12));
    CHECK(parse_rat("-6/8") == rat(-3, 4));
    CHECK_THROWS_AS(parse_rat("abc"), ParseError);
    CHECK_THROWS_AS(parse_rat("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rat(""), ParseError);

    std::mt19937 rng(7);
    std::uniform_int_distribution<long> n(-1000000, 1000000), d(1, 999983);
    for (int i = 0; i < 200; ++i) {
        Rat x = rat(n(rng), d(rng));
        CHECK(parse_rat(rat_str(x)) == x);
    }
}

TEST_CASE("quadratic extension arithmetic") {
    QuadRat one_plus{Rat(1), Rat(1)};
    QuadRat one_minus{Rat(1), Rat(-1)};
    CHECK(one_plus * one_minus == QuadRat(-1));
    CHECK(sqrt2() * sqrt2() == QuadRat(2));
    CHECK(QuadRat(1) / one_plus == QuadRat{Rat(-1), Rat(1)});
    CHECK((sqrt2() / QuadRat(2)) * (sqrt2() / QuadRat(2)) == QuadRat(rat(1, 2)));
    CHECK_THROWS_AS(one_plus / QuadRat(0), std::domain_error);
}

TEST_CASE("quadratic sign and order decided exactly") {
    QuadRat half_rad = sqrt2() / QuadRat(2);           // 0.70710...
    CHECK(half_rad > QuadRat(rat(7, 10)));             // vs 0.7
    CHECK(half_rad < QuadRat(rat(71, 100)));           // vs 0.71
    QuadRat t{rat(3, 2), rat(-1, 2)};                  // (3-sqrt2)/2 = 0.79289...
    CHECK(t < QuadRat(rat(4, 5)));                     // vs 0.8
    CHECK(t > QuadRat(rat(79, 100)));                  // vs 0.79
    CHECK(sgn(QuadRat{Rat(-17), Rat(12)}) == -1);      // 12*sqrt2 < 17
    CHECK(sgn(QuadRat{Rat(-16), Rat(12)}) == 1);       // 12*sqrt2 > 16
    CHECK(sgn(QuadRat{Rat(-2), Rat(1)} * QuadRat{Rat(2), Rat(1)}) == -1);  // product is -2
    CHECK(sgn(QuadRat()) == 0);
}

TEST_CASE("quadratic strings") {
    QuadRat t{rat(3, 2), rat(-1, 2)};
    CHECK(quadrat_str(t) == "3/2 + -1/2*sqrt2");
    CHECK(parse_quadrat(quadrat_str(t)) == t);
    CHECK(parse_quadrat("5/3") == QuadRat(rat(5, 3)));
    CHECK(parse_quadrat("0/1 + 1/1*sqrt2") == sqrt2());
    CHECK_THROWS_AS(parse_quadrat("1/1*sqrt2"), ParseError);

    std::mt19937 rng(11);
    std::uniform_int_distribution<long> n(-500, 500), d(1, 499);
    for (int i = 0; i < 200; ++i) {
        QuadRat x{rat(n(rng), d(rng)), rat(n(rng), d(rng))};
        CHECK(scalar_traits<QuadRat>::parse(scalar_traits<QuadRat>::str(x)) == x);
    }
}

TEST_CASE("primitive scaling of rows") {
    std::vector<Rat> row{rat(1, 2), rat(-1, 3), rat(0)};
    make_primitive(row);
    CHECK(row == std::vector<Rat>{rat(3), rat(-2), rat(0)});

    std::vector<Rat> even{rat(4), rat(6)};
    make_primitive(even);
    CHECK(even == std::vector<Rat>{rat(2), rat(3)});

    std::vector<Rat> zero{rat(0), rat(0)};
    make_primitive(zero);
    CHECK(zero == std::vector<Rat>{rat(0), rat(0)});

    std::vector<QuadRat> qrow{QuadRat{rat(1, 2), rat(1, 2)}, QuadRat(3)};
    make_primitive(qrow);
    CHECK(qrow == std::vector<QuadRat>{QuadRat{Rat(1), Rat(1)}, QuadRat(6)});
}

TEST_CASE("infinitesimal pairs order lexicographically") {
    using D = DPair<Rat>;
    CHECK(D{rat(0), rat(-1)} < D{rat(0), rat(0)});
    CHECK(D{rat(0), rat(0)} < D{rat(1, 1000000), rat(-999)});
    CHECK(sgn(D{rat(0), rat(3)}) == 1);
    CHECK(sgn(D{rat(-1), rat(100)}) == -1);
    CHECK(D{rat(1), rat(2)} + D{rat(3), rat(-5)} == D{rat(4), rat(-3)});
    CHECK(D{rat(1), rat(2)} * rat(3) == D{rat(3), rat(6)});
}

TEST_CASE("floor helpers") {
    CHECK(floor_div(Int(7), Int(2)) == 3);
    CHECK(floor_div(Int(-7), Int(2)) == -4);
    CHECK(floor_div(Int(6), Int(3)) == 2);
    CHECK(floor_div(Int(-6), Int(3)) == -2);
    CHECK(floor_scaled(rat(-7, 2), Int(1)) == -4);
    CHECK(floor_scaled(rat(7, 2), Int(10)) == 35);
    CHECK(floor_rad(rat(1)) == 1);
    CHECK(floor_rad(rat(10)) == 14);
    CHECK(floor_rad(rat(-1)) == -2);
    CHECK(floor_rad(rat(-10)) == -15);
    CHECK(cmp_rad_rat(rat(1), rat(3, 2)) == -1);
    CHECK(cmp_rad_rat(rat(1), rat(7, 5)) == 1);
    CHECK(cmp_rad_rat(rat(-1), rat(-3, 2)) == 1);
    CHECK(cmp_rad_rat(rat(-1), rat(-7, 5)) == -1);
    CHECK(cmp_rad_rat(rat(0), rat(0)) == 0);
}

TEST_CASE("decimal rendering rounds half away from zero") {
    CHECK(decimal_str(rat(1, 3)) == "0.333333333333");
    CHECK(decimal_str(rat(2, 3)) == "0.666666666667");
    CHECK(decimal_str(rat(-2, 3)) == "-0.666666666667");
    CHECK(decimal_str(rat(1, 2)) == "0.500000000000");
    CHECK(decimal_str(rat(1, 8), 2) == "0.13");
    CHECK(decimal_str(rat(-1, 8), 2) == "-0.13");
    CHECK(decimal_str(rat(1, 40), 2) == "0.03");
    CHECK(decimal_str(rat(0)) == "0.000000000000");
    CHECK(decimal_str(rat(25, 2), 0) == "13");

    CHECK(decimal_str(sqrt2()) == "1.414213562373");
    CHECK(decimal_str(sqrt2() / QuadRat(2)) == "0.707106781187");
    CHECK(decimal_str(QuadRat{rat(3, 2), rat(-1, 2)}) == "0.792893218813");
    CHECK(decimal_str(QuadRat{Rat(17), Rat(-12)}) == "0.029437251523");
    CHECK(decimal_str(-sqrt2(), 3) == "-1.414");
    CHECK(decimal_str(QuadRat{Rat(0), Rat(5)}, 1) == "7.1");  // 5*sqrt2 = 7.07...
}

TEST_CASE("decimal rendering tracks double approximation") {
    std::mt19937 rng(23);
    std::uniform_int_distribution<long> n(-100000, 100000), d(1, 99991);
    for (int i = 0; i < 200; ++i) {
        Rat x = rat(n(rng), d(rng));
        double shown = std::strtod(decimal_str(x).c_str(), nullptr);
        CHECK(std::abs(shown - to_double(x)) < 1e-9);
    }
    std::uniform_int_distribution<long> m(-300, 300);
    for (int i = 0; i < 200; ++i) {
        QuadRat x{rat(m(rng), d(rng) % 297 + 1), rat(m(rng), d(rng) % 297 + 1)};
        double shown = std::strtod(decimal_str(x).c_str(), nullptr);
        CHECK(std::abs(shown - to_double(x)) < 1e-9);
    }
}
