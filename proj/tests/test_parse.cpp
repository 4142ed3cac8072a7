#include <doctest.h>

#include "helpers.hpp"
#include "qbs/parse.hpp"
#include "qbs/render.hpp"

using namespace qbs;

TEST_CASE("element grammar round-trips through the renderer") {
    std::mt19937 rng(42);
    for (auto dat : {qbstest::sl2(), qbstest::a2(), qbstest::borcherds()}) {
        Algebra alg(dat, 4);
        const Datum& d = alg.datum();
        long D = d.rootOrder();
        std::uniform_int_distribution<int> pickI(0, static_cast<int>(d.rank()) - 1);
        std::uniform_int_distribution<int> len(0, 3), side(0, 2), hv(-2, 2);
        for (int trial = 0; trial < 20; ++trial) {
            AlgebraElement x = alg.one();
            int n = len(rng);
            for (int t = 0; t < n; ++t) {
                int i = pickI(rng);
                int k = 1 + (side(rng) % static_cast<int>(d.charge()[i]));
                int s = side(rng);
                if (s == 2) {
                    CoweightVector h(d.rank());
                    h.h[static_cast<std::size_t>(i)] = hv(rng);
                    x = alg.multiply(x, alg.toral(h));
                } else {
                    x = alg.multiply(x, alg.gen(s == 0 ? Side::E : Side::F, i, k));
                }
            }
            std::string text = elementStr(x, D);
            CHECK(parseElement(alg, text) == x);
        }
    }
}

TEST_CASE("parser handles literals, powers, and quotients") {
    Algebra alg(qbstest::sl2(), 3);
    CHECK(parseElement(alg, "1") == alg.one());
    CHECK(parseElement(alg, "0 ") == AlgebraElement{});
    CHECK(parseElement(alg, "q^2") == alg.one().scaled(alg.datum().qPower(2L)));
    CHECK(parseElement(alg, "q^{1/2}") ==
          alg.one().scaled(alg.datum().qPower(ratio(1, 2))));
    CHECK(parseElement(alg, "e[1,1]*f[1,1]") ==
          alg.multiply(alg.gen(Side::E, 0, 1), alg.gen(Side::F, 0, 1)));
    CHECK(parseElement(alg, "f[1,1] e[1,1]") ==
          alg.multiply(alg.gen(Side::F, 0, 1), alg.gen(Side::E, 0, 1)));
    CoweightVector h(1);
    h.h[0] = 2;
    h.d[0] = -1;
    CHECK(parseElement(alg, "q^{h:2;d:-1}") == alg.toral(h));
    CHECK(parseElement(alg, "(q - q^-1)/(2)") ==
          alg.one().scaled((alg.datum().qPower(1L) - alg.datum().qPower(-1L)) /
                           Scalar(2)));
    CHECK(parseElement(alg, "3/2 + q") ==
          alg.one().scaled(Scalar(ratio(3, 2)) + alg.datum().qPower(1L)));
    CHECK_THROWS_AS(parseElement(alg, "e[2,1]"), ParseError);
    CHECK_THROWS_AS(parseElement(alg, "e[1,5]"), ParseError);
    CHECK_THROWS_AS(parseElement(alg, "q^"), ParseError);
    CHECK_THROWS_AS(parseElement(alg, "x"), ParseError);
}

TEST_CASE("weight specifications parse coordinatewise") {
    WeightFunctional w = parseWeight(2, "h1=3,h2=-1,d2=4");
    CHECK(w.onH == std::vector<long>{3, -1});
    CHECK(w.onD == std::vector<long>{0, 4});
    CHECK_THROWS_AS(parseWeight(2, "h3=1"), ParseError);
    CHECK_THROWS_AS(parseWeight(2, "x1=1"), ParseError);
}
