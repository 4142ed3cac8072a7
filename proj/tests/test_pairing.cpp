#include <doctest.h>

#include "helpers.hpp"
#include "qbs/registry.hpp"

using namespace qbs;

namespace {

Scalar xiInv(const Datum& d, std::size_t i) {
    LaurentPoly xi;
    xi.addTerm(d.qiExp(i), 1);
    xi.addTerm(-d.qiExp(i), -1);
    return Scalar(LaurentPoly(1), xi);
}

// Independent pairing evaluation: peel the first letter of y against the
// full coproduct expansion of x, instead of the engine's in-place recursion.
Scalar pairViaCoproduct(const Datum& d, PairingEngine& eng, const Word& x, const Word& y) {
    if (wordWeight(x, d.rank()) != wordWeight(y, d.rank())) return Scalar(0);
    if (y.empty()) return x.empty() ? Scalar(1) : Scalar(0);
    auto [j, l] = y.front();
    Word yRest(y.begin() + 1, y.end());
    RootVector alphaJ = RootVector::simple(d.rank(), static_cast<std::size_t>(j));
    Scalar acc(0);
    for (auto& t : deltaPlus(d, HalfWord{Side::E, x})) {
        if (t.left.size() != 1 || t.left[0] != y.front()) continue;
        int twist = d.thetaBicharacter(wordWeight(t.right, d.rank()), alphaJ);
        acc += t.coeff * Scalar(Rational(-twist)) * xiInv(d, static_cast<std::size_t>(j)) *
               eng.pair(t.right, yRest);
    }
    return acc;
}

}  // namespace

TEST_CASE("coproduct expansion of e-words") {
    Datum d = qbstest::sl2();
    auto one = deltaPlus(d, HalfWord{Side::E, {}});
    REQUIRE(one.size() == 1);
    CHECK(one[0].coeff == Scalar(1));
    CHECK(one[0].left.empty());
    CHECK(one[0].right.empty());
    CHECK(one[0].kShift.isZero());

    Word e{{0, 1}};
    auto gen = deltaPlus(d, HalfWord{Side::E, e});
    REQUIRE(gen.size() == 2);
    for (auto& t : gen) {
        CHECK(t.coeff == Scalar(1));
        if (t.left == e) {
            CHECK(t.right.empty());
            CHECK(t.kShift.isZero());
        } else {
            CHECK(t.right == e);
            CHECK(t.kShift == RootVector::simple(1, 0));
        }
    }

    // ee: the two mixed terms carry coefficients 1 and theta * q^{(a|a)}
    for (auto dat : {qbstest::sl2(), qbstest::osp12()}) {
        Word ee{{0, 1}, {0, 1}};
        Scalar mixed(0);
        int mixedCount = 0;
        for (auto& t : deltaPlus(dat, HalfWord{Side::E, ee})) {
            if (t.left.size() == 1) {
                mixed += t.coeff;
                ++mixedCount;
                CHECK(t.kShift == RootVector::simple(1, 0));
            }
        }
        CHECK(mixedCount == 2);
        int th = dat.theta(0, 0);
        Scalar expect = Scalar(1) + Scalar(Rational(th)) * Scalar::uPower(dat.rootOrder() * 2);
        CHECK(mixed == expect);
    }

    CHECK_THROWS_AS(deltaPlus(d, HalfWord{Side::F, {{0, 1}}}), DomainError);
}

TEST_CASE("pairing base cases and orthogonality") {
    Datum d = qbstest::borcherds();
    PairingEngine eng(d);
    for (std::size_t i = 0; i < 2; ++i)
        for (int k = 1; k <= d.m(i); ++k) {
            for (std::size_t j = 0; j < 2; ++j)
                for (int l = 1; l <= d.m(j); ++l) {
                    Scalar got = eng.pair(Word{{(int)i, k}}, Word{{(int)j, l}});
                    if (i == j && k == l)
                        CHECK(got == Scalar(-1) * xiInv(d, i));
                    else
                        CHECK(got.isZero());
                }
        }
    // weight mismatch
    CHECK(eng.pair(Word{{0, 1}}, Word{{0, 1}, {0, 1}}).isZero());
    CHECK(eng.pair(Word{{0, 1}, {1, 1}}, Word{{1, 1}, {1, 2}}).isZero());
}

TEST_CASE("length-two pairing on the rank-1 data") {
    Datum d = qbstest::sl2();
    PairingEngine eng(d);
    Word ee{{0, 1}, {0, 1}};
    // (ee|ff) = (1 + q^2)/xi^2, q = u^2
    LaurentPoly num;
    num.addTerm(4, 1);
    num.addTerm(0, 1);
    LaurentPoly xi;
    xi.addTerm(2, 1);
    xi.addTerm(-2, -1);
    CHECK(eng.pair(ee, ee) == Scalar(num, xi * xi));
}

TEST_CASE("pairing recursion agrees with the brute-force coproduct expansion") {
    for (auto d : {qbstest::sl2(), qbstest::osp12(), qbstest::a2(), qbstest::borcherds()}) {
        PairingEngine eng(d);
        std::mt19937 rng(123);
        std::uniform_int_distribution<int> len(0, 4), idx(0, (int)d.rank() - 1);
        int done = 0;
        while (done < 100) {
            int n = len(rng);
            Word x, y;
            for (int t = 0; t < n; ++t) {
                std::size_t i = (std::size_t)idx(rng);
                std::uniform_int_distribution<int> kk(1, (int)d.m(i));
                x.emplace_back((int)i, kk(rng));
            }
            for (int t = 0; t < n; ++t) {
                std::size_t i = (std::size_t)idx(rng);
                std::uniform_int_distribution<int> kk(1, (int)d.m(i));
                y.emplace_back((int)i, kk(rng));
            }
            CHECK(eng.pair(x, y) == pairViaCoproduct(d, eng, x, y));
            ++done;
        }
    }
}

TEST_CASE("registry dimensions") {
    BasisRegistry sl2(qbstest::sl2(), 5);
    for (long n = 1; n <= 5; ++n) {
        RootVector b(1);
        b.n[0] = n;
        CHECK(sl2.dim(b) == 1);
    }

    // isotropic odd generator squares to zero
    BasisRegistry iso(qbstest::isotropic(), 4);
    RootVector two(1);
    two.n[0] = 2;
    CHECK(iso.dim(two) == 0);
    CHECK(iso.dim(RootVector::simple(1, 0)) == 1);

    // A2: free dimension 3 at 2a1+a2, quotient dimension 2
    BasisRegistry a2(qbstest::a2(), 5);
    RootVector w(2);
    w.n[0] = 2;
    w.n[1] = 1;
    CHECK(a2.at(w).words.size() == 3);
    CHECK(a2.dim(w) == 2);
}

TEST_CASE("gram matrices per weight") {
    BasisRegistry reg(qbstest::sl2(), 3);
    Datum d = reg.datum();
    RootVector zero(1), a = RootVector::simple(1, 0);
    CHECK(reg.at(zero).gramPivot(0, 0) == Scalar(1));
    Matrix<Scalar> g1 = reg.gramFull(a);
    CHECK(g1.rows() == 1);
    CHECK(g1(0, 0) == Scalar(-1) * xiInv(d, 0));
}

TEST_CASE("pivot gram blocks are invertible on every covered weight") {
    for (auto d : {qbstest::sl2(), qbstest::osp12(), qbstest::a2(), qbstest::isotropic(),
                   qbstest::borcherds()}) {
        BasisRegistry reg(d, 4);
        for (auto& b : reg.coveredWeights()) {
            const auto& wb = reg.at(b);
            if (wb.pivots.empty()) continue;
            CHECK(!wb.gramPivot.det().isZero());
            CHECK(wb.gramPivot * wb.gramPivotInv ==
                  Matrix<Scalar>::identity(wb.pivots.size()));
        }
    }
}

TEST_CASE("coordinate map reproduces all pairings") {
    for (auto d : {qbstest::a2(), qbstest::borcherds()}) {
        BasisRegistry reg(d, 3);
        for (auto& b : reg.coveredWeights()) {
            const auto& wb = reg.at(b);
            auto pivots = reg.pivotWords(b);
            for (auto& w : wb.words) {
                auto cs = reg.eCoords(w);
                // same functional against every f-word of the weight
                for (auto& yv : wb.words) {
                    Word y = reversedWord(yv);
                    Scalar direct = reg.engine().pair(w, y);
                    Scalar viaCoords(0);
                    for (std::size_t j = 0; j < cs.size(); ++j)
                        viaCoords += cs[j] * reg.engine().pair(pivots[j], y);
                    CHECK(direct == viaCoords);
                }
                // idempotence: pivot words have unit coordinates
            }
            for (std::size_t j = 0; j < wb.pivots.size(); ++j) {
                auto cs = reg.eCoords(wb.words[wb.pivots[j]]);
                for (std::size_t c = 0; c < cs.size(); ++c)
                    CHECK(cs[c] == (c == j ? Scalar(1) : Scalar(0)));
            }
        }
    }
}

TEST_CASE("both halves have equal dimensions") {
    for (auto d : {qbstest::a2(), qbstest::borcherds()}) {
        BasisRegistry reg(d, 4);
        for (auto& b : reg.coveredWeights()) {
            const auto& wb = reg.at(b);
            // rank of the Gram matrix is symmetric in the two halves: check
            // the transpose-side coordinates solve exactly as well
            for (auto p : wb.pivots) {
                auto cs = reg.fCoords(reversedWord(wb.words[p]));
                CHECK(cs.size() == wb.pivots.size());
            }
        }
    }
}

TEST_CASE("serre combinations fall in the gram radical") {
    Datum a2 = qbstest::a2();
    BasisRegistry reg(a2, 4);
    CHECK(reg.inRadical(serreElement(a2, Side::E, 0, 1, 1, 1)));
    CHECK(reg.inRadical(serreElement(a2, Side::E, 1, 1, 0, 1)));
    CHECK(reg.inRadical(serreElement(a2, Side::F, 0, 1, 1, 1)));

    Datum b = qbstest::borcherds();
    BasisRegistry regb(b, 4);
    for (int l = 1; l <= 2; ++l) {
        CHECK(regb.inRadical(serreElement(b, Side::E, 0, 1, 1, l)));
        CHECK(regb.inRadical(serreElement(b, Side::F, 0, 1, 1, l)));
    }

    // two-node colored datum with a_{1,1}=2, theta_{1,1}=-1, a_{1,2}=-2
    Datum col({"1", "2"}, {{2, -2}, {-2, 2}}, {1, 1}, {1, 1}, {{-1, -1}, {-1, 1}});
    BasisRegistry regc(col, 4);
    HalfElement s = serreElement(col, Side::E, 0, 1, 1, 1);
    // direct radical membership: pair against every f-word of the weight
    RootVector w(2);
    w.n[0] = 3;
    w.n[1] = 1;
    for (auto& x : regc.at(w).words) {
        Scalar acc(0);
        for (auto& [sw, c] : s.terms) acc += c * regc.engine().pair(sw, reversedWord(x));
        CHECK(acc.isZero());
    }
    CHECK(regc.inRadical(s));
}
