#include <doctest.h>

#include "helpers.hpp"
#include "qbs/algebra.hpp"

using namespace qbs;

namespace {

Scalar xiInv(const Datum& d, std::size_t i) {
    LaurentPoly xi;
    xi.addTerm(d.qiExp(i), 1);
    xi.addTerm(-d.qiExp(i), -1);
    return Scalar(LaurentPoly(1), xi);
}

// Random monomial: a product of generator letters (mixed sides) and a toral
// factor, with at most eCap/fCap letters per half so products stay in depth.
AlgebraElement randomMonomial(Algebra& alg, std::mt19937& rng, int eCap, int fCap) {
    const Datum& d = alg.datum();
    std::uniform_int_distribution<int> idx(0, (int)d.rank() - 1), coin(0, 2),
        hval(-1, 1);
    AlgebraElement r = alg.one();
    int e = 0, f = 0;
    for (int step = 0; step < eCap + fCap + 1; ++step) {
        int what = coin(rng);
        if (what == 2) {
            CoweightVector h(d.rank());
            for (std::size_t i = 0; i < d.rank(); ++i) {
                h.h[i] = hval(rng);
                h.d[i] = hval(rng);
            }
            r = alg.multiply(r, alg.toral(h));
        } else {
            std::size_t i = (std::size_t)idx(rng);
            std::uniform_int_distribution<int> kk(1, (int)d.m(i));
            if (what == 0 && e < eCap) {
                r = alg.multiply(r, alg.gen(Side::E, i, kk(rng)));
                ++e;
            } else if (what == 1 && f < fCap) {
                r = alg.multiply(r, alg.gen(Side::F, i, kk(rng)));
                ++f;
            }
        }
    }
    return r;
}

std::vector<Algebra> sampleAlgebras() {
    std::vector<Algebra> v;
    v.emplace_back(qbstest::sl2(), 7);
    v.emplace_back(qbstest::osp12(), 7);
    v.emplace_back(qbstest::a2(), 4);
    v.emplace_back(qbstest::isotropic(), 7);
    return v;
}

}  // namespace

TEST_CASE("straightening relations") {
    Algebra alg(qbstest::a2(), 4);
    const Datum& d = alg.datum();
    CoweightVector h(2);
    h.h[0] = 1;
    h.d[1] = 2;

    // q^h e_{i,k} = q^{alpha_i(h)} e_{i,k} q^h
    for (std::size_t i = 0; i < 2; ++i) {
        AlgebraElement lhs = alg.multiply(alg.toral(h), alg.gen(Side::E, i, 1));
        AlgebraElement rhs = alg.multiply(alg.gen(Side::E, i, 1), alg.toral(h))
                                 .scaled(d.qPower(d.alphaOn(i, h)));
        CHECK(lhs == rhs);
    }

    // mixed colors: e_{i} f_{j} = theta_{j,i} f_{j} e_{i} for i != j
    AlgebraElement ef = alg.multiply(alg.gen(Side::E, 0, 1), alg.gen(Side::F, 1, 1));
    AlgebraElement fe = alg.multiply(alg.gen(Side::F, 1, 1), alg.gen(Side::E, 0, 1));
    CHECK(ef == fe.scaled(Scalar(Rational(d.theta(1, 0)))));

    // sl2: ef - fe = (K - K^{-1})/(q - q^{-1})
    Algebra s(qbstest::sl2(), 5);
    AlgebraElement comm = s.multiply(s.gen(Side::E, 0, 1), s.gen(Side::F, 0, 1)) -
                          s.multiply(s.gen(Side::F, 0, 1), s.gen(Side::E, 0, 1));
    CoweightVector h1 = CoweightVector::basisH(1, 0);
    AlgebraElement expect =
        (s.toral(h1) - s.toral(h1.negated())).scaled(xiInv(s.datum(), 0));
    CHECK(comm == expect);
}

TEST_CASE("multiplication is associative") {
    for (auto& alg : sampleAlgebras()) {
        std::mt19937 rng(42);
        int eCap = alg.datum().rank() == 1 ? 2 : 1;
        for (int t = 0; t < 25; ++t) {
            AlgebraElement a = randomMonomial(alg, rng, eCap, eCap);
            AlgebraElement b = randomMonomial(alg, rng, eCap, eCap);
            AlgebraElement c = randomMonomial(alg, rng, eCap, eCap);
            CHECK(alg.multiply(alg.multiply(a, b), c) ==
                  alg.multiply(a, alg.multiply(b, c)));
        }
    }
}

TEST_CASE("coproduct on generators and products") {
    Algebra alg(qbstest::osp12(), 5);
    const Datum& d = alg.datum();
    CoweightVector h(1);
    h.h[0] = 2;
    h.d[0] = -1;

    TensorElement dh = alg.coproduct(alg.toral(h));
    CHECK(dh == alg.tensorOf({alg.toral(h), alg.toral(h)}));
    CHECK(alg.coproduct(alg.one()) == alg.tensorOne(2));

    // Delta(ff) against the hand expansion of (f ox K^{-1} + 1 ox f)^2:
    // ff ox K^{-2} + theta q^{-(a|a)} f ox f K^{-1}... assembled via tensorOf
    AlgebraElement f = alg.gen(Side::F, 0, 1);
    AlgebraElement ff = alg.multiply(f, f);
    AlgebraElement kInv = alg.toral(d.hBeta(RootVector::simple(1, 0)).negated());
    TensorElement lhs = alg.coproduct(ff);
    TensorElement expect =
        alg.tensorOf({ff, alg.multiply(kInv, kInv)}) +
        alg.tensorOf({f, alg.multiply(kInv, f)}) +
        alg.tensorOf({f, alg.multiply(f, kInv)})
            .scaled(Scalar(Rational(d.theta(0, 0)))) +
        alg.tensorOf({alg.one(), ff});
    CHECK(lhs == expect);
}

TEST_CASE("coassociativity and counit axioms") {
    for (auto& alg : sampleAlgebras()) {
        std::mt19937 rng(7);
        std::vector<AlgebraElement> samples;
        const Datum& d = alg.datum();
        for (std::size_t i = 0; i < d.rank(); ++i)
            for (int k = 1; k <= d.m(i); ++k) {
                samples.push_back(alg.gen(Side::E, i, k));
                samples.push_back(alg.gen(Side::F, i, k));
            }
        int eCap = d.rank() == 1 ? 2 : 1;
        for (int t = 0; t < 10; ++t) samples.push_back(randomMonomial(alg, rng, eCap, eCap));
        for (auto& a : samples) {
            TensorElement da = alg.coproduct(a);
            CHECK(alg.deltaAtSlot(da, 0) == alg.deltaAtSlot(da, 1));
            CHECK(alg.deltaAtSlot(da, 0) == alg.coproductPower(a, 3));
            TensorElement left = alg.counitAtSlot(da, 0), right = alg.counitAtSlot(da, 1);
            TensorElement self(1);
            for (auto& [t2, c2] : a.terms) self.add({t2}, c2);
            CHECK(left == self);
            CHECK(right == self);
        }
    }
}

TEST_CASE("antipode axiom and squares") {
    for (auto& alg : sampleAlgebras()) {
        const Datum& d = alg.datum();
        std::mt19937 rng(11);
        std::vector<AlgebraElement> samples;
        for (std::size_t i = 0; i < d.rank(); ++i) {
            samples.push_back(alg.gen(Side::E, i, 1));
            samples.push_back(alg.gen(Side::F, i, 1));
        }
        int eCap = d.rank() == 1 ? 2 : 1;
        for (int t = 0; t < 8; ++t) samples.push_back(randomMonomial(alg, rng, eCap, eCap));
        for (auto& a : samples) {
            TensorElement da = alg.coproduct(a);
            AlgebraElement l = alg.contract(alg.antipodeAtSlot(da, 0));
            AlgebraElement r = alg.contract(alg.antipodeAtSlot(da, 1));
            AlgebraElement expect = alg.one().scaled(alg.counit(a));
            CHECK(l == expect);
            CHECK(r == expect);
        }
    }

    // S(q^h) = q^{-h}; S^2(e) = q^{-(a_i|a_i)} e
    Algebra alg(qbstest::a2(), 4);
    const Datum& d = alg.datum();
    CoweightVector h(2);
    h.h[0] = 1;
    h.h[1] = -2;
    h.d[0] = 3;
    CHECK(alg.antipode(alg.toral(h)) == alg.toral(h.negated()));
    for (std::size_t i = 0; i < 2; ++i) {
        AlgebraElement e = alg.gen(Side::E, i, 1);
        RootVector ai = RootVector::simple(2, i);
        CHECK(alg.antipode(alg.antipode(e)) == e.scaled(d.qPower(-d.rootForm(ai, ai))));
    }
}

TEST_CASE("antipode squared is conjugation by K_2rho in finite type") {
    for (auto dat : {qbstest::sl2(), qbstest::osp12(), qbstest::a2()}) {
        Algebra alg(dat, 4);
        AlgebraElement k2rho = alg.kGamma(alg.datum().twoRhoInQ());
        for (std::size_t i = 0; i < alg.datum().rank(); ++i)
            for (Side s : {Side::E, Side::F}) {
                AlgebraElement x = alg.gen(s, i, 1);
                CHECK(alg.multiply(k2rho, alg.antipode(alg.antipode(x))) ==
                      alg.multiply(x, k2rho));
            }
    }
}

namespace {

// Right side of the flip identity, evaluated term by term:
// sum theta(x1,y1) theta(x1,y0) theta(x2,y0) theta(x2,y1)
//     (x0|y0)(x2|S(y2)) y1 x1
AlgebraElement flipProduct(Algebra& alg, const AlgebraElement& x, const AlgebraElement& y) {
    const Datum& d = alg.datum();
    TensorElement dx = alg.coproductPower(x, 3), dy = alg.coproductPower(y, 3);
    AlgebraElement out;
    for (auto& [tx, cx] : dx.terms)
        for (auto& [ty, cy] : dy.terms) {
            RootVector x1 = alg.qDegree(tx[1]), x2 = alg.qDegree(tx[2]);
            RootVector y0 = alg.qDegree(ty[0]), y1 = alg.qDegree(ty[1]);
            int sign = d.thetaBicharacter(x1, y1) * d.thetaBicharacter(x1, y0) *
                       d.thetaBicharacter(x2, y0) * d.thetaBicharacter(x2, y1);
            AlgebraElement ex0, ex1, ex2, ey0, ey1, ey2;
            ex0.add(tx[0], cx);
            ex1.add(tx[1], Scalar(1));
            ex2.add(tx[2], Scalar(1));
            ey0.add(ty[0], cy);
            ey1.add(ty[1], Scalar(1));
            ey2.add(ty[2], Scalar(1));
            Scalar c = alg.hopfPair(ex0, ey0) * alg.hopfPair(ex2, alg.antipode(ey2));
            if (c.isZero()) continue;
            out = out + alg.multiply(ey1, ex1).scaled(c * Scalar(Rational(sign)));
        }
    return out;
}

}  // namespace

TEST_CASE("flip identity reproduces multiplication") {
    for (auto dat : {qbstest::sl2(), qbstest::osp12(), qbstest::a2(), qbstest::isotropic()}) {
        Algebra alg(dat, dat.rank() == 1 ? 7 : 5);
        const Datum& d = alg.datum();
        // all generator pairs
        for (std::size_t i = 0; i < d.rank(); ++i)
            for (std::size_t j = 0; j < d.rank(); ++j) {
                AlgebraElement x = alg.gen(Side::E, i, 1), y = alg.gen(Side::F, j, 1);
                CHECK(flipProduct(alg, x, y) == alg.multiply(x, y));
            }
        // random x in U^{>=0}, y in U^{<=0} with short words
        std::mt19937 rng(31);
        std::uniform_int_distribution<int> len(0, d.rank() == 1 ? 3 : 2),
            idx(0, (int)d.rank() - 1), hval(-1, 1);
        for (int t = 0; t < 5; ++t) {
            AlgebraElement x = alg.one(), y = alg.one();
            int nx = len(rng), ny = len(rng);
            for (int p = 0; p < nx; ++p) {
                std::size_t i = (std::size_t)idx(rng);
                std::uniform_int_distribution<int> kk(1, (int)d.m(i));
                x = alg.multiply(x, alg.gen(Side::E, i, kk(rng)));
            }
            CoweightVector h(d.rank());
            for (std::size_t i = 0; i < d.rank(); ++i) h.h[i] = hval(rng);
            x = alg.multiply(x, alg.toral(h));
            for (int p = 0; p < ny; ++p) {
                std::size_t j = (std::size_t)idx(rng);
                std::uniform_int_distribution<int> kk(1, (int)d.m(j));
                y = alg.multiply(y, alg.gen(Side::F, j, kk(rng)));
            }
            if (x.isZero() || y.isZero()) continue;
            CHECK(flipProduct(alg, x, y) == alg.multiply(x, y));
        }
    }
}

TEST_CASE("adjoint actions") {
    Algebra alg(qbstest::a2(), 4);
    const Datum& d = alg.datum();
    CoweightVector h(2);
    h.h[0] = 1;
    h.d[1] = 1;
    std::mt19937 rng(13);
    for (int t = 0; t < 6; ++t) {
        AlgebraElement v = randomMonomial(alg, rng, 1, 1);
        // ad(q^h) v = q^h v q^{-h}
        CHECK(alg.ad(alg.toral(h), v) ==
              alg.multiply(alg.multiply(alg.toral(h), v), alg.toral(h.negated())));
    }
    for (std::size_t i = 0; i < 2; ++i) {
        AlgebraElement u = alg.gen(Side::E, i, 1);
        CHECK(alg.ad(u, alg.one()) == alg.one().scaled(alg.counit(u)));
        CHECK(alg.adt(u, alg.one()) == alg.one().scaled(alg.counit(u)));
    }
}
