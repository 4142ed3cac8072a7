#pragma once

#include "qbs/linalg.hpp"
#include "qbs/modules.hpp"

namespace qbs {

// finitely supported combination sum c_h q^h in U^0
struct ToralElement {
    std::map<CoweightVector, Scalar> terms;

    void add(const CoweightVector& h, const Scalar& c) {
        if (c.isZero()) return;
        auto [it, ins] = terms.try_emplace(h, c);
        if (!ins) {
            it->second += c;
            if (it->second.isZero()) terms.erase(it);
        }
    }
    bool isZero() const { return terms.empty(); }
    bool operator==(const ToralElement& o) const { return terms == o.terms; }

    friend ToralElement operator*(const ToralElement& a, const ToralElement& b) {
        ToralElement r;
        for (auto& [ha, ca] : a.terms)
            for (auto& [hb, cb] : b.terms) r.add(ha + hb, ca * cb);
        return r;
    }
    friend ToralElement operator+(const ToralElement& a, const ToralElement& b) {
        ToralElement r = a;
        for (auto& [h, c] : b.terms) r.add(h, c);
        return r;
    }
};

enum class CasimirVariant { Even, Odd, IsotropicOdd };

// the three displayed rank-1 central elements; the isotropic-odd one is a
// family indexed by a coweight h with alpha_i(h) != 0
inline AlgebraElement casimirRank1(Algebra& alg, std::size_t i, CasimirVariant variant,
                                   const CoweightVector* hParam = nullptr) {
    const Datum& d = alg.datum();
    long sa = d.s(i) * d.a(i, i);
    Scalar xi = alg.datum().qPower(d.s(i)) - alg.datum().qPower(-d.s(i));
    // xi_i = q_i - q_i^{-1} with q_i = q^{s_i}
    CoweightVector hi(d.rank());
    hi.h[i] = d.s(i);
    AlgebraElement e = alg.gen(Side::E, i, 1), f = alg.gen(Side::F, i, 1);
    AlgebraElement K = alg.toral(hi), Kinv = alg.toral(hi.negated());
    switch (variant) {
        case CasimirVariant::Even: {
            if (d.a(i, i) == 0 || d.isOdd(i))
                throw DomainError("even casimir needs a_{i,i} != 0 and an even node");
            Scalar cp = Scalar(1) / (Scalar(1) - d.qPower(-sa));
            Scalar cm = Scalar(1) / (Scalar(1) - d.qPower(sa));
            return alg.multiply(f, e) +
                   (K.scaled(cp) - Kinv.scaled(cm)).scaled(Scalar(1) / xi);
        }
        case CasimirVariant::Odd: {
            if (d.a(i, i) == 0 || !d.isOdd(i))
                throw DomainError("odd casimir needs a_{i,i} != 0 and an odd node");
            Scalar cp = (Scalar(1) - d.qPower(sa)) / (Scalar(1) + d.qPower(sa));
            Scalar cm = (Scalar(1) - d.qPower(-sa)) / (Scalar(1) + d.qPower(-sa));
            Scalar dp = Scalar(1) / ((Scalar(1) + d.qPower(-sa)) *
                                     (Scalar(1) + d.qPower(-sa)));
            Scalar dm =
                Scalar(1) / ((Scalar(1) + d.qPower(sa)) * (Scalar(1) + d.qPower(sa)));
            AlgebraElement mid = K.scaled(cp) - Kinv.scaled(cm);
            AlgebraElement quad = alg.multiply(alg.multiply(f, f), alg.multiply(e, e));
            CoweightVector h2 = hi + hi;
            AlgebraElement tail =
                (alg.toral(h2).scaled(dp) + alg.toral(h2.negated()).scaled(dm))
                    .scaled(Scalar(1) / (xi * xi));
            return quad +
                   alg.multiply(alg.multiply(f, mid), e).scaled(Scalar(1) / xi) -
                   tail;
        }
        case CasimirVariant::IsotropicOdd: {
            if (d.a(i, i) != 0 || !d.isOdd(i))
                throw DomainError("isotropic casimir needs a_{i,i} = 0 and an odd node");
            if (hParam == nullptr || d.alphaOn(i, *hParam) == 0)
                throw DomainError("isotropic casimir needs h with alpha_i(h) != 0");
            long ah = d.alphaOn(i, *hParam);
            Scalar c = Scalar(1) / ((Scalar(1) - d.qPower(-ah)) * xi);
            AlgebraElement qh = alg.toral(*hParam);
            return alg.multiply(alg.multiply(f, qh), e) +
                   alg.multiply(qh, K - Kinv).scaled(c);
        }
    }
    throw DomainError("unknown casimir variant");
}

// exact commutation with every generator q^{h_i}, q^{d_i}, e_{i,k}, f_{i,k}
inline bool isCentral(Algebra& alg, const AlgebraElement& z) {
    const Datum& d = alg.datum();
    std::vector<AlgebraElement> gens;
    for (std::size_t i = 0; i < d.rank(); ++i) {
        gens.push_back(alg.toral(CoweightVector::basisH(d.rank(), i)));
        gens.push_back(alg.toral(CoweightVector::basisD(d.rank(), i)));
        for (long k = 1; k <= d.charge()[i]; ++k) {
            gens.push_back(alg.gen(Side::E, i, k));
            gens.push_back(alg.gen(Side::F, i, k));
        }
    }
    for (auto& g : gens)
        if (!(alg.multiply(z, g) == alg.multiply(g, z))) return false;
    return true;
}

// projection to U^0 along the triangular decomposition, then the shift
// phi(q^h) = q^{-rho(h)} q^h
inline ToralElement harishChandra(const Algebra& alg, const AlgebraElement& z) {
    const Datum& d = alg.datum();
    WeightFunctional rho = d.rho();
    ToralElement out;
    for (auto& [t, c] : z.terms) {
        if (!t.fWord.empty() || !t.eWord.empty()) continue;
        out.add(t.h, c * d.qPower(-rho(t.h)));
    }
    return out;
}

inline Scalar chiEvaluate(const Datum& d, const WeightFunctional& mu,
                          const ToralElement& t) {
    Scalar acc(0);
    for (auto& [h, c] : t.terms) acc += c * d.qPower(mu(h));
    return acc;
}

struct ImageConstraintReport {
    bool weylInvariant = false;
    bool restrictedSupport = false;
};

// reflection on coweights: r_i(h) = h - (2/a_{i,i}) alpha_i(h) h_i
inline CoweightVector reflectCoweight(const Datum& d, std::size_t i,
                                      const CoweightVector& h) {
    if (d.a(i, i) == 0) throw DomainError("reflection needs a_{i,i} != 0");
    long num = 2 * d.alphaOn(i, h);
    if (num % d.a(i, i) != 0) throw DomainError("reflection leaves the coweight lattice");
    CoweightVector r = h;
    r.h[i] -= num / d.a(i, i);
    return r;
}

inline ImageConstraintReport checkImageConstraints(const Datum& d,
                                                   const ToralElement& t) {
    ImageConstraintReport rep;
    rep.weylInvariant = true;
    rep.restrictedSupport = true;
    for (auto& [h, c] : t.terms) {
        // orbit closure under the reflections with a_{i,i} != 0; every
        // orbit point must carry the same coefficient
        std::set<CoweightVector> seen{h};
        std::vector<CoweightVector> frontier{h};
        while (!frontier.empty() && rep.weylInvariant) {
            std::vector<CoweightVector> next;
            for (auto& x : frontier)
                for (std::size_t i = 0; i < d.rank(); ++i) {
                    if (d.a(i, i) == 0) continue;
                    CoweightVector y(d.rank());
                    try {
                        y = reflectCoweight(d, i, x);
                    } catch (const DomainError&) {
                        rep.weylInvariant = false;
                        break;
                    }
                    if (!seen.insert(y).second) continue;
                    auto it = t.terms.find(y);
                    if (it == t.terms.end() || !(it->second == c)) {
                        rep.weylInvariant = false;
                        break;
                    }
                    next.push_back(y);
                    if (seen.size() > 10000)
                        throw DomainError("coweight orbit did not close");
                }
            frontier = std::move(next);
        }
        for (std::size_t i = 0; i < d.rank(); ++i) {
            long ah = d.alphaOn(i, h);
            long unit = d.s(i) * d.a(i, i);
            if (!d.isOdd(i)) {
                if ((unit == 0 && ah != 0) || (unit != 0 && ah % unit != 0))
                    rep.restrictedSupport = false;
            } else if (d.a(i, i) != 0 && ah % (2 * unit) != 0) {
                rep.restrictedSupport = false;
            }
        }
    }
    return rep;
}

// coefficients c with 2*lambda = sum c_i (1/s_i) alpha_i, integral;
// requires a finite-type datum (invertible Cartan matrix)
inline std::vector<long> halfLatticeCoordinates(const Datum& d,
                                                const WeightFunctional& lam) {
    std::size_t n = d.rank();
    Matrix<Rational> a(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t cIdx = 0; cIdx < n; ++cIdx)
            a(r, cIdx) = Rational(d.a(r, cIdx));
    std::vector<Rational> rhs(n);
    for (std::size_t r = 0; r < n; ++r) rhs[r] = Rational(lam.onH[r]);
    std::vector<Rational> x = a.solve(rhs);  // lambda = sum x_i alpha_i
    std::vector<long> c(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rational ci = Rational(2 * d.s(i)) * x[i];
        if (ci.get_den() != 1)
            throw DomainError("weight is not in the half coweight-root lattice");
        c[i] = ci.get_num().get_si();
    }
    return c;
}

// sum over module weights mu of theta(lambda-mu,lambda-mu) dim V_mu K_{-2mu},
// with K extended by K_{(1/s_i) alpha_i} = q^{h_i}
inline ToralElement xiZLambda(Algebra& alg, const WeightFunctional& lam, long depth) {
    const Datum& d = alg.datum();
    if (!d.isFiniteType()) throw DomainError("needs a finite-type datum");
    std::vector<long> c = halfLatticeCoordinates(d, lam);
    HighestWeightModule v = buildIrreducible(alg, lam, depth);
    if (!v.exhausted()) throw ModuleNotExhausted();
    ToralElement out;
    for (auto& gamma : v.nonzeroWeights()) {
        // -2 mu = -2 lambda + 2 gamma
        CoweightVector h(d.rank());
        for (std::size_t i = 0; i < d.rank(); ++i) h.h[i] = -c[i];
        CoweightVector g2 = d.hBeta(gamma);
        h = h + g2 + g2;
        int sign = d.thetaBicharacter(gamma, gamma);
        out.add(h, Scalar(Rational(sign * (long)v.dim(gamma))));
    }
    return out;
}

// str(u K_{2rho}^{-1}) on the irreducible module with highest weight lambda
inline Scalar fLambda(Algebra& alg, const WeightFunctional& lam,
                      const AlgebraElement& u, long depth) {
    const Datum& d = alg.datum();
    if (!d.isFiniteType()) throw DomainError("needs a finite-type datum");
    HighestWeightModule v = buildIrreducible(alg, lam, depth);
    CoweightVector h2rho = d.hBeta(d.twoRhoInQ());
    return v.supertrace(alg.multiply(u, alg.toral(h2rho.negated())));
}

}  // namespace qbs
