#pragma once

#include "qbs/algebra.hpp"

namespace qbs {

// Killing form on the whole algebra.  Elements are re-expressed in the two
// triangular product bases
//   left form:   x q^h S(y)   (x an e-pivot word, y an f-pivot word)
//   right form:  y q^h S(x)
// and the form is evaluated on those bases by the closed formula
//   < x1 q^h1 S(y1) | y2 q^h2 S(x2) >
//     = (x1|y2)(x2|y1) q^{-(h1|h2)/2} theta(y1, y2) theta(y1, x2).
class KillingForm {
  public:
    explicit KillingForm(Algebra& alg) : alg_(&alg) {}

    // Decomposition coefficients; the Triple is reused as an index
    // (eWord = x, h, fWord = y), NOT as a normal-form monomial.
    using BorelForm = std::map<Triple, Scalar>;

    BorelForm toLeftForm(const AlgebraElement& z) { return toForm(z, true); }
    BorelForm toRightForm(const AlgebraElement& z) { return toForm(z, false); }

    Scalar killing(const AlgebraElement& a, const AlgebraElement& b) {
        const Datum& d = alg_->datum();
        std::size_t rank = d.rank();
        BorelForm la = toLeftForm(a), rb = toRightForm(b);
        Scalar acc(0);
        for (auto& [ta, ca] : la)
            for (auto& [tb, cb] : rb) {
                // ta: x1 q^{h1} S(y1);  tb: y2 q^{h2} S(x2)
                const Word &x1 = ta.eWord, &y1 = ta.fWord;
                const Word &y2 = tb.fWord, &x2 = tb.eWord;
                Scalar p1 = alg_->registry().engine().pair(x1, y2);
                if (p1.isZero()) continue;
                Scalar p2 = alg_->registry().engine().pair(x2, y1);
                if (p2.isZero()) continue;
                RootVector g1 = wordWeight(y1, rank), g2 = wordWeight(y2, rank);
                RootVector b2 = wordWeight(x2, rank);
                int sign = d.thetaBicharacter(g1, g2) * d.thetaBicharacter(g1, b2);
                Rational hh = d.coweightForm(ta.h, tb.h);
                acc += ca * cb * p1 * p2 * d.qPower(-hh / 2) *
                       Scalar(Rational(sign));
            }
        return acc;
    }

  private:
    // Normal form of the basis product for the requested side.
    AlgebraElement basisProduct(const Triple& t, bool left) {
        AlgebraElement x, y;
        x.add(Triple{{}, CoweightVector(alg_->datum().rank()), t.eWord}, Scalar(1));
        y.add(Triple{t.fWord, CoweightVector(alg_->datum().rank()), {}}, Scalar(1));
        AlgebraElement mid = alg_->toral(t.h);
        if (left) return alg_->multiply(alg_->multiply(x, mid), alg_->antipode(y));
        return alg_->multiply(alg_->multiply(y, mid), alg_->antipode(x));
    }

    // Express z in the product basis by eliminating blocks of maximal total
    // height: the basis product's top block keeps the unreversed word intact,
    // so per (f-weight, e-weight, toral exponent) block the change of basis
    // is a solvable square system.
    BorelForm toForm(const AlgebraElement& z, bool left) {
        const Datum& d = alg_->datum();
        std::size_t rank = d.rank();
        BorelForm out;
        AlgebraElement rem = z;
        while (!rem.isZero()) {
            // maximal blocks by total height
            long best = -1;
            for (auto& [t, c] : rem.terms) {
                long ht = wordWeight(t.fWord, rank).height() +
                          wordWeight(t.eWord, rank).height();
                best = std::max(best, ht);
            }
            // group maximal triples by (gamma, beta, h')
            std::map<std::tuple<RootVector, RootVector, CoweightVector>,
                     std::vector<std::pair<Triple, Scalar>>>
                blocks;
            for (auto& [t, c] : rem.terms) {
                RootVector g = wordWeight(t.fWord, rank), b = wordWeight(t.eWord, rank);
                if (g.height() + b.height() != best) continue;
                blocks[{g, b, t.h}].push_back({t, c});
            }
            for (auto& [key, entries] : blocks) {
                auto& [gamma, beta, hPrime] = key;
                // the S-side word carries a K_{+-weight}; undo it to find h
                CoweightVector h =
                    left ? hPrime - d.hBeta(gamma) : hPrime + d.hBeta(beta);
                auto ePivots = alg_->registry().pivotWords(beta);
                auto fPivots = alg_->registry().pivotWords(gamma);
                std::size_t ne = ePivots.size(), nf = fPivots.size();
                std::size_t n = ne * nf;
                // candidate basis triples and their normal forms
                std::vector<Triple> cands;
                std::vector<AlgebraElement> normals;
                cands.reserve(n);
                for (auto& ep : ePivots)
                    for (auto& fp : fPivots) {
                        Triple t{reversedWord(fp), h, ep};
                        cands.push_back(t);
                        normals.push_back(basisProduct(t, left));
                    }
                // top-block coordinates: triples with weights (gamma,beta), h'
                std::vector<Triple> topIndex;
                for (auto& ep : ePivots)
                    for (auto& fp : fPivots)
                        topIndex.push_back(Triple{reversedWord(fp), hPrime, ep});
                Matrix<Scalar> A(n, n);
                for (std::size_t j = 0; j < n; ++j)
                    for (std::size_t r = 0; r < n; ++r) {
                        auto it = normals[j].terms.find(topIndex[r]);
                        A(r, j) = it == normals[j].terms.end() ? Scalar(0) : it->second;
                    }
                std::vector<Scalar> rhs(n, Scalar(0));
                for (std::size_t r = 0; r < n; ++r) {
                    auto it = rem.terms.find(topIndex[r]);
                    if (it != rem.terms.end()) rhs[r] = it->second;
                }
                std::vector<Scalar> u = A.solve(rhs);
                for (std::size_t j = 0; j < n; ++j) {
                    if (u[j].isZero()) continue;
                    auto [it, ins] = out.try_emplace(cands[j], u[j]);
                    if (!ins) {
                        it->second += u[j];
                        if (it->second.isZero()) out.erase(it);
                    }
                    rem = rem - normals[j].scaled(u[j]);
                }
            }
        }
        return out;
    }

    Algebra* alg_;
};

}  // namespace qbs
