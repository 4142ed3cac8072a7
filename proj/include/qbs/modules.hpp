#pragma once

#include <algorithm>
#include <set>

#include "qbs/algebra.hpp"
#include "qbs/linalg.hpp"

namespace qbs {

inline bool isDominant(const Datum& d, const WeightFunctional& lam) {
    for (std::size_t i = 0; i < d.rank(); ++i) {
        if (!d.isReal(i)) continue;
        if (lam.onH[i] < 0) return false;
        if (d.isOdd(i) && lam.onH[i] % 2 != 0) return false;
    }
    return true;
}

// all elements of Q+ with the given height
inline std::vector<RootVector> weightsOfHeight(std::size_t rank, long ht) {
    std::vector<RootVector> out;
    RootVector cur(rank);
    auto rec = [&](auto&& self, std::size_t i, long left) -> void {
        if (i + 1 == rank) {
            cur.n[i] = left;
            out.push_back(cur);
            return;
        }
        for (long v = 0; v <= left; ++v) {
            cur.n[i] = v;
            self(self, i + 1, left - v);
        }
    };
    if (rank == 0) return out;
    rec(rec, 0, ht);
    return out;
}

// Highest-weight module truncated at the given height.  Vectors at weight
// lambda - beta live in quotient coordinates over the f-pivot words of
// weight beta; a Verma module has the full pivot space at every weight,
// the irreducible quotient removes the recursively computed maximal
// submodule N (w in N iff every e_{i,k} pushes w into N one level up).
class HighestWeightModule {
  public:
    HighestWeightModule(Algebra& alg, WeightFunctional lambda, long depth, bool simple)
        : alg_(&alg), lambda_(std::move(lambda)), depth_(depth) {
        const Datum& d = alg.datum();
        if (lambda_.onH.size() != d.rank())
            throw DomainError("highest weight has the wrong rank");
        if (simple && !isDominant(d, lambda_))
            throw DomainError("irreducible quotient needs a dominant integral weight");
        for (long h = 0; h <= depth_; ++h)
            for (auto& beta : weightsOfHeight(d.rank(), h)) buildSpace(beta, simple);
    }

    const Algebra& algebra() const { return *alg_; }
    const WeightFunctional& highestWeight() const { return lambda_; }
    long depth() const { return depth_; }

    std::size_t dim(const RootVector& beta) const { return spaceAt(beta).freeCols.size(); }

    // representative of the j-th quotient basis vector, as an element of U^-
    AlgebraElement representative(const RootVector& beta, std::size_t j) const {
        const Space& sp = spaceAt(beta);
        auto fps = alg_->registry().pivotWords(beta);
        AlgebraElement r;
        r.add(Triple{reversedWord(fps[sp.freeCols[j]]),
                     CoweightVector(alg_->datum().rank()), {}},
              Scalar(1));
        return r;
    }

    // z . v_lambda in quotient coordinates per weight
    std::map<RootVector, std::vector<Scalar>> applyToHighest(
        const AlgebraElement& z) const {
        const Datum& d = alg_->datum();
        std::map<RootVector, std::vector<Scalar>> full;
        for (auto& [t, c] : z.terms) {
            if (!t.eWord.empty()) continue;  // e-letters annihilate v_lambda
            RootVector beta = wordWeight(t.fWord, d.rank());
            if (beta.height() > depth_) continue;  // outside the truncation
            Scalar v = c * d.qPower(lambda_(t.h));
            auto fps = alg_->registry().pivotWords(beta);
            auto& vec = full.try_emplace(beta, std::vector<Scalar>(fps.size(), Scalar(0)))
                            .first->second;
            for (std::size_t a = 0; a < fps.size(); ++a)
                if (reversedWord(fps[a]) == t.fWord) {
                    vec[a] += v;
                    break;
                }
        }
        std::map<RootVector, std::vector<Scalar>> out;
        for (auto& [beta, vec] : full) {
            std::vector<Scalar> q = quotientCoords(beta, vec);
            bool nz = false;
            for (auto& x : q)
                if (!x.isZero()) nz = true;
            if (nz) out.emplace(beta, std::move(q));
        }
        return out;
    }

    // action of z on the j-th basis vector of weight lambda - beta
    std::map<RootVector, std::vector<Scalar>> act(const AlgebraElement& z,
                                                  const RootVector& beta,
                                                  std::size_t j) const {
        return applyToHighest(alg_->multiply(z, representative(beta, j)));
    }

    // true once some height <= depth carries no basis vectors at all;
    // every lower weight space is then zero as well
    bool exhausted() const {
        const Datum& d = alg_->datum();
        for (long h = 1; h <= depth_; ++h) {
            std::size_t total = 0;
            for (auto& beta : weightsOfHeight(d.rank(), h)) total += dim(beta);
            if (total == 0) return true;
        }
        return false;
    }

    std::vector<RootVector> nonzeroWeights() const {
        std::vector<RootVector> out;
        for (auto& [beta, sp] : spaces_)
            if (!sp.freeCols.empty()) out.push_back(beta);
        return out;
    }

    // str(a) = sum over weight spaces of theta(beta,beta) tr(a-block)
    Scalar supertrace(const AlgebraElement& a) const {
        if (!exhausted())
            throw ModuleNotExhausted();
        const Datum& d = alg_->datum();
        Scalar acc(0);
        for (auto& [beta, sp] : spaces_) {
            if (sp.freeCols.empty()) continue;
            int sign = d.thetaBicharacter(beta, beta);
            for (std::size_t j = 0; j < sp.freeCols.size(); ++j) {
                auto img = act(a, beta, j);
                auto it = img.find(beta);
                if (it == img.end()) continue;
                acc += it->second[j] * Scalar(Rational(sign));
            }
        }
        return acc;
    }

  private:
    struct Space {
        // echelon rows spanning N in pivot-word coordinates; pivotCol[r]
        // is the leading column of row r (normalized to 1)
        std::vector<std::vector<Scalar>> nRows;
        std::vector<std::size_t> nPivotCols;
        std::vector<std::size_t> freeCols;  // quotient basis positions
    };

    const Space& spaceAt(const RootVector& beta) const {
        auto it = spaces_.find(beta);
        if (it == spaces_.end())
            throw DepthExceeded("module weight space beyond the truncation");
        return it->second;
    }

    // reduce a full coordinate vector modulo N and keep the free columns
    std::vector<Scalar> quotientCoords(const RootVector& beta,
                                       std::vector<Scalar> v) const {
        const Space& sp = spaceAt(beta);
        for (std::size_t r = 0; r < sp.nRows.size(); ++r) {
            Scalar f = v[sp.nPivotCols[r]];
            if (f.isZero()) continue;
            for (std::size_t c = 0; c < v.size(); ++c) v[c] -= f * sp.nRows[r][c];
        }
        std::vector<Scalar> q;
        q.reserve(sp.freeCols.size());
        for (auto c : sp.freeCols) q.push_back(v[c]);
        return q;
    }

    void buildSpace(const RootVector& beta, bool simple) {
        const Datum& d = alg_->datum();
        std::size_t n = alg_->registry().dim(beta);
        Space sp;
        if (simple && beta.height() > 0 && n > 0) {
            // stack the Verma e-actions composed with the reduction at the
            // target weight; N is the joint kernel
            auto fps = alg_->registry().pivotWords(beta);
            std::vector<std::vector<Scalar>> rows;
            for (std::size_t i = 0; i < d.rank(); ++i) {
                if (beta.n[i] == 0) continue;
                RootVector up = beta - RootVector::simple(d.rank(), i);
                std::size_t m = spaceAt(up).freeCols.size();
                if (m == 0 && alg_->registry().dim(up) == 0) continue;
                for (long k = 1; k <= d.charge()[i]; ++k) {
                    std::vector<std::vector<Scalar>> cols(n);
                    for (std::size_t j = 0; j < n; ++j) {
                        AlgebraElement y;
                        y.add(Triple{reversedWord(fps[j]), CoweightVector(d.rank()), {}},
                              Scalar(1));
                        AlgebraElement ey =
                            alg_->multiply(alg_->gen(Side::E, i, k), y);
                        std::vector<Scalar> img(alg_->registry().dim(up), Scalar(0));
                        for (auto& [t, c] : ey.terms) {
                            if (!t.eWord.empty()) continue;
                            if (wordWeight(t.fWord, d.rank()) != up) continue;
                            Scalar v = c * d.qPower(lambda_(t.h));
                            auto ups = alg_->registry().pivotWords(up);
                            for (std::size_t a = 0; a < ups.size(); ++a)
                                if (reversedWord(ups[a]) == t.fWord) {
                                    img[a] += v;
                                    break;
                                }
                        }
                        cols[j] = quotientCoords(up, img);
                    }
                    for (std::size_t r = 0; r < m; ++r) {
                        std::vector<Scalar> row(n, Scalar(0));
                        for (std::size_t j = 0; j < n; ++j) row[j] = cols[j][r];
                        rows.push_back(std::move(row));
                    }
                }
            }
            Matrix<Scalar> mat(rows.size(), n);
            for (std::size_t r = 0; r < rows.size(); ++r)
                for (std::size_t c = 0; c < n; ++c) mat(r, c) = rows[r][c];
            auto ker = nullspace(mat);
            // echelonize the kernel rows; leading columns become N-pivots
            std::vector<std::vector<Scalar>> ech;
            std::vector<std::size_t> pcols;
            for (auto v : ker) {
                for (std::size_t r = 0; r < ech.size(); ++r) {
                    Scalar f = v[pcols[r]];
                    if (f.isZero()) continue;
                    for (std::size_t c = 0; c < n; ++c) v[c] -= f * ech[r][c];
                }
                std::size_t lead = n;
                for (std::size_t c = 0; c < n; ++c)
                    if (!v[c].isZero()) {
                        lead = c;
                        break;
                    }
                if (lead == n) continue;
                Scalar inv = Scalar(1) / v[lead];
                for (auto& x : v) x *= inv;
                for (std::size_t r = 0; r < ech.size(); ++r) {
                    Scalar f = ech[r][lead];
                    if (f.isZero()) continue;
                    for (std::size_t c = 0; c < n; ++c) ech[r][c] -= f * v[c];
                }
                ech.push_back(std::move(v));
                pcols.push_back(lead);
            }
            sp.nRows = std::move(ech);
            sp.nPivotCols = std::move(pcols);
        }
        for (std::size_t c = 0; c < n; ++c)
            if (std::find(sp.nPivotCols.begin(), sp.nPivotCols.end(), c) ==
                sp.nPivotCols.end())
                sp.freeCols.push_back(c);
        spaces_[beta] = std::move(sp);
    }

    Algebra* alg_;
    WeightFunctional lambda_;
    long depth_;
    std::map<RootVector, Space> spaces_;
};

inline HighestWeightModule buildVerma(Algebra& alg, const WeightFunctional& lam,
                                      long depth) {
    return HighestWeightModule(alg, lam, depth, false);
}
inline HighestWeightModule buildIrreducible(Algebra& alg, const WeightFunctional& lam,
                                            long depth) {
    return HighestWeightModule(alg, lam, depth, true);
}

// dim V(lambda)_{lambda-gamma} = dim U^-_{-gamma} under the hypotheses
// lambda(h_i) > 0 for imaginary i and lambda(h_i) >= n_i for real i
inline bool checkUVIso(Algebra& alg, const WeightFunctional& lam,
                       const RootVector& gamma, long depth) {
    const Datum& d = alg.datum();
    for (std::size_t i = 0; i < d.rank(); ++i) {
        if (d.isImaginary(i) && lam.onH[i] <= 0)
            throw DomainError("hypothesis needs lambda(h_i) > 0 on imaginary nodes");
        if (d.isReal(i) && lam.onH[i] < gamma.n[i])
            throw DomainError("hypothesis needs lambda(h_i) >= n_i on real nodes");
    }
    HighestWeightModule v = buildIrreducible(alg, lam, depth);
    return v.dim(gamma) == alg.registry().dim(gamma);
}

inline long binomialCount(long n, long k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (long j = 1; j <= k; ++j) r = r * (n - j + 1) / j;
    return r;
}

// signed multiplicities of sums of mutually perpendicular imaginary simple
// roots perpendicular to lambda.  The family holds m_i distinct copies of
// alpha_i; even copies enter once each, odd copies carry a multiplier >= 1
// (multipliers >= 2 and repeated picks both force self-perpendicularity).
// Multiplicity counts the distinct pick configurations producing a sum.
inline std::map<RootVector, long> imaginaryCorrections(const Datum& d,
                                                       const WeightFunctional& lam,
                                                       long depth) {
    std::vector<std::size_t> nodes;
    for (std::size_t i = 0; i < d.rank(); ++i)
        if (d.isImaginary(i)) nodes.push_back(i);
    auto perpLambda = [&](std::size_t i) { return d.s(i) * lam.onH[i] == 0; };
    auto perp = [&](std::size_t i, std::size_t j) {
        return d.rootForm(RootVector::simple(d.rank(), i),
                          RootVector::simple(d.rank(), j)) == 0;
    };
    // per node: ways to pick copies with total coefficient t
    auto waysAt = [&](std::size_t i, long t) -> long {
        long m = d.charge()[i];
        bool selfPerp = perp(i, i);
        if (!d.isOdd(i)) {
            if (t >= 2 && !selfPerp) return 0;
            return binomialCount(m, t);
        }
        if (!selfPerp) return t == 1 ? m : 0;
        long ways = 0;  // k distinct copies, positive multipliers summing to t
        for (long k = 1; k <= std::min(m, t); ++k)
            ways += binomialCount(m, k) * binomialCount(t - 1, k - 1);
        return ways;
    };
    std::map<RootVector, long> out;
    out[RootVector(d.rank())] = 1;
    std::vector<long> coeff(nodes.size(), 0);
    auto rec = [&](auto&& self, std::size_t p, long left, long mult) -> void {
        if (mult == 0) return;
        if (p == nodes.size()) {
            RootVector mu(d.rank());
            bool zero = true;
            for (std::size_t a = 0; a < nodes.size(); ++a) {
                mu.n[nodes[a]] = coeff[a];
                if (coeff[a]) zero = false;
            }
            if (!zero) out[mu] += mult;
            return;
        }
        std::size_t i = nodes[p];
        self(self, p + 1, left, mult);  // coefficient 0
        if (!perpLambda(i)) return;
        for (std::size_t a = 0; a < p; ++a)
            if (coeff[a] > 0 && !perp(nodes[a], i)) return;
        for (long t = 1; t <= left; ++t) {
            coeff[p] = t;
            self(self, p + 1, left - t, mult * waysAt(i, t));
            coeff[p] = 0;
        }
    };
    rec(rec, 0, depth, 1);
    return out;
}

// weight multiplicities of the irreducible module from the alternating
// numerator over (Weyl orbit) x (imaginary corrections), multiplied by the
// free-half dimension series
inline std::map<RootVector, long> characterFormula(Algebra& alg,
                                                   const WeightFunctional& lam,
                                                   long depth) {
    const Datum& d = alg.datum();
    if (!isDominant(d, lam)) throw DomainError("character formula needs dominant lambda");
    WeightFunctional rho = d.rho();
    std::map<RootVector, long> numerator;  // gamma -> signed count, e^{lambda-gamma}
    auto mus = imaginaryCorrections(d, lam, depth);
    for (auto& [mu, mult] : mus) {
        long muSign = (mu.height() % 2 == 0 ? 1 : -1) * mult;
        // breadth-first orbit of lambda + rho - mu, tracking the deficit in
        // root coordinates; dominant regular start point, so each orbit
        // point is reached at a single length parity
        WeightFunctional start = lam + rho - d.rootAsWeight(mu);
        std::map<WeightFunctional, int> seen;  // point -> parity sign
        std::vector<std::pair<WeightFunctional, RootVector>> frontier{
            {start, RootVector(d.rank())}};
        seen.emplace(start, 1);
        numerator[mu] += muSign;
        int parity = 1;
        while (!frontier.empty()) {
            parity = -parity;
            std::vector<std::pair<WeightFunctional, RootVector>> next;
            for (auto& [x, def] : frontier)
                for (std::size_t i = 0; i < d.rank(); ++i) {
                    if (!d.isReal(i)) continue;
                    WeightFunctional y = d.reflectWeight(i, x);
                    RootVector dy = def;
                    dy.n[i] += 2 * x.onH[i] / d.a(i, i);
                    if (dy.height() + mu.height() > depth) continue;
                    auto [it, ins] = seen.emplace(y, parity);
                    if (!ins) {
                        if (it->second != parity)
                            throw InternalInconsistency("orbit point at mixed parity");
                        continue;
                    }
                    numerator[mu + dy] += muSign * parity;
                    next.push_back({y, dy});
                }
            frontier = std::move(next);
        }
    }
    std::map<RootVector, long> out;
    for (long h = 0; h <= depth; ++h)
        for (auto& gamma : weightsOfHeight(d.rank(), h)) {
            long total = 0;
            for (auto& [gp, c] : numerator) {
                if (c == 0) continue;
                bool leq = true;
                RootVector beta = gamma - gp;
                for (auto v : beta.n)
                    if (v < 0) leq = false;
                if (!leq) continue;
                total += c * (long)alg.registry().dim(beta);
            }
            out[gamma] = total;
        }
    return out;
}

}  // namespace qbs
