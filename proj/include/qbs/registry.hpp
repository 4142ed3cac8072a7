#pragma once

#include <algorithm>
#include <optional>

#include "qbs/halfword.hpp"
#include "qbs/linalg.hpp"

namespace qbs {

// Per-weight basis data: every free word of that weight, the pivot subset
// whose Gram block is invertible, and that block with its inverse.
struct WeightBasis {
    std::vector<Word> words;           // all free words, lex order
    std::vector<std::size_t> pivots;   // indices into words
    Matrix<Scalar> gramPivot;          // (e-pivot | reversed f-pivot) block
    Matrix<Scalar> gramPivotInv;
};

// Quotient bases of both halves by the radical of the Drinfeld pairing,
// computed degree by degree up to a height cutoff.  The f-word paired
// against an e-word is its letter-reversed mirror.
class BasisRegistry {
  public:
    BasisRegistry(Datum datum, long depth)
        : datum_(std::move(datum)), depth_(depth), engine_(datum_) {
        buildAll();
    }

    const Datum& datum() const { return datum_; }
    long depth() const { return depth_; }
    PairingEngine& engine() { return engine_; }

    const WeightBasis& at(const RootVector& beta) const {
        auto it = bases_.find(beta);
        if (it == bases_.end()) throw DepthExceeded("weight beyond registry depth");
        return it->second;
    }
    bool covers(const RootVector& beta) const { return bases_.count(beta) != 0; }

    std::size_t dim(const RootVector& beta) const { return at(beta).pivots.size(); }

    std::vector<Word> pivotWords(const RootVector& beta) const {
        const auto& wb = at(beta);
        std::vector<Word> out;
        out.reserve(wb.pivots.size());
        for (auto p : wb.pivots) out.push_back(wb.words[p]);
        return out;
    }

    // Full Gram matrix G[r][c] = (word_r | reversed word_c) at this weight.
    Matrix<Scalar> gramFull(const RootVector& beta) {
        const auto& wb = at(beta);
        std::size_t n = wb.words.size();
        Matrix<Scalar> g(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                g(r, c) = engine_.pair(wb.words[r], reversedWord(wb.words[c]));
        return g;
    }

    // Coordinates of an e-word over the e-pivot words of its weight.
    std::vector<Scalar> eCoords(const Word& w) {
        if (auto it = eCoordCache_.find(w); it != eCoordCache_.end()) return it->second;
        auto r = eCoordsUncached(w);
        eCoordCache_.emplace(w, r);
        return r;
    }

    // Coordinates of an f-word over the reversed pivot words of its weight.
    std::vector<Scalar> fCoords(const Word& w) {
        if (auto it = fCoordCache_.find(w); it != fCoordCache_.end()) return it->second;
        auto r = fCoordsUncached(w);
        fCoordCache_.emplace(w, r);
        return r;
    }

  private:
    std::vector<Scalar> eCoordsUncached(const Word& w) {
        RootVector beta = wordWeight(w, datum_.rank());
        const auto& wb = at(beta);
        std::size_t r = wb.pivots.size();
        // pair against the f-pivots; these functionals separate the quotient
        std::vector<Scalar> v(r);
        for (std::size_t c = 0; c < r; ++c)
            v[c] = engine_.pair(w, reversedWord(wb.words[wb.pivots[c]]));
        // solve x^T GramPivot = v
        std::vector<Scalar> x(r, Scalar(0));
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t c = 0; c < r; ++c) x[j] += v[c] * wb.gramPivotInv(c, j);
        return x;
    }

    std::vector<Scalar> fCoordsUncached(const Word& w) {
        RootVector beta = wordWeight(w, datum_.rank());
        const auto& wb = at(beta);
        std::size_t r = wb.pivots.size();
        std::vector<Scalar> v(r);
        for (std::size_t c = 0; c < r; ++c)
            v[c] = engine_.pair(wb.words[wb.pivots[c]], w);
        std::vector<Scalar> x(r, Scalar(0));
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t c = 0; c < r; ++c) x[j] += wb.gramPivotInv(j, c) * v[c];
        return x;
    }

  public:
    std::vector<Scalar> coords(const HalfElement& el) {
        std::optional<RootVector> beta;
        for (auto& [w, c] : el.terms) {
            RootVector b = wordWeight(w, datum_.rank());
            if (beta && b != *beta) throw DomainError("inhomogeneous element");
            beta = b;
        }
        if (!beta) throw DomainError("coordinates of zero are weightless");
        std::vector<Scalar> acc(dim(*beta), Scalar(0));
        for (auto& [w, c] : el.terms) {
            auto xs = el.side == Side::E ? eCoords(w) : fCoords(w);
            for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += c * xs[j];
        }
        return acc;
    }

    bool inRadical(const HalfElement& el) {
        for (auto& c : coords(el))
            if (!c.isZero()) return false;
        return true;
    }

    // Weights of positive height covered by the registry, ascending height.
    std::vector<RootVector> coveredWeights() const {
        std::vector<RootVector> out;
        for (auto& [b, wb] : bases_)
            if (!b.isZero()) out.push_back(b);
        std::stable_sort(out.begin(), out.end(), [](const RootVector& a, const RootVector& b) {
            return a.height() < b.height();
        });
        return out;
    }

  private:
    void buildAll() {
        std::size_t rank = datum_.rank();
        RootVector zero(rank);
        WeightBasis base;
        base.words = {Word{}};
        base.pivots = {0};
        base.gramPivot = Matrix<Scalar>(1, 1);
        base.gramPivot(0, 0) = Scalar(1);
        base.gramPivotInv = base.gramPivot;
        bases_.emplace(zero, std::move(base));

        std::vector<RootVector> level{zero};
        for (long h = 1; h <= depth_; ++h) {
            std::vector<RootVector> next;
            for (auto& b : level)
                for (std::size_t i = 0; i < rank; ++i) {
                    RootVector c = b + RootVector::simple(rank, i);
                    if (!bases_.count(c)) {
                        buildWeight(c);
                        next.push_back(c);
                    }
                }
            level = std::move(next);
        }
    }

    void buildWeight(const RootVector& beta) {
        WeightBasis wb;
        wb.words = wordsOfWeight(datum_, beta);
        std::size_t n = wb.words.size();
        Matrix<Scalar> g(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                g(r, c) = engine_.pair(wb.words[r], reversedWord(wb.words[c]));
        // Pivot selection runs on a rational specialization u -> u0, then the
        // chosen principal block is certified exactly (invertibility plus a
        // Schur-complement rank certificate).  A specialization that loses
        // rank only costs a retry; it can never yield a wrong basis.
        for (long u0num : {3, 5, 7, 11}) {
            auto piv = specializedPivots(g, ratio(u0num, 2));
            if (piv && certifyAndCommit(g, *piv, wb)) {
                bases_.emplace(beta, std::move(wb));
                return;
            }
        }
        exactGreedy(g, wb);
        bases_.emplace(beta, std::move(wb));
    }

    // Symmetric elimination with 1x1 / hyperbolic 2x2 pivots on g(u0).  The
    // Gram matrix is symmetric, so a principal block of full rank exists and
    // this reaches one in O(n^3) field operations.  Returns nothing when a
    // denominator vanishes at u0.
    static std::optional<std::vector<std::size_t>> specializedPivots(
        const Matrix<Scalar>& g, const Rational& u0) {
        std::size_t n = g.rows();
        std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) {
                Rational den = evalLaurentAt(g(r, c).den(), u0);
                if (den == 0) return std::nullopt;
                m[r][c] = evalLaurentAt(g(r, c).num(), u0) / den;
            }
        std::vector<bool> alive(n, true);
        std::vector<std::size_t> pivots;
        auto eliminate1 = [&](std::size_t i) {
            Rational inv = Rational(1) / m[i][i];
            for (std::size_t r = 0; r < n; ++r) {
                if (!alive[r] || r == i || m[r][i] == 0) continue;
                Rational f = m[r][i] * inv;
                for (std::size_t c = 0; c < n; ++c)
                    if (alive[c] && c != i) m[r][c] -= f * m[i][c];
            }
            alive[i] = false;
            pivots.push_back(i);
        };
        for (;;) {
            bool step = false;
            for (std::size_t i = 0; i < n && !step; ++i)
                if (alive[i] && m[i][i] != 0) {
                    eliminate1(i);
                    step = true;
                }
            if (step) continue;
            // all live diagonals vanish; take a hyperbolic pair
            for (std::size_t i = 0; i < n && !step; ++i) {
                if (!alive[i]) continue;
                for (std::size_t j = i + 1; j < n && !step; ++j) {
                    if (!alive[j] || m[i][j] == 0 || m[j][i] == 0) continue;
                    Rational inv = Rational(1) / (m[i][j] * m[j][i]);
                    for (std::size_t r = 0; r < n; ++r) {
                        if (!alive[r] || r == i || r == j) continue;
                        Rational fi = m[r][j] * m[j][i] * inv;  // coeff of row i
                        Rational fj = m[r][i] * m[i][j] * inv;  // coeff of row j
                        if (fi == 0 && fj == 0) continue;
                        for (std::size_t c = 0; c < n; ++c)
                            if (alive[c] && c != i && c != j)
                                m[r][c] -= fi * m[i][c] + fj * m[j][c];
                    }
                    alive[i] = alive[j] = false;
                    pivots.push_back(i);
                    pivots.push_back(j);
                    step = true;
                }
            }
            if (!step) break;  // residual Schur complement is zero
        }
        std::sort(pivots.begin(), pivots.end());
        return pivots;
    }

    // Exact check that the candidate block is invertible and carries the full
    // rank of g: every non-pivot row must be a combination of pivot rows.
    bool certifyAndCommit(const Matrix<Scalar>& g, const std::vector<std::size_t>& piv,
                          WeightBasis& wb) const {
        std::size_t n = g.rows(), p = piv.size();
        Matrix<Scalar> block(p, p);
        for (std::size_t r = 0; r < p; ++r)
            for (std::size_t c = 0; c < p; ++c) block(r, c) = g(piv[r], piv[c]);
        Matrix<Scalar> inv(0, 0);
        if (p) {
            try {
                inv = block.inverse();
            } catch (const InternalInconsistency&) {
                return false;
            }
        }
        std::vector<std::size_t> rest;
        std::vector<bool> isPivot(n, false);
        for (auto w : piv) isPivot[w] = true;
        for (std::size_t w = 0; w < n; ++w)
            if (!isPivot[w]) rest.push_back(w);
        for (auto a : rest) {
            std::vector<Scalar> row(p, Scalar(0));  // g(a, piv) * inv
            for (std::size_t k = 0; k < p; ++k) {
                const Scalar& gk = g(a, piv[k]);
                if (gk.isZero()) continue;
                for (std::size_t j = 0; j < p; ++j) row[j] += gk * inv(k, j);
            }
            for (auto b : rest) {
                Scalar acc = g(a, b);
                for (std::size_t j = 0; j < p; ++j) acc -= row[j] * g(piv[j], b);
                if (!acc.isZero()) return false;
            }
        }
        wb.pivots = piv;
        wb.gramPivot = std::move(block);
        wb.gramPivotInv = std::move(inv);
        return true;
    }

    // Fallback used only when every specialization fails: greedy principal
    // block growth against the exact rank, one index at a time or, when every
    // single addition is degenerate, a hyperbolic pair of indices.
    static void exactGreedy(const Matrix<Scalar>& g, WeightBasis& wb) {
        std::size_t n = g.rows();
        std::size_t fullRank = g.rank();
        auto tryExtend = [&](const std::vector<std::size_t>& trial) -> bool {
            Matrix<Scalar> block(trial.size(), trial.size());
            for (std::size_t r = 0; r < trial.size(); ++r)
                for (std::size_t c = 0; c < trial.size(); ++c)
                    block(r, c) = g(trial[r], trial[c]);
            if (block.rank() != trial.size()) return false;
            wb.pivots = trial;
            wb.gramPivot = std::move(block);
            return true;
        };
        while (wb.pivots.size() < fullRank) {
            bool grew = false;
            for (std::size_t w = 0; w < n && !grew; ++w) {
                if (std::count(wb.pivots.begin(), wb.pivots.end(), w)) continue;
                auto trial = wb.pivots;
                trial.push_back(w);
                grew = tryExtend(trial);
            }
            for (std::size_t w1 = 0; w1 < n && !grew; ++w1) {
                if (std::count(wb.pivots.begin(), wb.pivots.end(), w1)) continue;
                for (std::size_t w2 = w1 + 1; w2 < n && !grew; ++w2) {
                    if (std::count(wb.pivots.begin(), wb.pivots.end(), w2)) continue;
                    auto trial = wb.pivots;
                    trial.push_back(w1);
                    trial.push_back(w2);
                    grew = tryExtend(trial);
                }
            }
            if (!grew)
                throw InternalInconsistency("no invertible principal Gram block of full rank");
        }
        std::sort(wb.pivots.begin(), wb.pivots.end());
        wb.gramPivot = Matrix<Scalar>(fullRank, fullRank);
        for (std::size_t r = 0; r < fullRank; ++r)
            for (std::size_t c = 0; c < fullRank; ++c)
                wb.gramPivot(r, c) = g(wb.pivots[r], wb.pivots[c]);
        wb.gramPivotInv = wb.pivots.empty() ? Matrix<Scalar>(0, 0) : wb.gramPivot.inverse();
    }

    Datum datum_;
    std::map<Word, std::vector<Scalar>> eCoordCache_, fCoordCache_;
    long depth_;
    PairingEngine engine_;
    std::map<RootVector, WeightBasis> bases_;
};

// Nondegeneracy certificate for a pivot Gram block.  det is a polynomial in
// the entries, so det(G(u0)) equals the exact determinant evaluated at u0; a
// nonzero value at any point where the entries are defined proves det != 0
// without exact elimination.  Falls back to the exact determinant only when
// every specialization lands on a root.
inline bool gramBlockInvertible(const WeightBasis& wb) {
    std::size_t n = wb.pivots.size();
    if (n == 0) return true;
    for (long u0num : {3, 5, 7, 11}) {
        Rational u0 = ratio(u0num, 2);
        std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
        bool defined = true;
        for (std::size_t r = 0; r < n && defined; ++r)
            for (std::size_t c = 0; c < n && defined; ++c) {
                Rational den = evalLaurentAt(wb.gramPivot(r, c).den(), u0);
                if (den == 0) {
                    defined = false;
                    break;
                }
                m[r][c] = evalLaurentAt(wb.gramPivot(r, c).num(), u0) / den;
            }
        if (!defined) continue;
        bool singular = false;
        for (std::size_t c = 0; c < n && !singular; ++c) {
            std::size_t piv = c;
            while (piv < n && m[piv][c] == 0) ++piv;
            if (piv == n) {
                singular = true;
                break;
            }
            std::swap(m[piv], m[c]);
            for (std::size_t r = c + 1; r < n; ++r) {
                if (m[r][c] == 0) continue;
                Rational f = m[r][c] / m[c][c];
                for (std::size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
            }
        }
        if (!singular) return true;
    }
    return !wb.gramPivot.det().isZero();
}

// Quantum Serre combination for a real index i and any j != i:
// sum over n of (-1)^n theta_{ij}^n theta_{ii}^{n(n-1)/2}
// [1-a_{ij} choose n]_i e_i^{1-a_{ij}-n} e_j e_i^n  (and the f-mirror).
inline HalfElement serreElement(const Datum& datum, Side side, std::size_t i, int k,
                                std::size_t j, int l) {
    if (!datum.isReal(i)) throw DomainError("Serre combination needs a real index");
    if (i == j) throw DomainError("Serre combination needs distinct indices");
    long N = 1 - datum.a(i, j);
    HalfElement out;
    out.side = side;
    for (long n = 0; n <= N; ++n) {
        int sign = (n % 2 == 0) ? 1 : -1;
        if (datum.theta(i, j) == -1 && n % 2 == 1) sign = -sign;
        if (datum.theta(i, i) == -1 && ((n * (n - 1) / 2) % 2 == 1)) sign = -sign;
        Scalar c = Scalar(Rational(sign)) *
                   superBinomial(N, n, datum.theta(i, i), datum.qiExp(i));
        Word w;
        auto push = [&](std::size_t idx, int kk, long times) {
            for (long t = 0; t < times; ++t) w.emplace_back(static_cast<int>(idx), kk);
        };
        push(i, k, N - n);
        push(j, l, 1);
        push(i, k, n);
        if (side == Side::F) w = reversedWord(w);
        out.add(w, c);
    }
    return out;
}

}  // namespace qbs
