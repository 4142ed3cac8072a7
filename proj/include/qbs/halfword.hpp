#pragma once

#include <map>
#include <utility>
#include <vector>

#include "qbs/cartan.hpp"

namespace qbs {

// Generator letter (i, k) with i an index position and 1 <= k <= m_i.
using Letter = std::pair<int, int>;
// Sequence of letters; the side (e or f) is carried separately.
using Word = std::vector<Letter>;

enum class Side { E, F };

// Word in the free e- or f-half, graded by its weight in Q+.
struct HalfWord {
    Side side = Side::E;
    Word letters;

    auto operator<=>(const HalfWord&) const = default;
};

inline RootVector wordWeight(const Word& w, std::size_t rank) {
    RootVector beta(rank);
    for (auto& [i, k] : w) beta.n[static_cast<std::size_t>(i)] += 1;
    return beta;
}

inline Word reversedWord(const Word& w) { return Word(w.rbegin(), w.rend()); }

inline std::string wordStr(const Word& w, char gen) {
    if (w.empty()) return "1";
    std::string s;
    for (auto& [i, k] : w) {
        if (!s.empty()) s += "*";
        s += gen;
        s += "[" + std::to_string(i + 1) + "," + std::to_string(k) + "]";
    }
    return s;
}

// Homogeneous linear combination of same-side, same-weight words.
struct HalfElement {
    Side side = Side::E;
    std::map<Word, Scalar> terms;

    void add(const Word& w, const Scalar& c) {
        if (c.isZero()) return;
        auto [it, inserted] = terms.try_emplace(w, c);
        if (!inserted) {
            it->second += c;
            if (it->second.isZero()) terms.erase(it);
        }
    }
    bool isZero() const { return terms.empty(); }
};

// All words of the given weight, in lexicographic letter order.
inline std::vector<Word> wordsOfWeight(const Datum& datum, const RootVector& beta) {
    std::vector<Word> out;
    Word cur;
    RootVector rem = beta;
    auto rec = [&](auto&& self) -> void {
        if (rem.isZero()) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = 0; i < datum.rank(); ++i) {
            if (rem.n[i] == 0) continue;
            rem.n[i] -= 1;
            for (int k = 1; k <= datum.m(i); ++k) {
                cur.emplace_back(static_cast<int>(i), k);
                self(self);
                cur.pop_back();
            }
            rem.n[i] += 1;
        }
    };
    rec(rec);
    return out;
}

// One term of the fully expanded coproduct of an e-word:
// coeff * (left K_{kShift} tensor right), kShift the weight routed right.
struct CoproductTermPlus {
    Scalar coeff;
    Word left;
    RootVector kShift;
    Word right;
};

// Full expansion of Delta(x) for an e-word, from Delta(e_{i,k}) = e_{i,k} ox 1
// + K_i ox e_{i,k} and the colored tensor product: each letter is routed left
// or right; a right-routed letter's K_i crossing a later left-routed letter
// of color j contributes theta_{i,j} q^{(alpha_i|alpha_j)}.
inline std::vector<CoproductTermPlus> deltaPlus(const Datum& datum, const HalfWord& x) {
    if (x.side != Side::E) throw DomainError("deltaPlus expects an e-side word");
    const Word& w = x.letters;
    std::size_t n = w.size(), rank = datum.rank();
    std::vector<CoproductTermPlus> out;
    out.reserve(std::size_t(1) << n);
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
        // bit set = routed right
        CoproductTermPlus t{Scalar(1), {}, RootVector(rank), {}};
        long uExp = 0;
        int sign = 1;
        for (std::size_t p = 0; p < n; ++p) {
            auto ip = static_cast<std::size_t>(w[p].first);
            if (mask & (std::size_t(1) << p)) {
                t.right.push_back(w[p]);
                t.kShift.n[ip] += 1;
            } else {
                for (std::size_t r = 0; r < p; ++r) {
                    if (!(mask & (std::size_t(1) << r))) continue;
                    auto ir = static_cast<std::size_t>(w[r].first);
                    sign *= datum.theta(ir, ip);
                    uExp += datum.rootOrder() * datum.s(ir) * datum.a(ir, ip);
                }
                t.left.push_back(w[p]);
            }
        }
        t.coeff = Scalar(Rational(sign)) * Scalar::uPower(uExp);
        out.push_back(std::move(t));
    }
    return out;
}

// Drinfeld pairing engine on free words, computed by the coproduct recursion
// with base cases (e_{i,k}|f_{j,l}) = -delta delta / xi_i and (1|1) = 1.
// Memoized; one engine per datum.
class PairingEngine {
  public:
    explicit PairingEngine(Datum datum) : datum_(std::move(datum)) {}

    const Datum& datum() const { return datum_; }

    Scalar xiInverse(std::size_t i) const {
        LaurentPoly xi;
        xi.addTerm(datum_.qiExp(i), 1);
        xi.addTerm(-datum_.qiExp(i), -1);
        return Scalar(LaurentPoly(1), xi);
    }

    // (x | y) for an e-word x and f-word y.
    Scalar pair(const Word& x, const Word& y) {
        std::size_t rank = datum_.rank();
        if (wordWeight(x, rank) != wordWeight(y, rank)) return Scalar(0);
        return pairRec(x, y);
    }

    Scalar pair(const HalfElement& xs, const HalfElement& ys) {
        Scalar acc(0);
        for (auto& [x, cx] : xs.terms)
            for (auto& [y, cy] : ys.terms) acc += cx * cy * pair(x, y);
        return acc;
    }

  private:
    // Recursion on the first letter f_{j,l} of y: the surviving coproduct
    // terms of x route exactly one letter (of color j, index l) left.
    Scalar pairRec(const Word& x, const Word& y) {
        if (y.empty()) return x.empty() ? Scalar(1) : Scalar(0);
        auto key = std::make_pair(x, y);
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;

        auto [j, l] = y.front();
        auto ju = static_cast<std::size_t>(j);
        Word yRest(y.begin() + 1, y.end());
        RootVector alphaJ = RootVector::simple(datum_.rank(), ju);
        Scalar acc(0);
        for (std::size_t p = 0; p < x.size(); ++p) {
            if (x[p].first != j || x[p].second != l) continue;
            long uExp = 0;
            int sign = 1;
            for (std::size_t r = 0; r < p; ++r) {
                auto ir = static_cast<std::size_t>(x[r].first);
                sign *= datum_.theta(ir, ju);
                uExp += datum_.rootOrder() * datum_.s(ir) * datum_.a(ir, ju);
            }
            Word xRest = x;
            xRest.erase(xRest.begin() + static_cast<long>(p));
            // twist sign theta(wt(xRest), -alpha_j); inverses are trivial for signs
            sign *= datum_.thetaBicharacter(wordWeight(xRest, datum_.rank()), alphaJ);
            acc += Scalar(Rational(-sign)) * Scalar::uPower(uExp) * xiInverse(ju) *
                   pairRec(xRest, yRest);
        }
        cache_.emplace(std::move(key), acc);
        return acc;
    }

    Datum datum_;
    std::map<std::pair<Word, Word>, Scalar> cache_;
};

}  // namespace qbs
