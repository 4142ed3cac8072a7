#pragma once

#include <cctype>
#include <string>

#include "qbs/algebra.hpp"

namespace qbs {

// Recursive-descent reader for the element grammar
//   element := term (('+'|'-') term)*
//   term    := factor ('*'? factor)*
//   factor  := rational | q-power | 'e[i,k]' | 'f[i,k]' | 'q^{h:..;d:..}'
// with implicit multiplication between adjacent factors.  Exponents of q may
// be integers or fractions with denominator dividing the scalar root order.
class ElementParser {
  public:
    ElementParser(Algebra& alg, std::string src)
        : alg_(&alg), src_(std::move(src)) {}

    AlgebraElement parse() {
        AlgebraElement out = parseTerm(true);
        skipWs();
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c != '+' && c != '-') fail("expected '+' or '-'");
            ++pos_;
            AlgebraElement t = parseTerm(false);
            out = c == '+' ? out + t : out - t;
            skipWs();
        }
        return out;
    }

  private:
    Algebra* alg_;
    std::string src_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError("element parse error at position " +
                         std::to_string(pos_) + ": " + why);
    }
    void skipWs() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
    }
    bool eat(char c) {
        skipWs();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }
    bool startsWith(const std::string& s) const {
        return src_.compare(pos_, s.size(), s) == 0;
    }
    long parseInt() {
        skipWs();
        std::size_t start = pos_;
        if (pos_ < src_.size() && (src_[pos_] == '-' || src_[pos_] == '+')) ++pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
        if (pos_ == start || (pos_ == start + 1 && !std::isdigit(static_cast<unsigned char>(src_[start]))))
            fail("expected an integer");
        return std::stol(src_.substr(start, pos_ - start));
    }

    AlgebraElement parseTerm(bool allowLeadingSign) {
        skipWs();
        Scalar sign(1);
        if (allowLeadingSign && eat('-')) sign = Scalar(-1);
        AlgebraElement out = alg_->one().scaled(sign);
        bool first = true;
        while (true) {
            skipWs();
            if (pos_ >= src_.size()) break;
            char c = src_[pos_];
            if (c == '+' || c == '-' || c == ')') break;
            if (c == '*') {
                ++pos_;
                continue;
            }
            out = alg_->multiply(out, parseFactor());
            first = false;
        }
        if (first && sign.isOne()) fail("empty term");
        return out;
    }

    AlgebraElement parseFactor() {
        skipWs();
        char c = src_[pos_];
        if (c == 'e' || c == 'f') return parseLetter(c == 'e' ? Side::E : Side::F);
        if (c == 'q') return parseQPower();
        if (c == '(') return parseScalarGroup();
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '-')
            return alg_->one().scaled(parseRational());
        fail("unexpected character");
    }

    Scalar parseRational() {
        long num = parseInt();
        if (eat('/')) {
            long den = parseInt();
            if (den == 0) fail("zero denominator");
            return Scalar(ratio(num, den));
        }
        return Scalar(Rational(num));
    }

    AlgebraElement parseLetter(Side side) {
        ++pos_;  // 'e' or 'f'
        expect('[');
        long i = parseInt();
        expect(',');
        long k = parseInt();
        expect(']');
        const Datum& d = alg_->datum();
        if (i < 1 || static_cast<std::size_t>(i) > d.rank())
            fail("generator index out of range");
        if (k < 1 || k > d.charge()[static_cast<std::size_t>(i - 1)])
            fail("generator copy number out of range");
        return alg_->gen(side, static_cast<std::size_t>(i - 1), static_cast<int>(k));
    }

    AlgebraElement parseQPower() {
        ++pos_;  // 'q'
        if (!eat('^')) return alg_->one().scaled(alg_->datum().qPower(1L));
        if (eat('{')) {
            if (startsWith("h:") || startsWith("d:")) return parseToralBody();
            long num = parseInt();
            long den = 1;
            if (eat('/')) den = parseInt();
            expect('}');
            return alg_->one().scaled(alg_->datum().qPower(ratio(num, den)));
        }
        return alg_->one().scaled(alg_->datum().qPower(parseInt()));
    }

    // body of q^{h:a1,..;d:b1,..}, '{' already consumed
    AlgebraElement parseToralBody() {
        std::size_t rank = alg_->datum().rank();
        CoweightVector h(rank);
        auto readList = [&](std::vector<long>& dst) {
            for (std::size_t i = 0; i < rank; ++i) {
                dst[i] = parseInt();
                if (i + 1 < rank) expect(',');
            }
        };
        bool sawH = false, sawD = false;
        while (!eat('}')) {
            if (startsWith("h:")) {
                pos_ += 2;
                readList(h.h);
                sawH = true;
            } else if (startsWith("d:")) {
                pos_ += 2;
                readList(h.d);
                sawD = true;
            } else {
                fail("expected 'h:' or 'd:' in toral exponent");
            }
            eat(';');
        }
        if (!sawH && !sawD) fail("empty toral exponent");
        return alg_->toral(h);
    }

    AlgebraElement parseScalarGroup() {
        expect('(');
        // parenthesized sub-expression; a following /(...) divides by a scalar
        AlgebraElement grp = parseInner();
        if (eat('/')) {
            expect('(');
            AlgebraElement den = parseInner();
            Scalar ds = scalarPart(den);
            AlgebraElement out;
            for (auto& [t, c] : grp.terms) out.add(t, c / ds);
            return out;
        }
        return grp;
    }

    // parse an element until the matching ')', reusing this parser's cursor
    AlgebraElement parseInner() {
        AlgebraElement out = parseTerm(true);
        skipWs();
        while (pos_ < src_.size() && src_[pos_] != ')') {
            char c = src_[pos_];
            if (c != '+' && c != '-') fail("expected '+' or '-'");
            ++pos_;
            AlgebraElement t = parseTerm(false);
            out = c == '+' ? out + t : out - t;
            skipWs();
        }
        expect(')');
        return out;
    }

    Scalar scalarPart(const AlgebraElement& a) {
        if (a.terms.size() != 1) fail("denominator must be a scalar");
        auto& [t, c] = *a.terms.begin();
        if (!t.fWord.empty() || !t.eWord.empty() || !(t.h == CoweightVector(alg_->datum().rank())))
            fail("denominator must be a scalar");
        return c;
    }
};

inline AlgebraElement parseElement(Algebra& alg, const std::string& src) {
    return ElementParser(alg, src).parse();
}

// Weight specification "h1=1,h2=0,d1=2": 1-based coordinates on the h_i and
// d_i; unmentioned coordinates are zero.
inline WeightFunctional parseWeight(std::size_t rank, const std::string& src) {
    WeightFunctional w(rank);
    std::size_t pos = 0;
    while (pos < src.size()) {
        char kind = src[pos];
        if (kind != 'h' && kind != 'd')
            throw ParseError("weight entry must start with 'h' or 'd'");
        ++pos;
        std::size_t eq = src.find('=', pos);
        if (eq == std::string::npos) throw ParseError("weight entry needs '='");
        std::size_t idx = std::stoul(src.substr(pos, eq - pos));
        if (idx < 1 || idx > rank) throw ParseError("weight coordinate out of range");
        pos = eq + 1;
        std::size_t end = src.find(',', pos);
        if (end == std::string::npos) end = src.size();
        long v = std::stol(src.substr(pos, end - pos));
        (kind == 'h' ? w.onH : w.onD)[idx - 1] = v;
        pos = end == src.size() ? end : end + 1;
    }
    return w;
}

}  // namespace qbs
