#pragma once

#include <sstream>
#include <string>

#include "qbs/algebra.hpp"

namespace qbs {

inline std::string rationalStr(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

// One q-power, with the u-exponent e interpreted as q^{e/D}.
inline std::string qPowerStr(long uExp, long rootOrder) {
    if (uExp == 0) return "1";
    long g = std::gcd(std::abs(uExp), rootOrder);
    long num = uExp / g, den = rootOrder / g;
    if (den == 1 && num == 1) return "q";
    std::string e = std::to_string(num);
    if (den != 1) e += "/" + std::to_string(den);
    return "q^{" + e + "}";
}

// Laurent expression in q^{1/D}, terms by increasing exponent.
inline std::string laurentStr(const LaurentPoly& p, long rootOrder) {
    if (p.isZero()) return "0";
    std::string out;
    for (auto& [e, c] : p.coeffs()) {
        Rational a = c;
        if (out.empty()) {
            if (a < 0) {
                out += "-";
                a = -a;
            }
        } else {
            out += a < 0 ? " - " : " + ";
            if (a < 0) a = -a;
        }
        std::string pw = qPowerStr(e, rootOrder);
        if (pw == "1")
            out += rationalStr(a);
        else if (a == 1)
            out += pw;
        else
            out += rationalStr(a) + "*" + pw;
    }
    return out;
}

inline std::string scalarStr(const Scalar& c, long rootOrder) {
    if (c.den().isOne()) return laurentStr(c.num(), rootOrder);
    return "(" + laurentStr(c.num(), rootOrder) + ")/(" +
           laurentStr(c.den(), rootOrder) + ")";
}

// q^{h:a_1,...,a_r;d:b_1,...,b_r}, omitted entirely when the exponent is zero.
inline std::string toralStr(const CoweightVector& h) {
    std::string hs, ds;
    bool any = false;
    for (std::size_t i = 0; i < h.h.size(); ++i) {
        if (i) {
            hs += ",";
            ds += ",";
        }
        hs += std::to_string(h.h[i]);
        ds += std::to_string(h.d[i]);
        any = any || h.h[i] != 0 || h.d[i] != 0;
    }
    if (!any) return "1";
    return "q^{h:" + hs + ";d:" + ds + "}";
}

// Normal-form monomial f-word * q^h * e-word.
inline std::string tripleStr(const Triple& t) {
    std::string out;
    auto append = [&](const std::string& s) {
        if (s == "1") return;
        if (!out.empty()) out += "*";
        out += s;
    };
    append(wordStr(t.fWord, 'f'));
    append(toralStr(t.h));
    append(wordStr(t.eWord, 'e'));
    return out.empty() ? "1" : out;
}

inline std::string elementStr(const AlgebraElement& a, long rootOrder) {
    if (a.isZero()) return "0";
    std::string out;
    for (auto& [t, c] : a.terms) {
        if (!out.empty()) out += " + ";
        std::string cs = scalarStr(c, rootOrder);
        std::string ts = tripleStr(t);
        if (cs == "1")
            out += ts;
        else if (ts == "1")
            out += cs.find(' ') == std::string::npos ? cs : "(" + cs + ")";
        else
            out += (cs.find(' ') == std::string::npos && cs.find('/') == std::string::npos
                        ? cs
                        : "(" + cs + ")") +
                   "*" + ts;
    }
    return out;
}

}  // namespace qbs
