#pragma once

#include <gmpxx.h>

#include <map>
#include <sstream>
#include <string>
#include <utility>

#include "qbs/errors.hpp"

namespace qbs {

using Rational = mpq_class;

// mpq_class(n, d) does not canonicalize; always build fractions through this.
inline Rational ratio(long n, long d) {
    Rational r(n, d);
    r.canonicalize();
    return r;
}

// Laurent polynomial in u with arbitrary-precision rational coefficients.
// Invariant: no stored coefficient is zero, so equal values have equal maps.
class LaurentPoly {
  public:
    using CoeffMap = std::map<long, Rational>;

    LaurentPoly() = default;
    LaurentPoly(const Rational& c, long exp = 0) {
        if (c != 0) coeffs_[exp] = c;
    }
    static LaurentPoly uPower(long exp) { return LaurentPoly(1, exp); }

    const CoeffMap& coeffs() const { return coeffs_; }
    bool isZero() const { return coeffs_.empty(); }
    bool isOne() const {
        return coeffs_.size() == 1 && coeffs_.begin()->first == 0 &&
               coeffs_.begin()->second == 1;
    }

    long minExp() const { return coeffs_.begin()->first; }   // pre: nonzero
    long maxExp() const { return coeffs_.rbegin()->first; }  // pre: nonzero

    Rational coeff(long exp) const {
        auto it = coeffs_.find(exp);
        return it == coeffs_.end() ? Rational(0) : it->second;
    }

    void addTerm(long exp, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = coeffs_.try_emplace(exp, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) coeffs_.erase(it);
        }
    }

    LaurentPoly shifted(long by) const {
        LaurentPoly r;
        for (auto& [e, c] : coeffs_) r.coeffs_[e + by] = c;
        return r;
    }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r = a;
        for (auto& [e, c] : b.coeffs_) r.addTerm(e, c);
        return r;
    }
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r = a;
        for (auto& [e, c] : b.coeffs_) r.addTerm(e, -c);
        return r;
    }
    friend LaurentPoly operator-(const LaurentPoly& a) {
        LaurentPoly r;
        for (auto& [e, c] : a.coeffs_) r.coeffs_[e] = -c;
        return r;
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (auto& [ea, ca] : a.coeffs_)
            for (auto& [eb, cb] : b.coeffs_) r.addTerm(ea + eb, ca * cb);
        return r;
    }
    LaurentPoly scaled(const Rational& c) const {
        LaurentPoly r;
        if (c == 0) return r;
        for (auto& [e, k] : coeffs_) r.coeffs_[e] = k * c;
        return r;
    }

    bool operator==(const LaurentPoly& o) const { return coeffs_ == o.coeffs_; }

    std::string str(const std::string& var = "u") const {
        if (isZero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            Rational c = it->second;
            if (!first) {
                os << (c < 0 ? " - " : " + ");
                if (c < 0) c = -c;
            }
            first = false;
            long e = it->first;
            if (e == 0) {
                os << c;
            } else {
                if (c != 1) os << c << "*";
                os << var;
                if (e != 1) os << "^" << e;
            }
        }
        return os.str();
    }

  private:
    CoeffMap coeffs_;
};

// Value at u = u0 (u0 != 0).
inline Rational evalLaurentAt(const LaurentPoly& p, const Rational& u0) {
    Rational acc(0);
    for (auto& [e, c] : p.coeffs()) {
        Rational pw(1);
        for (long t = 0; t < (e < 0 ? -e : e); ++t) pw *= u0;
        if (e < 0) pw = Rational(1) / pw;
        acc += c * pw;
    }
    return acc;
}

namespace detail {

// Polynomial division in Q[u]; both args are true polynomials (minExp >= 0).
inline std::pair<LaurentPoly, LaurentPoly> polyDivMod(const LaurentPoly& a,
                                                      const LaurentPoly& b) {
    if (b.isZero()) throw DivisionByZero();
    LaurentPoly quo, rem = a;
    long db = b.maxExp();
    Rational lb = b.coeff(db);
    while (!rem.isZero() && rem.maxExp() >= db) {
        long e = rem.maxExp() - db;
        Rational c = rem.coeff(rem.maxExp()) / lb;
        LaurentPoly t(c, e);
        quo = quo + t;
        rem = rem - t * b;
    }
    return {quo, rem};
}

// Monic gcd in Q[u] of two true polynomials.
inline LaurentPoly polyGcd(LaurentPoly a, LaurentPoly b) {
    while (!b.isZero()) {
        auto [q, r] = polyDivMod(a, b);
        a = b;
        b = r;
    }
    if (a.isZero()) return a;
    return a.scaled(1 / a.coeff(a.maxExp()));
}

}  // namespace detail

}  // namespace qbs
