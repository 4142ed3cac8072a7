#pragma once

#include <string>
#include <utility>

#include "qbs/laurent.hpp"

namespace qbs {

// Element of Q(u) in canonical reduced form:
//   - gcd(num, den) = 1 over Q[u, u^{-1}]
//   - den is a primitive integer polynomial, lowest exponent 0, leading
//     coefficient positive
//   - zero is 0/1
class Scalar {
  public:
    Scalar() : den_(LaurentPoly(1)) {}
    Scalar(const Rational& c) : num_(c), den_(LaurentPoly(1)) {}
    Scalar(long c) : num_(Rational(c)), den_(LaurentPoly(1)) {}
    Scalar(LaurentPoly num, LaurentPoly den)
        : num_(std::move(num)), den_(std::move(den)) {
        normalize();
    }
    explicit Scalar(LaurentPoly num) : num_(std::move(num)), den_(LaurentPoly(1)) {}

    static Scalar uPower(long e) { return Scalar(LaurentPoly::uPower(e)); }

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }
    bool isZero() const { return num_.isZero(); }
    bool isOne() const { return num_.isOne() && den_.isOne(); }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        return Scalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        return Scalar(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Scalar operator-(const Scalar& a) {
        Scalar r = a;
        r.num_ = -r.num_;
        return r;
    }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        return Scalar(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        if (b.isZero()) throw DivisionByZero();
        return Scalar(a.num_ * b.den_, a.den_ * b.num_);
    }
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    Scalar inverse() const {
        if (isZero()) throw DivisionByZero();
        return Scalar(den_, num_);
    }

    bool operator==(const Scalar& o) const {
        return num_ == o.num_ && den_ == o.den_;
    }

    std::string str(const std::string& var = "u") const {
        if (den_.isOne()) return num_.str(var);
        return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
    }

  private:
    void normalize() {
        if (den_.isZero()) throw DivisionByZero();
        if (num_.isZero()) {
            den_ = LaurentPoly(1);
            return;
        }
        // Route the unit u^k so the denominator becomes a true polynomial
        // with nonzero constant term.
        long shift = den_.minExp();
        den_ = den_.shifted(-shift);
        num_ = num_.shifted(-shift);
        long numUnit = num_.minExp();  // may be negative; gcd ignores it
        LaurentPoly numPoly = num_.shifted(-numUnit);
        LaurentPoly g = detail::polyGcd(numPoly, den_);
        if (!g.isOne()) {
            numPoly = detail::polyDivMod(numPoly, g).first;
            den_ = detail::polyDivMod(den_, g).first;
        }
        num_ = numPoly.shifted(numUnit);
        // Scale so den is a primitive integer polynomial, positive lead.
        mpz_class lcm = 1, gcdNum = 0;
        for (auto& [e, c] : den_.coeffs()) {
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
        }
        for (auto& [e, c] : den_.coeffs()) {
            mpz_class t = c.get_num() * (lcm / c.get_den());
            mpz_gcd(gcdNum.get_mpz_t(), gcdNum.get_mpz_t(), t.get_mpz_t());
        }
        Rational scale(lcm, gcdNum);  // den * scale is primitive integer
        scale.canonicalize();
        if (den_.coeff(den_.maxExp()) * scale < 0) scale = -scale;
        den_ = den_.scaled(scale);
        num_ = num_.scaled(scale);
    }

    LaurentPoly num_, den_;
};

// Colored q-integer {n}_{q_i} = (theta^n q_i^n - q_i^{-n}) / (theta q_i - q_i^{-1})
// where q_i = u^{qiExp} and theta = theta_{i,i} = +-1.
inline Scalar superInteger(long n, int thetaII, long qiExp) {
    LaurentPoly num;
    num.addTerm(n * qiExp, Rational(thetaII == -1 && (n % 2 != 0) ? -1 : 1));
    num.addTerm(-n * qiExp, Rational(-1));
    LaurentPoly den;
    den.addTerm(qiExp, Rational(thetaII));
    den.addTerm(-qiExp, Rational(-1));
    return Scalar(num, den);
}

inline Scalar superFactorial(long n, int thetaII, long qiExp) {
    Scalar r(1);
    for (long t = 1; t <= n; ++t) r *= superInteger(t, thetaII, qiExp);
    return r;
}

// Colored q-binomial [n choose k]_{q_i}. Pre: 0 <= k <= n.
inline Scalar superBinomial(long n, long k, int thetaII, long qiExp) {
    if (k < 0 || k > n) throw DomainError("super binomial needs 0 <= k <= n");
    return superFactorial(n, thetaII, qiExp) /
           (superFactorial(k, thetaII, qiExp) * superFactorial(n - k, thetaII, qiExp));
}

}  // namespace qbs
