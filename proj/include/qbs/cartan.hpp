#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "qbs/linalg.hpp"
#include "qbs/scalar.hpp"

namespace qbs {

// Element of the root lattice Q, coordinates over the simple roots alpha_i.
struct RootVector {
    std::vector<long> n;

    explicit RootVector(std::size_t rank) : n(rank, 0) {}
    RootVector(std::initializer_list<long> v) : n(v) {}

    static RootVector simple(std::size_t rank, std::size_t i) {
        RootVector r(rank);
        r.n[i] = 1;
        return r;
    }

    bool isPositive() const {  // Q+ membership
        for (long x : n)
            if (x < 0) return false;
        return true;
    }
    bool isZero() const {
        for (long x : n)
            if (x != 0) return false;
        return true;
    }
    long height() const { return std::accumulate(n.begin(), n.end(), 0L); }

    friend RootVector operator+(const RootVector& a, const RootVector& b) {
        RootVector r = a;
        for (std::size_t i = 0; i < r.n.size(); ++i) r.n[i] += b.n[i];
        return r;
    }
    friend RootVector operator-(const RootVector& a, const RootVector& b) {
        RootVector r = a;
        for (std::size_t i = 0; i < r.n.size(); ++i) r.n[i] -= b.n[i];
        return r;
    }
    RootVector scaled(long c) const {
        RootVector r = *this;
        for (auto& x : r.n) x *= c;
        return r;
    }
    auto operator<=>(const RootVector&) const = default;
};

// Element of the coweight lattice P^vee, coordinates over {h_i} and {d_i}.
struct CoweightVector {
    std::vector<long> h, d;

    explicit CoweightVector(std::size_t rank) : h(rank, 0), d(rank, 0) {}

    static CoweightVector basisH(std::size_t rank, std::size_t i) {
        CoweightVector c(rank);
        c.h[i] = 1;
        return c;
    }
    static CoweightVector basisD(std::size_t rank, std::size_t i) {
        CoweightVector c(rank);
        c.d[i] = 1;
        return c;
    }

    bool isZero() const {
        for (long x : h)
            if (x != 0) return false;
        for (long x : d)
            if (x != 0) return false;
        return true;
    }
    friend CoweightVector operator+(const CoweightVector& a, const CoweightVector& b) {
        CoweightVector r = a;
        for (std::size_t i = 0; i < r.h.size(); ++i) {
            r.h[i] += b.h[i];
            r.d[i] += b.d[i];
        }
        return r;
    }
    friend CoweightVector operator-(const CoweightVector& a, const CoweightVector& b) {
        CoweightVector r = a;
        for (std::size_t i = 0; i < r.h.size(); ++i) {
            r.h[i] -= b.h[i];
            r.d[i] -= b.d[i];
        }
        return r;
    }
    CoweightVector negated() const {
        CoweightVector r = *this;
        for (auto& x : r.h) x = -x;
        for (auto& x : r.d) x = -x;
        return r;
    }
    auto operator<=>(const CoweightVector&) const = default;
};

// Element of the weight lattice P, stored by its values on h_i and d_i.
struct WeightFunctional {
    std::vector<long> onH, onD;

    explicit WeightFunctional(std::size_t rank) : onH(rank, 0), onD(rank, 0) {}

    long operator()(const CoweightVector& c) const {
        long v = 0;
        for (std::size_t i = 0; i < onH.size(); ++i)
            v += onH[i] * c.h[i] + onD[i] * c.d[i];
        return v;
    }

    friend WeightFunctional operator+(const WeightFunctional& a, const WeightFunctional& b) {
        WeightFunctional r = a;
        for (std::size_t i = 0; i < r.onH.size(); ++i) {
            r.onH[i] += b.onH[i];
            r.onD[i] += b.onD[i];
        }
        return r;
    }
    friend WeightFunctional operator-(const WeightFunctional& a, const WeightFunctional& b) {
        WeightFunctional r = a;
        for (std::size_t i = 0; i < r.onH.size(); ++i) {
            r.onH[i] -= b.onH[i];
            r.onD[i] -= b.onD[i];
        }
        return r;
    }
    auto operator<=>(const WeightFunctional&) const = default;
};

// Validated Borcherds-Cartan datum (A, D = diag(s_i), charge m, coloring theta)
// together with all lattice, form, and reflection arithmetic. Immutable after
// construction; construction validates every axiom.
class Datum {
  public:
    Datum(std::vector<std::string> index, std::vector<std::vector<long>> A,
          std::vector<long> s, std::vector<long> m, std::vector<std::vector<int>> theta)
        : index_(std::move(index)), A_(std::move(A)), s_(std::move(s)), m_(std::move(m)),
          theta_(std::move(theta)) {
        validate();
        rootOrder_ = computeRootOrder();
    }

    std::size_t rank() const { return index_.size(); }
    const std::vector<std::string>& index() const { return index_; }
    long a(std::size_t i, std::size_t j) const { return A_[i][j]; }
    long s(std::size_t i) const { return s_[i]; }
    long m(std::size_t i) const { return m_[i]; }
    int theta(std::size_t i, std::size_t j) const { return theta_[i][j]; }
    const std::vector<std::vector<long>>& cartanMatrix() const { return A_; }
    const std::vector<long>& symmetrizer() const { return s_; }
    const std::vector<long>& charge() const { return m_; }
    const std::vector<std::vector<int>>& coloring() const { return theta_; }

    bool isReal(std::size_t i) const { return A_[i][i] == 2; }
    bool isImaginary(std::size_t i) const { return A_[i][i] <= 0; }
    bool isOdd(std::size_t i) const { return theta_[i][i] == -1; }

    // Smallest D with D*(h|h')/2 integral on all basis coweights; q = u^D.
    long rootOrder() const { return rootOrder_; }
    long qiExp(std::size_t i) const { return rootOrder_ * s_[i]; }

    // ---- evaluation of roots on coweights ----

    // alpha_i(h_j) = a_{j,i}, alpha_i(d_j) = delta_{i,j}
    long alphaOn(std::size_t i, const CoweightVector& c) const {
        long v = 0;
        for (std::size_t j = 0; j < rank(); ++j) v += c.h[j] * A_[j][i];
        v += c.d[i];
        return v;
    }
    long rootOn(const RootVector& beta, const CoweightVector& c) const {
        long v = 0;
        for (std::size_t i = 0; i < rank(); ++i)
            if (beta.n[i] != 0) v += beta.n[i] * alphaOn(i, c);
        return v;
    }

    WeightFunctional alphaAsWeight(std::size_t i) const {
        WeightFunctional w(rank());
        for (std::size_t j = 0; j < rank(); ++j) w.onH[j] = A_[j][i];
        w.onD[i] = 1;
        return w;
    }
    WeightFunctional rootAsWeight(const RootVector& beta) const {
        WeightFunctional w(rank());
        for (std::size_t i = 0; i < rank(); ++i)
            if (beta.n[i] != 0) {
                WeightFunctional a = alphaAsWeight(i);
                for (std::size_t j = 0; j < rank(); ++j) {
                    w.onH[j] += beta.n[i] * a.onH[j];
                    w.onD[j] += beta.n[i] * a.onD[j];
                }
            }
        return w;
    }
    WeightFunctional fundamental(std::size_t i) const {
        WeightFunctional w(rank());
        w.onH[i] = 1;
        return w;
    }
    // rho(h_i) = a_{i,i}/2, rho(d_i) = 0; integral since a_{i,i} is even.
    WeightFunctional rho() const {
        WeightFunctional w(rank());
        for (std::size_t i = 0; i < rank(); ++i) w.onH[i] = A_[i][i] / 2;
        return w;
    }

    // ---- bilinear forms ----

    // (beta|gamma) = sum n_i k_j s_i a_{i,j}; integer, symmetric.
    long rootForm(const RootVector& beta, const RootVector& gamma) const {
        long v = 0;
        for (std::size_t i = 0; i < rank(); ++i)
            for (std::size_t j = 0; j < rank(); ++j)
                v += beta.n[i] * gamma.n[j] * s_[i] * A_[i][j];
        return v;
    }

    // (h_i|h_j) = a_{j,i}/s_i, (h_i|d_j) = delta_{i,j}/s_i, (d_i|d_j) = 0.
    Rational coweightForm(const CoweightVector& x, const CoweightVector& y) const {
        Rational v = 0;
        for (std::size_t i = 0; i < rank(); ++i) {
            for (std::size_t j = 0; j < rank(); ++j)
                v += ratio(x.h[i] * y.h[j] * A_[j][i], s_[i]);
            v += ratio(x.h[i] * y.d[i] + x.d[i] * y.h[i], s_[i]);
        }
        v.canonicalize();
        return v;
    }

    // Integer-valued on P x P, via lambda = sum lambda(d_i) alpha_i
    //   + sum (lambda(h_i) - sum_j lambda(d_j) a_{i,j}) Lambda_i
    // and (alpha_i|alpha_j) = s_i a_{i,j}, (alpha_i|Lambda_j) = s_i delta_{ij},
    // (Lambda_i|Lambda_j) = 0.
    long weightForm(const WeightFunctional& lam, const WeightFunctional& mu) const {
        std::vector<long> la(rank()), lL(rank()), ma(rank()), mL(rank());
        for (std::size_t i = 0; i < rank(); ++i) {
            la[i] = lam.onD[i];
            ma[i] = mu.onD[i];
            long accL = lam.onH[i], accM = mu.onH[i];
            for (std::size_t j = 0; j < rank(); ++j) {
                accL -= lam.onD[j] * A_[i][j];
                accM -= mu.onD[j] * A_[i][j];
            }
            lL[i] = accL;
            mL[i] = accM;
        }
        long v = 0;
        for (std::size_t i = 0; i < rank(); ++i) {
            for (std::size_t j = 0; j < rank(); ++j)
                v += la[i] * ma[j] * s_[i] * A_[i][j];
            v += s_[i] * (la[i] * mL[i] + lL[i] * ma[i]);
        }
        return v;
    }

    // Biadditive sign theta(beta,gamma) = prod theta_{i,j}^{n_i k_j}.
    int thetaBicharacter(const RootVector& beta, const RootVector& gamma) const {
        int sign = 1;
        for (std::size_t i = 0; i < rank(); ++i)
            for (std::size_t j = 0; j < rank(); ++j)
                if (theta_[i][j] == -1 && ((beta.n[i] * gamma.n[j]) % 2 != 0))
                    sign = -sign;
        return sign;
    }

    // h_beta = sum n_i s_i h_i, so (h_beta|h) = beta(h) and (h_beta|h_beta) = (beta|beta).
    CoweightVector hBeta(const RootVector& beta) const {
        CoweightVector c(rank());
        for (std::size_t i = 0; i < rank(); ++i) c.h[i] = beta.n[i] * s_[i];
        return c;
    }

    // ---- reflections ----

    // r_i(lambda) = lambda - (2/a_{i,i}) lambda(h_i) alpha_i. Pre: a_{i,i} != 0
    // and the coefficient is integral (always true for a_{i,i} = 2 or -2).
    WeightFunctional reflectWeight(std::size_t i, const WeightFunctional& lam) const {
        if (A_[i][i] == 0) throw DomainError("reflection needs a_{i,i} != 0");
        long num = 2 * lam.onH[i];
        if (num % A_[i][i] != 0)
            throw DomainError("reflection leaves the weight lattice");
        long t = num / A_[i][i];
        WeightFunctional r = lam;
        WeightFunctional a = alphaAsWeight(i);
        for (std::size_t j = 0; j < rank(); ++j) {
            r.onH[j] -= t * a.onH[j];
            r.onD[j] -= t * a.onD[j];
        }
        return r;
    }

    // r_i(h) = h - (2/a_{i,i}) alpha_i(h) h_i; nullopt if the image leaves P^vee.
    std::optional<CoweightVector> reflectCoweight(std::size_t i, const CoweightVector& h) const {
        if (A_[i][i] == 0) throw DomainError("reflection needs a_{i,i} != 0");
        long num = 2 * alphaOn(i, h);
        if (num % A_[i][i] != 0) return std::nullopt;
        CoweightVector r = h;
        r.h[i] -= num / A_[i][i];
        return r;
    }

    // ---- finite type ----

    bool isFiniteType() const {  // DA symmetric positive definite
        std::size_t n = rank();
        for (std::size_t k = 1; k <= n; ++k) {
            Matrix<Rational> minor(k, k);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j)
                    minor(i, j) = Rational(s_[i] * A_[i][j]);
            if (minor.det() <= 0) return false;
        }
        return true;
    }

    // Solves (2rho|alpha_j) = s_j a_{j,j} for integer root coordinates.
    RootVector twoRhoInQ() const {
        if (!isFiniteType())
            throw DomainError("2rho in Q requires a finite-type datum");
        std::size_t n = rank();
        Matrix<Rational> form(n, n);
        std::vector<Rational> rhs(n);
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < n; ++i) form(j, i) = Rational(s_[i] * A_[i][j]);
            rhs[j] = Rational(s_[j] * A_[j][j]);
        }
        auto x = form.solve(rhs);
        RootVector r(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i].get_den() != 1)
                throw DomainError("2rho has non-integral root coordinates");
            r.n[i] = static_cast<long>(x[i].get_num().get_si());
        }
        return r;
    }

    // ---- u-exponent helpers ----

    // u-exponent of q^r for rational r; throws if not integral.
    long uExpOfQPower(const Rational& r) const {
        Rational e = r * rootOrder_;
        e.canonicalize();
        if (e.get_den() != 1)
            throw InternalInconsistency("non-integral u-exponent");
        return static_cast<long>(e.get_num().get_si());
    }
    Scalar qPower(long e) const { return Scalar::uPower(e * rootOrder_); }
    Scalar qPower(const Rational& r) const { return Scalar::uPower(uExpOfQPower(r)); }

  private:
    void validate() const {
        std::size_t n = index_.size();
        auto fail = [](const std::string& axiom, const std::string& msg) {
            throw ValidationError(axiom, msg);
        };
        if (n == 0 || A_.size() != n || s_.size() != n || m_.size() != n || theta_.size() != n)
            fail("shape", "index, A, s, m, theta sizes disagree");
        for (std::size_t i = 0; i < n; ++i)
            if (A_[i].size() != n || theta_[i].size() != n)
                fail("shape", "A or theta row has wrong length");
        for (std::size_t i = 0; i < n; ++i) {
            if (!(A_[i][i] == 2 || A_[i][i] <= 0))
                fail("diagonal", "a_{i,i} must be 2 or <= 0 at " + index_[i]);
            if (A_[i][i] % 2 != 0)
                fail("diagonal-even", "a_{i,i} must be even at " + index_[i]);
            if (s_[i] <= 0)
                fail("symmetrizer-positive", "s_i must be a positive integer at " + index_[i]);
            if (m_[i] <= 0)
                fail("charge-positive", "m_i must be a positive integer at " + index_[i]);
            if (A_[i][i] == 2 && m_[i] != 1)
                fail("charge-real", "m_i = 1 required for real index " + index_[i]);
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i != j && A_[i][j] > 0)
                    fail("offdiag-nonpositive",
                         "a_{i,j} > 0 off the diagonal at (" + index_[i] + "," + index_[j] + ")");
                if ((A_[i][j] == 0) != (A_[j][i] == 0))
                    fail("zero-symmetry",
                         "a_{i,j} = 0 xor a_{j,i} = 0 at (" + index_[i] + "," + index_[j] + ")");
                if (s_[i] * A_[i][j] != s_[j] * A_[j][i])
                    fail("symmetrizable",
                         "DA not symmetric at (" + index_[i] + "," + index_[j] + ")");
                if (theta_[i][j] != 1 && theta_[i][j] != -1)
                    fail("theta-sign", "theta entries must be +-1");
                if (theta_[i][j] * theta_[j][i] != 1)
                    fail("coloring-inverse", "theta_{i,j} theta_{j,i} != 1 at (" + index_[i] +
                                                 "," + index_[j] + ")");
            }
        for (std::size_t i = 0; i < n; ++i)
            if (A_[i][i] == 2 && theta_[i][i] == -1)
                for (std::size_t j = 0; j < n; ++j)
                    if (A_[i][j] % 2 != 0)
                        fail("colored-even-row",
                             "odd real index " + index_[i] + " needs even a_{i,j} at column " +
                                 index_[j]);
    }

    long computeRootOrder() const {
        // Basis coweight form values are a_{j,i}/s_i, delta_{ij}/s_i, 0;
        // D = lcm of the denominators of those values halved.
        mpz_class d = 1;
        auto absorb = [&](const Rational& vRaw) {
            Rational v = vRaw / 2;
            v.canonicalize();
            mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), v.get_den().get_mpz_t());
        };
        for (std::size_t i = 0; i < rank(); ++i) {
            absorb(ratio(1, s_[i]));  // (h_i|d_i)
            for (std::size_t j = 0; j < rank(); ++j)
                absorb(ratio(A_[j][i], s_[i]));  // (h_i|h_j)
        }
        return static_cast<long>(d.get_si());
    }

    std::vector<std::string> index_;
    std::vector<std::vector<long>> A_;
    std::vector<long> s_, m_;
    std::vector<std::vector<int>> theta_;
    long rootOrder_ = 1;
};

}  // namespace qbs
