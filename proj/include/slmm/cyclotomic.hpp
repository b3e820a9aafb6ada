/*
   Copyright 2026 The slmm authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef SLMM_CYCLOTOMIC_HPP
#define SLMM_CYCLOTOMIC_HPP

#include <complex>
#include <vector>

#include "slmm/rational.hpp"

namespace slmm {

// Exact arithmetic in Q(zeta_N), zeta_N = exp(2*pi*i/N).
//
// A value is a rational polynomial in zeta_N reduced modulo the N-th
// cyclotomic polynomial Phi_N.  The coefficient vector always has length N;
// in canonical form entries at degrees >= phi(N) vanish.  Two values of the
// same order are equal iff their coefficient vectors are equal.
class CycNum {
  public:
    CycNum() : order_(1), coeffs_(1, Rational(0)) {}

    // Zero of the given order.
    explicit CycNum(long order) : order_(order), coeffs_(order, Rational(0)) {
        check_order(order);
    }

    // Rational constant of the given order.
    CycNum(long order, const Rational& c) : CycNum(order) { coeffs_[0] = c; canonicalize(); }

    // Raw coefficient vector Sum_k coeffs[k] * zeta_N^k (canonicalized).
    CycNum(long order, std::vector<Rational> coeffs);

    // zeta_N^k, k reduced mod N.
    static CycNum root_of_unity(long order, long long k);

    // e^{2*pi*i*r} for rational r, as an element of order lcm(order, den(r)).
    static CycNum from_phase(const Rational& r, long min_order = 1);

    long order() const { return order_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    bool is_rational() const;
    // Defined only when is_rational().
    Rational as_rational() const;

    CycNum operator-() const;
    CycNum conj() const;

    CycNum& operator+=(const CycNum& o);
    CycNum& operator-=(const CycNum& o);
    CycNum& operator*=(const CycNum& o);
    friend CycNum operator+(CycNum a, const CycNum& b) { return a += b; }
    friend CycNum operator-(CycNum a, const CycNum& b) { return a -= b; }
    friend CycNum operator*(CycNum a, const CycNum& b) { return a *= b; }

    CycNum& operator*=(const Rational& c);
    friend CycNum operator*(CycNum a, const Rational& c) { return a *= c; }
    friend CycNum operator*(const Rational& c, CycNum a) { return a *= c; }

    // Multiplicative inverse via a linear solve in the power basis.
    // Throws std::domain_error on zero.
    CycNum inverse() const;
    friend CycNum operator/(const CycNum& a, const CycNum& b) { return a * b.inverse(); }

    bool operator==(const CycNum& o) const;
    bool operator!=(const CycNum& o) const { return !(*this == o); }

    // Numerical embedding zeta_N -> e^{2*pi*i/N}.
    std::complex<double> to_complex() const;

    // Same value in Q(zeta_M) for any multiple M of order().
    CycNum lifted(long new_order) const;

    // Ring automorphism zeta^k -> zeta^{a*k}; requires gcd(a, N) = 1.
    CycNum galois(long long a) const;

    // "c0 + c1*z^1 + ..." with z the formal root symbol; omits zero terms.
    std::string to_string() const;

    // Lifts both operands to the lcm of their orders.
    static void to_common_order(CycNum& a, CycNum& b);

  private:
    static void check_order(long order);
    void canonicalize();

    long order_;
    std::vector<Rational> coeffs_;
};

// The N-th cyclotomic polynomial as an integer coefficient vector
// (degree phi(N)), computed by recursive division and cached.
const std::vector<Int>& cyclotomic_polynomial(long n);

// Euler phi.
long euler_phi(long n);

// A unit phase e^{2*pi*i*r}, r rational, reduced mod 1.  Addition of phases
// is multiplication of the unit complex numbers.
class Phase {
  public:
    Phase() : r_(0) {}
    explicit Phase(const Rational& r) : r_(mod1(r)) {}

    const Rational& value() const { return r_; }

    Phase operator*(const Phase& o) const { return Phase(r_ + o.r_); }
    Phase inverse() const { return Phase(-r_); }
    Phase conj() const { return inverse(); }
    bool operator==(const Phase& o) const { return r_ == o.r_; }
    bool operator!=(const Phase& o) const { return r_ != o.r_; }

    CycNum embed(long min_order = 1) const { return CycNum::from_phase(r_, min_order); }
    std::complex<double> to_complex() const;

  private:
    Rational r_;
};

}  // namespace slmm

#endif  // SLMM_CYCLOTOMIC_HPP
