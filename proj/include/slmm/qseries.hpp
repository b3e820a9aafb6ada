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

#ifndef SLMM_QSERIES_HPP
#define SLMM_QSERIES_HPP

#include <array>
#include <complex>
#include <map>
#include <optional>

#include "slmm/rational.hpp"

namespace slmm {

// Laurent polynomial in up to two auxiliary variables with rational
// exponents (one-variable series simply leave the second exponent at 0).
class ZPoly {
  public:
    using Exp = std::array<Rational, 2>;
    using Map = std::map<Exp, Rational>;

    ZPoly() = default;
    static ZPoly constant(const Rational& c);
    static ZPoly monomial(const Rational& c, const Rational& e1,
                          const Rational& e2 = Rational(0));

    const Map& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    Rational coeff(const Rational& e1, const Rational& e2 = Rational(0)) const;
    void set(const Exp& e, const Rational& c);
    void add(const Exp& e, const Rational& c);

    ZPoly& operator+=(const ZPoly& o);
    ZPoly& operator-=(const ZPoly& o);
    ZPoly operator-() const;
    ZPoly operator*(const ZPoly& o) const;
    ZPoly operator*(const Rational& c) const;
    bool operator==(const ZPoly& o) const { return t_ == o.t_; }

    // Multiply by the monomial z1^{e1} z2^{e2}.
    ZPoly shifted(const Rational& e1, const Rational& e2) const;

    // Exact division by (1 - z^dir); nullopt when not divisible.
    std::optional<ZPoly> divide_one_minus(const Exp& dir) const;

    // Drop exponents outside [lo1, hi1] x [lo2, hi2].
    ZPoly clipped(const Rational& lo1, const Rational& hi1, const Rational& lo2,
                  const Rational& hi2) const;

    std::string to_string() const;

  private:
    Map t_;  // no zero entries
};

// Truncated series sum_{n=0}^{trunc} coeff_n(z) q^{qOffset + n}.
class QSeries {
  public:
    QSeries() : qOffset_(0), trunc_(-1) {}
    QSeries(Rational qOffset, long trunc)
        : qOffset_(std::move(qOffset)), trunc_(trunc), steps_(trunc + 1) {}

    static QSeries one(long trunc) {
        QSeries s(Rational(0), trunc);
        s.steps_[0] = ZPoly::constant(Rational(1));
        return s;
    }

    const Rational& q_offset() const { return qOffset_; }
    long truncation() const { return trunc_; }
    const ZPoly& step(long n) const { return steps_.at(n); }
    ZPoly& step(long n) { return steps_.at(n); }

    bool is_zero() const;

    QSeries operator+(const QSeries& o) const;  // offsets must differ by an integer
    QSeries operator-(const QSeries& o) const;
    QSeries operator*(const QSeries& o) const;
    QSeries operator*(const Rational& c) const;
    QSeries operator-() const;
    bool operator==(const QSeries& o) const;

    // Multiply by c * z1^{e1} z2^{e2} q^{r}; r may be any rational (absorbed
    // into the offset).
    QSeries shifted(const Rational& c, const Rational& e1, const Rational& e2,
                    const Rational& r) const;

    // In-place multiply by (1 + c z1^{e1} z2^{e2} q^{m}), m >= 1, or m = 0
    // with a pure z-monomial.
    void mul_factor(const Rational& c, const Rational& e1, const Rational& e2, long m);

    // Divide by a series whose step-0 part is a product of the given
    // (1 - z^dir) factors times a leading monomial; every per-step division
    // must be exact (throws std::domain_error otherwise).
    QSeries divide(const QSeries& den, const std::vector<ZPoly::Exp>& den0_directions) const;

    QSeries truncated(long newTrunc) const;

    // Numerical evaluation with branch-safe exponents:
    // q = e^{2 pi i tau}, z_j = e^{2 pi i zeta_j}.
    std::complex<double> eval(std::complex<double> zeta1, std::complex<double> zeta2,
                              std::complex<double> tau) const;

    std::string to_string(long maxSteps = 6) const;

  private:
    Rational qOffset_;
    long trunc_;
    std::vector<ZPoly> steps_;
};

// eta(q) = q^{1/24} prod_{n>=1} (1 - q^n), truncated.
QSeries eta_series(long order);

// F(y;q) = q^{1/12} prod_{i>=1} (1 - y q^i)(1 - y^{-1} q^{i-1}) with y in the
// first variable slot; drop_first_factor omits the i = 1 factor (1 - y q).
QSeries f_product(long order, bool drop_first_factor = false);

// Fermionic ghost character q^{1/12} prod (1 + y q^i)(1 + y^{-1} q^{i-1}).
QSeries fermion_character(long order);

}  // namespace slmm

#endif  // SLMM_QSERIES_HPP
