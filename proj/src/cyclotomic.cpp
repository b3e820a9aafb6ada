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

#include "slmm/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace slmm {

namespace {

// Quotient of integer polynomials; denominator monic, division exact.
std::vector<Int> exact_div(std::vector<Int> rem, const std::vector<Int>& den) {
    const size_t dd = den.size() - 1;
    if (rem.size() < den.size()) throw std::logic_error("exact_div: degree underflow");
    std::vector<Int> quot(rem.size() - dd, Int(0));
    for (size_t qd = quot.size(); qd-- > 0;) {
        Int c = rem[qd + dd];
        if (c == 0) continue;
        quot[qd] = c;
        for (size_t j = 0; j <= dd; ++j) rem[qd + j] -= c * den[j];
    }
    for (const Int& c : rem)
        if (c != 0) throw std::logic_error("exact_div: nonzero remainder");
    return quot;
}

std::map<long, std::vector<Int>>& phi_cache() {
    static std::map<long, std::vector<Int>> cache;
    return cache;
}
std::mutex phi_mutex;

// Phi_d for ascending divisors d of n, so no recursion is needed.
const std::vector<Int>& cyclotomic_locked(long n) {
    auto it = phi_cache().find(n);
    if (it != phi_cache().end()) return it->second;
    for (long d = 1; d <= n; ++d) {
        if (n % d != 0 || phi_cache().count(d)) continue;
        if (d == 1) {
            phi_cache().emplace(1, std::vector<Int>{Int(-1), Int(1)});
            continue;
        }
        std::vector<Int> num(d + 1, Int(0));
        num[0] = -1;
        num[d] = 1;
        for (long e = 1; e < d; ++e)
            if (d % e == 0) num = exact_div(std::move(num), phi_cache().at(e));
        phi_cache().emplace(d, std::move(num));
    }
    return phi_cache().at(n);
}

}  // namespace

const std::vector<Int>& cyclotomic_polynomial(long n) {
    std::lock_guard<std::mutex> lock(phi_mutex);
    return cyclotomic_locked(n);
}

long euler_phi(long n) {
    long result = n;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

void CycNum::check_order(long order) {
    if (order < 1) throw std::invalid_argument("CycNum: order must be >= 1");
}

CycNum::CycNum(long order, std::vector<Rational> coeffs) : order_(order) {
    check_order(order);
    coeffs_ = std::move(coeffs);
    if (static_cast<long>(coeffs_.size()) != order_) {
        // fold any overflow exponents mod N, pad up
        std::vector<Rational> folded(order_, Rational(0));
        for (size_t k = 0; k < coeffs_.size(); ++k) folded[k % order_] += coeffs_[k];
        coeffs_ = std::move(folded);
    }
    canonicalize();
}

CycNum CycNum::root_of_unity(long order, long long k) {
    check_order(order);
    long long r = k % order;
    if (r < 0) r += order;
    CycNum x(order);
    x.coeffs_[static_cast<size_t>(r)] = 1;
    x.canonicalize();
    return x;
}

CycNum CycNum::from_phase(const Rational& r, long min_order) {
    Rational m = mod1(r);
    long den = static_cast<long>(rat_den(m));
    long order = static_cast<long>(int_lcm(Int(den), Int(min_order)));
    long long k = static_cast<long long>(rat_num(m)) * (order / den);
    return root_of_unity(order, k);
}

void CycNum::canonicalize() {
    // Reduce the degree-(N-1) representative modulo Phi_N over Q.
    const auto& phi = cyclotomic_polynomial(order_);
    const size_t d = phi.size() - 1;  // = euler_phi(order_)
    for (size_t deg = coeffs_.size(); deg-- > d;) {
        Rational c = coeffs_[deg];
        if (c == 0) continue;
        coeffs_[deg] = 0;
        for (size_t j = 0; j < d; ++j) coeffs_[deg - d + j] -= c * Rational(phi[j]);
    }
}

bool CycNum::is_zero() const {
    for (const auto& c : coeffs_)
        if (c != 0) return false;
    return true;
}

bool CycNum::is_rational() const {
    for (size_t k = 1; k < coeffs_.size(); ++k)
        if (coeffs_[k] != 0) return false;
    return true;
}

Rational CycNum::as_rational() const {
    if (!is_rational()) throw std::domain_error("CycNum::as_rational: value not rational");
    return coeffs_[0];
}

CycNum CycNum::operator-() const {
    CycNum x = *this;
    for (auto& c : x.coeffs_) c = -c;
    return x;
}

CycNum CycNum::conj() const {
    CycNum x(order_);
    for (long k = 0; k < order_; ++k) {
        if (coeffs_[k] == 0) continue;
        x.coeffs_[(order_ - k) % order_] += coeffs_[k];
    }
    x.canonicalize();
    return x;
}

void CycNum::to_common_order(CycNum& a, CycNum& b) {
    if (a.order_ == b.order_) return;
    long n = static_cast<long>(int_lcm(Int(a.order_), Int(b.order_)));
    a = a.lifted(n);
    b = b.lifted(n);
}

CycNum CycNum::lifted(long new_order) const {
    if (new_order == order_) return *this;
    if (new_order % order_ != 0)
        throw std::invalid_argument("CycNum::lifted: new order must be a multiple");
    long step = new_order / order_;
    CycNum x(new_order);
    for (long k = 0; k < order_; ++k) x.coeffs_[k * step] = coeffs_[k];
    x.canonicalize();
    return x;
}

CycNum& CycNum::operator+=(const CycNum& o) {
    CycNum rhs = o;
    to_common_order(*this, rhs);
    for (long k = 0; k < order_; ++k) coeffs_[k] += rhs.coeffs_[k];
    canonicalize();
    return *this;
}

CycNum& CycNum::operator-=(const CycNum& o) {
    CycNum rhs = o;
    to_common_order(*this, rhs);
    for (long k = 0; k < order_; ++k) coeffs_[k] -= rhs.coeffs_[k];
    canonicalize();
    return *this;
}

CycNum& CycNum::operator*=(const CycNum& o) {
    CycNum rhs = o;
    to_common_order(*this, rhs);
    std::vector<Rational> prod(order_, Rational(0));
    for (long i = 0; i < order_; ++i) {
        if (coeffs_[i] == 0) continue;
        for (long j = 0; j < order_; ++j) {
            if (rhs.coeffs_[j] == 0) continue;
            prod[(i + j) % order_] += coeffs_[i] * rhs.coeffs_[j];
        }
    }
    coeffs_ = std::move(prod);
    canonicalize();
    return *this;
}

CycNum& CycNum::operator*=(const Rational& c) {
    for (auto& x : coeffs_) x *= c;
    return *this;
}

CycNum CycNum::inverse() const {
    if (is_zero()) throw std::domain_error("CycNum::inverse: zero");
    if (is_rational()) return CycNum(order_, Rational(1) / coeffs_[0]);
    // Solve (this) * x = 1 over the power basis 1, z, ..., z^{phi(N)-1}.
    const long d = euler_phi(order_);
    std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d + 1, Rational(0)));
    for (long j = 0; j < d; ++j) {
        CycNum col = *this * root_of_unity(order_, j);
        for (long i = 0; i < d; ++i) m[i][j] = col.coeffs_[i];
    }
    m[0][d] = 1;
    // Gaussian elimination with partial (first nonzero) pivoting.
    for (long col = 0, row = 0; col < d && row < d; ++col) {
        long piv = -1;
        for (long r = row; r < d; ++r)
            if (m[r][col] != 0) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(m[row], m[piv]);
        Rational inv = Rational(1) / m[row][col];
        for (long c = col; c <= d; ++c) m[row][c] *= inv;
        for (long r = 0; r < d; ++r) {
            if (r == row || m[r][col] == 0) continue;
            Rational f = m[r][col];
            for (long c = col; c <= d; ++c) m[r][c] -= f * m[row][c];
        }
        ++row;
    }
    std::vector<Rational> sol(order_, Rational(0));
    for (long i = 0; i < d; ++i) sol[i] = m[i][d];
    CycNum x(order_, std::move(sol));
    if (!((*this) * x == CycNum(order_, Rational(1))))
        throw std::logic_error("CycNum::inverse: verification failed");
    return x;
}

bool CycNum::operator==(const CycNum& o) const {
    if (order_ == o.order_) return coeffs_ == o.coeffs_;
    CycNum a = *this, b = o;
    to_common_order(a, b);
    return a.coeffs_ == b.coeffs_;
}

std::complex<double> CycNum::to_complex() const {
    std::complex<double> sum(0.0, 0.0);
    const double twopi = 6.283185307179586476925286766559;
    for (long k = 0; k < order_; ++k) {
        if (coeffs_[k] == 0) continue;
        double angle = twopi * static_cast<double>(k) / static_cast<double>(order_);
        sum += to_double(coeffs_[k]) * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    return sum;
}

CycNum CycNum::galois(long long a) const {
    long long r = a % order_;
    if (r < 0) r += order_;
    if (int_gcd(Int(r), Int(order_)) != 1)
        throw std::invalid_argument("CycNum::galois: exponent not coprime to order");
    CycNum x(order_);
    for (long k = 0; k < order_; ++k) {
        if (coeffs_[k] == 0) continue;
        x.coeffs_[static_cast<size_t>((static_cast<long long>(k) * r) % order_)] += coeffs_[k];
    }
    x.canonicalize();
    return x;
}

std::string CycNum::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long k = 0; k < order_; ++k) {
        if (coeffs_[k] == 0) continue;
        if (!first) os << " + ";
        os << slmm::to_string(coeffs_[k]);
        if (k > 0) os << "*z^" << k;
        first = false;
    }
    return os.str();
}

std::complex<double> Phase::to_complex() const {
    const double twopi = 6.283185307179586476925286766559;
    double a = twopi * to_double(r_);
    return {std::cos(a), std::sin(a)};
}

}  // namespace slmm
