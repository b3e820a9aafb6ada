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

#include "slmm/qseries.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace slmm {

ZPoly ZPoly::constant(const Rational& c) { return monomial(c, Rational(0)); }

ZPoly ZPoly::monomial(const Rational& c, const Rational& e1, const Rational& e2) {
    ZPoly p;
    if (c != 0) p.t_[{e1, e2}] = c;
    return p;
}

Rational ZPoly::coeff(const Rational& e1, const Rational& e2) const {
    auto it = t_.find({e1, e2});
    return it == t_.end() ? Rational(0) : it->second;
}

void ZPoly::set(const Exp& e, const Rational& c) {
    if (c == 0)
        t_.erase(e);
    else
        t_[e] = c;
}

void ZPoly::add(const Exp& e, const Rational& c) {
    auto it = t_.find(e);
    if (it == t_.end()) {
        if (c != 0) t_[e] = c;
        return;
    }
    it->second += c;
    if (it->second == 0) t_.erase(it);
}

ZPoly& ZPoly::operator+=(const ZPoly& o) {
    for (const auto& [e, c] : o.t_) add(e, c);
    return *this;
}

ZPoly& ZPoly::operator-=(const ZPoly& o) {
    for (const auto& [e, c] : o.t_) add(e, -c);
    return *this;
}

ZPoly ZPoly::operator-() const {
    ZPoly p;
    for (const auto& [e, c] : t_) p.t_[e] = -c;
    return p;
}

ZPoly ZPoly::operator*(const ZPoly& o) const {
    ZPoly p;
    for (const auto& [e, c] : t_)
        for (const auto& [f, d] : o.t_) p.add({e[0] + f[0], e[1] + f[1]}, c * d);
    return p;
}

ZPoly ZPoly::operator*(const Rational& c) const {
    ZPoly p;
    if (c == 0) return p;
    for (const auto& [e, k] : t_) p.t_[e] = k * c;
    return p;
}

ZPoly ZPoly::shifted(const Rational& e1, const Rational& e2) const {
    ZPoly p;
    for (const auto& [e, c] : t_) p.t_[{e[0] + e1, e[1] + e2}] = c;
    return p;
}

std::optional<ZPoly> ZPoly::divide_one_minus(const Exp& dir) const {
    // Solve s (1 - z^dir) = this exactly.  Group the support into lines
    // e + t*dir; along each line s_t = p_t + s_{t + 1} walking downward from
    // the top, and the running sum must vanish after the last position.
    if (dir[0] == 0 && dir[1] == 0) throw std::invalid_argument("divide_one_minus: zero dir");
    ZPoly quot;
    // Line key: e - t*dir with t = e[i]/dir[i] for the first nonzero slot.
    int slot = dir[0] != 0 ? 0 : 1;
    std::map<Exp, std::map<Rational, Rational>> lines;  // key -> (t -> coeff)
    for (const auto& [e, c] : t_) {
        Rational t = e[slot] / dir[slot];
        Exp key = {e[0] - t * dir[0], e[1] - t * dir[1]};
        lines[key][t] = c;
    }
    for (const auto& [key, pts] : lines) {
        // positions must be integer-spaced; walk from the max down
        Rational tmax = pts.rbegin()->first, tmin = pts.begin()->first;
        for (const auto& [t, c] : pts)
            if (!is_integer(tmax - t)) return std::nullopt;
        // s (1 - z^dir) = p gives s_{t-1} = -(sum of p from the top through t).
        Rational run(0);
        for (Rational t = tmax; t >= tmin; t -= 1) {
            auto it = pts.find(t);
            run += (it == pts.end() ? Rational(0) : it->second);
            if (run != 0)
                quot.add({key[0] + (t - 1) * dir[0], key[1] + (t - 1) * dir[1]}, -run);
        }
        if (run != 0) return std::nullopt;  // not divisible along this line
    }
    return quot;
}

ZPoly ZPoly::clipped(const Rational& lo1, const Rational& hi1, const Rational& lo2,
                     const Rational& hi2) const {
    ZPoly p;
    for (const auto& [e, c] : t_)
        if (e[0] >= lo1 && e[0] <= hi1 && e[1] >= lo2 && e[1] <= hi2) p.t_[e] = c;
    return p;
}

std::string ZPoly::to_string() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : t_) {
        if (!first) os << " + ";
        os << slmm::to_string(c);
        if (e[0] != 0) os << "*x^(" << slmm::to_string(e[0]) << ")";
        if (e[1] != 0) os << "*y^(" << slmm::to_string(e[1]) << ")";
        first = false;
    }
    return os.str();
}

bool QSeries::is_zero() const {
    for (const auto& s : steps_)
        if (!s.is_zero()) return false;
    return true;
}

QSeries QSeries::operator+(const QSeries& o) const {
    Rational diff = o.qOffset_ - qOffset_;
    if (!is_integer(diff)) throw std::invalid_argument("QSeries::+: offsets differ fractionally");
    long d = static_cast<long>(rat_num(diff));
    // align to the smaller offset
    const QSeries& lo = d >= 0 ? *this : o;
    const QSeries& hi = d >= 0 ? o : *this;
    long shift = std::abs(d);
    long trunc = std::min(lo.trunc_, shift + hi.trunc_);
    // a step of `hi` below lo's range is unrepresentable; but hi starts at
    // lo.offset + shift >= lo.offset, so all is well
    QSeries out(lo.qOffset_, trunc);
    for (long n = 0; n <= trunc; ++n) {
        ZPoly v = lo.steps_[n];
        if (n >= shift && n - shift <= hi.trunc_) v += hi.steps_[n - shift];
        out.steps_[n] = std::move(v);
    }
    return out;
}

QSeries QSeries::operator-(const QSeries& o) const { return *this + (-o); }

QSeries QSeries::operator-() const {
    QSeries out = *this;
    for (auto& s : out.steps_) s = -s;
    return out;
}

QSeries QSeries::operator*(const QSeries& o) const {
    long trunc = std::min(trunc_, o.trunc_);
    QSeries out(qOffset_ + o.qOffset_, trunc);
    for (long n = 0; n <= trunc; ++n)
        for (long k = 0; k <= n; ++k) {
            if (k > trunc_ || n - k > o.trunc_) continue;
            out.steps_[n] += steps_[k] * o.steps_[n - k];
        }
    return out;
}

QSeries QSeries::operator*(const Rational& c) const {
    QSeries out = *this;
    for (auto& s : out.steps_) s = s * c;
    return out;
}

bool QSeries::operator==(const QSeries& o) const {
    if (trunc_ != o.trunc_) return false;
    if (is_zero() && o.is_zero()) return true;
    if (qOffset_ != o.qOffset_) return false;
    return steps_ == o.steps_;
}

QSeries QSeries::shifted(const Rational& c, const Rational& e1, const Rational& e2,
                         const Rational& r) const {
    QSeries out(qOffset_ + r, trunc_);
    for (long n = 0; n <= trunc_; ++n) out.steps_[n] = steps_[n].shifted(e1, e2) * c;
    return out;
}

void QSeries::mul_factor(const Rational& c, const Rational& e1, const Rational& e2, long m) {
    if (m < 0) throw std::invalid_argument("QSeries::mul_factor: negative q power");
    if (m == 0) {
        for (auto& s : steps_) {
            ZPoly extra = s.shifted(e1, e2) * c;
            s += extra;
        }
        return;
    }
    for (long n = trunc_; n >= m; --n) steps_[n] += steps_[n - m].shifted(e1, e2) * c;
}

QSeries QSeries::divide(const QSeries& den,
                        const std::vector<ZPoly::Exp>& den0_directions) const {
    // den step 0 = L * prod (1 - z^dir) with L a single monomial.
    ZPoly lead = den.steps_.at(0);
    for (const auto& dir : den0_directions) {
        auto q = lead.divide_one_minus(dir);
        if (!q) throw std::domain_error("QSeries::divide: bad step-0 factorization");
        lead = *q;
    }
    if (lead.terms().size() != 1)
        throw std::domain_error("QSeries::divide: leading part is not a monomial");
    auto [lexp, lcoeff] = *lead.terms().begin();

    long trunc = std::min(trunc_, den.trunc_);
    QSeries out(qOffset_ - den.qOffset_, trunc);
    for (long n = 0; n <= trunc; ++n) {
        ZPoly rhs = steps_[n];
        for (long j = 1; j <= n; ++j) rhs -= den.steps_[j] * out.steps_[n - j];
        // divide by the leading monomial, then by each (1 - z^dir)
        rhs = rhs.shifted(-lexp[0], -lexp[1]) * (Rational(1) / lcoeff);
        for (const auto& dir : den0_directions) {
            auto q = rhs.divide_one_minus(dir);
            if (!q)
                throw std::domain_error("QSeries::divide: step " + std::to_string(n) +
                                        " not divisible");
            rhs = *q;
        }
        out.steps_[n] = std::move(rhs);
    }
    return out;
}

QSeries QSeries::truncated(long newTrunc) const {
    if (newTrunc >= trunc_) return *this;
    QSeries out(qOffset_, newTrunc);
    for (long n = 0; n <= newTrunc; ++n) out.steps_[n] = steps_[n];
    return out;
}

std::complex<double> QSeries::eval(std::complex<double> zeta1, std::complex<double> zeta2,
                                   std::complex<double> tau) const {
    const std::complex<double> twopii(0.0, 6.283185307179586476925286766559);
    std::complex<double> sum(0.0, 0.0);
    for (long n = 0; n <= trunc_; ++n) {
        std::complex<double> qpart =
            std::exp(twopii * tau * (to_double(qOffset_) + static_cast<double>(n)));
        for (const auto& [e, c] : steps_[n].terms()) {
            std::complex<double> zpart =
                std::exp(twopii * (zeta1 * to_double(e[0]) + zeta2 * to_double(e[1])));
            sum += to_double(c) * qpart * zpart;
        }
    }
    return sum;
}

std::string QSeries::to_string(long maxSteps) const {
    std::ostringstream os;
    os << "q^(" << slmm::to_string(qOffset_) << ") * [";
    for (long n = 0; n <= std::min(trunc_, maxSteps); ++n) {
        if (n) os << " + ";
        os << "q^" << n << "*(" << steps_[n].to_string() << ")";
    }
    if (trunc_ > maxSteps) os << " + ...";
    os << "]";
    return os.str();
}

QSeries eta_series(long order) {
    QSeries s = QSeries::one(order);
    for (long n = 1; n <= order; ++n) s.mul_factor(Rational(-1), Rational(0), Rational(0), n);
    return s.shifted(Rational(1), Rational(0), Rational(0), Rational(1, 24));
}

QSeries f_product(long order, bool drop_first_factor) {
    // the (1 - y^{-1} q^{i-1}) factor at i = order+1 still lands at the
    // truncation order, so the loop runs one factor further
    QSeries s = QSeries::one(order);
    for (long i = 1; i <= order + 1; ++i) {
        if (!(drop_first_factor && i == 1))
            s.mul_factor(Rational(-1), Rational(1), Rational(0), i);       // (1 - y q^i)
        s.mul_factor(Rational(-1), Rational(-1), Rational(0), i - 1);      // (1 - y^{-1} q^{i-1})
    }
    return s.shifted(Rational(1), Rational(0), Rational(0), Rational(1, 12));
}

QSeries fermion_character(long order) {
    QSeries s = QSeries::one(order);
    for (long i = 1; i <= order + 1; ++i) {
        s.mul_factor(Rational(1), Rational(1), Rational(0), i);
        s.mul_factor(Rational(1), Rational(-1), Rational(0), i - 1);
    }
    return s.shifted(Rational(1), Rational(0), Rational(0), Rational(1, 12));
}

}  // namespace slmm
