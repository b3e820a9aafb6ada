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

#include "slmm/modular.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace slmm {

namespace {

// Sum over the finite Weyl group entering both S-matrix formulas:
//   Sum_w det(w) e^{-2 pi i v_factor <w(x), y>}
// with x, y finite weights and a rational scale.  Exact in Q(zeta_{12u})
// because <.,.> takes values in (1/3)Z on the weight lattice.
CycNum weyl_phase_sum(long order, const FiniteWeight& x, const FiniteWeight& y,
                      const Rational& scale) {
    CycNum sum(order);
    for (const Weyl& w : Weyl::all()) {
        Rational e = -bilinear(w.act(x), y) * scale;
        CycNum term = CycNum::from_phase(e, order);
        if (w.det() < 0) term = -term;
        sum += term;
    }
    return sum;
}

// -i/(sqrt(3) u) and +i/(sqrt(3) u) as elements of Q(zeta_{12u}):
// i = zeta^{3u}, sqrt(3) = zeta^u + zeta^{-u}, 1/sqrt(3) = sqrt(3)/3.
CycNum i_over_sqrt3u(long u, int sign) {
    const long n = 12 * u;
    CycNum i = CycNum::root_of_unity(n, 3 * u);
    CycNum sqrt3 = CycNum::root_of_unity(n, u) + CycNum::root_of_unity(n, -u);
    CycNum val = i * sqrt3 * Rational(sign, 3 * u);
    return val;
}

}  // namespace

bool SMatrix::is_symmetric() const {
    if (rows() != cols()) return false;
    for (size_t i = 0; i < rows(); ++i)
        for (size_t j = i + 1; j < cols(); ++j)
            if (entries[i][j] != entries[j][i]) return false;
    return true;
}

bool SMatrix::is_unitary() const {
    if (rows() != cols()) return false;
    const long order = entries[0][0].order();
    for (size_t i = 0; i < rows(); ++i) {
        for (size_t j = 0; j < cols(); ++j) {
            CycNum dot(order);
            for (size_t k = 0; k < cols(); ++k) dot += entries[i][k] * entries[j][k].conj();
            CycNum expect(order, Rational(i == j ? 1 : 0));
            if (dot != expect) return false;
        }
    }
    return true;
}

std::vector<std::vector<std::complex<double>>> SMatrix::to_complex() const {
    std::vector<std::vector<std::complex<double>>> out(rows());
    for (size_t i = 0; i < rows(); ++i) {
        out[i].reserve(cols());
        for (size_t j = 0; j < cols(); ++j) out[i].push_back(entries[i][j].to_complex());
    }
    return out;
}

SMatrix wzw_smatrix(long u) {
    if (u < 3) throw std::invalid_argument("wzw_smatrix: u >= 3 required");
    const long order = 12 * u;
    auto labels = enumerate_P(u);
    CycNum pref = i_over_sqrt3u(u, -1);
    SMatrix s;
    for (const auto& l : labels) {
        s.row_labels.push_back(l.to_string());
        s.col_labels.push_back(l.to_string());
    }
    s.entries.resize(labels.size());
    for (size_t i = 0; i < labels.size(); ++i) {
        for (size_t j = 0; j < labels.size(); ++j) {
            if (j < i) {
                s.entries[i].push_back(s.entries[j][i]);  // symmetric by construction
                continue;
            }
            CycNum sum = weyl_phase_sum(order, labels[i].finite() + rho_bar(),
                                        labels[j].finite() + rho_bar(), Rational(1, u));
            s.entries[i].push_back(pref * sum);
        }
    }
    return s;
}

SMatrix bp_smatrix(long u) {
    if (u < 3 || u % 2 == 0) throw std::invalid_argument("bp_smatrix: u odd >= 3 required");
    const long order = 12 * u;
    auto labels = enumerate_P(u);
    CycNum pref = i_over_sqrt3u(u, +1);
    SMatrix s;
    for (const auto& l : labels) {
        s.row_labels.push_back(l.to_string());
        s.col_labels.push_back(l.to_string());
    }
    s.entries.resize(labels.size());
    for (size_t i = 0; i < labels.size(); ++i) {
        Rational ji = bp_weight(u, labels[i]).j;
        for (size_t j = 0; j < labels.size(); ++j) {
            if (j < i) {
                s.entries[i].push_back(s.entries[j][i]);
                continue;
            }
            Rational jj = bp_weight(u, labels[j]).j;
            CycNum phase = CycNum::from_phase(ji + jj - Rational(u, 3), order);
            CycNum sum = weyl_phase_sum(order, labels[i].finite() + rho_bar(),
                                        labels[j].finite() + rho_bar(), Rational(2, u));
            s.entries[i].push_back(pref * phase * sum);
        }
    }
    return s;
}

const SMatrix& wzw_smatrix_cached(long u) {
    static std::map<long, SMatrix> cache;
    static std::mutex m;
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find(u);
    if (it == cache.end()) it = cache.emplace(u, wzw_smatrix(u)).first;
    return it->second;
}

const SMatrix& bp_smatrix_cached(long u) {
    static std::map<long, SMatrix> cache;
    static std::mutex m;
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find(u);
    if (it == cache.end()) it = cache.emplace(u, bp_smatrix(u)).first;
    return it->second;
}

namespace {

// The unshifted image y(mu^{F,y}) projected to a finite weight.
FiniteWeight adm_muF(const AdmissibleWeight& mu) {
    switch (mu.family) {
        case AdmFamily::F0: return FiniteWeight(0, 0);
        case AdmFamily::F1: return omega1();
        case AdmFamily::F2: return omega2();
        case AdmFamily::W1: return Weyl(Weyl::S1).act(omega1());
    }
    throw std::logic_error("adm_muF");
}

int adm_det_y(const AdmissibleWeight& mu) { return mu.family == AdmFamily::W1 ? -1 : 1; }

}  // namespace

CycNum sl3_adm_entry(long u, const AdmissibleWeight& mu, const AdmissibleWeight& nu) {
    const long order = 12 * u;
    const Rational uv(u, 2);  // u/v at v = 2
    FiniteWeight muI = mu.lambda.finite(), nuI = nu.lambda.finite();
    FiniteWeight muF = adm_muF(mu), nuF = adm_muF(nu);
    Rational expo = bilinear(muI + rho_bar(), nuF) + bilinear(muF, nuI + rho_bar()) -
                    bilinear(muF, nuF) * uv;
    CycNum phase = CycNum::from_phase(expo, order);
    CycNum sum = weyl_phase_sum(order, muI + rho_bar(), nuI + rho_bar(), Rational(2, u));
    CycNum pref = i_over_sqrt3u(u, -1) * Rational(adm_det_y(mu) * adm_det_y(nu), 2);
    return pref * phase * sum;
}

SMatrix sl3_adm_smatrix(long u) {
    auto adm = admissible_weights(u);
    SMatrix s;
    for (const auto& a : adm) {
        std::string name = family_name(a.family) + ":" + a.lambda.to_string();
        s.row_labels.push_back(name);
        s.col_labels.push_back(name);
    }
    s.entries.resize(adm.size());
    for (size_t i = 0; i < adm.size(); ++i)
        for (size_t j = 0; j < adm.size(); ++j)
            s.entries[i].push_back(j < i ? s.entries[j][i] : sl3_adm_entry(u, adm[i], adm[j]));
    return s;
}

Phase sl3_tmatrix(long u, const AdmissibleWeight& mu) {
    FiniteWeight x = mu.weight.finite() + rho_bar();
    // e^{-2 pi i/3} e^{pi i |mu+rho|^2 v/u}, v = 2.
    return Phase(Rational(-1, 3) + bilinear(x, x) / Rational(u));
}

Phase bp_tmatrix(long u, const AffineWeight& lambda) {
    BPWeight w = bp_weight(u, lambda);
    return Phase(w.Delta - bp_central_charge(u) / 24);
}

CycNum galois_apply(const CycNum& x, long u, GaloisVariant variant) {
    const long n = 12 * u;
    CycNum lifted = x;
    if (n % lifted.order() == 0 && lifted.order() != n) lifted = lifted.lifted(n);
    if (lifted.order() != n)
        throw std::invalid_argument("galois_apply: value must live in Q(zeta_{12u})");
    long long a = (variant == GaloisVariant::Standard) ? 3LL * u + 2 : 9LL * u + 2;
    return lifted.galois(a);
}

GaloisPermutation galois_permutation(long u) {
    auto labels = enumerate_P(u);
    GaloisPermutation gp;
    gp.pi.resize(labels.size());
    gp.eps.resize(labels.size());
    for (size_t j = 0; j < labels.size(); ++j) {
        // Reduce the label 2*lambda' + rho_bar (so that the shifted input is
        // 2(lambda'+rho)).
        FiniteWeight two = labels[j].finite() * Rational(2) + rho_bar();
        AlcoveResult res = alcove_reduce(two, u);
        if (std::holds_alternative<OnWall>(res))
            throw std::runtime_error("galois_permutation: 2*lambda'+rho on a wall (unexpected)");
        auto [img, det] = std::get<std::pair<AffineWeight, int>>(res);
        long idx = p_index(u, img);
        if (idx < 0) throw std::logic_error("galois_permutation: image not in P^{u-3}");
        gp.pi[j] = idx;
        gp.eps[j] = -det;
    }
    // Verify the defining identity exactly on all pairs.
    const SMatrix& s = wzw_smatrix_cached(u);
    for (size_t i = 0; i < labels.size(); ++i) {
        for (size_t j = 0; j < labels.size(); ++j) {
            CycNum lhs = galois_apply(s.entries[i][j], u);
            CycNum rhs = s.entries[i][gp.pi[j]] * Rational(gp.eps[j]);
            if (lhs != rhs) throw std::runtime_error("galois_permutation: identity failed");
        }
    }
    return gp;
}

SKernelValue::SKernelValue(CycNum numerator, std::vector<DenominatorFactor> dens, long u,
                           const RelaxedLabel& col)
    : numerator_(std::move(numerator)),
      dens_(std::move(dens)),
      u_(u),
      j_col_(bp_weight(u, col.lambda).j),
      gamma_col_(col.gamma) {}

namespace {

Rational den_exponent(const DenominatorFactor& f, const GammaCoset& gamma, const Rational& j) {
    return f.h.pair(gamma.rep()) + Rational(f.m) * j + f.c;
}

}  // namespace

bool SKernelValue::has_pole() const {
    for (const auto& f : dens_)
        if (mod1(den_exponent(f, gamma_col_, j_col_)) == Rational(1, 2)) return true;
    return false;
}

CycNum SKernelValue::exact() const {
    if (has_pole()) throw std::domain_error("SKernelValue::exact: pole in denominator");
    CycNum val = numerator_;
    for (const auto& f : dens_) {
        CycNum den = CycNum::from_phase(den_exponent(f, gamma_col_, j_col_), val.order());
        den += CycNum(den.order(), Rational(1));
        val = val * den.inverse();
    }
    return val;
}

std::complex<double> SKernelValue::numeric() const {
    if (has_pole()) throw std::domain_error("SKernelValue::numeric: pole in denominator");
    std::complex<double> val = numerator_.to_complex();
    for (const auto& f : dens_)
        val /= 1.0 + Phase(den_exponent(f, gamma_col_, j_col_)).to_complex();
    return val;
}

SKernelValue relaxed_skernel(long u, const RelaxedLabel& row, const RelaxedLabel& col) {
    const SMatrix& s = bp_smatrix_cached(u);
    long li = p_index(u, row.lambda), lj = p_index(u, col.lambda);
    if (li < 0 || lj < 0) throw std::invalid_argument("relaxed_skernel: label not in P^{u-3}");
    Rational expo = -(bilinear(row.g.as_weight(), col.g.as_weight()) * Rational(u, 2) +
                      col.g.pair(row.gamma.rep()) + row.g.pair(col.gamma.rep()));
    CycNum phase = CycNum::from_phase(expo, 12 * u);
    return SKernelValue(phase * s.entries[li][lj], {}, u, col);
}

SKernelValue semirelaxed_skernel(long u, const Weyl& w, const RelaxedLabel& row,
                                 const RelaxedLabel& col) {
    Rational j = bp_weight(u, row.lambda).j;
    Rational constraint = row.gamma.pair(Coweight::cw3()) + j + Rational(u, 6);
    if (!is_integer(constraint))
        throw std::invalid_argument("semirelaxed_skernel: gamma violates the semirelaxed "
                                    "constraint <gamma,cw3> = -j - u/6 mod 1");
    RelaxedLabel twisted{row.g, row.lambda, row.gamma.weyl(w)};
    SKernelValue base = relaxed_skernel(u, twisted, col);
    DenominatorFactor f{-Coweight::cw3().weyl(w), -1, Rational(u, 3)};
    return SKernelValue(base.numerator(), {f}, u, col);
}

namespace {

std::vector<DenominatorFactor> hw_denominators(long u) {
    return {
        {Coweight::cw1(), -1, Rational(u, 3)},
        {Coweight::cw2(), +1, Rational(-u, 3)},
        {-Coweight::cw3(), -1, Rational(u, 3)},
    };
}

// Kernel of sf_g L(Lambda^2_lambda): numerator is the relaxed kernel at row
// (g, lambda, gamma^1_lambda) over the three hw denominator factors.
SKernelValue lambda2_kernel(long u, const Coweight& g, const AffineWeight& lambda,
                            const RelaxedLabel& col) {
    DegenerationParams dp = degeneration_params(u, lambda);
    RelaxedLabel row{g, lambda, dp.gamma1};
    SKernelValue base = relaxed_skernel(u, row, col);
    return SKernelValue(base.numerator(), hw_denominators(u), u, col);
}

}  // namespace

std::vector<SKernelValue> hw_skernel_parts(long u, HwKernelVariant variant, const Coweight& g,
                                           const AffineWeight& lambda, const RelaxedLabel& col) {
    switch (variant) {
        case HwKernelVariant::Lambda2:
            return {lambda2_kernel(u, g, lambda, col)};
        case HwKernelVariant::Family0:
            // L(lambda - u w0/2) = sf_{-cw2} L(Lambda^2_lambda)
            return {lambda2_kernel(u, g - Coweight::cw2(), lambda, col)};
        case HwKernelVariant::Family1:
            // L(lambda - u w1/2) = sf_{cw3} L(Lambda^2_{nabla(lambda)})
            return {lambda2_kernel(u, g + Coweight::cw3(), lambda.nabla(1), col)};
        case HwKernelVariant::Vacuum: {
            AffineWeight vac(Rational(u - 3), Rational(0), Rational(0));
            return {lambda2_kernel(u, g - Coweight::cw2(), vac, col)};
        }
        case HwKernelVariant::Lambda1: {
            // [L(Lambda^1_l)] = [w1 w3 (S^l_{gamma^1_l})] - [sf_{-acw2} L(Lambda^2_l)]
            DegenerationParams dp = degeneration_params(u, lambda);
            RelaxedLabel row{g, lambda, dp.gamma1};
            SKernelValue semi =
                semirelaxed_skernel(u, Weyl(Weyl::S1) * Weyl::s3(), row, col);
            SKernelValue l2 = lambda2_kernel(u, g - Coweight::acw2(), lambda, col);
            return {semi, SKernelValue(-l2.numerator(), l2.denominators(), u, col)};
        }
    }
    throw std::logic_error("hw_skernel_parts");
}

HwKernel hw_skernel(long u, HwKernelVariant variant, const Coweight& g,
                    const AffineWeight& lambda, const RelaxedLabel& col) {
    return HwKernel(hw_skernel_parts(u, variant, g, lambda, col));
}

bool HwKernel::has_pole() const {
    for (const auto& p : parts_)
        if (p.has_pole()) return true;
    return false;
}

CycNum HwKernel::exact() const {
    CycNum sum = parts_.at(0).exact();
    for (size_t i = 1; i < parts_.size(); ++i) sum += parts_[i].exact();
    return sum;
}

std::complex<double> HwKernel::numeric() const {
    std::complex<double> sum(0, 0);
    for (const auto& p : parts_) sum += p.numeric();
    return sum;
}

namespace {

std::complex<double> unit_phase(double turns) {
    const double twopi = 6.283185307179586476925286766559;
    return {std::cos(twopi * turns), std::sin(twopi * turns)};
}

double pair_num(const Coweight& g, double c1, double c2) {
    // <g, c1 a1 + c2 a2> = c1 <g, a1> + c2 <g, a2>; <cw_i, a_j> = delta_ij.
    return static_cast<double>(g.g1) * c1 + static_cast<double>(g.g2) * c2;
}

}  // namespace

std::complex<double> relaxed_skernel_numeric(long u, const RelaxedLabel& row,
                                             const Coweight& g_col, const AffineWeight& l_col,
                                             double c1, double c2) {
    const SMatrix& s = bp_smatrix_cached(u);
    long li = p_index(u, row.lambda), lj = p_index(u, l_col);
    std::complex<double> sbp = s.entries[li][lj].to_complex();
    auto rowc = row.gamma.rep().root_coords();
    double expo = -(to_double(bilinear(row.g.as_weight(), g_col.as_weight())) *
                        static_cast<double>(u) / 2.0 +
                    pair_num(g_col, to_double(rowc[0]), to_double(rowc[1])) +
                    pair_num(row.g, c1, c2));
    return unit_phase(expo) * sbp;
}

std::complex<double> semirelaxed_skernel_numeric(long u, const Weyl& w, const RelaxedLabel& row,
                                                 const Coweight& g_col, const AffineWeight& l_col,
                                                 double c1, double c2) {
    RelaxedLabel twisted{row.g, row.lambda, row.gamma.weyl(w)};
    std::complex<double> num = relaxed_skernel_numeric(u, twisted, g_col, l_col, c1, c2);
    double j = to_double(bp_weight(u, l_col).j);
    double expo = -(pair_num(Coweight::cw3().weyl(w), c1, c2) + j - static_cast<double>(u) / 3.0);
    return num / (1.0 + unit_phase(expo));
}

}  // namespace slmm
