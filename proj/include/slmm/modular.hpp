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

#ifndef SLMM_MODULAR_HPP
#define SLMM_MODULAR_HPP

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "slmm/cyclotomic.hpp"
#include "slmm/weights.hpp"

namespace slmm {

// Dense matrix of exact cyclotomic entries with ordered label lists.
struct SMatrix {
    std::vector<std::string> row_labels, col_labels;
    std::vector<std::vector<CycNum>> entries;

    size_t rows() const { return entries.size(); }
    size_t cols() const { return entries.empty() ? 0 : entries[0].size(); }

    bool is_symmetric() const;
    bool is_unitary() const;  // S S^dagger = I, exactly
    std::vector<std::vector<std::complex<double>>> to_complex() const;
};

// S-matrix of the rational sl(3) model at level u-3 over P^{u-3}
// (rows/cols in enumerate_P order).
SMatrix wzw_smatrix(long u);

// Bershadsky-Polyakov S-matrix over P^{u-3}, u odd >= 3.
SMatrix bp_smatrix(long u);

// Memoized accessors (the matrices are immutable once built).
const SMatrix& wzw_smatrix_cached(long u);
const SMatrix& bp_smatrix_cached(long u);

// One entry of the admissible sl(3) S-matrix at denominator 2, exact in
// Q(zeta_{12u}).
CycNum sl3_adm_entry(long u, const AdmissibleWeight& mu, const AdmissibleWeight& nu);

// Full admissible S-matrix over admissible_weights(u) order.
SMatrix sl3_adm_smatrix(long u);

// T-matrix phases.
Phase sl3_tmatrix(long u, const AdmissibleWeight& mu);
Phase bp_tmatrix(long u, const AffineWeight& lambda);

enum class GaloisVariant { Standard, Alternative };  // xi -> xi^{3u+2} | xi^{9u+2}

// The Galois symmetry of Q(zeta_{12u}); the value's order must divide into
// a common multiple with 12u (it is lifted as needed).
CycNum galois_apply(const CycNum& x, long u, GaloisVariant variant = GaloisVariant::Standard);

struct GaloisPermutation {
    std::vector<long> pi;   // index permutation of enumerate_P(u)
    std::vector<int> eps;   // signs
};

// The permutation/sign pair with Gal(S_{l,l'}) = eps(l') S_{l,pi(l')},
// computed by alcove reduction of 2*lambda' + rho and verified exactly
// against the defining identity.  Throws on a wall hit or verification
// failure.
GaloisPermutation galois_permutation(long u);

// Label of a fully relaxed class/kernel row.
struct RelaxedLabel {
    Coweight g;
    AffineWeight lambda;
    GammaCoset gamma;
};

// One factor 1 + e^{2 pi i (<h, gamma'> + m j_{lambda'} + c)} of a kernel
// denominator, evaluated against the column label.
struct DenominatorFactor {
    Coweight h;
    long long m = 0;
    Rational c;
};

// Exact/numeric S-kernel value with the denominator factors kept symbolic.
class SKernelValue {
  public:
    SKernelValue() = default;
    SKernelValue(CycNum numerator, std::vector<DenominatorFactor> dens, long u,
                 const RelaxedLabel& col);

    const CycNum& numerator() const { return numerator_; }
    const std::vector<DenominatorFactor>& denominators() const { return dens_; }

    // True if some denominator factor vanishes identically (a pole).
    bool has_pole() const;

    // Exact value numerator / prod(denominators); throws on pole.
    CycNum exact() const;
    std::complex<double> numeric() const;  // NaN-free; throws on pole

  private:
    CycNum numerator_;
    std::vector<DenominatorFactor> dens_;
    long u_ = 3;
    Rational j_col_;       // j_{lambda'} of the column label
    GammaCoset gamma_col_;
};

// Fully relaxed kernel: e^{-2 pi i (<g,g'>u/2 + <gamma,g'> + <g,gamma'>)} S^BP_{l,l'}.
SKernelValue relaxed_skernel(long u, const RelaxedLabel& row, const RelaxedLabel& col);

// Semirelaxed kernel with a Weyl twist w (w = e gives the plain one);
// the row gamma must satisfy <gamma, cw3> = -j_lambda - u/6 mod 1.
SKernelValue semirelaxed_skernel(long u, const Weyl& w, const RelaxedLabel& row,
                                 const RelaxedLabel& col);

enum class HwKernelVariant { Lambda2, Lambda1, Family0, Family1, Vacuum };

// Highest-weight kernels; (g, lambda) select the row module
//   Lambda2: sf_g L(Lambda^2_lambda)        Family0: sf_g L(lambda - u w0/2)
//   Lambda1: sf_g L(Lambda^1_lambda)        Family1: sf_g L(lambda - u w1/2)
//   Vacuum:  the vacuum module (g, lambda ignored).
// Lambda1 rows are a difference of two kernels and are returned as a
// two-term list by hw_skernel_parts; hw_skernel returns the combined value.
std::vector<SKernelValue> hw_skernel_parts(long u, HwKernelVariant variant, const Coweight& g,
                                           const AffineWeight& lambda, const RelaxedLabel& col);

// Combined numeric value (and exact value when defined) of the hw kernel.
class HwKernel {
  public:
    HwKernel(std::vector<SKernelValue> parts) : parts_(std::move(parts)) {}
    const std::vector<SKernelValue>& parts() const { return parts_; }
    bool has_pole() const;
    CycNum exact() const;
    std::complex<double> numeric() const;

  private:
    std::vector<SKernelValue> parts_;
};

HwKernel hw_skernel(long u, HwKernelVariant variant, const Coweight& g,
                    const AffineWeight& lambda, const RelaxedLabel& col);

// Numeric kernels at arbitrary real gamma' (root coordinates), for pole-locus
// scans and partial-sum convergence experiments.
std::complex<double> relaxed_skernel_numeric(long u, const RelaxedLabel& row,
                                             const Coweight& g_col, const AffineWeight& l_col,
                                             double c1, double c2);
std::complex<double> semirelaxed_skernel_numeric(long u, const Weyl& w, const RelaxedLabel& row,
                                                 const Coweight& g_col, const AffineWeight& l_col,
                                                 double c1, double c2);

}  // namespace slmm

#endif  // SLMM_MODULAR_HPP
