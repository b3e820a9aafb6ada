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

#ifndef SLMM_CHARACTERS_HPP
#define SLMM_CHARACTERS_HPP

#include <complex>
#include <string>
#include <vector>

#include "slmm/modular.hpp"
#include "slmm/qseries.hpp"
#include "slmm/weights.hpp"

namespace slmm {

// One numerator term det(w) e^{w.mu} of the Kac-Wakimoto character.
struct AffineOrbitTerm {
    FiniteWeight weight;  // finite part of w.mu
    Rational grade;       // delta-drop below the seed (>= 0, integral here)
    int sign;
};

// Orbit of mu under the shifted action of its integral affine Weyl group,
// collected up to the grade cutoff.  The level is read off the labels.
// Throws on a sign conflict (non-regular seed).
std::vector<AffineOrbitTerm> integral_weyl_orbit(const AffineWeight& mu,
                                                 const Rational& grade_cutoff,
                                                 long n_bound = -1);

Rational sl3_conformal_weight(const AffineWeight& mu);
Rational sl3_central_charge(const Rational& k);

// Kac-Wakimoto character of L(mu) as a 2-variable (z1, z2) q-series;
// coefficients are exact inside the z-exponent window
// [win_lo1, win_hi1] x [win_lo2, win_hi2].
QSeries sl3_adm_character(const AffineWeight& mu, long order, const Rational& win_lo1,
                          const Rational& win_hi1, const Rational& win_lo2,
                          const Rational& win_hi2);

// BP character of B_lambda by the reduction prescription, exact to `order`.
// The q-offset is asserted to be Delta_lambda - c_BP/24 with integer steps.
QSeries qhr_character(long u, const AffineWeight& lambda, long order);

// Same prescription applied to a Verma-type numerator (the single seed
// term).  A Verma module has free zero-mode strings, so its character has
// infinite charge support per grade; the returned series is the character
// multiplied by (1 - z^{-1}), which clears the string factor and leaves
// the eta-product shape
//   z^j / (prod (1-q^n)^2 prod_{n>=1} (1-z q^n) prod_{m>=1} (1-z^{-1} q^m)).
QSeries qhr_character_verma(long u, const AffineWeight& lambda, long order);

// Spectral flow transport of a 2-variable sl(3) character at level k.
QSeries sf_character_transport(const Coweight& g, const QSeries& ch, const Rational& k);

// BP spectral flow transport of a 1-variable character at level k.
QSeries bp_sf_character_transport(long long ell, const QSeries& ch, const Rational& k);

// Free-field character data.
enum class FreeFieldKind { FermionCh, FermionSch, GhostRelaxed, GhostVacuum, LatticeRelaxed };

struct FreeFieldChar {
    FreeFieldKind kind;
    // FermionCh / FermionSch: explicit series in the first variable slot.
    QSeries series;
    // GhostRelaxed / LatticeRelaxed: formal triple (coset exponent,
    // delta marker, 1/eta^2); never expanded.
    Rational coset;
    std::string delta_marker;
    QSeries eta_inv_sq;
    // GhostVacuum: factored description only (the character has poles).
    std::string description;
};

FreeFieldChar free_field_character(FreeFieldKind kind, const Rational& coset, long order);

// Label-level inverse-reduction factorization of sf_g(R^lambda_{mu,nu}).
struct GeneralizedRelaxedChar {
    QSeries bp_factor;        // ch B_{nabla^{<a2,g>}(lambda)}
    long long ghost_flow;     // <a2, g>
    Rational ghost_coset;     // mu
    long long lattice_flow;   // <a3, g>
    Rational lattice_coset;   // nu + <a1, g> u/6
    Rational top_conformal_weight;  // Delta_lambda + k/3
};

GeneralizedRelaxedChar generalized_relaxed_character(long u, const RelaxedLabel& label,
                                                     long order);

// Numeric verification of the BP S-transform in ratio form.
struct SCheckResult {
    double max_rel_error = 0.0;
    double tail_bound = 0.0;
    bool tail_ok = true;
    long required_order = 0;  // estimate when tail_ok is false
    // diagnostic: residual of the absolute comparison after dividing by the
    // automorphy ansatz e^{pi i kappa zeta^2/tau}, kappa = (2k+3)/3
    double automorphy_residual = 0.0;
};

SCheckResult numeric_s_check(long u, std::complex<double> zeta, std::complex<double> tau,
                             long order, double tol);

// Same check over several zeta values with the characters computed once;
// max_rel_error is the max over all zetas and labels, and the automorphy
// residual is the fit deviation of the zeta-independent remainder.
SCheckResult numeric_s_check_multi(long u, const std::vector<std::complex<double>>& zetas,
                                   std::complex<double> tau, long order, double tol);

}  // namespace slmm

#endif  // SLMM_CHARACTERS_HPP
