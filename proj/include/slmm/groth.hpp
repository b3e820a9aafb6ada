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

#ifndef SLMM_GROTH_HPP
#define SLMM_GROTH_HPP

#include <optional>
#include <string>
#include <vector>

#include "slmm/fusion.hpp"
#include "slmm/weights.hpp"

namespace slmm {

// A module class in the Grothendieck ring of weight modules, in canonical
// form.  The vocabulary:
//
//   Relaxed      sf_g (R^lambda_gamma)
//   Semirelaxed  sf_g w(S^lambda_gamma), w in S3, gamma the untwisted
//                argument (must satisfy <gamma,cw3> = -j - u/6 mod 1)
//   HwA          sf_g L(Lambda^2_lambda); all S3/Dynkin twists and the
//                highest-weight families i = 0,1,2 are absorbed into the
//                flow by the spectral-flow dictionary
//   HwB          sf_g w(L(Lambda^1_lambda)), w in {e, s1} after the
//                order-3 twist reduction
//
// Canonicalization implements the module identifications of the
// spectral-flow dictionary; classes compare equal iff their canonical data
// are equal.
class GrothClass {
  public:
    enum class Kind { Relaxed, Semirelaxed, HwA, HwB };

    static GrothClass relaxed(long u, const Coweight& g, const AffineWeight& lambda,
                              const GammaCoset& gamma);
    static GrothClass semirelaxed(long u, const Coweight& g, const Weyl& w,
                                  const AffineWeight& lambda, const GammaCoset& gamma);
    // sf_g w(L(Lambda^2_lambda)); any w in S3 (absorbed).
    static GrothClass hw_lambda2(long u, const Coweight& g, const Weyl& w,
                                 const AffineWeight& lambda);
    // sf_g w(L(Lambda^1_lambda)); any w in S3 (reduced to {e, s1}).
    static GrothClass hw_lambda1(long u, const Coweight& g, const Weyl& w,
                                 const AffineWeight& lambda);
    // sf_g L(admissible family weight built on lambda).
    static GrothClass hw_family(long u, const Coweight& g, AdmFamily f,
                                const AffineWeight& lambda);

    Kind kind() const { return kind_; }
    long u() const { return u_; }
    const Coweight& g() const { return g_; }
    const Weyl& w() const { return w_; }
    const AffineWeight& lambda() const { return lambda_; }
    const GammaCoset& gamma() const { return gamma_; }

    bool operator==(const GrothClass& o) const;
    bool operator<(const GrothClass& o) const;

    std::string to_string() const;

  private:
    GrothClass() = default;
    Kind kind_ = Kind::Relaxed;
    long u_ = 3;
    Coweight g_;
    Weyl w_;
    AffineWeight lambda_;
    GammaCoset gamma_;
};

// Z-linear combination of classes, merged and sorted.
class GrothSum {
  public:
    GrothSum() = default;

    void add(long coeff, const GrothClass& c);
    void add(const GrothSum& o);
    GrothSum operator*(long c) const;

    const std::vector<std::pair<long, GrothClass>>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool all_nonnegative() const;
    bool operator==(const GrothSum& o) const { return terms_ == o.terms_; }

    std::string to_string() const;

  private:
    std::vector<std::pair<long, GrothClass>> terms_;
};

// Functor transports.
GrothClass apply_flow(const Coweight& h, const GrothClass& c);
GrothClass apply_weyl(const Weyl& w, const GrothClass& c);
GrothClass apply_dynkin(const GrothClass& c);
GrothSum apply_flow(const Coweight& h, const GrothSum& s);
GrothSum apply_weyl(const Weyl& w, const GrothSum& s);
GrothSum apply_dynkin(const GrothSum& s);

// Normal form for comparisons: semirelaxed classes at a degenerate gamma
// coset are expanded into their two highest-weight constituents.
GrothSum normalize(const GrothSum& s);

// One lazily expanded identity: head terms plus affine-in-n class streams.
// An alternating stream contributes coeff * sum_n (-1)^n T(n), a plain one
// coeff * sum_n T(n); T(n) = sf_{g0 + n h} w(X^{nabla^n lambda0}_{gamma0 + n c}).
struct ClassStream {
    enum class Kind { Relaxed, Semirelaxed };
    Kind kind;
    long coeff = 1;
    bool alternating = true;
    Coweight g0, h;
    Weyl w;  // Semirelaxed only
    AffineWeight lambda0;
    GammaCoset gamma0;
    FiniteWeight c;

    std::pair<long, GrothClass> term(long u, long n) const;
};

struct Expansion {
    GrothSum finite;
    std::vector<ClassStream> streams;
};

// One-step expansion per the Grothendieck-group identities:
//   relaxed          -> semirelaxed + flowed semirelaxed (needs the
//                       semirelaxed constraint on gamma)
//   semirelaxed at a degenerate gamma -> two twisted hw classes
//   HwB (Lambda^1)   -> w1-semirelaxed minus a flowed HwA class
//   semirelaxed      -> alternating stream of flowed relaxed classes
//   HwA-as-family-0  -> stream of flowed twisted semirelaxed pairs
// Infinite identities come back as streams.
Expansion groth_expand(const GrothClass& c);

// Specific identities (throw if preconditions fail).
GrothSum grids_relaxed_split(const GrothClass& relaxed);      // line 1
GrothSum grids_semi_degenerate(const GrothClass& semi);       // line 2
GrothSum grids_lambda1_split(const GrothClass& hwb);          // line 3
ClassStream grids_semi_stream(const GrothClass& semi);        // line 4
std::vector<ClassStream> grids_family0_streams(const GrothClass& hwa_as_family0,
                                               const Coweight& g);  // line 5

// Grothendieck fusion by the closed-form rules (throws on an unsupported
// label combination).
GrothSum groth_fuse(long u, const GrothClass& a, const GrothClass& b);

// The same products derived from the fully relaxed rule + the expansion
// identities by exact telescoping; throws TelescopeError when collection
// fails.  Used to cross-check every closed form.
GrothSum groth_fuse_derived(long u, const GrothClass& a, const GrothClass& b);

struct TelescopeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- standard Verlinde reduction ----

struct SemiRowSpec {
    Weyl w;
    RelaxedLabel row;
};
struct HwRowSpec {
    HwKernelVariant variant;
    Coweight g;
    AffineWeight lambda;
};
using RowSpec = std::variant<RelaxedLabel, SemiRowSpec, HwRowSpec>;

struct VerlindeReduceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Mechanically reduces the standard Verlinde formula for rows A, B against
// the fully relaxed column basis: inverts the vacuum kernel into an
// eight-term exponential polynomial (coincident couplings merged), cancels
// row denominators against vacuum factors, then applies the Gamma-integral,
// coweight-lattice and P^{u-3} reductions.  Throws VerlindeReduceError on a
// residual phase, a non-integer coefficient, or an unmatched coupling.
GrothSum standard_verlinde_reduce(long u, const RowSpec& a, const RowSpec& b);

// Closed form of the fully relaxed fusion rule (the 7-summand rule).
GrothSum relfus_closed(long u, const GrothClass& a, const GrothClass& b);

// ---- parsing / printing for the CLI ----
std::optional<GrothClass> parse_groth_label(long u, const std::string& s);

}  // namespace slmm

#endif  // SLMM_GROTH_HPP
