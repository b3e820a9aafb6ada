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

#ifndef SLMM_WEIGHTS_HPP
#define SLMM_WEIGHTS_HPP

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "slmm/rational.hpp"

namespace slmm {

// sl(3) weight in the fundamental-weight basis: lambda = a1*w1 + a2*w2.
// The bilinear form is normalized so that <alpha_i, alpha_i> = 2,
// <alpha_1, alpha_2> = -1 (i.e. <w_i, w_j> is the inverse Cartan matrix).
struct FiniteWeight {
    Rational a1, a2;

    FiniteWeight() : a1(0), a2(0) {}
    FiniteWeight(Rational x, Rational y) : a1(std::move(x)), a2(std::move(y)) {}

    FiniteWeight operator+(const FiniteWeight& o) const { return {a1 + o.a1, a2 + o.a2}; }
    FiniteWeight operator-(const FiniteWeight& o) const { return {a1 - o.a1, a2 - o.a2}; }
    FiniteWeight operator-() const { return {-a1, -a2}; }
    FiniteWeight operator*(const Rational& c) const { return {a1 * c, a2 * c}; }
    bool operator==(const FiniteWeight& o) const { return a1 == o.a1 && a2 == o.a2; }
    bool operator!=(const FiniteWeight& o) const { return !(*this == o); }
    bool operator<(const FiniteWeight& o) const {
        return a1 != o.a1 ? a1 < o.a1 : a2 < o.a2;
    }

    // Coordinates (c1, c2) with lambda = c1*alpha_1 + c2*alpha_2.
    std::array<Rational, 2> root_coords() const;
    static FiniteWeight from_root_coords(const Rational& c1, const Rational& c2);

    // Dynkin diagram swap a1 <-> a2.
    FiniteWeight dynkin() const { return {a2, a1}; }

    std::string to_string() const;
};

Rational bilinear(const FiniteWeight& x, const FiniteWeight& y);

inline FiniteWeight omega1() { return {1, 0}; }
inline FiniteWeight omega2() { return {0, 1}; }
inline FiniteWeight omega3() { return {1, -1}; }  // w1 - w2
inline FiniteWeight alpha1() { return {2, -1}; }
inline FiniteWeight alpha2() { return {-1, 2}; }
inline FiniteWeight alpha3() { return {1, 1}; }
inline FiniteWeight rho_bar() { return {1, 1}; }

// Is the difference of two weights in the root lattice Q?
bool in_root_lattice(const FiniteWeight& x);

// The Weyl group S3 of sl(3), elements normalized to the six canonical
// words over {s1, s2}.  Composition w*v acts as w after v.
class Weyl {
  public:
    enum Elt { E = 0, S1, S2, S12, S21, S121 };

    Weyl() : e_(E) {}
    Weyl(Elt e) : e_(e) {}

    static Weyl from_word(const std::vector<int>& gens);  // entries 1 or 2
    static const std::array<Weyl, 6>& all();
    static Weyl s3() { return Weyl(S121); }  // reflection in alpha_3

    int det() const;
    Weyl operator*(const Weyl& o) const;
    Weyl inverse() const;
    bool operator==(const Weyl& o) const { return e_ == o.e_; }
    bool operator!=(const Weyl& o) const { return e_ != o.e_; }
    bool operator<(const Weyl& o) const { return e_ < o.e_; }

    FiniteWeight act(const FiniteWeight& x) const;
    // Shifted action w.x = w(x + rho) - rho.
    FiniteWeight act_shifted(const FiniteWeight& x) const;

    Elt elt() const { return e_; }
    std::string name() const;
    static std::optional<Weyl> parse(const std::string& s);

  private:
    Elt e_;
};

// Integer coweight g = g1*cw1 + g2*cw2 in the fundamental-coweight basis.
// Under the bilinear-form identification, cw_i corresponds to w_i.
struct Coweight {
    long long g1 = 0, g2 = 0;

    Coweight() = default;
    Coweight(long long a, long long b) : g1(a), g2(b) {}

    static Coweight cw1() { return {1, 0}; }
    static Coweight cw2() { return {0, 1}; }
    static Coweight cw3() { return {1, -1}; }
    static Coweight acw1() { return {2, -1}; }
    static Coweight acw2() { return {-1, 2}; }
    static Coweight acw3() { return {1, 1}; }

    Coweight operator+(const Coweight& o) const { return {g1 + o.g1, g2 + o.g2}; }
    Coweight operator-(const Coweight& o) const { return {g1 - o.g1, g2 - o.g2}; }
    Coweight operator-() const { return {-g1, -g2}; }
    Coweight operator*(long long c) const { return {g1 * c, g2 * c}; }
    bool operator==(const Coweight& o) const { return g1 == o.g1 && g2 == o.g2; }
    bool operator!=(const Coweight& o) const { return !(*this == o); }
    bool operator<(const Coweight& o) const { return g1 != o.g1 ? g1 < o.g1 : g2 < o.g2; }
    bool is_zero() const { return g1 == 0 && g2 == 0; }

    FiniteWeight as_weight() const { return {Rational(g1), Rational(g2)}; }
    Rational pair(const FiniteWeight& x) const { return bilinear(as_weight(), x); }
    Rational norm2() const { return bilinear(as_weight(), as_weight()); }
    Coweight weyl(const Weyl& w) const;
    Coweight dynkin() const { return {g2, g1}; }
    std::string to_string() const;
};

// Affine sl(3) weight by Dynkin labels (l0, l1, l2); level = l0 + l1 + l2.
// The optional grade is the delta-coefficient relative to an orbit seed.
struct AffineWeight {
    Rational l0, l1, l2;
    Rational grade;

    AffineWeight() : l0(0), l1(0), l2(0), grade(0) {}
    AffineWeight(Rational a, Rational b, Rational c, Rational g = Rational(0))
        : l0(std::move(a)), l1(std::move(b)), l2(std::move(c)), grade(std::move(g)) {}

    Rational level() const { return l0 + l1 + l2; }
    FiniteWeight finite() const { return {l1, l2}; }

    // Dominant integral with the given level sum?
    bool dominant_integral() const;

    AffineWeight nabla(long long n = 1) const;          // (l0,l1,l2) -> (l1,l2,l0)
    AffineWeight dynkin() const { return {l0, l2, l1, grade}; }

    bool operator==(const AffineWeight& o) const {
        return l0 == o.l0 && l1 == o.l1 && l2 == o.l2 && grade == o.grade;
    }
    bool operator!=(const AffineWeight& o) const { return !(*this == o); }
    bool operator<(const AffineWeight& o) const;

    std::string to_string() const;  // "l0,l1,l2"
    static std::optional<AffineWeight> parse(const std::string& s);
};

// All of P^{u-3}: dominant integral labels summing to u-3, in lexicographic
// order on (l1, l2).  Size (u-1)(u-2)/2.
std::vector<AffineWeight> enumerate_P(long u);

// Index of lambda within enumerate_P(u), or -1.
long p_index(long u, const AffineWeight& lambda);

enum class AdmFamily { F0, F1, F2, W1 };

std::string family_name(AdmFamily f);

struct AdmissibleWeight {
    AdmFamily family;
    AffineWeight lambda;  // the P^{u-3} label it is built from
    AffineWeight weight;  // the admissible weight itself
};

// The four families lambda - (u/2) w_i (i = 0,1,2) and s1 . (lambda - (u/2) w1),
// over all lambda in P^{u-3}.  Families are emitted in the order F0, F1, F2, W1,
// each over the enumerate_P order.
std::vector<AdmissibleWeight> admissible_weights(long u);

// Builds the family member for one lambda.
AdmissibleWeight admissible_weight(long u, AdmFamily f, const AffineWeight& lambda);

// Highest-weight data (j, Delta) of the BP irreducible attached to lambda.
struct BPWeight {
    Rational j, Delta;
};

BPWeight bp_weight(long u, const AffineWeight& lambda);
Rational bp_central_charge(long u);

// Spectral flow action on (sl3-weight, conformal weight) at level k:
// (mu, Delta) -> (mu + k<g,.>, Delta + <mu,g> + |g|^2 k/2).
std::pair<FiniteWeight, Rational> spectral_flow_weight(const Coweight& g, const FiniteWeight& mu,
                                                       const Rational& Delta, const Rational& k);

// The (sign, weight) table for ch[sf_{cw1} L(nu)] = eps * ch[L(xi)].
struct SfHwRow {
    int eps;
    AdmissibleWeight xi;
};
SfHwRow sf_hw_table(long u, const AdmissibleWeight& nu);

// Weight-lattice coset modulo the root lattice Q; canonical representative
// has root-basis coordinates in [0,1).
class GammaCoset {
  public:
    GammaCoset() = default;
    explicit GammaCoset(const FiniteWeight& rep);

    const FiniteWeight& rep() const { return rep_; }
    bool operator==(const GammaCoset& o) const { return rep_ == o.rep_; }
    bool operator!=(const GammaCoset& o) const { return !(*this == o); }
    bool operator<(const GammaCoset& o) const { return rep_ < o.rep_; }

    GammaCoset operator+(const GammaCoset& o) const { return GammaCoset(rep_ + o.rep_); }
    GammaCoset operator+(const FiniteWeight& x) const { return GammaCoset(rep_ + x); }
    GammaCoset operator-(const FiniteWeight& x) const { return GammaCoset(rep_ - x); }
    GammaCoset weyl(const Weyl& w) const { return GammaCoset(w.act(rep_)); }
    GammaCoset dynkin() const { return GammaCoset(rep_.dynkin()); }

    // <gamma, g> is well defined mod 1 for a coweight g; returns the value
    // of the canonical representative.
    Rational pair(const Coweight& g) const { return g.pair(rep_); }

    std::string to_string() const;  // root-basis "c1,c2"
    static std::optional<GammaCoset> parse(const std::string& s);

  private:
    FiniteWeight rep_;  // canonicalized
};

// gamma(lambda, mu, nu) = (j_lambda + mu + u/6) alpha2 + (nu - u/6) alpha3 mod Q.
GammaCoset gamma_of(long u, const AffineWeight& lambda, const Rational& mu, const Rational& nu);

// Degeneration data of the semirelaxed family attached to lambda.
struct DegenerationParams {
    Rational t1, t2;
    AffineWeight Lambda1, Lambda2;  // admissible highest weights
    GammaCoset gamma1, gamma2;
};
DegenerationParams degeneration_params(long u, const AffineWeight& lambda);

// Affine-level shifted reflection s_{alpha + n delta} acting on
// x = weight + rho at level k (so x pairs at level k+3): the image is
// x - p*alpha with p = <x, alpha> + n(k+3), and the grade (delta-drop)
// rises by p*n.  The pairing decides integrality: the reflection belongs
// to the integral Weyl group iff it is an integer.
Rational affine_root_pairing(const FiniteWeight& x_shifted, const FiniteWeight& alpha,
                             long long n, const Rational& k_plus_3);
std::pair<FiniteWeight, Rational> affine_reflect(const FiniteWeight& x_shifted,
                                                 const Rational& grade,
                                                 const FiniteWeight& alpha, long long n,
                                                 const Rational& k_plus_3);

// Level-u alcove reduction of the shifted Weyl/translation action.
struct OnWall {};
using AlcoveResult = std::variant<std::pair<AffineWeight, int>, OnWall>;

// Finds the unique w in the level-u affine Weyl group with w.(lambda) in the
// fundamental alcove (labels of lambda+rho in (0,u) with <.,a3> < u); returns
// the image (as a level-(u-3) label) and det(w), or OnWall when lambda+rho
// pairs to a multiple of u against some root.
AlcoveResult alcove_reduce(const FiniteWeight& lambda, long u);

}  // namespace slmm

#endif  // SLMM_WEIGHTS_HPP
