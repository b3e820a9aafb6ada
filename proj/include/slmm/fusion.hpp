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

#ifndef SLMM_FUSION_HPP
#define SLMM_FUSION_HPP

#include <map>
#include <vector>

#include "slmm/modular.hpp"
#include "slmm/weights.hpp"

namespace slmm {

// Dimension of the mu weight space of the irreducible finite-dimensional
// sl(3)-module of dominant integral highest weight lambda (Freudenthal).
long freudenthal_multiplicity(const FiniteWeight& lambda, const FiniteWeight& mu);

// Weyl dimension formula.
long weyl_dimension(const FiniteWeight& lambda);

// Multiplicity of V(nu) in V(lambda) (x) V(mu), via the Racah/Klimyk sum.
long tensor_multiplicity(const FiniteWeight& lambda, const FiniteWeight& mu,
                         const FiniteWeight& nu);

// Level-(u-3) WZW fusion coefficient by affine alcove folding of the finite
// tensor decomposition.
long kac_walton_fusion(long u, const AffineWeight& lambda, const AffineWeight& mu,
                       const AffineWeight& nu);

// Exact Verlinde sums.  Both assert integrality/nonnegativity and throw
// std::runtime_error on violation; bp_fusion additionally asserts equality
// with the WZW value.
long verlinde_wzw(long u, const AffineWeight& lambda, const AffineWeight& mu,
                  const AffineWeight& nu);
long bp_fusion(long u, const AffineWeight& lambda, const AffineWeight& mu,
               const AffineWeight& nu);

enum class FusionMethod { Verlinde, KacWalton, BP };

// Full table of N_{lambda mu}^nu over P^{u-3}.
struct FusionTable {
    long u = 3;
    std::vector<AffineWeight> labels;
    // coefficients[i][j][k] = N_{labels[i] labels[j]}^{labels[k]}
    std::vector<std::vector<std::vector<long>>> coefficients;

    long value(const AffineWeight& a, const AffineWeight& b, const AffineWeight& c) const;
    bool is_associative() const;
    bool vacuum_is_unit() const;
};

FusionTable build_fusion_table(long u, FusionMethod method);

// Memoized Verlinde table, used by the Grothendieck engine.
const FusionTable& fusion_table_cached(long u);

}  // namespace slmm

#endif  // SLMM_FUSION_HPP
