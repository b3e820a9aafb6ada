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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "slmm/fusion.hpp"

using namespace slmm;

TEST_CASE("Freudenthal multiplicities") {
    CHECK(freudenthal_multiplicity(omega1(), omega1()) == 1);
    // adjoint: zero weight space has dimension 2 (the rank)
    CHECK(freudenthal_multiplicity(alpha3(), FiniteWeight(0, 0)) == 2);
    CHECK(freudenthal_multiplicity(omega1(), omega2() * Rational(2)) == 0);

    // total dimension matches the Weyl formula
    for (const FiniteWeight& lam :
         {FiniteWeight(2, 1), FiniteWeight(1, 1), FiniteWeight(3, 0), FiniteWeight(0, 2)}) {
        long total = 0;
        long a = static_cast<long>(rat_num(lam.a1)), b = static_cast<long>(rat_num(lam.a2));
        for (long n1 = 0; n1 <= 2 * (a + b) + 2; ++n1)
            for (long n2 = 0; n2 <= 2 * (a + b) + 2; ++n2)
                total += freudenthal_multiplicity(
                    lam, lam - alpha1() * Rational(n1) - alpha2() * Rational(n2));
        CHECK(total == weyl_dimension(lam));
    }
    CHECK(weyl_dimension(FiniteWeight(2, 1)) == 15);
}

TEST_CASE("tensor multiplicities") {
    // 3 (x) 3bar = 1 + 8
    CHECK(tensor_multiplicity(omega1(), omega2(), FiniteWeight(0, 0)) == 1);
    CHECK(tensor_multiplicity(omega1(), omega2(), alpha3()) == 1);
    CHECK(tensor_multiplicity(omega1(), omega2(), omega1() * Rational(2)) == 0);
    // vacuum: delta
    CHECK(tensor_multiplicity(FiniteWeight(0, 0), FiniteWeight(2, 1), FiniteWeight(2, 1)) == 1);
    CHECK(tensor_multiplicity(FiniteWeight(0, 0), FiniteWeight(2, 1), FiniteWeight(1, 1)) == 0);
    // symmetry
    std::mt19937 rng(3);
    for (int t = 0; t < 6; ++t) {
        FiniteWeight a(Rational(rng() % 3), Rational(rng() % 3));
        FiniteWeight b(Rational(rng() % 3), Rational(rng() % 3));
        FiniteWeight c(Rational(rng() % 4), Rational(rng() % 4));
        CHECK(tensor_multiplicity(a, b, c) == tensor_multiplicity(b, a, c));
    }
    // dimension bookkeeping: sum over nu of mult * dim = dim * dim
    {
        FiniteWeight a(1, 1), b(1, 0);
        long total = 0;
        for (long n1 = 0; n1 <= 4; ++n1)
            for (long n2 = 0; n2 <= 4; ++n2) {
                FiniteWeight nu{Rational(n1), Rational(n2)};
                total += tensor_multiplicity(a, b, nu) * weyl_dimension(nu);
            }
        CHECK(total == weyl_dimension(a) * weyl_dimension(b));
    }
}

TEST_CASE("Kac-Walton fusion at u=5") {
    const long u = 5;
    AffineWeight a(Rational(1), Rational(1), Rational(0));
    AffineWeight b(Rational(1), Rational(0), Rational(1));
    CHECK(kac_walton_fusion(u, a, b, AffineWeight(Rational(2), Rational(0), Rational(0))) == 1);
    CHECK(kac_walton_fusion(u, a, b, AffineWeight(Rational(0), Rational(1), Rational(1))) == 1);
    // vacuum row is a delta
    AffineWeight vac(Rational(2), Rational(0), Rational(0));
    for (const auto& m : enumerate_P(u))
        for (const auto& n : enumerate_P(u))
            CHECK(kac_walton_fusion(u, vac, m, n) == (m == n ? 1 : 0));
}

TEST_CASE("Verlinde equals Kac-Walton") {
    for (long u : {3L, 4L, 5L, 6L}) {
        auto v = build_fusion_table(u, FusionMethod::Verlinde);
        auto kw = build_fusion_table(u, FusionMethod::KacWalton);
        CHECK(v.coefficients == kw.coefficients);
    }
}

TEST_CASE("selection rule") {
    const long u = 5;
    auto labels = enumerate_P(u);
    auto v = build_fusion_table(u, FusionMethod::Verlinde);
    for (const auto& a : labels)
        for (const auto& b : labels)
            for (const auto& c : labels)
                if (!in_root_lattice(a.finite() + b.finite() - c.finite()))
                    CHECK(v.value(a, b, c) == 0);
}

TEST_CASE("BP fusion and its symmetries") {
    const long u = 5;
    auto t = build_fusion_table(u, FusionMethod::BP);
    CHECK(t.vacuum_is_unit());
    CHECK(t.is_associative());
    auto labels = enumerate_P(u);
    for (const auto& a : labels)
        for (const auto& b : labels)
            for (const auto& c : labels) {
                long base = t.value(a, b, c);
                for (long n = -1; n <= 1; ++n) {
                    CHECK(t.value(a.nabla(n), b, c) == t.value(a, b.nabla(n), c));
                    CHECK(t.value(a.nabla(n), b, c) == t.value(a, b, c.nabla(-n)));
                }
                CHECK(t.value(a.dynkin(), b.dynkin(), c.dynkin()) == base);
            }
}

TEST_CASE("u=3 trivial model") {
    auto t = build_fusion_table(3, FusionMethod::BP);
    REQUIRE(t.labels.size() == 1);
    CHECK(t.coefficients[0][0][0] == 1);
}
