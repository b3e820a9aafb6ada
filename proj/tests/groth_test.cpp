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

#include "slmm/groth.hpp"
#include "slmm/modular.hpp"

using namespace slmm;

namespace {

constexpr long u = 5;

std::mt19937 rng(2026);

AffineWeight rnd_lambda() {
    auto labels = enumerate_P(u);
    return labels[rng() % labels.size()];
}

GammaCoset rnd_gamma() {
    long d1 = 5 + rng() % 7, d2 = 5 + rng() % 7;
    return GammaCoset(FiniteWeight::from_root_coords(Rational(1 + rng() % d1, d1),
                                                     Rational(1 + rng() % d2, d2)));
}

GammaCoset rnd_semi_gamma(const AffineWeight& lam) {
    long d = 5 + rng() % 7;
    return gamma_of(u, lam, Rational(0), Rational(1 + rng() % d, d));
}

Coweight rnd_g() { return Coweight(static_cast<long>(rng() % 5) - 2, static_cast<long>(rng() % 5) - 2); }

}  // namespace

TEST_CASE("hw class canonicalization") {
    // family maps agree with the spectral-flow dictionary
    AffineWeight lam = rnd_lambda();
    GrothClass f0 = GrothClass::hw_family(u, Coweight(0, 0), AdmFamily::F0, lam);
    CHECK(f0.kind() == GrothClass::Kind::HwA);
    CHECK(f0.g() == -Coweight::cw2());
    CHECK(f0.lambda() == lam);
    GrothClass f1 = GrothClass::hw_family(u, Coweight(0, 0), AdmFamily::F1, lam);
    CHECK(f1.g() == Coweight::cw3());
    CHECK(f1.lambda() == lam.nabla(1));
    GrothClass f2 = GrothClass::hw_family(u, Coweight(0, 0), AdmFamily::F2, lam);
    CHECK(f2.g() == Coweight(0, 0));
    CHECK(f2.lambda() == lam.nabla(-1));

    // S3 twists absorb into flows on L(Lambda^2)
    GrothClass base = GrothClass::hw_lambda2(u, Coweight(0, 0), Weyl(), lam);
    CHECK(GrothClass::hw_lambda2(u, Coweight(0, 0), Weyl(Weyl::S1), lam) == base);
    CHECK(GrothClass::hw_lambda2(u, Coweight(0, 0), Weyl(Weyl::S2), lam) ==
          GrothClass::hw_lambda2(u, -Coweight::acw2(), Weyl(), lam));
    CHECK(GrothClass::hw_lambda2(u, Coweight(0, 0), Weyl(Weyl::S12), lam) ==
          GrothClass::hw_lambda2(u, -Coweight::acw3(), Weyl(), lam));

    // the three presentations of the doubled class of the messy rule agree
    GrothClass p1 = GrothClass::hw_lambda1(u, Coweight::cw2(), Weyl(Weyl::S2), lam);
    GrothClass p2 = GrothClass::hw_lambda1(u, Coweight::cw1(), Weyl(Weyl::S1), lam.nabla(1));
    GrothClass p3 = GrothClass::hw_lambda1(u, Coweight::acw3(), Weyl::s3(), lam.nabla(-1));
    CHECK(p1 == p2);
    CHECK(p2 == p3);
}

TEST_CASE("expansion identities") {
    // [R] - [S] - [sf S'] = 0 on the semirelaxed locus
    for (int t = 0; t < 5; ++t) {
        AffineWeight lam = rnd_lambda();
        GrothClass r = GrothClass::relaxed(u, rnd_g(), lam, rnd_semi_gamma(lam));
        GrothSum split = grids_relaxed_split(r);
        REQUIRE(split.terms().size() == 2);
        GrothSum diff = split;
        diff.add(-1, GrothClass::semirelaxed(u, r.g(), Weyl(), lam, r.gamma()));
        diff.add(-1, GrothClass::semirelaxed(u, r.g() + Coweight::cw3(), Weyl(), lam.nabla(1),
                                             GammaCoset(r.gamma().rep() -
                                                        omega3() * Rational(u, 2))));
        CHECK(diff.is_zero());
    }

    // [S at gamma^1] = [w1w2 L(Lambda^1)] + [w1 L(Lambda^2)]
    {
        AffineWeight lam = rnd_lambda();
        DegenerationParams dp = degeneration_params(u, lam);
        GrothClass s = GrothClass::semirelaxed(u, Coweight(0, 0), Weyl(), lam, dp.gamma1);
        GrothSum split = grids_semi_degenerate(s);
        GrothSum expect;
        expect.add(1, GrothClass::hw_lambda1(u, Coweight(0, 0), Weyl(Weyl::S12), lam));
        expect.add(1, GrothClass::hw_lambda2(u, Coweight(0, 0), Weyl(Weyl::S1), lam));
        CHECK(split == expect);
    }

    // a degenerate gamma is required
    {
        AffineWeight lam = rnd_lambda();
        GrothClass s = GrothClass::semirelaxed(u, Coweight(0, 0), Weyl(), lam,
                                               rnd_semi_gamma(lam));
        if (s.gamma() != degeneration_params(u, lam).gamma1 &&
            s.gamma() != degeneration_params(u, lam).gamma2)
            CHECK_THROWS(grids_semi_degenerate(s));
    }

    // the constraint is enforced on grids_relaxed_split
    {
        AffineWeight lam = rnd_lambda();
        GammaCoset bad = rnd_gamma();
        bool violates = !is_integer(bad.pair(Coweight::cw3()) + bp_weight(u, lam).j +
                                    Rational(u, 6));
        if (violates) CHECK_THROWS(grids_relaxed_split(GrothClass::relaxed(u, rnd_g(), lam, bad)));
    }
}

TEST_CASE("lazy stream terms match the coresolution") {
    AffineWeight lam = rnd_lambda();
    GrothClass s = GrothClass::semirelaxed(u, rnd_g(), Weyl(Weyl::S2), lam, rnd_semi_gamma(lam));
    ClassStream st = grids_semi_stream(s);
    for (long n = 0; n <= 30; ++n) {
        auto [c, cls] = st.term(u, n);
        CHECK(std::abs(c) == 1);
        CHECK(c == ((n % 2 == 0) ? 1 : -1));
        CHECK(cls.kind() == GrothClass::Kind::Relaxed);
        CHECK(cls.lambda() == lam.nabla(n));
    }
    Expansion e = groth_expand(s);
    REQUIRE(e.streams.size() == 1);
    CHECK(e.finite.is_zero());
}

TEST_CASE("lazy stream partial sums against the semirelaxed kernel") {
    // re-sum the truncated expansion numerically: the alternating sums of
    // relaxed kernels oscillate around the semirelaxed kernel value
    AffineWeight lam = rnd_lambda();
    GrothClass s = GrothClass::semirelaxed(u, Coweight(0, 0), Weyl(Weyl::S1), lam,
                                           rnd_semi_gamma(lam));
    ClassStream st = grids_semi_stream(s);
    AffineWeight lcol = rnd_lambda();
    Coweight gcol(0, 0);
    double c1 = 0.3171, c2 = 0.8112;  // generic numeric gamma'
    RelaxedLabel row{s.g(), s.lambda(), s.gamma()};
    std::complex<double> target =
        semirelaxed_skernel_numeric(u, s.w(), row, gcol, lcol, c1, c2);
    std::complex<double> sum(0, 0);
    std::vector<double> dev;
    for (long n = 0; n <= 30; ++n) {
        auto [coeff, cls] = st.term(u, n);
        RelaxedLabel rn{cls.g(), cls.lambda(), cls.gamma()};
        sum += static_cast<double>(coeff) *
               relaxed_skernel_numeric(u, rn, gcol, lcol, c1, c2);
        dev.push_back(std::abs(sum - target));
    }
    // bounded oscillation with unit deviation ratio
    for (size_t n = 5; n < dev.size(); ++n) {
        CHECK(dev[n] < 10.0 * dev[4] + 1e-9);
        CHECK(dev[n] > 0.1 * dev[4] - 1e-9);
    }
}

TEST_CASE("standard Verlinde reduction reproduces the relaxed rule") {
    for (int t = 0; t < 4; ++t) {
        RelaxedLabel A{rnd_g(), rnd_lambda(), rnd_gamma()};
        RelaxedLabel B{rnd_g(), rnd_lambda(), rnd_gamma()};
        GrothSum red = standard_verlinde_reduce(u, RowSpec(A), RowSpec(B));
        GrothClass ca = GrothClass::relaxed(u, A.g, A.lambda, A.gamma);
        GrothClass cb = GrothClass::relaxed(u, B.g, B.lambda, B.gamma);
        CHECK(red == relfus_closed(u, ca, cb));
        CHECK(red.all_nonnegative());
    }

    // semirelaxed and vacuum rows against a relaxed column
    {
        AffineWeight lam = rnd_lambda();
        RelaxedLabel srow{rnd_g(), lam, rnd_semi_gamma(lam)};
        RelaxedLabel B{rnd_g(), rnd_lambda(), rnd_gamma()};
        Weyl w = Weyl::all()[rng() % 6];
        GrothSum red = standard_verlinde_reduce(u, RowSpec(SemiRowSpec{w, srow}), RowSpec(B));
        GrothClass cs = GrothClass::semirelaxed(u, srow.g, w, lam, srow.gamma);
        GrothClass cb = GrothClass::relaxed(u, B.g, B.lambda, B.gamma);
        CHECK(red == groth_fuse(u, cs, cb));
    }
    {
        RelaxedLabel B{Coweight(0, 0), rnd_lambda(), rnd_gamma()};
        GrothSum red = standard_verlinde_reduce(
            u,
            RowSpec(HwRowSpec{HwKernelVariant::Vacuum, Coweight(0, 0),
                              AffineWeight(Rational(u - 3), Rational(0), Rational(0))}),
            RowSpec(B));
        GrothSum expect;
        expect.add(1, GrothClass::relaxed(u, B.g, B.lambda, B.gamma));
        CHECK(red == expect);
    }
}

TEST_CASE("derived fusion equals every closed rule") {
    for (int t = 0; t < 3; ++t) {
        AffineWeight la = rnd_lambda(), lb = rnd_lambda();
        Weyl w = Weyl::all()[rng() % 6];
        auto R = GrothClass::relaxed(u, rnd_g(), lb, rnd_gamma());
        auto S = GrothClass::semirelaxed(u, rnd_g(), w, la, rnd_semi_gamma(la));
        auto Se = GrothClass::semirelaxed(u, rnd_g(), Weyl(), la, rnd_semi_gamma(la));
        auto Seb = GrothClass::semirelaxed(u, rnd_g(), Weyl(), lb, rnd_semi_gamma(lb));
        auto Sw1 = GrothClass::semirelaxed(u, rnd_g(), Weyl(Weyl::S1), la, rnd_semi_gamma(la));
        auto Sw1b = GrothClass::semirelaxed(u, rnd_g(), Weyl(Weyl::S1), lb, rnd_semi_gamma(lb));
        auto L0 = GrothClass::hw_family(u, rnd_g(), AdmFamily::F0, la);
        auto L0b = GrothClass::hw_family(u, rnd_g(), AdmFamily::F0, lb);
        auto L1 = GrothClass::hw_lambda1(u, rnd_g(), Weyl(), la);
        auto L1b = GrothClass::hw_lambda1(u, rnd_g(), Weyl(), lb);

        auto same = [&](const GrothClass& A, const GrothClass& B) {
            GrothSum closed = normalize(groth_fuse(u, A, B));
            GrothSum derived = normalize(groth_fuse_derived(u, A, B));
            CHECK(closed == derived);
            CHECK(closed.all_nonnegative());
        };
        same(S, R);
        same(Se, Seb);
        same(Sw1, Seb);
        same(L0, R);
        same(L0, S);
        same(L0, L0b);
        same(L0, L1b);
        same(L1, R);
        same(L1, Seb);
        same(L1, Sw1b);
        same(L1, L1b);
    }
}

TEST_CASE("fusion ring structure on classes") {
    // vacuum class is the unit on every kind
    AffineWeight vaclam(Rational(u - 3), Rational(0), Rational(0));
    GrothClass vac = GrothClass::hw_family(u, Coweight(0, 0), AdmFamily::F0, vaclam);
    AffineWeight lam = rnd_lambda();
    std::vector<GrothClass> others = {
        GrothClass::relaxed(u, rnd_g(), lam, rnd_gamma()),
        GrothClass::semirelaxed(u, rnd_g(), Weyl(Weyl::S21), lam, rnd_semi_gamma(lam)),
        GrothClass::hw_family(u, rnd_g(), AdmFamily::F0, lam),
        GrothClass::hw_lambda1(u, rnd_g(), Weyl(Weyl::S1), lam),
    };
    for (const auto& x : others) {
        GrothSum prod = groth_fuse(u, vac, x);
        GrothSum expect;
        expect.add(1, x);
        CHECK(prod == expect);
    }

    // commutativity
    for (int t = 0; t < 4; ++t) {
        GrothClass a = GrothClass::relaxed(u, rnd_g(), rnd_lambda(), rnd_gamma());
        AffineWeight lb = rnd_lambda();
        GrothClass b = GrothClass::semirelaxed(u, rnd_g(), Weyl(Weyl::S1), lb,
                                               rnd_semi_gamma(lb));
        CHECK(groth_fuse(u, a, b) == groth_fuse(u, b, a));
    }
}

TEST_CASE("equivariances of the fusion coefficients") {
    for (int t = 0; t < 3; ++t) {
        AffineWeight la = rnd_lambda(), lb = rnd_lambda();
        GrothClass A = GrothClass::relaxed(u, rnd_g(), la, rnd_gamma());
        GrothClass B = GrothClass::semirelaxed(u, rnd_g(), Weyl(Weyl::S1), lb,
                                               rnd_semi_gamma(lb));
        GrothSum base = groth_fuse(u, A, B);

        // S3 transport
        for (const Weyl& w : Weyl::all())
            CHECK(groth_fuse(u, apply_weyl(w, A), apply_weyl(w, B)) == apply_weyl(w, base));
        // Dynkin transport
        CHECK(groth_fuse(u, apply_dynkin(A), apply_dynkin(B)) == apply_dynkin(base));
        // spectral-flow additivity
        Coweight h = rnd_g(), hp = rnd_g();
        CHECK(groth_fuse(u, apply_flow(h, A), apply_flow(hp, B)) ==
              apply_flow(h + hp, base));
    }
}

TEST_CASE("relaxed x relaxed shape") {
    // 7 summand families, coefficient 2 on the unflowed term
    AffineWeight la = rnd_lambda(), lb = rnd_lambda();
    GammaCoset ga = rnd_gamma(), gb = rnd_gamma();
    GrothClass A = GrothClass::relaxed(u, Coweight(0, 0), la, ga);
    GrothClass B = GrothClass::relaxed(u, Coweight(0, 0), lb, gb);
    GrothSum out = groth_fuse(u, A, B);
    const FusionTable& t = fusion_table_cached(u);
    long ia = p_index(u, la), ib = p_index(u, lb);
    for (size_t k = 0; k < t.labels.size(); ++k) {
        long n = t.coefficients[ia][ib][k];
        if (n == 0) continue;
        GrothClass unflowed = GrothClass::relaxed(u, Coweight(0, 0), t.labels[k].nabla(-1),
                                                  GammaCoset(ga.rep() + gb.rep()));
        long found = 0;
        for (const auto& [c, cls] : out.terms())
            if (cls == unflowed) found = c;
        CHECK(found == 2 * n);
    }
    // every output gamma lies in [gamma + gamma'] + (u/2) * fundamental offsets
    for (const auto& [c, cls] : out.terms()) {
        FiniteWeight diff = cls.gamma().rep() - ga.rep() - gb.rep();
        FiniteWeight shift = cls.g().as_weight() * Rational(u, 2);
        CHECK(GammaCoset(diff + shift) == GammaCoset(FiniteWeight(0, 0)));
    }
}

TEST_CASE("messy rule doubled term") {
    AffineWeight la = rnd_lambda(), lb = rnd_lambda();
    GrothClass L1 = GrothClass::hw_lambda1(u, Coweight(0, 0), Weyl(), la);
    GrothClass L1b = GrothClass::hw_lambda1(u, Coweight(0, 0), Weyl(), lb);
    GrothSum out = groth_fuse(u, L1, L1b);
    const FusionTable& t = fusion_table_cached(u);
    long ia = p_index(u, la), ib = p_index(u, lb);
    for (size_t k = 0; k < t.labels.size(); ++k) {
        long n = t.coefficients[ia][ib][k];
        if (n == 0) continue;
        GrothClass doubled =
            GrothClass::hw_lambda1(u, Coweight::acw3(), Weyl::s3(), t.labels[k].nabla(-1));
        long found = 0;
        for (const auto& [c, cls] : out.terms())
            if (cls == doubled) found += c;
        CHECK(found >= 2 * n);
    }
}

TEST_CASE("label parsing") {
    auto r = parse_groth_label(u, "R:1,0,1:g=1,0:gamma=1/3,1/6");
    REQUIRE(r);
    CHECK(r->kind() == GrothClass::Kind::Relaxed);
    CHECK(r->g() == Coweight(1, 0));
    auto l0 = parse_groth_label(u, "Lw0:2,0,0");
    REQUIRE(l0);
    CHECK(*l0 == GrothClass::hw_family(u, Coweight(0, 0), AdmFamily::F0,
                                       AffineWeight(Rational(2), Rational(0), Rational(0))));
    CHECK(!parse_groth_label(u, "R:9,9,9:gamma=0,0"));
    CHECK(!parse_groth_label(u, "X:1,0,1"));
    // the semirelaxed constraint is enforced at parse time
    CHECK(!parse_groth_label(u, "S:1,0,1:gamma=1/7,1/11"));
}
