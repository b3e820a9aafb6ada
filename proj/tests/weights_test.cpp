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
#include <set>

#include "slmm/weights.hpp"

using namespace slmm;

namespace {

FiniteWeight rnd_weight(std::mt19937& rng) {
    auto r = [&] { return Rational(static_cast<long>(rng() % 19) - 9, 1 + rng() % 4); };
    return {r(), r()};
}

}  // namespace

TEST_CASE("bilinear form") {
    CHECK(bilinear(rho_bar(), rho_bar()) == Rational(2));
    CHECK(bilinear(omega1(), omega1()) == Rational(2, 3));
    CHECK(bilinear(alpha3(), alpha3()) == Rational(2));
    CHECK(bilinear(alpha1(), alpha2()) == Rational(-1));
    // basis conversion round-trips
    std::mt19937 rng(3);
    for (int t = 0; t < 8; ++t) {
        FiniteWeight x = rnd_weight(rng);
        auto c = x.root_coords();
        CHECK(FiniteWeight::from_root_coords(c[0], c[1]) == x);
    }
}

TEST_CASE("Weyl group") {
    CHECK(Weyl(Weyl::S1).act_shifted(FiniteWeight(0, 0)) == FiniteWeight(-2, 1));
    std::mt19937 rng(5);
    FiniteWeight x = rnd_weight(rng);
    CHECK(Weyl(Weyl::S1).act(Weyl(Weyl::S1).act(x)) == x);
    int detsum = 0;
    for (const Weyl& w : Weyl::all()) detsum += w.det();
    CHECK(detsum == 0);

    // shifted action is a group action for all words up to length 4
    for (int t = 0; t < 20; ++t) {
        std::vector<int> word;
        for (int i = 0; i < static_cast<int>(rng() % 5); ++i) word.push_back(1 + rng() % 2);
        size_t cut = word.empty() ? 0 : rng() % word.size();
        std::vector<int> w1(word.begin(), word.begin() + cut), w2(word.begin() + cut, word.end());
        FiniteWeight y = rnd_weight(rng);
        Weyl a = Weyl::from_word(w1), b = Weyl::from_word(w2);
        CHECK((a * b).act_shifted(y) == a.act_shifted(b.act_shifted(y)));
    }

    // bilinear invariance under S3 and the Dynkin swap
    for (int t = 0; t < 6; ++t) {
        FiniteWeight a = rnd_weight(rng), b = rnd_weight(rng);
        for (const Weyl& w : Weyl::all()) CHECK(bilinear(w.act(a), w.act(b)) == bilinear(a, b));
        CHECK(bilinear(a.dynkin(), b.dynkin()) == bilinear(a, b));
    }
}

TEST_CASE("outer automorphisms on labels") {
    AffineWeight l(Rational(2), Rational(0), Rational(0));
    CHECK(l.nabla(1) == AffineWeight(Rational(0), Rational(0), Rational(2)));
    CHECK(l.nabla(3) == l);
    CHECK(AffineWeight(Rational(0), Rational(0), Rational(2)).nabla(-1) == l);
    AffineWeight m(Rational(1), Rational(1), Rational(0));
    CHECK(m.dynkin() == AffineWeight(Rational(1), Rational(0), Rational(1)));
    CHECK(m.dynkin().dynkin() == m);
    // conjugation label map d(nabla(.)): the vacuum of this conformal
    // structure is not self-conjugate; its conjugate carries j = -(2k+3)/3.
    for (long u : {5L, 7L}) {
        AffineWeight vac(Rational(u - 3), Rational(0), Rational(0));
        AffineWeight conj = vac.nabla(1).dynkin();
        CHECK(conj == AffineWeight(Rational(0), Rational(u - 3), Rational(0)));
        CHECK(bp_weight(u, conj).Delta == 0);
        CHECK(bp_weight(u, conj).j == -Rational(u - 3) / 3);
    }
}

TEST_CASE("enumerate_P") {
    auto p3 = enumerate_P(3);
    REQUIRE(p3.size() == 1);
    CHECK(p3[0] == AffineWeight(Rational(0), Rational(0), Rational(0)));

    auto p5 = enumerate_P(5);
    std::vector<AffineWeight> expect = {
        {Rational(2), Rational(0), Rational(0)}, {Rational(1), Rational(0), Rational(1)},
        {Rational(0), Rational(0), Rational(2)}, {Rational(1), Rational(1), Rational(0)},
        {Rational(0), Rational(1), Rational(1)}, {Rational(0), Rational(2), Rational(0)}};
    CHECK(p5 == expect);
    CHECK(enumerate_P(7).size() == 15);
    for (long u : {3L, 5L, 7L, 9L})
        CHECK(static_cast<long>(enumerate_P(u).size()) == (u - 1) * (u - 2) / 2);
}

TEST_CASE("admissible weights") {
    CHECK(admissible_weights(3).size() == 4);
    for (long u : {5L, 7L}) {
        auto adm = admissible_weights(u);
        CHECK(static_cast<long>(adm.size()) == 2 * (u - 1) * (u - 2));
        std::set<std::string> distinct;
        for (const auto& a : adm) distinct.insert(a.weight.to_string());
        CHECK(distinct.size() == adm.size());
        for (const auto& a : adm) {
            bool m0_integral = is_integer(a.weight.l0) && a.weight.l0 >= 0;
            if (a.family == AdmFamily::F1 || a.family == AdmFamily::F2)
                CHECK(m0_integral);
            else
                CHECK(!m0_integral);
            CHECK(a.weight.level() == Rational(u, 2) - 3);
        }
    }
    // family 0 at lambda = (u-3) w0 is the vacuum weight k w0
    long u = 7;
    auto vac = admissible_weight(u, AdmFamily::F0,
                                 AffineWeight(Rational(u - 3), Rational(0), Rational(0)));
    CHECK(vac.weight == AffineWeight(Rational(u, 2) - 3, Rational(0), Rational(0)));
}

TEST_CASE("BP highest-weight data") {
    for (long u : {3L, 5L, 7L}) {
        AffineWeight vac(Rational(u - 3), Rational(0), Rational(0));
        BPWeight w = bp_weight(u, vac);
        CHECK(w.j == 0);
        CHECK(w.Delta == 0);
    }
    BPWeight w = bp_weight(5, AffineWeight(Rational(0), Rational(2), Rational(0)));
    CHECK(w.j == Rational(-2, 3));
    CHECK(w.Delta == Rational(0));
    w = bp_weight(5, AffineWeight(Rational(0), Rational(0), Rational(2)));
    CHECK(w.j == Rational(2, 3));
    CHECK(w.Delta == Rational(2, 3));  // (-2)(-7)/30 + 3*2*1/30
    CHECK_THROWS(bp_weight(5, AffineWeight(Rational(1), Rational(0), Rational(0))));
}

TEST_CASE("spectral flow weight bookkeeping") {
    std::mt19937 rng(9);
    FiniteWeight mu = rnd_weight(rng);
    auto [m0, d0] = spectral_flow_weight(Coweight(0, 0), mu, Rational(1, 3), Rational(1, 2));
    CHECK(m0 == mu);
    CHECK(d0 == Rational(1, 3));

    // Prop. 3.8 label maps through the BP (j, Delta) flow/conjugation data
    for (long u : {5L, 7L}) {
        Rational k = Rational(u, 2) - 3;
        Rational t = (2 * k + 3) / 3;
        for (const auto& lam : enumerate_P(u)) {
            BPWeight b = bp_weight(u, lam);
            // lowest top-space charge (j - lambda2, Delta)
            Rational j0 = b.j - lam.l2, D0 = b.Delta;
            BPWeight sf = bp_weight(u, lam.nabla(1));
            CHECK(j0 + t == sf.j);
            CHECK(D0 + j0 + t == sf.Delta);
            BPWeight cj = bp_weight(u, lam.nabla(1).dynkin());
            CHECK(-j0 - t == cj.j);
            CHECK(D0 == cj.Delta);
        }
    }
}

TEST_CASE("spectral-flow/highest-weight table (Lem. 3.13 bookkeeping)") {
    const long u = 5;
    const Rational k = Rational(u, 2) - 3;
    for (const auto& nu : admissible_weights(u)) {
        SfHwRow row = sf_hw_table(u, nu);
        // expected rows
        switch (nu.family) {
            case AdmFamily::F0:
                CHECK(row.eps == 1);
                CHECK(row.xi.family == AdmFamily::F1);
                CHECK(row.xi.lambda == nu.lambda.nabla(-1));
                break;
            case AdmFamily::F2:
                CHECK(row.eps == -1);
                CHECK(row.xi.family == AdmFamily::W1);
                CHECK(row.xi.lambda == nu.lambda);
                break;
            case AdmFamily::F1:
                CHECK(row.eps == 1);
                CHECK(row.xi.family == AdmFamily::F0);
                CHECK(row.xi.lambda == nu.lambda);
                break;
            case AdmFamily::W1:
                CHECK(row.eps == -1);
                CHECK(row.xi.family == AdmFamily::F2);
                CHECK(row.xi.lambda == nu.lambda.nabla(-1));
                break;
        }
        // cross-validation against the explicit flowed weights of the proof
        FiniteWeight nb = nu.weight.finite();
        auto h = [&](const AffineWeight& w) {
            FiniteWeight f = w.finite();
            return bilinear(f, f + rho_bar() * 2) / (2 * (k + 3));
        };
        FiniteWeight start;
        switch (nu.family) {
            case AdmFamily::F0: start = Weyl(Weyl::S12).act(nb); break;
            case AdmFamily::F2: start = Weyl(Weyl::S1).act(nb) + alpha3(); break;
            case AdmFamily::F1: start = nb + alpha1() + alpha3(); break;
            case AdmFamily::W1: start = Weyl::s3().act(nb + alpha1()); break;
        }
        auto [img, himg] = spectral_flow_weight(Coweight::cw1(), start, h(nu.weight), k);
        CHECK(img == row.xi.weight.finite());
        CHECK(himg == h(row.xi.weight));
    }
}

TEST_CASE("nabla action identity on shifted admissible weights") {
    for (long u : {3L, 5L, 7L}) {
        for (const auto& nu : admissible_weights(u)) {
            AffineWeight nr(nu.weight.l0 + 1, nu.weight.l1 + 1, nu.weight.l2 + 1);
            FiniteWeight lhs = nr.nabla(1).finite();
            FiniteWeight rhs =
                Weyl(Weyl::S21).act(nr.finite()) + omega2() * Rational(u, 2);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("gamma parametrization") {
    const long u = 5;
    std::mt19937 rng(21);
    for (const auto& lam : enumerate_P(u)) {
        Rational j = bp_weight(u, lam).j;
        for (int t = 0; t < 4; ++t) {
            Rational nu(static_cast<long>(rng() % 13) - 6, 1 + rng() % 6);
            GammaCoset g = gamma_of(u, lam, Rational(0), nu);
            Rational c = g.pair(Coweight::cw3()) + j + Rational(u, 6);
            CHECK(is_integer(c));
            // shifting mu or nu by 1 leaves the coset unchanged
            CHECK(gamma_of(u, lam, Rational(1), nu) == gamma_of(u, lam, Rational(0), nu));
            CHECK(gamma_of(u, lam, Rational(0), nu + 1) == g);
        }
    }
}

TEST_CASE("degeneration parameters") {
    for (long u : {5L, 7L}) {
        for (const auto& lam : enumerate_P(u)) {
            DegenerationParams p = degeneration_params(u, lam);
            Rational diff = p.t1 - p.t2;
            CHECK(mod1(diff) == mod1(Rational(u, 2)));
            CHECK(!is_integer(diff));
            // Lambda^2 labels (l1, l2, l0 - u/2)
            CHECK(p.Lambda2 ==
                  AffineWeight(lam.l1, lam.l2, lam.l0 - Rational(u, 2)));
            // both lie in the admissible set, with the expected family tags
            CHECK(p.Lambda1 == admissible_weight(u, AdmFamily::W1, lam).weight);
            CHECK(p.Lambda2 == admissible_weight(u, AdmFamily::F2, lam.nabla(1)).weight);
            // gamma^i = gamma(lambda, 0, t^i)
            CHECK(p.gamma1 == gamma_of(u, lam, Rational(0), p.t1));
            CHECK(p.gamma2 == gamma_of(u, lam, Rational(0), p.t2));
        }
    }
}

TEST_CASE("alcove reduction") {
    const long u = 5;
    AffineWeight inside(Rational(1), Rational(1), Rational(0));
    auto r1 = alcove_reduce(inside.finite(), u);
    REQUIRE(!std::holds_alternative<OnWall>(r1));
    auto [img1, det1] = std::get<std::pair<AffineWeight, int>>(r1);
    CHECK(img1.finite() == inside.finite());
    CHECK(det1 == 1);

    FiniteWeight refl = Weyl(Weyl::S1).act_shifted(inside.finite());
    auto r2 = alcove_reduce(refl, u);
    auto [img2, det2] = std::get<std::pair<AffineWeight, int>>(r2);
    CHECK(img2.finite() == inside.finite());
    CHECK(det2 == -1);

    // wall: <lambda+rho, a1> = u
    FiniteWeight wall(Rational(u - 1), Rational(0));
    CHECK(std::holds_alternative<OnWall>(alcove_reduce(wall, u)));

    // det flips under one extra reflection; reduction is idempotent
    std::mt19937 rng(23);
    for (int t = 0; t < 12; ++t) {
        FiniteWeight x(Rational(static_cast<long>(rng() % 25) - 12),
                       Rational(static_cast<long>(rng() % 25) - 12));
        auto r = alcove_reduce(x, u);
        if (std::holds_alternative<OnWall>(r)) continue;
        auto [img, det] = std::get<std::pair<AffineWeight, int>>(r);
        auto rr = alcove_reduce(img.finite(), u);
        auto [img_b, det_b] = std::get<std::pair<AffineWeight, int>>(rr);
        CHECK(img_b.finite() == img.finite());
        CHECK(det_b == 1);
        auto rs = alcove_reduce(Weyl(Weyl::S2).act_shifted(x), u);
        auto [img_c, det_c] = std::get<std::pair<AffineWeight, int>>(rs);
        CHECK(img_c.finite() == img.finite());
        CHECK(det_c == -det);
    }
}

TEST_CASE("weight literals parse") {
    auto w = AffineWeight::parse("1/2,0,3");
    REQUIRE(w);
    CHECK(w->l0 == Rational(1, 2));
    auto g = GammaCoset::parse("1/3,5/6");
    REQUIRE(g);
    auto c = g->rep().root_coords();
    CHECK(c[0] == Rational(1, 3));
    CHECK(c[1] == Rational(5, 6));
    CHECK(!AffineWeight::parse("1,2"));
}
