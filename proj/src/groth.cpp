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

#include "slmm/groth.hpp"

#include <algorithm>
#include <sstream>

namespace slmm {

namespace {

Rational bp_j(long u, const AffineWeight& lambda) { return bp_weight(u, lambda).j; }

// d w d as an element of S3 (conjugation by the Dynkin symmetry swaps s1, s2).
Weyl dynkin_conj(const Weyl& w) {
    FiniteWeight probe(Rational(5), Rational(29));
    FiniteWeight img = w.act(probe.dynkin()).dynkin();
    for (const Weyl& v : Weyl::all())
        if (v.act(probe) == img) return v;
    throw std::logic_error("dynkin_conj");
}

// Semirelaxed presentations (w, gamma) and (w*s3, s3(gamma)) label the same
// class; pick the smaller twist.
void canonical_semi_presentation(Weyl& w, GammaCoset& gamma) {
    Weyl alt = w * Weyl::s3();
    if (alt < w) {
        w = alt;
        gamma = gamma.weyl(Weyl::s3());
    }
}

void check_semi_constraint(long u, const AffineWeight& lambda, const GammaCoset& gamma) {
    Rational c = gamma.pair(Coweight::cw3()) + bp_j(u, lambda) + Rational(u, 6);
    if (!is_integer(c))
        throw std::invalid_argument(
            "semirelaxed class: gamma violates <gamma,cw3> = -j - u/6 mod 1");
}

void check_p_label(long u, const AffineWeight& lambda) {
    if (p_index(u, lambda) < 0)
        throw std::invalid_argument("groth class: lambda not in P^{u-3}");
}

}  // namespace

GrothClass GrothClass::relaxed(long u, const Coweight& g, const AffineWeight& lambda,
                               const GammaCoset& gamma) {
    check_p_label(u, lambda);
    GrothClass c;
    c.kind_ = Kind::Relaxed;
    c.u_ = u;
    c.g_ = g;
    c.lambda_ = lambda;
    c.gamma_ = gamma;
    return c;
}

GrothClass GrothClass::semirelaxed(long u, const Coweight& g, const Weyl& w,
                                   const AffineWeight& lambda, const GammaCoset& gamma) {
    check_p_label(u, lambda);
    check_semi_constraint(u, lambda, gamma);
    GrothClass c;
    c.kind_ = Kind::Semirelaxed;
    c.u_ = u;
    c.g_ = g;
    c.w_ = w;
    c.lambda_ = lambda;
    c.gamma_ = gamma;
    canonical_semi_presentation(c.w_, c.gamma_);
    return c;
}

GrothClass GrothClass::hw_lambda2(long u, const Coweight& g, const Weyl& w,
                                  const AffineWeight& lambda) {
    check_p_label(u, lambda);
    GrothClass c;
    c.kind_ = Kind::HwA;
    c.u_ = u;
    c.lambda_ = lambda;
    // Twist absorption: w1 acts trivially on L(Lambda^2), w2 as sf_{-acw2},
    // w1w2 as sf_{-acw3} (and products thereof).
    Coweight shift(0, 0);
    switch (w.elt()) {
        case Weyl::E:
        case Weyl::S1: break;
        case Weyl::S2:
        case Weyl::S21: shift = -Coweight::acw2(); break;
        case Weyl::S12:
        case Weyl::S121: shift = -Coweight::acw3(); break;
    }
    c.g_ = g + shift;
    return c;
}

GrothClass GrothClass::hw_lambda1(long u, const Coweight& g, const Weyl& w,
                                  const AffineWeight& lambda) {
    check_p_label(u, lambda);
    GrothClass c;
    c.kind_ = Kind::HwB;
    c.u_ = u;
    c.g_ = g;
    c.w_ = w;
    c.lambda_ = lambda;
    // Order-3 reduction: sf_g w(L(Lambda^1_l)) = sf_{g + w(cw1)} (w*s1s2)(L(Lambda^1_{nabla^{-1} l})).
    for (int step = 0; step < 2 && c.w_ != Weyl(Weyl::E) && c.w_ != Weyl(Weyl::S1); ++step) {
        c.g_ = c.g_ + Coweight::cw1().weyl(c.w_);
        c.w_ = c.w_ * Weyl(Weyl::S12);
        c.lambda_ = c.lambda_.nabla(-1);
    }
    if (c.w_ != Weyl(Weyl::E) && c.w_ != Weyl(Weyl::S1))
        throw std::logic_error("hw_lambda1: twist reduction failed");
    return c;
}

GrothClass GrothClass::hw_family(long u, const Coweight& g, AdmFamily f,
                                 const AffineWeight& lambda) {
    switch (f) {
        case AdmFamily::F0:
            // L(l - u w0/2) = sf_{-cw2} L(Lambda^2_l)
            return hw_lambda2(u, g - Coweight::cw2(), Weyl(), lambda);
        case AdmFamily::F1:
            // L(l - u w1/2) = sf_{cw3} L(Lambda^2_{nabla(l)})
            return hw_lambda2(u, g + Coweight::cw3(), Weyl(), lambda.nabla(1));
        case AdmFamily::F2:
            // L(l - u w2/2) = L(Lambda^2_{nabla^{-1}(l)})
            return hw_lambda2(u, g, Weyl(), lambda.nabla(-1));
        case AdmFamily::W1:
            return hw_lambda1(u, g, Weyl(), lambda);
    }
    throw std::logic_error("hw_family");
}

bool GrothClass::operator==(const GrothClass& o) const {
    return kind_ == o.kind_ && u_ == o.u_ && g_ == o.g_ && w_ == o.w_ && lambda_ == o.lambda_ &&
           gamma_ == o.gamma_;
}

bool GrothClass::operator<(const GrothClass& o) const {
    if (kind_ != o.kind_) return kind_ < o.kind_;
    if (!(g_ == o.g_)) return g_ < o.g_;
    if (w_ != o.w_) return w_ < o.w_;
    if (!(lambda_ == o.lambda_)) return lambda_ < o.lambda_;
    return gamma_ < o.gamma_;
}

std::string GrothClass::to_string() const {
    std::ostringstream os;
    os << "sf{" << g_.to_string() << "} ";
    switch (kind_) {
        case Kind::Relaxed:
            os << "R{" << lambda_.to_string() << " | " << gamma_.to_string() << "}";
            break;
        case Kind::Semirelaxed:
            if (w_ != Weyl(Weyl::E)) os << w_.name() << "*";
            os << "S{" << lambda_.to_string() << " | " << gamma_.to_string() << "}";
            break;
        case Kind::HwA:
            os << "L2{" << lambda_.to_string() << "}";
            break;
        case Kind::HwB:
            if (w_ != Weyl(Weyl::E)) os << w_.name() << "*";
            os << "L1{" << lambda_.to_string() << "}";
            break;
    }
    return os.str();
}

void GrothSum::add(long coeff, const GrothClass& c) {
    if (coeff == 0) return;
    for (auto it = terms_.begin(); it != terms_.end(); ++it) {
        if (it->second == c) {
            it->first += coeff;
            if (it->first == 0) terms_.erase(it);
            return;
        }
    }
    terms_.emplace_back(coeff, c);
    std::sort(terms_.begin(), terms_.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
}

void GrothSum::add(const GrothSum& o) {
    for (const auto& [c, cls] : o.terms_) add(c, cls);
}

GrothSum GrothSum::operator*(long c) const {
    GrothSum out;
    if (c == 0) return out;
    for (const auto& [k, cls] : terms_) out.add(k * c, cls);
    return out;
}

bool GrothSum::all_nonnegative() const {
    for (const auto& [c, cls] : terms_)
        if (c < 0) return false;
    return true;
}

std::string GrothSum::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [c, cls] : terms_) {
        if (!first) os << " + ";
        if (c != 1) os << c << "*";
        os << cls.to_string();
        first = false;
    }
    return os.str();
}

GrothClass apply_flow(const Coweight& h, const GrothClass& c) {
    switch (c.kind()) {
        case GrothClass::Kind::Relaxed:
            return GrothClass::relaxed(c.u(), c.g() + h, c.lambda(), c.gamma());
        case GrothClass::Kind::Semirelaxed:
            return GrothClass::semirelaxed(c.u(), c.g() + h, c.w(), c.lambda(), c.gamma());
        case GrothClass::Kind::HwA:
            return GrothClass::hw_lambda2(c.u(), c.g() + h, Weyl(), c.lambda());
        case GrothClass::Kind::HwB:
            return GrothClass::hw_lambda1(c.u(), c.g() + h, c.w(), c.lambda());
    }
    throw std::logic_error("apply_flow");
}

GrothClass apply_weyl(const Weyl& w, const GrothClass& c) {
    Coweight g = c.g().weyl(w);
    switch (c.kind()) {
        case GrothClass::Kind::Relaxed:
            return GrothClass::relaxed(c.u(), g, c.lambda(), c.gamma().weyl(w));
        case GrothClass::Kind::Semirelaxed:
            return GrothClass::semirelaxed(c.u(), g, w * c.w(), c.lambda(), c.gamma());
        case GrothClass::Kind::HwA:
            return GrothClass::hw_lambda2(c.u(), g, w, c.lambda());
        case GrothClass::Kind::HwB:
            return GrothClass::hw_lambda1(c.u(), g, w * c.w(), c.lambda());
    }
    throw std::logic_error("apply_weyl");
}

GrothClass apply_dynkin(const GrothClass& c) {
    const long u = c.u();
    Coweight g = c.g().dynkin();
    switch (c.kind()) {
        case GrothClass::Kind::Relaxed:
            // d(R^l_gamma) = R^{d nabla(l)}_{d(gamma)}
            return GrothClass::relaxed(u, g, c.lambda().nabla(1).dynkin(), c.gamma().dynkin());
        case GrothClass::Kind::Semirelaxed: {
            // d(S^l_gamma) = sf_{cw3} S^{d(l)}_{d(gamma) - u w3/2}
            Weyl v = dynkin_conj(c.w());
            Coweight flow = g + Coweight::cw3().weyl(v);
            GammaCoset gamma = c.gamma().dynkin() - omega3() * Rational(u, 2);
            return GrothClass::semirelaxed(u, flow, v, c.lambda().dynkin(), gamma);
        }
        case GrothClass::Kind::HwA:
            // d(L(Lambda^2_l)) = sf_{cw3} L(Lambda^2_{d(l)})
            return GrothClass::hw_lambda2(u, g + Coweight::cw3(), Weyl(), c.lambda().dynkin());
        case GrothClass::Kind::HwB:
            // d(L(Lambda^1_l)) = L(Lambda^1_{d nabla(l)})
            return GrothClass::hw_lambda1(u, g, dynkin_conj(c.w()),
                                          c.lambda().nabla(1).dynkin());
    }
    throw std::logic_error("apply_dynkin");
}

GrothSum apply_flow(const Coweight& h, const GrothSum& s) {
    GrothSum out;
    for (const auto& [c, cls] : s.terms()) out.add(c, apply_flow(h, cls));
    return out;
}
GrothSum apply_weyl(const Weyl& w, const GrothSum& s) {
    GrothSum out;
    for (const auto& [c, cls] : s.terms()) out.add(c, apply_weyl(w, cls));
    return out;
}
GrothSum apply_dynkin(const GrothSum& s) {
    GrothSum out;
    for (const auto& [c, cls] : s.terms()) out.add(c, apply_dynkin(cls));
    return out;
}

// ---- expansion identities ----

GrothSum grids_relaxed_split(const GrothClass& c) {
    if (c.kind() != GrothClass::Kind::Relaxed)
        throw std::invalid_argument("grids_relaxed_split: relaxed class expected");
    const long u = c.u();
    check_semi_constraint(u, c.lambda(), c.gamma());
    GrothSum out;
    out.add(1, GrothClass::semirelaxed(u, c.g(), Weyl(), c.lambda(), c.gamma()));
    out.add(1, GrothClass::semirelaxed(u, c.g() + Coweight::cw3(), Weyl(), c.lambda().nabla(1),
                                       c.gamma() - omega3() * Rational(u, 2)));
    return out;
}

namespace {

// 0 if not degenerate, else 1 or 2.
int degenerate_index(const GrothClass& semi) {
    DegenerationParams dp = degeneration_params(semi.u(), semi.lambda());
    if (semi.gamma() == dp.gamma1) return 1;
    if (semi.gamma() == dp.gamma2) return 2;
    return 0;
}

}  // namespace

GrothSum grids_semi_degenerate(const GrothClass& c) {
    if (c.kind() != GrothClass::Kind::Semirelaxed)
        throw std::invalid_argument("grids_semi_degenerate: semirelaxed class expected");
    int i = degenerate_index(c);
    if (i == 0) throw std::invalid_argument("grids_semi_degenerate: gamma not degenerate");
    const long u = c.u();
    GrothSum out;
    // [w(S^l_{gamma^i})] = [w w1w2 (L(Lambda^i_l))] + [w w1 (L(Lambda^{3-i}_l))]
    Weyl w12 = c.w() * Weyl(Weyl::S12);
    Weyl w1 = c.w() * Weyl(Weyl::S1);
    if (i == 1) {
        out.add(1, GrothClass::hw_lambda1(u, c.g(), w12, c.lambda()));
        out.add(1, GrothClass::hw_lambda2(u, c.g(), w1, c.lambda()));
    } else {
        out.add(1, GrothClass::hw_lambda2(u, c.g(), w12, c.lambda()));
        out.add(1, GrothClass::hw_lambda1(u, c.g(), w1, c.lambda()));
    }
    return out;
}

GrothSum grids_lambda1_split(const GrothClass& c) {
    if (c.kind() != GrothClass::Kind::HwB)
        throw std::invalid_argument("grids_lambda1_split: Lambda^1 class expected");
    const long u = c.u();
    DegenerationParams dp = degeneration_params(u, c.lambda());
    GrothSum out;
    // [L(Lambda^1_l)] = [w1(S^l_{gamma^2_l})] - [sf_{-acw2} L(Lambda^2_l)], transported by (g, w).
    out.add(1, GrothClass::semirelaxed(u, c.g(), c.w() * Weyl(Weyl::S1), c.lambda(), dp.gamma2));
    out.add(-1, GrothClass::hw_lambda2(u, c.g() - Coweight::acw2().weyl(c.w()), c.w(),
                                       c.lambda()));
    return out;
}

std::pair<long, GrothClass> ClassStream::term(long u, long n) const {
    long sgn = coeff;
    if (alternating && (n % 2) != 0) sgn = -sgn;
    Coweight g = g0 + h * n;
    AffineWeight lam = lambda0.nabla(n);
    GammaCoset gamma = GammaCoset(gamma0.rep() + c * Rational(n));
    if (kind == Kind::Relaxed) return {sgn, GrothClass::relaxed(u, g, lam, gamma)};
    return {sgn, GrothClass::semirelaxed(u, g, w, lam, gamma)};
}

ClassStream grids_semi_stream(const GrothClass& c) {
    if (c.kind() != GrothClass::Kind::Semirelaxed)
        throw std::invalid_argument("grids_semi_stream: semirelaxed class expected");
    const long u = c.u();
    ClassStream s;
    s.kind = ClassStream::Kind::Relaxed;
    s.coeff = 1;
    s.alternating = true;
    s.g0 = c.g();
    s.h = Coweight::cw3().weyl(c.w());
    s.lambda0 = c.lambda();
    s.gamma0 = c.gamma().weyl(c.w());
    s.c = -(c.w().act(omega3())) * Rational(u, 2);
    return s;
}

std::vector<ClassStream> grids_family0_streams(const GrothClass& c, const Coweight& g) {
    // c must be L(lambda - u w0 / 2) flowed by g, i.e. HwA with g() = g - cw2.
    if (c.kind() != GrothClass::Kind::HwA || !(c.g() == g - Coweight::cw2()))
        throw std::invalid_argument("grids_family0_streams: family-0 presentation expected");
    const long u = c.u();
    DegenerationParams dp = degeneration_params(u, c.lambda());
    ClassStream a;
    a.kind = ClassStream::Kind::Semirelaxed;
    a.coeff = 1;
    a.alternating = false;
    a.g0 = g - Coweight::cw2();
    a.h = -(Coweight::cw2() * 2);
    a.w = Weyl(Weyl::S1);
    a.lambda0 = c.lambda();
    a.gamma0 = dp.gamma1;
    a.c = omega2() * Rational(u);

    DegenerationParams dp2 = dp;  // gamma^2 of the base lambda
    ClassStream b;
    b.kind = ClassStream::Kind::Semirelaxed;
    b.coeff = -1;
    b.alternating = false;
    b.g0 = g + Coweight::cw3() - Coweight::cw2();
    b.h = -(Coweight::cw2() * 2);
    b.w = Weyl(Weyl::E);
    b.lambda0 = c.lambda().nabla(1);
    b.gamma0 = GammaCoset(dp2.gamma2.rep() + omega2() * Rational(u));
    b.c = omega2() * Rational(u);
    return {a, b};
}

Expansion groth_expand(const GrothClass& c) {
    Expansion e;
    switch (c.kind()) {
        case GrothClass::Kind::Relaxed:
            e.finite = grids_relaxed_split(c);
            return e;
        case GrothClass::Kind::Semirelaxed:
            if (degenerate_index(c) != 0) {
                e.finite = grids_semi_degenerate(c);
            } else {
                e.streams.push_back(grids_semi_stream(c));
            }
            return e;
        case GrothClass::Kind::HwB:
            e.finite = grids_lambda1_split(c);
            return e;
        case GrothClass::Kind::HwA: {
            Coweight g = c.g() + Coweight::cw2();
            e.streams = grids_family0_streams(c, g);
            return e;
        }
    }
    throw std::logic_error("groth_expand");
}

namespace {

bool relaxed_is_reducible(const GrothClass& c) {
    if (c.kind() != GrothClass::Kind::Relaxed) return false;
    Rational t = c.gamma().pair(Coweight::cw3()) + bp_weight(c.u(), c.lambda()).j +
                 Rational(c.u(), 6);
    return is_integer(t);
}

}  // namespace

GrothSum normalize(const GrothSum& s) {
    // Split reducible classes down to their constituents: a relaxed class
    // on the semirelaxed locus splits into two semirelaxed classes, and a
    // semirelaxed class at a degenerate gamma splits into two hw classes.
    GrothSum out;
    bool again = false;
    for (const auto& [coeff, cls] : s.terms()) {
        if (relaxed_is_reducible(cls)) {
            out.add(grids_relaxed_split(cls) * coeff);
            again = true;
        } else if (cls.kind() == GrothClass::Kind::Semirelaxed && degenerate_index(cls) != 0) {
            out.add(grids_semi_degenerate(cls) * coeff);
        } else {
            out.add(coeff, cls);
        }
    }
    return again ? normalize(out) : out;
}

// ---- closed-form fusion rules ----

namespace {

struct UnsupportedFusion : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Relaxed-output term of a closed rule:
// mult * [sf_{flow + gsh} R^{nabla^{nab}(l'')}_{[gsum + goff]}].
struct RelTermSpec {
    long mult;
    Coweight gsh;
    long nab;
    FiniteWeight goff;
};

std::vector<RelTermSpec> relfus_terms(long u) {
    const Rational h(u, 2);
    return {
        {2, Coweight(0, 0), -1, FiniteWeight(0, 0)},
        {1, -Coweight::cw1(), 0, omega1() * h},
        {1, -Coweight::cw2(), 1, omega2() * h},
        {1, -Coweight::cw3(), 1, omega3() * h},
        {1, Coweight::cw1(), 1, omega1() * -h},
        {1, Coweight::cw2(), 0, omega2() * -h},
        {1, Coweight::cw3(), 0, omega3() * -h},
    };
}

// S_w x R -> four relaxed terms (gsum = w(gamma_S) + gamma_R).
std::vector<RelTermSpec> rule1_terms(long u, const Weyl& w) {
    const Rational h(u, 2);
    return {
        {1, Coweight(0, 0), -1, FiniteWeight(0, 0)},
        {1, -Coweight::cw1().weyl(w), 0, w.act(omega1()) * h},
        {1, Coweight::cw2().weyl(w), 0, w.act(omega2()) * -h},
        {1, -Coweight::cw3().weyl(w), 1, w.act(omega3()) * h},
    };
}

const FusionTable& ftab(long u) { return fusion_table_cached(u); }

void emit_rel_terms(GrothSum& out, long u, const std::vector<RelTermSpec>& specs,
                    const Coweight& flow, const AffineWeight& la, const AffineWeight& lb,
                    const FiniteWeight& gsum) {
    const FusionTable& t = ftab(u);
    long ia = p_index(u, la), ib = p_index(u, lb);
    for (size_t k = 0; k < t.labels.size(); ++k) {
        long n = t.coefficients[ia][ib][k];
        if (n == 0) continue;
        for (const auto& sp : specs)
            out.add(sp.mult * n,
                    GrothClass::relaxed(u, flow + sp.gsh, t.labels[k].nabla(sp.nab),
                                        GammaCoset(gsum + sp.goff)));
    }
}

GrothSum fuse_relaxed_relaxed(long u, const GrothClass& a, const GrothClass& b) {
    GrothSum out;
    emit_rel_terms(out, u, relfus_terms(u), a.g() + b.g(), a.lambda(), b.lambda(),
                   a.gamma().rep() + b.gamma().rep());
    return out;
}

GrothSum fuse_semi_relaxed(long u, const GrothClass& s, const GrothClass& r) {
    GrothSum out;
    emit_rel_terms(out, u, rule1_terms(u, s.w()), s.g() + r.g(), s.lambda(), r.lambda(),
                   s.w().act(s.gamma().rep()) + r.gamma().rep());
    return out;
}

// S_e x S_e and (w1 S) x S_e, both unflowed.
GrothSum fuse_semi_semi_core(long u, const GrothClass& a, const GrothClass& b) {
    const FusionTable& t = ftab(u);
    const Rational h(u, 2);
    long ia = p_index(u, a.lambda()), ib = p_index(u, b.lambda());
    FiniteWeight gsum = a.w().act(a.gamma().rep()) + b.gamma().rep();
    GrothSum out;
    for (size_t k = 0; k < t.labels.size(); ++k) {
        long n = t.coefficients[ia][ib][k];
        if (n == 0) continue;
        const AffineWeight& lpp = t.labels[k];
        if (a.w() == Weyl(Weyl::E)) {
            out.add(n, GrothClass::semirelaxed(u, -Coweight::cw1(), Weyl(), lpp,
                                               GammaCoset(gsum + omega1() * h)));
            out.add(n, GrothClass::semirelaxed(u, Coweight::cw2(), Weyl(), lpp,
                                               GammaCoset(gsum - omega2() * h)));
            out.add(n, GrothClass::relaxed(u, -Coweight::cw3(), lpp.nabla(1),
                                           GammaCoset(gsum + omega3() * h)));
        } else {
            out.add(n, GrothClass::relaxed(u, Coweight(0, 0), lpp.nabla(-1), GammaCoset(gsum)));
            out.add(n, GrothClass::relaxed(u, Coweight::cw2(), lpp,
                                           GammaCoset(gsum - omega2() * h)));
        }
    }
    return out;
}

GrothSum fuse_semi_semi(long u, const GrothClass& a, const GrothClass& b);

// Try every joint S3 transport until the twist pattern is supported; valid
// because fusion is S3-equivariant.  Transporting a class can shift its
// canonical flow (the Lambda^1 twist reduction does), so flows are
// re-extracted after the transport: the cores assume unflowed rows.
template <typename Fn>
GrothSum fuse_with_transports(long u, const GrothClass& a, const GrothClass& b, Fn&& core) {
    Coweight flow = a.g() + b.g();
    GrothClass a0 = apply_flow(-a.g(), a), b0 = apply_flow(-b.g(), b);
    for (const Weyl& v : Weyl::all()) {
        GrothClass a1 = apply_weyl(v, a0), b1 = apply_weyl(v, b0);
        Coweight extra = a1.g() + b1.g();
        GrothClass a2 = apply_flow(-a1.g(), a1), b2 = apply_flow(-b1.g(), b1);
        try {
            GrothSum out = apply_flow(extra, core(a2, b2));
            return apply_flow(flow, apply_weyl(v.inverse(), out));
        } catch (const UnsupportedFusion&) {
            continue;
        }
    }
    throw UnsupportedFusion("groth_fuse: unsupported twist combination");
}

GrothSum fuse_semi_semi(long u, const GrothClass& a, const GrothClass& b) {
    return fuse_with_transports(u, a, b, [&](const GrothClass& a1, const GrothClass& b1) {
        if (!(b1.w() == Weyl(Weyl::E)))
            throw UnsupportedFusion("groth_fuse: semirelaxed column twist");
        if (a1.w() != Weyl(Weyl::E) && a1.w() != Weyl(Weyl::S1))
            throw UnsupportedFusion("groth_fuse: semirelaxed row twist");
        return fuse_semi_semi_core(u, a1, b1);
    });
}

// L(l - u w0/2) presentation of an HwA class: class == sf_g L0_lambda.
std::pair<Coweight, AffineWeight> family0_presentation(const GrothClass& a) {
    return {a.g() + Coweight::cw2(), a.lambda()};
}

GrothSum fuse_hwa_relaxed(long u, const GrothClass& a, const GrothClass& r) {
    auto [g, lam] = family0_presentation(a);
    const FusionTable& t = ftab(u);
    long ia = p_index(u, lam), ib = p_index(u, r.lambda());
    FiniteWeight gsum = omega2() * (Rational(3) * bp_j(u, lam)) + r.gamma().rep();
    GrothSum out;
    for (size_t k = 0; k < t.labels.size(); ++k) {
        long n = t.coefficients[ia][ib][k];
        if (n == 0) continue;
        out.add(n, GrothClass::relaxed(u, g + r.g(), t.labels[k], GammaCoset(gsum)));
    }
    return out;
}

GrothSum fuse_hwa_semi(long u, const GrothClass& a, const GrothClass& s) {
    auto [g, lam] = family0_presentation(a);
    const FusionTable& t = ftab(u);
    long ia = p_index(u, lam), ib = p_index(u, s.lambda());
    FiniteWeight gsum = omega2() * (Rational(3) * bp_j(u, lam)) + s.gamma().rep();
    GrothSum out;
    for (size_t k = 0; k < t.labels.size(); ++k) {
        long n = t.coefficients[ia][ib][k];
        if (n == 0) continue;
        out.add(n, GrothClass::semirelaxed(u, g + s.g(), s.w(), t.labels[k], GammaCoset(gsum)));
    }
    return out;
}

GrothSum fuse_hwa_hwa(long u, const GrothClass& a, const GrothClass& b) {
    auto [ga, la] = family0_presentation(a);
    auto [gb, lb] = family0_presentation(b);
    const FusionTable& t = ftab(u);
    long ia = p_index(u, la), ib = p_index(u, lb);
    GrothSum out;
    for (size_t k = 0; k < t.labels.size(); ++k) {
        long n = t.coefficients[ia][ib][k];
        if (n == 0) continue;
        out.add(n, GrothClass::hw_family(u, ga + gb, AdmFamily::F0, t.labels[k]));
    }
    return out;
}

GrothSum fuse_hwa_hwb(long u, const GrothClass& a, const GrothClass& b) {
    // L0 x L(Lambda^1) = sum N [L(Lambda^1)]; L0 is w1-invariant, so a w1
    // twist on the Lambda^1 factor passes straight through.
    auto [ga, la] = family0_presentation(a);
    const FusionTable& t = ftab(u);
    long ia = p_index(u, la), ib = p_index(u, b.lambda());
    GrothSum out;
    for (size_t k = 0; k < t.labels.size(); ++k) {
        long n = t.coefficients[ia][ib][k];
        if (n == 0) continue;
        out.add(n, GrothClass::hw_lambda1(u, ga + b.g(), b.w(), t.labels[k]));
    }
    return out;
}

// Rules with the Lambda^1 factor untwisted and unflowed.
GrothSum fuse_hwb_relaxed_core(long u, const GrothClass& b1, const GrothClass& r) {
    const FusionTable& t = ftab(u);
    const Rational h(u, 2);
    long ia = p_index(u, b1.lambda()), ib = p_index(u, r.lambda());
    FiniteWeight base = omega2() * (Rational(3) * bp_j(u, b1.lambda())) + r.gamma().rep();
    GrothSum out;
    for (size_t k = 0; k < t.labels.size(); ++k) {
        long n = t.coefficients[ia][ib][k];
        if (n == 0) continue;
        const AffineWeight& lpp = t.labels[k];
        out.add(n, GrothClass::relaxed(u, r.g(), lpp.nabla(-1), GammaCoset(base + omega3() * h)));
        out.add(n, GrothClass::relaxed(u, r.g() + Coweight::cw1(), lpp.nabla(1),
                                       GammaCoset(base - omega2() * h)));
        out.add(n, GrothClass::relaxed(u, r.g() + Coweight::cw2(), lpp,
                                       GammaCoset(base - alpha2() * h)));
    }
    return out;
}

GrothSum fuse_hwb_semi_core(long u, const GrothClass& b1, const GrothClass& s) {
    const FusionTable& t = ftab(u);
    const Rational h(u, 2);
    long ia = p_index(u, b1.lambda()), ib = p_index(u, s.lambda());
    Rational threej = Rational(3) * bp_j(u, b1.lambda());
    GrothSum out;
    for (size_t k = 0; k < t.labels.size(); ++k) {
        long n = t.coefficients[ia][ib][k];
        if (n == 0) continue;
        const AffineWeight& lpp = t.labels[k];
        if (s.w() == Weyl(Weyl::E)) {
            FiniteWeight base = omega2() * threej + s.gamma().rep();
            out.add(n, GrothClass::semirelaxed(u, s.g(), Weyl(), lpp.nabla(-1),
                                               GammaCoset(base + omega3() * h)));
            out.add(n, GrothClass::relaxed(u, s.g() + Coweight::cw2(), lpp,
                                           GammaCoset(base - alpha2() * h)));
        } else if (s.w() == Weyl(Weyl::S1)) {
            FiniteWeight tw = omega2() * threej + Weyl(Weyl::S1).act(s.gamma().rep());
            FiniteWeight untw = omega2() * threej + s.gamma().rep();
            out.add(n, GrothClass::relaxed(u, s.g() + Coweight::cw1(), lpp.nabla(1),
                                           GammaCoset(tw - omega2() * h)));
            out.add(n, GrothClass::semirelaxed(u, s.g() + Coweight::cw2(), Weyl(Weyl::S1), lpp,
                                               GammaCoset(untw - alpha3() * h)));
        } else {
            throw UnsupportedFusion(
                "groth_fuse: unsupported semirelaxed twist with a Lambda^1 factor");
        }
    }
    return out;
}

GrothSum fuse_hwb_hwb_core(long u, const GrothClass& a, const GrothClass& b) {
    const FusionTable& t = ftab(u);
    long ia = p_index(u, a.lambda()), ib = p_index(u, b.lambda());
    GrothSum out;
    for (size_t k = 0; k < t.labels.size(); ++k) {
        long n = t.coefficients[ia][ib][k];
        if (n == 0) continue;
        const AffineWeight& lpp = t.labels[k];
        out.add(n, GrothClass::hw_family(u, Coweight(0, 0), AdmFamily::F0, lpp.nabla(1)));
        out.add(n, GrothClass::hw_family(u, Coweight::cw1() * 2, AdmFamily::F0, lpp.nabla(-1)));
        out.add(n, GrothClass::hw_family(u, Coweight::cw2() * 2, AdmFamily::F0, lpp));
        // 2 [sf_{acw3} conj(L(Lambda^1_{d(l'')}))], already in canonical form:
        out.add(2 * n, GrothClass::hw_lambda1(u, Coweight::acw3(), Weyl::s3(), lpp.nabla(-1)));
    }
    return out;
}

GrothSum fuse_hwb_any(long u, const GrothClass& b, const GrothClass& other) {
    return fuse_with_transports(u, b, other, [&](const GrothClass& b1, const GrothClass& o1) {
        if (!(b1.w() == Weyl(Weyl::E)))
            throw UnsupportedFusion("groth_fuse: twisted Lambda^1 factor");
        switch (o1.kind()) {
            case GrothClass::Kind::Relaxed: return fuse_hwb_relaxed_core(u, b1, o1);
            case GrothClass::Kind::Semirelaxed: return fuse_hwb_semi_core(u, b1, o1);
            case GrothClass::Kind::HwB:
                if (!(o1.w() == Weyl(Weyl::E)))
                    throw UnsupportedFusion("groth_fuse: twisted Lambda^1 pair");
                return fuse_hwb_hwb_core(u, b1, o1);
            default: throw std::logic_error("fuse_hwb_any");
        }
    });
}

int kind_rank(GrothClass::Kind k) {
    switch (k) {
        case GrothClass::Kind::Relaxed: return 0;
        case GrothClass::Kind::Semirelaxed: return 1;
        case GrothClass::Kind::HwA: return 2;
        case GrothClass::Kind::HwB: return 3;
    }
    return -1;
}

}  // namespace

GrothSum relfus_closed(long u, const GrothClass& a, const GrothClass& b) {
    if (a.kind() != GrothClass::Kind::Relaxed || b.kind() != GrothClass::Kind::Relaxed)
        throw std::invalid_argument("relfus_closed: relaxed classes expected");
    return fuse_relaxed_relaxed(u, a, b);
}

GrothSum groth_fuse(long u, const GrothClass& a_in, const GrothClass& b_in) {
    const GrothClass* a = &a_in;
    const GrothClass* b = &b_in;
    if (kind_rank(a->kind()) < kind_rank(b->kind())) std::swap(a, b);
    switch (a->kind()) {
        case GrothClass::Kind::Relaxed:
            return fuse_relaxed_relaxed(u, *a, *b);
        case GrothClass::Kind::Semirelaxed:
            if (b->kind() == GrothClass::Kind::Relaxed) return fuse_semi_relaxed(u, *a, *b);
            return fuse_semi_semi(u, *a, *b);
        case GrothClass::Kind::HwA:
            switch (b->kind()) {
                case GrothClass::Kind::Relaxed: return fuse_hwa_relaxed(u, *a, *b);
                case GrothClass::Kind::Semirelaxed: return fuse_hwa_semi(u, *a, *b);
                case GrothClass::Kind::HwA: return fuse_hwa_hwa(u, *a, *b);
                default: break;
            }
            break;
        case GrothClass::Kind::HwB:
            if (b->kind() == GrothClass::Kind::HwA) return fuse_hwa_hwb(u, *b, *a);
            return fuse_hwb_any(u, *a, *b);
    }
    throw std::invalid_argument("groth_fuse: unsupported label combination");
}

}  // namespace slmm

namespace slmm {

// ---- exact telescoping collector ----

namespace {

void canonicalize_stream(ClassStream& s) {
    if (s.kind != ClassStream::Kind::Semirelaxed) return;
    Weyl alt = s.w * Weyl::s3();
    if (alt < s.w) {
        s.w = alt;
        s.gamma0 = s.gamma0.weyl(Weyl::s3());
        s.c = Weyl::s3().act(s.c);
    }
}

bool same_increments(const ClassStream& a, const ClassStream& b) {
    return a.kind == b.kind && a.alternating == b.alternating && a.h == b.h &&
           (a.kind != ClassStream::Kind::Semirelaxed || a.w == b.w) &&
           GammaCoset(a.c) == GammaCoset(b.c);
}

// Shift distance d with T_b(n) = T_a(n + d); streams must share increments
// and have a nonzero flow step h.
std::optional<long> shift_distance(const ClassStream& a, const ClassStream& b) {
    if (!same_increments(a, b)) return std::nullopt;
    const Coweight& h = a.h;
    if (h.is_zero()) {
        if (a.g0 == b.g0 && a.lambda0 == b.lambda0 && a.gamma0 == b.gamma0) return 0;
        return std::nullopt;
    }
    Coweight diff = b.g0 - a.g0;
    long d;
    if (h.g1 != 0) {
        if (diff.g1 % h.g1 != 0) return std::nullopt;
        d = diff.g1 / h.g1;
    } else {
        if (diff.g2 % h.g2 != 0) return std::nullopt;
        d = diff.g2 / h.g2;
    }
    if (!(a.g0 + h * d == b.g0)) return std::nullopt;
    if (!(b.lambda0 == a.lambda0.nabla(d))) return std::nullopt;
    if (!(b.gamma0 == GammaCoset(a.gamma0.rep() + a.c * Rational(d)))) return std::nullopt;
    return d;
}

struct Collector {
    long u;
    GrothSum finite;
    std::vector<ClassStream> streams;

    explicit Collector(long uu) : u(uu) {}

    void add_finite(long c, const GrothClass& cls) { finite.add(c, cls); }
    void add_stream(ClassStream s) {
        if (s.coeff == 0) return;
        canonicalize_stream(s);
        streams.push_back(std::move(s));
    }

    // Group streams into shift-families and reduce each family exactly:
    //   sum_k c_k sum_{n>=0} (+-1)^n T(n + d_k)
    // collapses to (net coefficient) * stream(base) plus head terms.
    void reduce() {
        std::vector<ClassStream> out;
        std::vector<bool> used(streams.size(), false);
        for (size_t i = 0; i < streams.size(); ++i) {
            if (used[i]) continue;
            std::vector<std::pair<long, const ClassStream*>> family;  // (offset, stream)
            family.emplace_back(0, &streams[i]);
            used[i] = true;
            for (size_t j = i + 1; j < streams.size(); ++j) {
                if (used[j]) continue;
                auto d = shift_distance(streams[i], streams[j]);
                if (d) {
                    family.emplace_back(*d, &streams[j]);
                    used[j] = true;
                }
            }
            long dmin = 0;
            for (const auto& [d, s] : family) dmin = std::min(dmin, d);
            const ClassStream& rep = *family[0].second;
            ClassStream base = rep;
            base.coeff = 1;  // unit template; member coefficients applied below
            base.g0 = rep.g0 + rep.h * dmin;
            base.lambda0 = rep.lambda0.nabla(dmin);
            base.gamma0 = GammaCoset(rep.gamma0.rep() + rep.c * Rational(dmin));
            long net = 0;
            for (const auto& [d, s] : family) {
                long off = d - dmin;  // >= 0
                long sign = (base.alternating && off % 2 != 0) ? -1 : 1;
                net += sign * s->coeff;
                // heads: stream from offset `off` misses base terms m < off
                for (long m = 0; m < off; ++m) {
                    auto [c0, cls] = base.term(u, m);  // c0 = (+-1)^m
                    add_finite(-sign * s->coeff * c0, cls);
                }
            }
            if (net != 0) {
                base.coeff = net;
                out.push_back(base);
            }
        }
        streams = std::move(out);
    }

    bool resum_relaxed(const ClassStream& s) {
        if (!s.alternating) return false;
        const Rational h(u, 2);
        for (const Weyl& w : Weyl::all()) {
            if (!(s.h == Coweight::cw3().weyl(w))) continue;
            if (!(GammaCoset(s.c) == GammaCoset(w.act(omega3()) * -h))) continue;
            GammaCoset gamma = s.gamma0.weyl(w.inverse());
            add_finite(s.coeff, GrothClass::semirelaxed(u, s.g0, w, s.lambda0, gamma));
            return true;
        }
        return false;
    }

    // Expected stream pair of sf_G v(L0_lambda), for matching leftovers.
    std::pair<ClassStream, ClassStream> family0_pattern(const Coweight& G, const Weyl& v,
                                                        const AffineWeight& lambda) const {
        DegenerationParams dp = degeneration_params(u, lambda);
        ClassStream a;
        a.kind = ClassStream::Kind::Semirelaxed;
        a.coeff = 1;
        a.alternating = false;
        a.g0 = G - Coweight::cw2().weyl(v);
        a.h = -(Coweight::cw2().weyl(v) * 2);
        a.w = v * Weyl(Weyl::S1);
        a.lambda0 = lambda;
        a.gamma0 = dp.gamma1;
        a.c = omega2() * Rational(u);
        ClassStream b;
        b.kind = ClassStream::Kind::Semirelaxed;
        b.coeff = -1;
        b.alternating = false;
        b.g0 = G + Coweight::cw3().weyl(v) - Coweight::cw2().weyl(v);
        b.h = a.h;
        b.w = v;
        b.lambda0 = lambda.nabla(1);
        b.gamma0 = GammaCoset(dp.gamma2.rep() + omega2() * Rational(u));
        b.c = omega2() * Rational(u);
        canonicalize_stream(a);
        canonicalize_stream(b);
        return {a, b};
    }

    static bool same_stream(const ClassStream& a, const ClassStream& b) {
        return a.kind == b.kind && a.alternating == b.alternating && a.g0 == b.g0 &&
               a.h == b.h && a.w == b.w && a.lambda0 == b.lambda0 && a.gamma0 == b.gamma0 &&
               GammaCoset(a.c) == GammaCoset(b.c);
    }

    void resum() {
        // Alternating relaxed leftovers resum into semirelaxed classes.
        std::vector<ClassStream> left;
        for (ClassStream& s : streams)
            if (!(s.kind == ClassStream::Kind::Relaxed && resum_relaxed(s))) left.push_back(s);
        streams = std::move(left);
        // Paired semirelaxed leftovers resum into family-0 classes.
        bool progress = true;
        while (progress && streams.size() >= 2) {
            progress = false;
            for (size_t i = 0; i < streams.size() && !progress; ++i) {
                for (size_t j = 0; j < streams.size() && !progress; ++j) {
                    if (i == j) continue;
                    const ClassStream& sa = streams[i];
                    const ClassStream& sb = streams[j];
                    if (sa.kind != ClassStream::Kind::Semirelaxed || sa.alternating) continue;
                    if (sb.kind != ClassStream::Kind::Semirelaxed || sb.alternating) continue;
                    if (sa.coeff != -sb.coeff) continue;
                    for (const Weyl& v : Weyl::all()) {
                        if (!(sa.h == -(Coweight::cw2().weyl(v) * 2))) continue;
                        Coweight G = sa.g0 + Coweight::cw2().weyl(v);
                        auto [ea, eb] = family0_pattern(G, v, sa.lambda0);
                        ea.coeff = sa.coeff;
                        eb.coeff = -sa.coeff;
                        if (same_stream(ea, sa) && same_stream(eb, sb)) {
                            add_finite(sa.coeff,
                                       GrothClass::hw_lambda2(u, G - Coweight::cw2().weyl(v), v,
                                                              sa.lambda0));
                            streams.erase(streams.begin() + std::max(i, j));
                            streams.erase(streams.begin() + std::min(i, j));
                            progress = true;
                            break;
                        }
                    }
                }
            }
        }
        if (!streams.empty())
            throw TelescopeError("telescoping failed: " + std::to_string(streams.size()) +
                                 " uncollected stream(s) remain");
    }

    GrothSum collect() {
        reduce();
        resum();
        return finite;
    }
};

// nabla offset b in {0,1,2} with nabla^b(ref) == lam.
long nabla_offset(const AffineWeight& ref, const AffineWeight& lam) {
    for (long b = 0; b < 3; ++b)
        if (ref.nabla(b).l0 == lam.l0 && ref.nabla(b).l1 == lam.l1 && ref.nabla(b).l2 == lam.l2)
            return b;
    throw std::logic_error("nabla_offset: labels not nabla-related");
}

// Fuse a relaxed-template stream with a fixed relaxed class by the fully
// relaxed rule; the BP sum is re-indexed onto the reference label lambda_ref
// (template lambda(n) = nabla^{n+b}(lambda_ref)).
void fuse_relstream_relaxed(Collector& col, long u, const ClassStream& st,
                            const AffineWeight& lambda_ref, const GrothClass& r) {
    const FusionTable& t = ftab(u);
    long b = nabla_offset(lambda_ref, st.lambda0);
    long ia = p_index(u, lambda_ref), ib = p_index(u, r.lambda());
    auto specs = relfus_terms(u);
    for (size_t k = 0; k < t.labels.size(); ++k) {
        long n = t.coefficients[ia][ib][k];
        if (n == 0) continue;
        for (const auto& sp : specs) {
            ClassStream out;
            out.kind = ClassStream::Kind::Relaxed;
            out.coeff = st.coeff * sp.mult * n;
            out.alternating = st.alternating;
            out.g0 = st.g0 + r.g() + sp.gsh;
            out.h = st.h;
            out.lambda0 = t.labels[k].nabla(b + sp.nab);
            out.gamma0 = GammaCoset(st.gamma0.rep() + r.gamma().rep() + sp.goff);
            out.c = st.c;
            col.add_stream(out);
        }
    }
}

// Fuse a relaxed-template stream with a fixed semirelaxed class (rule for
// S_w x R applied termwise).
void fuse_relstream_semi(Collector& col, long u, const ClassStream& st,
                         const AffineWeight& lambda_ref, const GrothClass& s) {
    const FusionTable& t = ftab(u);
    long b = nabla_offset(lambda_ref, st.lambda0);
    long ia = p_index(u, lambda_ref), ib = p_index(u, s.lambda());
    auto specs = rule1_terms(u, s.w());
    FiniteWeight sg = s.w().act(s.gamma().rep());
    for (size_t k = 0; k < t.labels.size(); ++k) {
        long n = t.coefficients[ia][ib][k];
        if (n == 0) continue;
        for (const auto& sp : specs) {
            ClassStream out;
            out.kind = ClassStream::Kind::Relaxed;
            out.coeff = st.coeff * sp.mult * n;
            out.alternating = st.alternating;
            out.g0 = st.g0 + s.g() + sp.gsh;
            out.h = st.h;
            out.lambda0 = t.labels[k].nabla(b + sp.nab);
            out.gamma0 = GammaCoset(st.gamma0.rep() + sg + sp.goff);
            out.c = st.c;
            col.add_stream(out);
        }
    }
}

// Fuse a semirelaxed-template stream with a fixed relaxed class.
void fuse_semistream_relaxed(Collector& col, long u, const ClassStream& st,
                             const AffineWeight& lambda_ref, const GrothClass& r) {
    const FusionTable& t = ftab(u);
    long b = nabla_offset(lambda_ref, st.lambda0);
    long ia = p_index(u, lambda_ref), ib = p_index(u, r.lambda());
    auto specs = rule1_terms(u, st.w);
    FiniteWeight g0tw = st.w.act(st.gamma0.rep());
    FiniteWeight ctw = st.w.act(st.c);
    for (size_t k = 0; k < t.labels.size(); ++k) {
        long n = t.coefficients[ia][ib][k];
        if (n == 0) continue;
        for (const auto& sp : specs) {
            ClassStream out;
            out.kind = ClassStream::Kind::Relaxed;
            out.coeff = st.coeff * sp.mult * n;
            out.alternating = st.alternating;
            out.g0 = st.g0 + r.g() + sp.gsh;
            out.h = st.h;
            out.lambda0 = t.labels[k].nabla(b + sp.nab);
            out.gamma0 = GammaCoset(g0tw + r.gamma().rep() + sp.goff);
            out.c = ctw;
            col.add_stream(out);
        }
    }
}

// Fuse a relaxed-template stream with a fixed HwA class (family-0 rule).
void fuse_relstream_hwa(Collector& col, long u, const ClassStream& st,
                        const AffineWeight& lambda_ref, const GrothClass& a) {
    const FusionTable& t = ftab(u);
    long b = nabla_offset(lambda_ref, st.lambda0);
    auto [g, lam] = family0_presentation(a);
    long ia = p_index(u, lam), ib = p_index(u, lambda_ref);
    FiniteWeight jpart = omega2() * (Rational(3) * bp_j(u, lam));
    for (size_t k = 0; k < t.labels.size(); ++k) {
        long n = t.coefficients[ia][ib][k];
        if (n == 0) continue;
        ClassStream out;
        out.kind = ClassStream::Kind::Relaxed;
        out.coeff = st.coeff * n;
        out.alternating = st.alternating;
        out.g0 = st.g0 + g;
        out.h = st.h;
        out.lambda0 = t.labels[k].nabla(b);
        out.gamma0 = GammaCoset(jpart + st.gamma0.rep());
        out.c = st.c;
        col.add_stream(out);
    }
}

// Fuse a semirelaxed-template stream with a fixed HwA class (rule L0 x S_w).
void fuse_semistream_hwa(Collector& col, long u, const ClassStream& st,
                         const AffineWeight& lambda_ref, const GrothClass& a) {
    const FusionTable& t = ftab(u);
    long b = nabla_offset(lambda_ref, st.lambda0);
    auto [g, lam] = family0_presentation(a);
    long ia = p_index(u, lam), ib = p_index(u, lambda_ref);
    FiniteWeight jpart = omega2() * (Rational(3) * bp_j(u, lam));
    for (size_t k = 0; k < t.labels.size(); ++k) {
        long n = t.coefficients[ia][ib][k];
        if (n == 0) continue;
        ClassStream out;
        out.kind = ClassStream::Kind::Semirelaxed;
        out.coeff = st.coeff * n;
        out.alternating = st.alternating;
        out.g0 = st.g0 + g;
        out.h = st.h;
        out.w = st.w;
        out.lambda0 = t.labels[k].nabla(b);
        out.gamma0 = GammaCoset(jpart + st.gamma0.rep());
        out.c = st.c;
        col.add_stream(out);
    }
}

}  // namespace

GrothSum groth_fuse_derived(long u, const GrothClass& a_in, const GrothClass& b_in) {
    const GrothClass* a = &a_in;
    const GrothClass* b = &b_in;
    if (kind_rank(a->kind()) < kind_rank(b->kind())) std::swap(a, b);
    using K = GrothClass::Kind;

    // (R, R): the fully relaxed rule itself is the base case.
    if (a->kind() == K::Relaxed) return fuse_relaxed_relaxed(u, *a, *b);

    if (a->kind() == K::Semirelaxed && b->kind() == K::Relaxed) {
        Collector col(u);
        fuse_relstream_relaxed(col, u, grids_semi_stream(*a), a->lambda(), *b);
        return col.collect();
    }

    if (a->kind() == K::Semirelaxed && b->kind() == K::Semirelaxed) {
        Coweight flow = a->g() + b->g();
        GrothClass a0 = apply_flow(-a->g(), *a), b0 = apply_flow(-b->g(), *b);
        Weyl v = b0.w().inverse();
        GrothClass a1 = apply_weyl(v, a0), b1 = apply_weyl(v, b0);
        Collector col(u);
        if (a1.w() == Weyl(Weyl::E)) {
            // expand the left factor
            fuse_relstream_semi(col, u, grids_semi_stream(a1), a1.lambda(), b1);
        } else if (a1.w() == Weyl(Weyl::S1)) {
            // expand the untwisted right factor
            fuse_relstream_semi(col, u, grids_semi_stream(b1), b1.lambda(), a1);
        } else {
            throw std::invalid_argument("groth_fuse_derived: unsupported twist combination");
        }
        GrothSum core = col.collect();
        return apply_flow(flow, apply_weyl(v.inverse(), core));
    }

    if (a->kind() == K::HwA && b->kind() == K::Relaxed) {
        auto [g, lam] = family0_presentation(*a);
        GrothClass base = GrothClass::hw_lambda2(u, a->g(), Weyl(), lam);
        Collector col(u);
        for (ClassStream st : grids_family0_streams(base, g))
            fuse_semistream_relaxed(col, u, st, lam, *b);
        return col.collect();
    }

    if (a->kind() == K::HwA && b->kind() == K::Semirelaxed) {
        Collector col(u);
        fuse_relstream_hwa(col, u, grids_semi_stream(*b), b->lambda(), *a);
        return col.collect();
    }

    if (a->kind() == K::HwA && b->kind() == K::HwA) {
        auto [g, lam] = family0_presentation(*b);
        GrothClass base = GrothClass::hw_lambda2(u, b->g(), Weyl(), lam);
        Collector col(u);
        for (ClassStream st : grids_family0_streams(base, g))
            fuse_semistream_hwa(col, u, st, lam, *a);
        return col.collect();
    }

    if (a->kind() == K::HwB && b->kind() == K::HwA) {
        // expand the Lambda^1 factor (finite) and use the established rules
        GrothSum out;
        GrothSum split = grids_lambda1_split(*a);
        for (const auto& [c, cls] : split.terms()) {
            if (cls.kind() == K::Semirelaxed)
                out.add(fuse_hwa_semi(u, *b, cls) * c);
            else
                out.add(fuse_hwa_hwa(u, *b, cls) * c);
        }
        return out;
    }

    if (a->kind() == K::HwB && (b->kind() == K::Relaxed || b->kind() == K::Semirelaxed)) {
        Coweight flow = a->g() + b->g();
        GrothClass a0 = apply_flow(-a->g(), *a), b0 = apply_flow(-b->g(), *b);
        Weyl v;
        if (a0.w() == Weyl(Weyl::S1)) v = Weyl(Weyl::S1);
        GrothClass a1 = apply_weyl(v, a0), o1 = apply_weyl(v, b0);
        GrothSum core;
        GrothSum split = grids_lambda1_split(a1);
        for (const auto& [c, cls] : split.terms()) {
            GrothSum part;
            if (cls.kind() == K::Semirelaxed) {
                part = (o1.kind() == K::Relaxed) ? fuse_semi_relaxed(u, cls, o1)
                                                 : fuse_semi_semi(u, cls, o1);
            } else {
                part = (o1.kind() == K::Relaxed) ? fuse_hwa_relaxed(u, cls, o1)
                                                 : fuse_hwa_semi(u, cls, o1);
            }
            core.add(part * c);
        }
        return apply_flow(flow, apply_weyl(v.inverse(), core));
    }

    if (a->kind() == K::HwB && b->kind() == K::HwB) {
        GrothSum out;
        GrothSum split = grids_lambda1_split(*b);
        for (const auto& [c, cls] : split.terms()) {
            GrothSum part;
            if (cls.kind() == K::Semirelaxed)
                part = fuse_hwb_any(u, *a, cls);
            else
                part = fuse_hwa_hwb(u, cls, *a);
            out.add(part * c);
        }
        return out;
    }

    throw std::invalid_argument("groth_fuse_derived: unsupported label combination");
}

}  // namespace slmm

namespace slmm {

// ---- standard Verlinde reduction ----

namespace {

// Coupling e^{2 pi i (<h,Gamma> + m j_Lambda + c)} in the integrand.
struct Coupling {
    Coweight h;
    long long m = 0;
    Rational c;

    Coupling normalized() const {
        Coupling n{h, ((m % 3) + 3) % 3, mod1(c)};
        return n;
    }
    bool operator==(const Coupling& o) const {
        Coupling a = normalized(), b = o.normalized();
        return a.h == b.h && a.m == b.m && a.c == b.c;
    }
    Coupling inverse() const { return {-h, -m, -c}; }
    Coupling operator+(const Coupling& o) const { return {h + o.h, m + o.m, c + o.c}; }
};

// One kernel row against the fully relaxed column basis:
//   sign * e^{-2 pi i(<g,G>u/2 + <gamma,G> + <g,Gamma>)} S^BP_{lambda,Lambda}
//        / prod (1 + e^{2 pi i (<h,Gamma> + m j_Lambda + c)})
struct ReduceRow {
    int sign = +1;
    Coweight g;
    FiniteWeight gamma;   // numerator gamma argument (twisted for semi rows)
    AffineWeight lambda;  // BP label
    std::vector<Coupling> dens;
};

std::vector<Coupling> hw_coupling_factors(long u) {
    return {
        {Coweight::cw1(), -1, Rational(u, 3)},
        {Coweight::cw2(), +1, Rational(-u, 3)},
        {-Coweight::cw3(), -1, Rational(u, 3)},
    };
}

std::vector<ReduceRow> reduce_rows(long u, const RowSpec& spec) {
    if (std::holds_alternative<RelaxedLabel>(spec)) {
        const auto& r = std::get<RelaxedLabel>(spec);
        return {{+1, r.g, r.gamma.rep(), r.lambda, {}}};
    }
    if (std::holds_alternative<SemiRowSpec>(spec)) {
        const auto& s = std::get<SemiRowSpec>(spec);
        Coupling den{-Coweight::cw3().weyl(s.w), -1, Rational(u, 3)};
        return {{+1, s.row.g, s.w.act(s.row.gamma.rep()), s.row.lambda, {den}}};
    }
    const auto& h = std::get<HwRowSpec>(spec);
    auto lambda2_row = [&](const Coweight& g, const AffineWeight& lam) -> ReduceRow {
        DegenerationParams dp = degeneration_params(u, lam);
        return {+1, g, dp.gamma1.rep(), lam, hw_coupling_factors(u)};
    };
    switch (h.variant) {
        case HwKernelVariant::Lambda2: return {lambda2_row(h.g, h.lambda)};
        case HwKernelVariant::Family0: return {lambda2_row(h.g - Coweight::cw2(), h.lambda)};
        case HwKernelVariant::Family1:
            return {lambda2_row(h.g + Coweight::cw3(), h.lambda.nabla(1))};
        case HwKernelVariant::Vacuum: {
            AffineWeight vac(Rational(u - 3), Rational(0), Rational(0));
            return {lambda2_row(h.g - Coweight::cw2(), vac)};
        }
        case HwKernelVariant::Lambda1: {
            DegenerationParams dp = degeneration_params(u, h.lambda);
            Weyl w1w3 = Weyl(Weyl::S1) * Weyl::s3();
            Coupling den{-Coweight::cw3().weyl(w1w3), -1, Rational(u, 3)};
            ReduceRow semi{+1, h.g, w1w3.act(dp.gamma1.rep()), h.lambda, {den}};
            ReduceRow l2 = lambda2_row(h.g - Coweight::acw2(), h.lambda);
            l2.sign = -1;
            return {semi, l2};
        }
    }
    throw std::logic_error("reduce_rows");
}

}  // namespace

GrothSum standard_verlinde_reduce(long u, const RowSpec& a, const RowSpec& b) {
    const FusionTable& tab = ftab(u);
    GrothSum out;
    for (const ReduceRow& ra : reduce_rows(u, a)) {
        for (const ReduceRow& rb : reduce_rows(u, b)) {
            // Start from the three vacuum factors plus base couplings.
            std::vector<Coupling> vac = hw_coupling_factors(u);
            std::vector<Coupling> extra;  // phases from inverted cancellations
            auto cancel = [&](const Coupling& f) {
                for (auto it = vac.begin(); it != vac.end(); ++it) {
                    if (*it == f) {
                        vac.erase(it);
                        return true;
                    }
                    if (*it == f.inverse()) {
                        extra.push_back(*it);
                        vac.erase(it);
                        return true;
                    }
                }
                return false;
            };
            for (const Coupling& f : ra.dens)
                if (!cancel(f))
                    throw VerlindeReduceError(
                        "row denominator does not cancel a vacuum factor; "
                        "use the expansion/telescoping route");
            for (const Coupling& f : rb.dens)
                if (!cancel(f))
                    throw VerlindeReduceError(
                        "row denominator does not cancel a vacuum factor; "
                        "use the expansion/telescoping route");

            // Expand prod (1 + x) over the remaining vacuum factors and merge
            // coincident couplings (this produces the multiplicity 2).
            std::vector<std::pair<long, Coupling>> terms;
            Coupling base{-Coweight::cw2(), 0, Rational(0)};  // vacuum-row inverse phase
            for (const Coupling& e : extra) base = base + e;
            size_t k = vac.size();
            for (size_t mask = 0; mask < (size_t{1} << k); ++mask) {
                Coupling t = base;
                for (size_t i = 0; i < k; ++i)
                    if (mask & (size_t{1} << i)) t = t + vac[i];
                bool merged = false;
                for (auto& [mult, cpl] : terms)
                    if (cpl == t) {
                        ++mult;
                        merged = true;
                        break;
                    }
                if (!merged) terms.emplace_back(1, t);
            }

            // Per-term delta constraints and the BP sum.
            long ia = p_index(u, ra.lambda), ib = p_index(u, rb.lambda);
            FiniteWeight geffA = ra.gamma + ra.g.as_weight() * Rational(u, 2);
            FiniteWeight geffB = rb.gamma + rb.g.as_weight() * Rational(u, 2);
            for (const auto& [mult, cpl] : terms) {
                // Gamma integral: g'' = gA + gB - h.
                Coweight gpp = ra.g + rb.g - cpl.h;
                // residual constant phase must vanish
                Rational resid = cpl.c + Rational(cpl.m) * Rational(u, 3);
                if (!is_integer(resid))
                    throw VerlindeReduceError("residual constant phase is not 1");
                // coweight-lattice sum: [gamma''] fixed
                GammaCoset gpp_gamma(geffA + geffB - gpp.as_weight() * Rational(u, 2));
                // BP sum with the nabla shift from e^{2 pi i m (j - u/3)}
                long mshift = static_cast<long>(((cpl.m % 3) + 3) % 3);
                for (size_t kk = 0; kk < tab.labels.size(); ++kk) {
                    long n = tab.coefficients[ia][ib][kk];
                    if (n == 0) continue;
                    long coeff = ra.sign * rb.sign * mult * n;
                    out.add(coeff, GrothClass::relaxed(u, gpp, tab.labels[kk].nabla(-mshift),
                                                       gpp_gamma));
                }
            }
        }
    }
    if (!out.all_nonnegative())
        throw VerlindeReduceError("negative multiplicity in reduced fusion");
    return out;
}

// ---- CLI label parsing ----

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    parts.push_back(cur);
    return parts;
}

}  // namespace

std::optional<GrothClass> parse_groth_label(long u, const std::string& s) {
    auto parts = split(s, ':');
    if (parts.size() < 2) return std::nullopt;
    std::string tag = parts[0];
    auto lambda = AffineWeight::parse(parts[1]);
    if (!lambda || p_index(u, *lambda) < 0) return std::nullopt;
    Coweight g(0, 0);
    Weyl w;
    std::optional<GammaCoset> gamma;
    for (size_t i = 2; i < parts.size(); ++i) {
        const std::string& p = parts[i];
        auto eq = p.find('=');
        if (eq == std::string::npos) return std::nullopt;
        std::string key = p.substr(0, eq), val = p.substr(eq + 1);
        if (key == "g") {
            auto xy = split(val, ',');
            try {
                if (xy.size() == 1 && xy[0] == "0")
                    g = Coweight(0, 0);
                else if (xy.size() == 2)
                    g = Coweight(std::stoll(xy[0]), std::stoll(xy[1]));
                else
                    return std::nullopt;
            } catch (const std::exception&) {
                return std::nullopt;
            }
        } else if (key == "gamma") {
            gamma = GammaCoset::parse(val);
            if (!gamma) return std::nullopt;
        } else if (key == "w") {
            auto ww = Weyl::parse(val);
            if (!ww) return std::nullopt;
            w = *ww;
        } else {
            return std::nullopt;
        }
    }
    try {
        if (tag == "R") {
            if (!gamma) return std::nullopt;
            return GrothClass::relaxed(u, g, *lambda, *gamma);
        }
        if (tag == "S") {
            if (!gamma) return std::nullopt;
            return GrothClass::semirelaxed(u, g, w, *lambda, *gamma);
        }
        if (tag == "L0" || tag == "Lw0")
            return GrothClass::hw_family(u, g, AdmFamily::F0, *lambda);
        if (tag == "L1")
            return GrothClass::hw_family(u, g, AdmFamily::F1, *lambda);
        if (tag == "L2" || tag == "Lw2")
            return GrothClass::hw_family(u, g, AdmFamily::F2, *lambda);
        if (tag == "Lw1")
            return GrothClass::hw_lambda1(u, g, w, *lambda);
    } catch (const std::exception&) {
        return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace slmm
