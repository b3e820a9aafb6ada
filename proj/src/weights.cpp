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

#include "slmm/weights.hpp"

#include <sstream>
#include <stdexcept>

namespace slmm {

Rational bilinear(const FiniteWeight& x, const FiniteWeight& y) {
    // Gram matrix of the fundamental weights: [[2/3,1/3],[1/3,2/3]].
    return (Rational(2) * x.a1 * y.a1 + x.a1 * y.a2 + x.a2 * y.a1 + Rational(2) * x.a2 * y.a2) /
           Rational(3);
}

std::array<Rational, 2> FiniteWeight::root_coords() const {
    return {(Rational(2) * a1 + a2) / 3, (a1 + Rational(2) * a2) / 3};
}

FiniteWeight FiniteWeight::from_root_coords(const Rational& c1, const Rational& c2) {
    return {Rational(2) * c1 - c2, Rational(2) * c2 - c1};
}

std::string FiniteWeight::to_string() const {
    return slmm::to_string(a1) + "," + slmm::to_string(a2);
}

bool in_root_lattice(const FiniteWeight& x) {
    auto c = x.root_coords();
    return is_integer(c[0]) && is_integer(c[1]);
}

namespace {

// Application tables for the six canonical Weyl elements, fundamental coords.
FiniteWeight apply_s1(const FiniteWeight& x) { return {-x.a1, x.a1 + x.a2}; }
FiniteWeight apply_s2(const FiniteWeight& x) { return {x.a1 + x.a2, -x.a2}; }

constexpr int kDet[6] = {1, -1, -1, 1, 1, -1};

// Composition table: kCompose[a][b] = a * b (a after b).
Weyl::Elt compose_table(Weyl::Elt a, Weyl::Elt b) {
    // Multiply via words; words act right-to-left.
    static const std::vector<int> words[6] = {{}, {1}, {2}, {1, 2}, {2, 1}, {1, 2, 1}};
    std::vector<int> w = words[a];
    for (int g : words[b]) w.push_back(g);
    return Weyl::from_word(w).elt();
}

}  // namespace

Weyl Weyl::from_word(const std::vector<int>& gens) {
    // Normalize by acting on a generic point and matching.
    FiniteWeight probe(Rational(5), Rational(29));
    FiniteWeight x = probe;
    for (auto it = gens.rbegin(); it != gens.rend(); ++it) {
        if (*it == 1)
            x = apply_s1(x);
        else if (*it == 2)
            x = apply_s2(x);
        else
            throw std::invalid_argument("Weyl::from_word: generator must be 1 or 2");
    }
    for (const Weyl& w : all())
        if (w.act(probe) == x) return w;
    throw std::logic_error("Weyl::from_word: unreachable");
}

const std::array<Weyl, 6>& Weyl::all() {
    static const std::array<Weyl, 6> elems = {Weyl(E),   Weyl(S1),  Weyl(S2),
                                              Weyl(S12), Weyl(S21), Weyl(S121)};
    return elems;
}

int Weyl::det() const { return kDet[e_]; }

FiniteWeight Weyl::act(const FiniteWeight& x) const {
    switch (e_) {
        case E: return x;
        case S1: return apply_s1(x);
        case S2: return apply_s2(x);
        case S12: return apply_s1(apply_s2(x));
        case S21: return apply_s2(apply_s1(x));
        case S121: return apply_s1(apply_s2(apply_s1(x)));
    }
    throw std::logic_error("Weyl::act");
}

FiniteWeight Weyl::act_shifted(const FiniteWeight& x) const {
    return act(x + rho_bar()) - rho_bar();
}

Weyl Weyl::operator*(const Weyl& o) const {
    static const auto table = [] {
        std::array<std::array<int, 6>, 6> t{};
        for (int a = 0; a < 6; ++a)
            for (int b = 0; b < 6; ++b)
                t[a][b] = compose_table(static_cast<Weyl::Elt>(a), static_cast<Weyl::Elt>(b));
        return t;
    }();
    return Weyl(static_cast<Elt>(table[e_][o.e_]));
}

Weyl Weyl::inverse() const {
    for (const Weyl& w : all())
        if ((*this * w) == Weyl(E)) return w;
    throw std::logic_error("Weyl::inverse");
}

std::string Weyl::name() const {
    static const char* names[6] = {"e", "s1", "s2", "s1s2", "s2s1", "s1s2s1"};
    return names[e_];
}

std::optional<Weyl> Weyl::parse(const std::string& s) {
    for (const Weyl& w : all())
        if (w.name() == s) return w;
    if (s == "s3" || s == "s2s1s2") return Weyl(S121);
    return std::nullopt;
}

Coweight Coweight::weyl(const Weyl& w) const {
    FiniteWeight img = w.act(as_weight());
    if (!is_integer(img.a1) || !is_integer(img.a2)) throw std::logic_error("Coweight::weyl");
    return {static_cast<long long>(rat_num(img.a1)), static_cast<long long>(rat_num(img.a2))};
}

std::string Coweight::to_string() const {
    return std::to_string(g1) + "," + std::to_string(g2);
}

bool AffineWeight::dominant_integral() const {
    return is_integer(l0) && is_integer(l1) && is_integer(l2) && l0 >= 0 && l1 >= 0 && l2 >= 0;
}

AffineWeight AffineWeight::nabla(long long n) const {
    long long r = n % 3;
    if (r < 0) r += 3;
    switch (r) {
        case 0: return *this;
        case 1: return {l1, l2, l0, grade};
        default: return {l2, l0, l1, grade};
    }
}

bool AffineWeight::operator<(const AffineWeight& o) const {
    if (l1 != o.l1) return l1 < o.l1;
    if (l2 != o.l2) return l2 < o.l2;
    if (l0 != o.l0) return l0 < o.l0;
    return grade < o.grade;
}

std::string AffineWeight::to_string() const {
    return slmm::to_string(l0) + "," + slmm::to_string(l1) + "," + slmm::to_string(l2);
}

std::optional<AffineWeight> AffineWeight::parse(const std::string& s) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    parts.push_back(cur);
    if (parts.size() != 3) return std::nullopt;
    auto a = parse_rational(parts[0]), b = parse_rational(parts[1]), c = parse_rational(parts[2]);
    if (!a || !b || !c) return std::nullopt;
    return AffineWeight(*a, *b, *c);
}

std::vector<AffineWeight> enumerate_P(long u) {
    if (u < 3 || u % 2 == 0) {
        if (u < 3) throw std::invalid_argument("enumerate_P: u must be >= 3");
    }
    const long n = u - 3;
    std::vector<AffineWeight> out;
    for (long a = 0; a <= n; ++a)
        for (long b = 0; a + b <= n; ++b)
            out.emplace_back(Rational(n - a - b), Rational(a), Rational(b));
    return out;
}

long p_index(long u, const AffineWeight& lambda) {
    auto all = enumerate_P(u);
    for (size_t i = 0; i < all.size(); ++i)
        if (all[i].l0 == lambda.l0 && all[i].l1 == lambda.l1 && all[i].l2 == lambda.l2)
            return static_cast<long>(i);
    return -1;
}

std::string family_name(AdmFamily f) {
    switch (f) {
        case AdmFamily::F0: return "0";
        case AdmFamily::F1: return "1";
        case AdmFamily::F2: return "2";
        case AdmFamily::W1: return "w1";
    }
    return "?";
}

AdmissibleWeight admissible_weight(long u, AdmFamily f, const AffineWeight& lambda) {
    const Rational h = Rational(u, 2);
    AffineWeight w;
    switch (f) {
        case AdmFamily::F0: w = {lambda.l0 - h, lambda.l1, lambda.l2}; break;
        case AdmFamily::F1: w = {lambda.l0, lambda.l1 - h, lambda.l2}; break;
        case AdmFamily::F2: w = {lambda.l0, lambda.l1, lambda.l2 - h}; break;
        case AdmFamily::W1: {
            // s1 . (lambda - (u/2) w1) at the affine level: s1 shifted action
            // on labels (m0, m1, m2) subtracts (m1+1) alpha1, alpha1 = (1,-2,1)...
            // affine alpha1 in label coordinates is (-1, 2, -1) columnwise;
            // work it out explicitly:
            Rational m0 = lambda.l0, m1 = lambda.l1 - h, m2 = lambda.l2;
            Rational c = m1 + 1;
            w = {m0 + c, m1 - 2 * c, m2 + c};
            break;
        }
    }
    return {f, lambda, w};
}

std::vector<AdmissibleWeight> admissible_weights(long u) {
    if (u < 3 || u % 2 == 0) throw std::invalid_argument("admissible_weights: u must be odd >= 3");
    std::vector<AdmissibleWeight> out;
    for (AdmFamily f : {AdmFamily::F0, AdmFamily::F1, AdmFamily::F2, AdmFamily::W1})
        for (const auto& lam : enumerate_P(u)) out.push_back(admissible_weight(u, f, lam));
    return out;
}

BPWeight bp_weight(long u, const AffineWeight& lambda) {
    if (!lambda.dominant_integral() || lambda.level() != u - 3)
        throw std::invalid_argument("bp_weight: label not dominant integral at level u-3");
    Rational d12 = lambda.l1 - lambda.l2;
    Rational s12 = lambda.l1 + lambda.l2;
    BPWeight w;
    w.j = -d12 / 3;
    w.Delta = (d12 * (d12 - u) + 3 * s12 * (s12 - u + 4)) / (Rational(6) * u);
    return w;
}

Rational bp_central_charge(long u) {
    Rational k = Rational(u, 2) - 3;
    return Rational(-4) * (k + 1) * (2 * k + 3) / (k + 3);
}

std::pair<FiniteWeight, Rational> spectral_flow_weight(const Coweight& g, const FiniteWeight& mu,
                                                       const Rational& Delta, const Rational& k) {
    FiniteWeight nu = mu + g.as_weight() * k;
    Rational d = Delta + g.pair(mu) + g.norm2() * k / 2;
    return {nu, d};
}

SfHwRow sf_hw_table(long u, const AdmissibleWeight& nu) {
    const AffineWeight& lam = nu.lambda;
    switch (nu.family) {
        case AdmFamily::F0:
            return {+1, admissible_weight(u, AdmFamily::F1, lam.nabla(-1))};
        case AdmFamily::F2:
            return {-1, admissible_weight(u, AdmFamily::W1, lam)};
        case AdmFamily::F1:
            return {+1, admissible_weight(u, AdmFamily::F0, lam)};
        case AdmFamily::W1:
            return {-1, admissible_weight(u, AdmFamily::F2, lam.nabla(-1))};
    }
    throw std::logic_error("sf_hw_table");
}

GammaCoset::GammaCoset(const FiniteWeight& rep) {
    auto c = rep.root_coords();
    rep_ = FiniteWeight::from_root_coords(mod1(c[0]), mod1(c[1]));
}

std::string GammaCoset::to_string() const {
    auto c = rep_.root_coords();
    return slmm::to_string(c[0]) + "," + slmm::to_string(c[1]);
}

std::optional<GammaCoset> GammaCoset::parse(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos) return std::nullopt;
    auto c1 = parse_rational(s.substr(0, comma));
    auto c2 = parse_rational(s.substr(comma + 1));
    if (!c1 || !c2) return std::nullopt;
    return GammaCoset(FiniteWeight::from_root_coords(*c1, *c2));
}

GammaCoset gamma_of(long u, const AffineWeight& lambda, const Rational& mu, const Rational& nu) {
    Rational j = bp_weight(u, lambda).j;
    Rational u6 = Rational(u, 6);
    FiniteWeight g = alpha2() * (j + mu + u6) + alpha3() * (nu - u6);
    return GammaCoset(g);
}

DegenerationParams degeneration_params(long u, const AffineWeight& lambda) {
    DegenerationParams p;
    p.t1 = -(lambda.l1 + 2 * lambda.l2) / Rational(3) - 1 + Rational(u, 3);
    p.t2 = (2 * lambda.l1 + lambda.l2) / Rational(3) + 1 - Rational(u, 6);
    p.Lambda1 = admissible_weight(u, AdmFamily::W1, lambda).weight;
    p.Lambda2 = admissible_weight(u, AdmFamily::F2, lambda.nabla(1)).weight;
    Rational j = bp_weight(u, lambda).j;
    FiniteWeight base = omega2() * (3 * j + Rational(u, 2));
    p.gamma1 = GammaCoset(base);
    p.gamma2 = GammaCoset(base - alpha3() * Rational(u, 2));
    return p;
}

Rational affine_root_pairing(const FiniteWeight& x_shifted, const FiniteWeight& alpha,
                             long long n, const Rational& k_plus_3) {
    return bilinear(x_shifted, alpha) + Rational(n) * k_plus_3;
}

std::pair<FiniteWeight, Rational> affine_reflect(const FiniteWeight& x_shifted,
                                                 const Rational& grade,
                                                 const FiniteWeight& alpha, long long n,
                                                 const Rational& k_plus_3) {
    Rational p = affine_root_pairing(x_shifted, alpha, n, k_plus_3);
    return {x_shifted - alpha * p, grade + p * Rational(n)};
}

AlcoveResult alcove_reduce(const FiniteWeight& lambda, long u) {
    FiniteWeight x = lambda + rho_bar();
    int det = 1;
    const Rational uu(u);
    for (int guard = 0; guard < 100000; ++guard) {
        Rational p1 = x.a1;                 // <x, a1^vee> = first Dynkin label
        Rational p2 = x.a2;                 // <x, a2^vee>
        Rational p3 = x.a1 + x.a2;          // <x, a3^vee>
        // Wall test: <x, alpha> in uZ for alpha = a1, a2, a3 (covers 0).
        for (const Rational& p : {p1, p2, p3})
            if (is_integer(p / uu)) return OnWall{};
        if (p1 > 0 && p2 > 0 && p3 < uu) {
            AffineWeight out(uu - 3 - (p1 - 1) - (p2 - 1), p1 - 1, p2 - 1);
            return std::make_pair(out, det);
        }
        // Reflect in the first violated wall (s1, s2, then the affine wall).
        if (p1 < 0) {
            x = apply_s1(x);
        } else if (p2 < 0) {
            x = apply_s2(x);
        } else {
            // s_{a3,u}: x -> x - (<x,a3>-u) a3  (note <a3,a3> = 2, so the
            // reflection uses the coroot pairing p3 - u)
            Rational c = p3 - uu;
            x = x - alpha3() * c;
        }
        det = -det;
    }
    throw std::logic_error("alcove_reduce: did not terminate");
}

}  // namespace slmm
