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

#include "slmm/fusion.hpp"

#include <mutex>
#include <stdexcept>

namespace slmm {

namespace {

bool weight_key(const FiniteWeight& w, std::pair<long, long>* key) {
    if (!is_integer(w.a1) || !is_integer(w.a2)) return false;
    *key = {static_cast<long>(rat_num(w.a1)), static_cast<long>(rat_num(w.a2))};
    return true;
}

// All weights of V(lambda) with multiplicities, by Freudenthal recursion
// top-down in the partial order lambda - (sums of positive roots).
std::map<std::pair<long, long>, long> weight_system(const FiniteWeight& lambda) {
    std::map<std::pair<long, long>, long> mult;
    std::pair<long, long> top;
    if (!weight_key(lambda, &top))
        throw std::invalid_argument("weight_system: non-integral highest weight");
    const FiniteWeight pos[3] = {alpha1(), alpha2(), alpha3()};
    const Rational norm_top = bilinear(lambda + rho_bar(), lambda + rho_bar());

    // Candidate weights: lambda - n1 a1 - n2 a2 within the dominant-cone bound.
    // Process in decreasing height so dependencies are available.
    std::vector<std::pair<long, FiniteWeight>> order;  // (height, weight)
    long max_ht = static_cast<long>(rat_num(lambda.a1) + rat_num(lambda.a2)) * 2 + 2;
    for (long n1 = 0; n1 <= max_ht; ++n1) {
        for (long n2 = 0; n2 <= max_ht; ++n2) {
            FiniteWeight mu = lambda - alpha1() * Rational(n1) - alpha2() * Rational(n2);
            order.emplace_back(n1 + n2, mu);
        }
    }
    std::sort(order.begin(), order.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    mult[top] = 1;
    for (const auto& [ht, mu] : order) {
        if (ht == 0) continue;
        Rational denom = norm_top - bilinear(mu + rho_bar(), mu + rho_bar());
        if (denom == 0) continue;  // mu not a weight unless it is lambda itself
        Rational acc(0);
        for (const auto& a : pos) {
            for (long j = 1; j <= 2 * max_ht; ++j) {
                FiniteWeight up = mu + a * Rational(j);
                std::pair<long, long> key;
                if (!weight_key(up, &key)) break;
                auto it = mult.find(key);
                if (it == mult.end()) continue;
                acc += Rational(2 * it->second) * bilinear(up, a);
            }
        }
        if (acc == 0) continue;
        Rational m = acc / denom;
        if (!is_integer(m) || m < 0) throw std::logic_error("weight_system: bad multiplicity");
        if (m > 0) {
            std::pair<long, long> key;
            weight_key(mu, &key);
            mult[key] = static_cast<long>(rat_num(m));
        }
    }
    return mult;
}

const std::map<std::pair<long, long>, long>& weight_system_cached(const FiniteWeight& lambda) {
    static std::map<std::pair<long, long>, std::map<std::pair<long, long>, long>> cache;
    static std::mutex m;
    std::pair<long, long> key;
    weight_key(lambda, &key);
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, weight_system(lambda)).first;
    return it->second;
}

// Reduce x = mu + rho to the dominant chamber under the unshifted Weyl
// action; returns false when x lies on a chamber wall.
bool make_dominant(FiniteWeight& x, int& det) {
    for (int guard = 0; guard < 1000; ++guard) {
        if (x.a1 == 0 || x.a2 == 0 || x.a1 + x.a2 == 0) return false;
        if (x.a1 > 0 && x.a2 > 0) return true;
        if (x.a1 < 0) {
            x = Weyl(Weyl::S1).act(x);
        } else {
            x = Weyl(Weyl::S2).act(x);
        }
        det = -det;
    }
    throw std::logic_error("make_dominant: did not terminate");
}

}  // namespace

long freudenthal_multiplicity(const FiniteWeight& lambda, const FiniteWeight& mu) {
    if (!is_integer(lambda.a1) || !is_integer(lambda.a2) || lambda.a1 < 0 || lambda.a2 < 0)
        throw std::invalid_argument("freudenthal_multiplicity: lambda not dominant integral");
    std::pair<long, long> key;
    if (!weight_key(mu, &key)) return 0;
    if (!in_root_lattice(lambda - mu)) return 0;
    const auto& sys = weight_system_cached(lambda);
    auto it = sys.find(key);
    return it == sys.end() ? 0 : it->second;
}

long weyl_dimension(const FiniteWeight& lambda) {
    Rational p1 = lambda.a1 + 1, p2 = lambda.a2 + 1;
    Rational dim = p1 * p2 * (p1 + p2) / 2;
    return static_cast<long>(rat_num(dim));
}

long tensor_multiplicity(const FiniteWeight& lambda, const FiniteWeight& mu,
                         const FiniteWeight& nu) {
    // Racah/Klimyk: sum over weights beta of V(mu) of det(w) where
    // w.(lambda + beta) = nu (shifted dominant reduction); non-regular
    // terms die.
    long total = 0;
    for (const auto& [key, m] : weight_system_cached(mu)) {
        FiniteWeight beta(Rational(key.first), Rational(key.second));
        FiniteWeight x = lambda + beta + rho_bar();
        int det = 1;
        if (!make_dominant(x, det)) continue;
        FiniteWeight cand = x - rho_bar();
        if (cand == nu) total += det * m;
    }
    if (total < 0) throw std::logic_error("tensor_multiplicity: negative result");
    return total;
}

long kac_walton_fusion(long u, const AffineWeight& lambda, const AffineWeight& mu,
                       const AffineWeight& nu) {
    if (!lambda.dominant_integral() || !mu.dominant_integral() || !nu.dominant_integral())
        throw std::invalid_argument("kac_walton_fusion: labels must be dominant integral");
    // Fold V(lambda) (x) V(mu) into the level-u alcove with signs.
    long total = 0;
    for (const auto& [key, m] : weight_system_cached(mu.finite())) {
        FiniteWeight beta(Rational(key.first), Rational(key.second));
        AlcoveResult res = alcove_reduce(lambda.finite() + beta, u);
        if (std::holds_alternative<OnWall>(res)) continue;
        auto [img, det] = std::get<std::pair<AffineWeight, int>>(res);
        if (img.finite() == nu.finite()) total += det * m;
    }
    if (total < 0) throw std::logic_error("kac_walton_fusion: negative result");
    return total;
}

namespace {

struct VerlindeData {
    std::vector<AffineWeight> labels;
    // ratio[nu][L] = conj(S_{nu,L}) / S_{vac,L}
    std::vector<std::vector<CycNum>> ratio;
    const SMatrix* s;
};

const VerlindeData& verlinde_data(long u, bool bp) {
    static std::map<std::pair<long, bool>, VerlindeData> cache;
    static std::mutex m;
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find({u, bp});
    if (it != cache.end()) return it->second;

    VerlindeData d;
    d.labels = enumerate_P(u);
    d.s = bp ? &bp_smatrix_cached(u) : &wzw_smatrix_cached(u);
    long vac = p_index(u, AffineWeight(Rational(u - 3), Rational(0), Rational(0)));
    const size_t n = d.labels.size();
    std::vector<CycNum> vac_inv(n);
    for (size_t L = 0; L < n; ++L) vac_inv[L] = d.s->entries[vac][L].inverse();
    d.ratio.assign(n, std::vector<CycNum>(n));
    for (size_t nu = 0; nu < n; ++nu)
        for (size_t L = 0; L < n; ++L)
            d.ratio[nu][L] = d.s->entries[nu][L].conj() * vac_inv[L];
    return cache.emplace(std::make_pair(u, bp), std::move(d)).first->second;
}

long verlinde_sum(long u, bool bp, const AffineWeight& lambda, const AffineWeight& mu,
                  const AffineWeight& nu) {
    const VerlindeData& d = verlinde_data(u, bp);
    long li = p_index(u, lambda), mi = p_index(u, mu), ni = p_index(u, nu);
    if (li < 0 || mi < 0 || ni < 0)
        throw std::invalid_argument("verlinde: label not in P^{u-3}");
    const size_t n = d.labels.size();
    CycNum sum(d.s->entries[0][0].order());
    for (size_t L = 0; L < n; ++L)
        sum += d.s->entries[li][L] * d.s->entries[mi][L] * d.ratio[ni][L];
    if (!sum.is_rational())
        throw std::runtime_error("verlinde: non-rational fusion coefficient");
    Rational v = sum.as_rational();
    if (!is_integer(v) || v < 0)
        throw std::runtime_error("verlinde: coefficient not a nonnegative integer");
    return static_cast<long>(rat_num(v));
}

}  // namespace

long verlinde_wzw(long u, const AffineWeight& lambda, const AffineWeight& mu,
                  const AffineWeight& nu) {
    return verlinde_sum(u, false, lambda, mu, nu);
}

long bp_fusion(long u, const AffineWeight& lambda, const AffineWeight& mu,
               const AffineWeight& nu) {
    long v_bp = verlinde_sum(u, true, lambda, mu, nu);
    long v_wzw = verlinde_sum(u, false, lambda, mu, nu);
    if (v_bp != v_wzw)
        throw std::runtime_error("bp_fusion: BP and WZW Verlinde values disagree");
    return v_bp;
}

long FusionTable::value(const AffineWeight& a, const AffineWeight& b,
                        const AffineWeight& c) const {
    long i = p_index(u, a), j = p_index(u, b), k = p_index(u, c);
    if (i < 0 || j < 0 || k < 0) throw std::invalid_argument("FusionTable::value: bad label");
    return coefficients[i][j][k];
}

bool FusionTable::is_associative() const {
    const size_t n = labels.size();
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            for (size_t c = 0; c < n; ++c)
                for (size_t d = 0; d < n; ++d) {
                    long lhs = 0, rhs = 0;
                    for (size_t e = 0; e < n; ++e) {
                        lhs += coefficients[a][b][e] * coefficients[e][c][d];
                        rhs += coefficients[b][c][e] * coefficients[a][e][d];
                    }
                    if (lhs != rhs) return false;
                }
    return true;
}

bool FusionTable::vacuum_is_unit() const {
    long vac = p_index(u, AffineWeight(Rational(u - 3), Rational(0), Rational(0)));
    const size_t n = labels.size();
    for (size_t b = 0; b < n; ++b)
        for (size_t c = 0; c < n; ++c)
            if (coefficients[vac][b][c] != (b == c ? 1 : 0)) return false;
    return true;
}

namespace {

// All coefficients N_{ij}^k of one Verlinde table, hoisting the pair
// product S_{i,L} S_{j,L} out of the k-loop.
std::vector<std::vector<std::vector<long>>> verlinde_table(long u, bool bp) {
    const VerlindeData& d = verlinde_data(u, bp);
    const size_t n = d.labels.size();
    const long order = d.s->entries[0][0].order();
    std::vector<std::vector<std::vector<long>>> out(
        n, std::vector<std::vector<long>>(n, std::vector<long>(n, 0)));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i; j < n; ++j) {
            std::vector<CycNum> sums(n, CycNum(order));
            for (size_t L = 0; L < n; ++L) {
                CycNum pair = d.s->entries[i][L] * d.s->entries[j][L];
                for (size_t k = 0; k < n; ++k) sums[k] += pair * d.ratio[k][L];
            }
            for (size_t k = 0; k < n; ++k) {
                if (!sums[k].is_rational())
                    throw std::runtime_error("verlinde: non-rational fusion coefficient");
                Rational v = sums[k].as_rational();
                if (!is_integer(v) || v < 0)
                    throw std::runtime_error("verlinde: coefficient not a nonnegative integer");
                out[i][j][k] = out[j][i][k] = static_cast<long>(rat_num(v));
            }
        }
    }
    return out;
}

}  // namespace

FusionTable build_fusion_table(long u, FusionMethod method) {
    FusionTable t;
    t.u = u;
    t.labels = enumerate_P(u);
    const size_t n = t.labels.size();
    if (method == FusionMethod::Verlinde) {
        t.coefficients = verlinde_table(u, false);
        return t;
    }
    if (method == FusionMethod::BP) {
        t.coefficients = verlinde_table(u, true);
        if (t.coefficients != verlinde_table(u, false))
            throw std::runtime_error("bp_fusion: BP and WZW Verlinde values disagree");
        return t;
    }
    t.coefficients.assign(n, std::vector<std::vector<long>>(n, std::vector<long>(n, 0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j)
            for (size_t k = 0; k < n; ++k) {
                long v = kac_walton_fusion(u, t.labels[i], t.labels[j], t.labels[k]);
                t.coefficients[i][j][k] = v;
                t.coefficients[j][i][k] = v;
            }
    return t;
}

const FusionTable& fusion_table_cached(long u) {
    static std::map<long, FusionTable> cache;
    static std::mutex m;
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find(u);
    if (it == cache.end())
        it = cache.emplace(u, build_fusion_table(u, FusionMethod::Verlinde)).first;
    return it->second;
}

}  // namespace slmm
