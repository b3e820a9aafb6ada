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

#include "slmm/serialize.hpp"

#include <sstream>

namespace slmm {

namespace {

Json cyc_to_json(const CycNum& x) {
    Json coeffs = Json::array();
    for (const auto& c : x.coeffs()) coeffs.push_back(to_string(c));
    return Json{{"cyclotomic_order", x.order()}, {"coeffs", coeffs}};
}

CycNum cyc_from_json(const Json& j) {
    long order = j.at("cyclotomic_order").get<long>();
    std::vector<Rational> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.push_back(parse_rational_or_throw(c));
    return CycNum(order, std::move(coeffs));
}

}  // namespace

Json smatrix_to_json(const SMatrix& s, long u, const std::string& algebra) {
    Json j;
    j["schema"] = 1;
    j["u"] = u;
    j["algebra"] = algebra;
    j["labels"] = s.row_labels;
    Json rows = Json::array();
    for (const auto& row : s.entries) {
        Json r = Json::array();
        for (const auto& e : row) r.push_back(cyc_to_json(e));
        rows.push_back(r);
    }
    j["entries"] = rows;
    return j;
}

SMatrix smatrix_from_json(const Json& j) {
    SMatrix s;
    for (const auto& l : j.at("labels")) {
        s.row_labels.push_back(l.get<std::string>());
        s.col_labels.push_back(l.get<std::string>());
    }
    for (const auto& row : j.at("entries")) {
        std::vector<CycNum> r;
        for (const auto& e : row) r.push_back(cyc_from_json(e));
        s.entries.push_back(std::move(r));
    }
    return s;
}

Json smatrix_to_complex_json(const SMatrix& s, long u, const std::string& algebra) {
    Json j;
    j["schema"] = 1;
    j["u"] = u;
    j["algebra"] = algebra;
    j["labels"] = s.row_labels;
    Json rows = Json::array();
    for (const auto& row : s.to_complex()) {
        Json r = Json::array();
        for (const auto& e : row) r.push_back(Json::array({e.real(), e.imag()}));
        rows.push_back(r);
    }
    j["entries"] = rows;
    return j;
}

std::string smatrix_to_csv(const SMatrix& s) {
    std::ostringstream os;
    os.precision(15);
    auto c = s.to_complex();
    for (size_t i = 0; i < c.size(); ++i) {
        for (size_t jj = 0; jj < c[i].size(); ++jj) {
            if (jj) os << ",";
            os << c[i][jj].real() << (c[i][jj].imag() < 0 ? "" : "+") << c[i][jj].imag() << "i";
        }
        os << "\n";
    }
    return os.str();
}

Json fusion_table_to_json(const FusionTable& t, const std::string& method) {
    Json j;
    j["schema"] = 1;
    j["u"] = t.u;
    j["method"] = method;
    Json labels = Json::array();
    for (const auto& l : t.labels) labels.push_back(l.to_string());
    j["labels"] = labels;
    j["coefficients"] = t.coefficients;
    return j;
}

FusionTable fusion_table_from_json(const Json& j) {
    FusionTable t;
    t.u = j.at("u").get<long>();
    for (const auto& l : j.at("labels")) {
        auto w = AffineWeight::parse(l.get<std::string>());
        if (!w) throw std::runtime_error("fusion_table_from_json: bad label");
        t.labels.push_back(*w);
    }
    t.coefficients = j.at("coefficients").get<std::vector<std::vector<std::vector<long>>>>();
    return t;
}

Json groth_class_to_json(const GrothClass& c) {
    Json j;
    switch (c.kind()) {
        case GrothClass::Kind::Relaxed: j["kind"] = "relaxed"; break;
        case GrothClass::Kind::Semirelaxed: j["kind"] = "semirelaxed"; break;
        case GrothClass::Kind::HwA: j["kind"] = "hw-lambda2"; break;
        case GrothClass::Kind::HwB: j["kind"] = "hw-lambda1"; break;
    }
    j["g"] = c.g().to_string();
    j["w"] = c.w().name();
    j["lambda"] = c.lambda().to_string();
    if (c.kind() == GrothClass::Kind::Relaxed || c.kind() == GrothClass::Kind::Semirelaxed)
        j["gamma"] = c.gamma().to_string();
    j["label"] = c.to_string();
    return j;
}

GrothClass groth_class_from_json(long u, const Json& j) {
    std::string kind = j.at("kind").get<std::string>();
    auto gparts = j.at("g").get<std::string>();
    auto comma = gparts.find(',');
    Coweight g(std::stoll(gparts.substr(0, comma)), std::stoll(gparts.substr(comma + 1)));
    auto w = Weyl::parse(j.at("w").get<std::string>());
    auto lambda = AffineWeight::parse(j.at("lambda").get<std::string>());
    if (!w || !lambda) throw std::runtime_error("groth_class_from_json: bad fields");
    if (kind == "relaxed" || kind == "semirelaxed") {
        auto gamma = GammaCoset::parse(j.at("gamma").get<std::string>());
        if (!gamma) throw std::runtime_error("groth_class_from_json: bad gamma");
        return kind == "relaxed" ? GrothClass::relaxed(u, g, *lambda, *gamma)
                                 : GrothClass::semirelaxed(u, g, *w, *lambda, *gamma);
    }
    if (kind == "hw-lambda2") return GrothClass::hw_lambda2(u, g, *w, *lambda);
    if (kind == "hw-lambda1") return GrothClass::hw_lambda1(u, g, *w, *lambda);
    throw std::runtime_error("groth_class_from_json: unknown kind");
}

Json groth_sum_to_json(const GrothSum& s) {
    Json arr = Json::array();
    for (const auto& [coeff, cls] : s.terms()) {
        Json t = groth_class_to_json(cls);
        t["coeff"] = coeff;
        arr.push_back(t);
    }
    return arr;
}

GrothSum groth_sum_from_json(long u, const Json& j) {
    GrothSum s;
    for (const auto& t : j) s.add(t.at("coeff").get<long>(), groth_class_from_json(u, t));
    return s;
}

Json qseries_to_json(const QSeries& s) {
    Json j;
    j["schema"] = 1;
    j["qOffset"] = to_string(s.q_offset());
    j["truncation"] = s.truncation();
    Json terms = Json::object();
    for (long n = 0; n <= s.truncation(); ++n) {
        if (s.step(n).is_zero()) continue;
        Json step = Json::object();
        for (const auto& [e, c] : s.step(n).terms()) {
            std::string key = to_string(e[0]);
            if (e[1] != 0) key += ";" + to_string(e[1]);
            step[key] = to_string(c);
        }
        terms[std::to_string(n)] = step;
    }
    j["terms"] = terms;
    return j;
}

QSeries qseries_from_json(const Json& j) {
    QSeries s(parse_rational_or_throw(j.at("qOffset").get<std::string>()),
              j.at("truncation").get<long>());
    for (const auto& [nstr, step] : j.at("terms").items()) {
        long n = std::stol(nstr);
        for (const auto& [key, val] : step.items()) {
            auto semi = key.find(';');
            Rational e1 = parse_rational_or_throw(key.substr(0, semi));
            Rational e2 = semi == std::string::npos
                              ? Rational(0)
                              : parse_rational_or_throw(key.substr(semi + 1));
            s.step(n).add({e1, e2}, parse_rational_or_throw(val.get<std::string>()));
        }
    }
    return s;
}

}  // namespace slmm
