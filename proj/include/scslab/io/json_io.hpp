#pragma once

#include "scslab/exact/scaled_rational.hpp"
#include "scslab/sympoly/sympoly.hpp"

#include <json.hpp>

namespace scslab {

using Json = nlohmann::ordered_json;

inline Json to_json(const ScaledRational& v) {
    Json j;
    j["q"] = v.q().str();
    j["sqrt2"] = v.sqrt2_pow();
    j["sqrtpi"] = v.sqrtpi_pow();
    j["pi"] = v.pi_pow();
    return j;
}

inline ScaledRational scaled_rational_from_json(const Json& j) {
    return ScaledRational(rational_from_string(j.at("q").get<std::string>()),
                          j.at("sqrt2").get<int>(), j.at("sqrtpi").get<int>(),
                          j.at("pi").get<int>());
}

inline Json to_json(const SymPoly& p) {
    Json j;
    j["d"] = p.d();
    Json terms = Json::array();
    for (const auto& [e, c] : p.terms()) {
        Json t;
        t["exp"] = e;
        t["coeff"] = to_json(c);
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

inline SymPoly sympoly_from_json(const Json& j) {
    SymPoly p(j.at("d").get<int>());
    for (const auto& t : j.at("terms")) {
        p.add_term(t.at("exp").get<std::vector<int>>(),
                   scaled_rational_from_json(t.at("coeff")));
    }
    return p;
}

}  // namespace scslab
