#pragma once

#include "quadctrl/chain.hpp"
#include "quadctrl/subspace.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace quadctrl {

using Json = nlohmann::json;

inline Json scalar_to_json(const Rational& r) { return to_string(r); }
inline Json scalar_to_json(double x) { return x; }

template <typename T>
Json vec_to_json(const Vec<T>& v) {
    Json arr = Json::array();
    for (const auto& x : v) arr.push_back(scalar_to_json(x));
    return arr;
}

template <typename T>
Json mat_to_json(const Matrix<T>& m) {
    Json arr = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m(i, j)));
        arr.push_back(std::move(row));
    }
    return arr;
}

template <typename T>
Json basis_to_json(const Subspace<T>& s) {
    Json arr = Json::array();
    for (const auto& b : s.basis()) arr.push_back(vec_to_json(b));
    return arr;
}

// Outcome of the analysis cascade. Every decisive verdict names the rule
// that produced it and carries a certificate that an independent checker
// can re-verify.
struct Verdict {
    VerdictTag tag = VerdictTag::Inconclusive;
    std::string rule;
    std::string description;
    Json certificate = Json::object();
    std::vector<std::string> rules_attempted;

    bool decisive() const { return tag != VerdictTag::Inconclusive; }

    Json to_json() const {
        Json j;
        j["tag"] = quadctrl::to_string(tag);
        j["rule"] = rule;
        j["description"] = description;
        j["certificate"] = certificate;
        if (!rules_attempted.empty()) j["rules_attempted"] = rules_attempted;
        return j;
    }
};

}  // namespace quadctrl
