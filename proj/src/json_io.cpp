#include "quadctrl/json_io.hpp"

#include <cmath>
#include <fstream>

namespace quadctrl {

namespace {

bool scalar_is_rational(const Json& v) {
    if (v.is_string()) return true;
    if (v.is_number_integer()) return true;
    if (v.is_number_float()) {
        double x = v.get<double>();
        return x == std::floor(x) && std::abs(x) < 1e15;
    }
    return false;
}

bool all_rational(const Json& spec) {
    auto scan = [](const Json& node, auto&& self) -> bool {
        if (node.is_array()) {
            for (const auto& el : node)
                if (!self(el, self)) return false;
            return true;
        }
        return scalar_is_rational(node);
    };
    for (const char* key : {"L", "a", "b", "c", "controls"}) {
        if (!spec.contains(key)) continue;
        if (!scan(spec.at(key), scan)) return false;
    }
    return true;
}

Rational parse_rational_json(const Json& v, const std::string& where) {
    try {
        if (v.is_string()) return parse_rational(v.get<std::string>());
        if (v.is_number_integer()) return Rational(v.get<long long>());
        if (v.is_number_float()) return rational_from_double(v.get<double>());
    } catch (const std::exception& e) {
        throw ParseError(where + ": " + e.what());
    }
    throw ParseError(where + ": expected a number or a \"p/q\" string");
}

double parse_double_json(const Json& v, const std::string& where) {
    if (v.is_string()) return to_double(parse_rational(v.get<std::string>()));
    if (v.is_number()) return v.get<double>();
    throw ParseError(where + ": expected a number or a \"p/q\" string");
}

template <typename T, typename Parse>
Vec<T> parse_vec(const Json& v, const std::string& where, Parse parse) {
    if (!v.is_array()) throw ParseError(where + ": expected an array");
    Vec<T> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(parse(v[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

template <typename T, typename Parse>
Matrix<T> parse_mat(const Json& v, const std::string& where, Parse parse) {
    if (!v.is_array()) throw ParseError(where + ": expected an array of rows");
    std::vector<Vec<T>> rows;
    for (std::size_t i = 0; i < v.size(); ++i)
        rows.push_back(parse_vec<T>(v[i], where + "[" + std::to_string(i) + "]", parse));
    try {
        return matrix_cast_rows(rows);
    } catch (const std::exception& e) {
        throw ParseError(where + ": " + e.what());
    }
}

template <typename T, typename Parse>
AnySystem parse_typed(const Json& spec, double tol, Parse parse) {
    auto require = [&](const char* key) -> const Json& {
        if (!spec.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
        return spec.at(key);
    };
    auto n = require("n").template get<std::size_t>();
    auto k = require("k").template get<std::size_t>();
    Matrix<T> L = parse_mat<T>(require("L"), "L", parse);
    Vec<T> a = parse_vec<T>(require("a"), "a", parse);
    Vec<T> b = parse_vec<T>(require("b"), "b", parse);
    Vec<T> c = parse_vec<T>(require("c"), "c", parse);
    const Json& ctrl = require("controls");
    if (!ctrl.is_array() || ctrl.empty())
        throw ParseError("controls: expected a non-empty array of vectors");
    std::vector<Vec<T>> cols;
    for (std::size_t i = 0; i < ctrl.size(); ++i)
        cols.push_back(parse_vec<T>(ctrl[i], "controls[" + std::to_string(i) + "]", parse));
    try {
        return validate_system<T>(n, k, std::move(L), std::move(a), std::move(b), std::move(c),
                                  Matrix<T>::from_columns(cols), tol);
    } catch (const SystemError& e) {
        throw ParseError(e.what());
    } catch (const std::exception& e) {
        throw ParseError(e.what());
    }
}

}  // namespace

AnySystem parse_system_json(const Json& spec) {
    if (!spec.is_object()) throw ParseError("system spec must be a JSON object");
    Mode mode;
    if (spec.contains("mode")) {
        auto m = spec.at("mode").get<std::string>();
        if (m == "rational")
            mode = Mode::Rational;
        else if (m == "float")
            mode = Mode::Float;
        else
            throw ParseError("mode must be \"rational\" or \"float\"");
    } else {
        mode = all_rational(spec) ? Mode::Rational : Mode::Float;
    }
    double tol = spec.value("tol", 0.0);
    if (tol < 0.0) throw ParseError("tol must be nonnegative");
    if (mode == Mode::Rational) return parse_typed<Rational>(spec, 0.0, parse_rational_json);
    return parse_typed<double>(spec, tol, parse_double_json);
}

AnySystem parse_system_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    Json spec;
    try {
        spec = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
    return parse_system_json(spec);
}

namespace {

template <typename T>
Json system_to_json_impl(const QuadraticSystem<T>& sys, const char* mode) {
    Json j;
    j["n"] = sys.n;
    j["k"] = sys.k;
    j["mode"] = mode;
    j["L"] = mat_to_json(sys.L);
    j["a"] = vec_to_json(sys.a);
    j["b"] = vec_to_json(sys.b);
    j["c"] = vec_to_json(sys.c);
    Json ctrl = Json::array();
    for (std::size_t i = 0; i < sys.num_controls(); ++i) ctrl.push_back(vec_to_json(sys.control(i)));
    j["controls"] = ctrl;
    if (sys.tol > 0.0) j["tol"] = sys.tol;
    return j;
}

}  // namespace

Json system_to_json(const RSystem& sys) { return system_to_json_impl(sys, "rational"); }
Json system_to_json(const DSystem& sys) { return system_to_json_impl(sys, "float"); }

Json system_to_json(const AnySystem& sys) {
    return std::visit([](const auto& s) { return system_to_json(s); }, sys);
}

}  // namespace quadctrl
