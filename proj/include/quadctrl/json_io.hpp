#pragma once

#include "quadctrl/system.hpp"
#include "quadctrl/verdict.hpp"

#include <string>
#include <variant>

namespace quadctrl {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using AnySystem = std::variant<RSystem, DSystem>;

inline Mode mode_of(const AnySystem& sys) {
    return std::holds_alternative<RSystem>(sys) ? Mode::Rational : Mode::Float;
}

// Spec schema:
//   {"n":3, "k":2, "L":[[..]..], "a":[..], "b":[..], "c":[..],
//    "controls":[[..]..], "mode":"rational"|"float", "tol":..}
// Scalars are JSON numbers or "p/q" strings. Without an explicit "mode" the
// spec is rational when every scalar is an integer or a fraction string.
AnySystem parse_system_json(const Json& spec);
AnySystem parse_system_file(const std::string& path);

Json system_to_json(const AnySystem& sys);
Json system_to_json(const RSystem& sys);
Json system_to_json(const DSystem& sys);

}  // namespace quadctrl
