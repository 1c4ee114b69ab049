#pragma once

#include <string>

#include <catch2/catch_amalgamated.hpp>

#include "triqubit/error.hpp"

namespace tq_test {

inline auto has_code(triqubit::ErrorCode code) {
    return Catch::Matchers::Predicate<triqubit::Error>(
        [code](const triqubit::Error& e) { return e.code() == code; },
        "error code " + std::string(triqubit::to_string(code)));
}

} // namespace tq_test

#define REQUIRE_THROWS_CODE(expr, code) REQUIRE_THROWS_MATCHES(expr, ::triqubit::Error, ::tq_test::has_code(code))
