#include "catch_helpers.hpp"
#include "test_support.hpp"

using namespace triqubit;
using Catch::Approx;

TEST_CASE("make_state", "[families]") {
    SECTION("ghz_like at 1/sqrt(2) is GHZ") {
        const auto psi = std::get<PureState>(make_state(FamilyId::GhzLike, {1.0 / std::sqrt(2.0)}));
        const PureState g = ghz_state();
        for (std::size_t i = 0; i < 8; ++i) REQUIRE(std::abs(psi[i] - g[i]) < 1e-15);
    }
    SECTION("ghz_w_mix endpoint is the GHZ projector") {
        const auto rho = std::get<DensityMatrix>(make_state(FamilyId::GhzWMix, {1.0}));
        REQUIRE(rho.matrix() == to_density(ghz_state()).matrix());
    }
    SECTION("sigma_b normalization and printed entries") {
        for (double b : {0.1, 0.4, 0.9}) {
            const auto rho = std::get<DensityMatrix>(make_state(FamilyId::SigmaB, {b}));
            const ComplexMatrix& m = rho.matrix();
            const double k = 7.0 * b + 1.0;
            REQUIRE(m.trace().real() == Approx(1.0).margin(1e-15));
            REQUIRE(m(0, 5).real() * k == Approx(b));
            REQUIRE(m(3, 3).real() * k == Approx(b));
            REQUIRE(m(4, 4).real() * k == Approx((1 + b) / 2));
            REQUIRE(m(7, 4).real() * k == Approx(std::sqrt(1 - b * b) / 2));
            REQUIRE(m(3, 7) == complex{});
        }
    }
    SECTION("rho_epsilon at 0 is rho_0") {
        const auto a = std::get<DensityMatrix>(make_state(FamilyId::RhoEpsilon, {0.0}));
        const auto b = std::get<DensityMatrix>(make_state(FamilyId::RhoZero, {}));
        REQUIRE(a.matrix() == b.matrix());
        REQUIRE(negativity(reduce_to(a, QubitPair::BC), Qubit::B) < 1e-12);
    }
    SECTION("domains") {
        REQUIRE_THROWS_CODE(make_state(FamilyId::GhzLike, {1.2}), ErrorCode::ParamOutOfDomain);
        REQUIRE_THROWS_CODE(make_state(FamilyId::GhzNoise, {-0.1}), ErrorCode::ParamOutOfDomain);
        REQUIRE_THROWS_CODE(make_state(FamilyId::SigmaB, {0.0}), ErrorCode::ParamOutOfDomain);
        REQUIRE_THROWS_CODE(make_state(FamilyId::SigmaB, {1.0}), ErrorCode::ParamOutOfDomain);
        REQUIRE_THROWS_CODE(make_state(FamilyId::RhoEpsilon, {1.5}), ErrorCode::ParamOutOfDomain);
        REQUIRE_THROWS_CODE(make_state(FamilyId::WCanonical, {0.5, 0.5, 0.5}), ErrorCode::ParamOutOfDomain);
        REQUIRE_THROWS_CODE(make_state(FamilyId::GhzWMix, {}), ErrorCode::ParamOutOfDomain);
        REQUIRE_THROWS_CODE(make_state(FamilyId::GhzWMix, {std::nan("")}), ErrorCode::ParamOutOfDomain);
    }
    SECTION("family names") {
        for (FamilyId f : kAllFamilies) REQUIRE(parse_family(to_string(f)) == f);
        REQUIRE_THROWS_CODE(parse_family("nope"), ErrorCode::UnknownFamily);
    }
}

TEST_CASE("oracle examples", "[families]") {
    REQUIRE(oracle(FamilyId::GhzNoise, {0.2}, Quantity::NAbc) == 0.0);
    REQUIRE(oracle(FamilyId::GhzWMix, {0.0}, Quantity::NAbc) == Approx(4.0 * std::sqrt(2.0) / 6.0).margin(1e-15));
    const double s = 1.0 / std::sqrt(3.0);
    for (Quantity q : {Quantity::NBC, Quantity::NAC, Quantity::NAB})
        REQUIRE(oracle(FamilyId::WCanonical, {s, s, s}, q) == Approx((std::sqrt(5.0) - 1.0) / 3.0).margin(1e-15));
    REQUIRE_THROWS_CODE(oracle(FamilyId::SigmaB, {0.5}, Quantity::NBC), ErrorCode::NoOracle);
    REQUIRE_THROWS_CODE(oracle(FamilyId::GhzWMix, {0.5}, Quantity::QMult), ErrorCode::NoOracle);
}

TEST_CASE("default grids", "[families]") {
    const auto g = default_grid(FamilyId::GhzLike, 3);
    REQUIRE(g.size() == 3);
    REQUIRE(g[0][0] == 0.0);
    REQUIRE(g[1][0] == Approx(1.0 / (2.0 * std::sqrt(2.0))));
    REQUIRE(g[2][0] == Approx(1.0 / std::sqrt(2.0)));
    const auto b = default_grid(FamilyId::SigmaB, 9);
    REQUIRE(b.front()[0] == Approx(0.1));
    REQUIRE(b.back()[0] == Approx(0.9));
    REQUIRE(default_grid(FamilyId::W, 50).size() == 1);
    REQUIRE(default_grid(FamilyId::RhoEpsilon).size() == kDefaultGridPoints);
    REQUIRE_THROWS_CODE(default_grid(FamilyId::GhzNoise, 0), ErrorCode::ParamOutOfDomain);
}

TEST_CASE("every oracle column agrees with the pipeline", "[families][property]") {
    for (FamilyId f : kAllFamilies) {
        const auto rows = sweep(f);
        for (const SweepRow& row : rows) {
            bool any = false;
            for (std::size_t k = 0; k < row.deviation.size(); ++k) {
                if (!row.oracle[k]) continue;
                any = true;
                INFO(to_string(f) << " " << column_name(kAllQuantities[k]) << " at row " << (&row - rows.data()));
                REQUIRE(*row.deviation[k] < 1e-9);
            }
            REQUIRE(any);
        }
    }
}

TEST_CASE("sweep shapes", "[families]") {
    SECTION("ghz_like rises to 1") {
        const auto rows = sweep(FamilyId::GhzLike);
        REQUIRE(rows.size() == 101);
        for (std::size_t i = 1; i < rows.size(); ++i) REQUIRE(rows[i].measures.n_abc > rows[i - 1].measures.n_abc);
        REQUIRE(rows.back().measures.n_abc == Approx(1.0).margin(1e-12));
    }
    SECTION("ghz_w_mix: positive, global max at p = 1, local max at p = 0") {
        const auto rows = sweep(FamilyId::GhzWMix);
        double lowest = 1.0;
        for (const auto& r : rows) lowest = std::min(lowest, r.measures.n_abc);
        REQUIRE(lowest > 0.0);
        REQUIRE(rows.back().measures.n_abc == Approx(1.0).margin(1e-12));
        for (std::size_t i = 0; i + 1 < rows.size(); ++i) REQUIRE(rows[i].measures.n_abc < rows.back().measures.n_abc);
        REQUIRE(rows[0].measures.n_abc > rows[1].measures.n_abc);
    }
    SECTION("ghz_noise: zero then linear") {
        for (const auto& r : sweep(FamilyId::GhzNoise)) {
            const double p = r.params[0];
            if (p <= 0.2)
                REQUIRE(r.measures.n_abc < 1e-10);
            else
                REQUIRE(r.measures.n_abc == Approx((5 * p - 1) / 4).margin(1e-9));
        }
    }
    SECTION("rows keep grid order under any thread count") {
        const auto grid = default_grid(FamilyId::RhoEpsilon, 37);
        const auto serial = sweep(FamilyId::RhoEpsilon, grid, kDefaultZeroTol, 1);
        const auto parallel = sweep(FamilyId::RhoEpsilon, grid, kDefaultZeroTol, 4);
        REQUIRE(serial.size() == parallel.size());
        for (std::size_t i = 0; i < serial.size(); ++i) {
            REQUIRE(serial[i].params == grid[i]);
            REQUIRE(parallel[i].params == grid[i]);
            REQUIRE(serial[i].computed == parallel[i].computed);
        }
    }
    SECTION("a failing row names its parameters") {
        const std::vector<std::vector<double>> grid{{0.5}, {2.0}, {0.1}};
        try {
            sweep(FamilyId::GhzNoise, grid);
            FAIL("expected an error");
        } catch (const Error& e) {
            REQUIRE(e.code() == ErrorCode::ParamOutOfDomain);
            REQUIRE(std::string(e.what()).find("ghz_noise(2)") != std::string::npos);
        }
        REQUIRE_THROWS_CODE(sweep(FamilyId::GhzNoise, std::vector<std::vector<double>>{}), ErrorCode::ParamOutOfDomain);
    }
}

TEST_CASE("sweep endpoints reproduce the pure-state values", "[families]") {
    const auto mix = sweep(FamilyId::GhzWMix);
    const MeasureSet ghz = measure_set(to_density(ghz_state()));
    const MeasureSet wp = measure_set(to_density(w_prime_state()));
    REQUIRE(tq_test::max_deviation(mix.back().measures, ghz) == 0.0);
    REQUIRE(tq_test::max_deviation(mix.front().measures, wp) == 0.0);
    const auto noise = sweep(FamilyId::GhzNoise);
    REQUIRE(tq_test::max_deviation(noise.back().measures, ghz) == 0.0);

    const auto eps = sweep(FamilyId::RhoEpsilon);
    for (const SweepRow* row : {&eps.front(), &eps.back()}) {
        // at eps = +-1 the state is a pure product of a basis qubit and a Bell pair
        REQUIRE(row->measures.n_pair(QubitPair::BC) == Approx(1.0).margin(1e-12));
        REQUIRE(row->measures.n_a_bc == 0.0);
    }
}

TEST_CASE("sigma_b keeps the A cut PPT", "[families]") {
    for (int i = 1; i <= 9; ++i) {
        const double b = i / 10.0;
        const auto row = evaluate_row(FamilyId::SigmaB, {b});
        REQUIRE(row.measures.n_a_bc < 1e-10);
        REQUIRE(row.measures.n_b_ac == Approx(sigma_b_formula(b)).margin(1e-9));
        REQUIRE(row.measures.n_c_ab == Approx(sigma_b_formula(b)).margin(1e-9));
    }
}
