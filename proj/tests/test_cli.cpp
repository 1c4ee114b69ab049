#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "catch_helpers.hpp"
#include "test_support.hpp"
#include "triqubit/cli.hpp"
#include "triqubit/io.hpp"

using namespace triqubit;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        static std::atomic<int> counter{0};
        path = fs::temp_directory_path() /
               ("triqubit_test_" + std::to_string(std::random_device{}()) + "_" + std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string write_json(const TempDir& dir, const std::string& name, const std::string& text) {
    const std::string p = dir.file(name);
    std::ofstream(p) << text;
    return p;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

cli::SweepOptions sweep_options(std::string family, std::size_t points = kDefaultGridPoints, std::string out = {}) {
    cli::SweepOptions o;
    o.family = std::move(family);
    o.points = points;
    o.out = std::move(out);
    return o;
}

cli::RandomOptions random_options(std::size_t n, std::uint64_t seed, std::string out = {}) {
    cli::RandomOptions o;
    o.count = n;
    o.seed = seed;
    o.out = std::move(out);
    return o;
}

std::size_t count(const std::string& s, char c) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), c)); }

} // namespace

TEST_CASE("state files round-trip bit-exactly", "[cli][io]") {
    TempDir dir;
    std::mt19937_64 rng(79);
    for (int t = 0; t < 50; ++t) {
        const PureState psi = sample_haar_pure(rng);
        write_state_file(dir.file("p.json"), psi);
        const auto back = std::get<PureState>(read_state_file(dir.file("p.json")));
        for (std::size_t i = 0; i < 8; ++i) REQUIRE(back[i] == psi[i]);
        REQUIRE(tq_test::max_deviation(measure_set(back), measure_set(psi)) == 0.0);

        const DensityMatrix rho = sample_hilbert_schmidt(rng);
        write_state_file(dir.file("m.json"), rho);
        const auto mixed = std::get<DensityMatrix>(read_state_file(dir.file("m.json")));
        REQUIRE(mixed.matrix() == rho.matrix());
        REQUIRE(tq_test::max_deviation(measure_set(mixed), measure_set(rho)) == 0.0);
    }
}

TEST_CASE("state file errors", "[cli][io]") {
    TempDir dir;
    REQUIRE_THROWS_CODE(read_state_file(dir.file("missing.json")), ErrorCode::InvalidStateFile);
    REQUIRE_THROWS_CODE(read_state_file(write_json(dir, "a.json", "{not json")), ErrorCode::InvalidStateFile);
    REQUIRE_THROWS_CODE(read_state_file(write_json(dir, "b.json", R"({"kind":"qutrit"})")), ErrorCode::InvalidStateFile);
    REQUIRE_THROWS_CODE(read_state_file(write_json(dir, "c.json", R"({"kind":"pure","amplitudes":[[1,0]]})")),
                        ErrorCode::InvalidStateFile);
    REQUIRE_THROWS_CODE(
        read_state_file(write_json(dir, "d.json", R"({"kind":"pure","amplitudes":[[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0]]})")),
        ErrorCode::NotNormalized);
}

TEST_CASE("cmd_classify", "[cli]") {
    TempDir dir;
    std::ostringstream out, err;
    SECTION("GHZ") {
        write_state_file(dir.file("ghz.json"), ghz_state());
        REQUIRE(cli::cmd_classify({dir.file("ghz.json")}, out, err) == cli::kExitOk);
        REQUIRE(out.str().find("2-0 (GHZ-like)") != std::string::npos);
        REQUIRE(out.str().find("N_ABC = 1\n") != std::string::npos);
    }
    SECTION("W' as JSON") {
        write_state_file(dir.file("w.json"), w_prime_state());
        REQUIRE(cli::cmd_classify({dir.file("w.json"), kDefaultZeroTol, true}, out, err) == cli::kExitOk);
        const json j = json::parse(out.str());
        REQUIRE(j["label"]["code"] == "2-3");
        REQUIRE(std::abs(j["measures"]["pair_negativity"]["BC"].get<double>() - 0.412) < 5e-4);
    }
    SECTION("all-zero file") {
        const auto p = write_json(dir, "zero.json", R"({"kind":"pure","amplitudes":[[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0]]})");
        REQUIRE(cli::cmd_classify({p}, out, err) == cli::kExitInvalidState);
        REQUIRE(err.str().find("norm is 0, expected 1") != std::string::npos);
    }
    SECTION("near-threshold state exits 3 with the report") {
        PureState::Amplitudes a{};
        a[0] = 0.6;
        a[4] = 0.7e-8;
        a[7] = 0.8;
        write_state_file(dir.file("edge.json"), PureState::normalized(a));
        REQUIRE(cli::cmd_classify({dir.file("edge.json")}, out, err) == cli::kExitAmbiguous);
        REQUIRE(out.str().find("ambiguous: yes") != std::string::npos);
    }
    SECTION("mixed verdict") {
        write_state_file(dir.file("noise.json"), make_state(FamilyId::GhzNoise, {0.5}));
        REQUIRE(cli::cmd_classify({dir.file("noise.json")}, out, err) == cli::kExitOk);
        REQUIRE(out.str().find("GHZ-distillable") != std::string::npos);
        REQUIRE(out.str().find("undetermined") != std::string::npos);
    }
}

TEST_CASE("cmd_measure and cmd_gsd", "[cli]") {
    TempDir dir;
    std::ostringstream out, err;
    SECTION("measure") {
        write_state_file(dir.file("w.json"), w_state());
        REQUIRE(cli::cmd_measure({dir.file("w.json"), true}, out, err) == cli::kExitOk);
        const json j = json::parse(out.str());
        REQUIRE(std::abs(j["q_mult"].get<double>() - 8.0 / 9.0) < 1e-12);
    }
    SECTION("gsd of |000>") {
        write_state_file(dir.file("z.json"), PureState::basis(0));
        REQUIRE(cli::cmd_gsd({dir.file("z.json"), PhaseMode::Raw, kDefaultZeroTol, true}, out, err) == cli::kExitOk);
        const json j = json::parse(out.str());
        REQUIRE(j["coefficients"]["alpha"][0].get<double>() == 1.0);
        REQUIRE(j["pattern"] == "product");
    }
    SECTION("gsd of GHZ, raw") {
        write_state_file(dir.file("g.json"), ghz_state());
        REQUIRE(cli::cmd_gsd({dir.file("g.json")}, out, err) == cli::kExitOk);
        REQUIRE(out.str().find("|alpha| = 0.707106781187") != std::string::npos);
        REQUIRE(out.str().find("|omega| = 0.707106781187") != std::string::npos);
        REQUIRE(out.str().find("U_C:") != std::string::npos);
    }
    SECTION("gsd of W'") {
        write_state_file(dir.file("w.json"), w_prime_state());
        REQUIRE(cli::cmd_gsd({dir.file("w.json"), PhaseMode::Normal}, out, err) == cli::kExitOk);
        REQUIRE(out.str().find("pattern: W-like") != std::string::npos);
    }
    SECTION("gsd refuses mixed states") {
        write_state_file(dir.file("m.json"), make_state(FamilyId::RhoZero, {}));
        REQUIRE(cli::cmd_gsd({dir.file("m.json")}, out, err) == cli::kExitFailure);
        REQUIRE(err.str().find("MixedStateUnsupported") != std::string::npos);
    }
}

TEST_CASE("cmd_sweep CSV", "[cli]") {
    TempDir dir;
    std::ostringstream out, err;
    const std::string header = sweep_csv_header();
    REQUIRE(count(header, ',') + 1 == 4 + 9 + 1 + 9 + 9);

    for (FamilyId f : kAllFamilies) {
        out.str("");
        REQUIRE(cli::cmd_sweep(sweep_options(std::string(to_string(f)), 5), out, err) == cli::kExitOk);
        std::istringstream lines(out.str());
        std::string line;
        std::getline(lines, line);
        REQUIRE(line == header);
        std::size_t rows = 0;
        while (std::getline(lines, line)) {
            ++rows;
            REQUIRE(count(line, ',') == count(header, ','));
            REQUIRE(line.find('\r') == std::string::npos);
        }
        REQUIRE(rows == (arity(f) == 0 ? 1u : 5u));
    }

    SECTION("ghz_like ends at 1") {
        out.str("");
        REQUIRE(cli::cmd_sweep(sweep_options("ghz_like", 3), out, err) == cli::kExitOk);
        const std::string text = out.str();
        const auto last = text.substr(text.rfind('\n', text.size() - 2) + 1);
        REQUIRE(last.rfind("ghz_like,0.707106781187,,,1,1,1,1,", 0) == 0);
    }
    SECTION("writes to a file") {
        REQUIRE(cli::cmd_sweep(sweep_options("ghz_noise", 11, dir.file("n.csv")), out, err) == cli::kExitOk);
        REQUIRE(slurp(dir.file("n.csv")).rfind(header, 0) == 0);
    }
    SECTION("unknown family and unwritable path") {
        REQUIRE(cli::cmd_sweep(sweep_options("bogus"), out, err) == cli::kExitFailure);
        REQUIRE(err.str().find("unknown family") != std::string::npos);
        REQUIRE(cli::cmd_sweep(sweep_options("ghz", 1, dir.file("no/such/dir.csv")), out, err) == cli::kExitFailure);
    }
}

TEST_CASE("cmd_random", "[cli]") {
    TempDir dir;
    std::ostringstream out, err;
    SECTION("deterministic for a fixed seed") {
        REQUIRE(cli::cmd_random(random_options(100, 7, dir.file("a.csv")), out, err) == cli::kExitOk);
        REQUIRE(cli::cmd_random(random_options(100, 7, dir.file("b.csv")), out, err) == cli::kExitOk);
        REQUIRE(slurp(dir.file("a.csv")) == slurp(dir.file("b.csv")));
        REQUIRE(count(slurp(dir.file("a.csv")), '\n') == 101);
    }
    SECTION("single state") {
        REQUIRE(cli::cmd_random(random_options(1, 3), out, err) == cli::kExitOk);
        REQUIRE(out.str().find("# subtype histogram (1 states") != std::string::npos);
    }
    SECTION("Haar states are mostly W-like") {
        REQUIRE(cli::cmd_random(random_options(2000, 11, dir.file("h.csv")), out, err) == cli::kExitOk);
        REQUIRE(out.str().find("2-3: 2000") != std::string::npos);
    }
    SECTION("zero count") { REQUIRE(cli::cmd_random(random_options(0, 1), out, err) == cli::kExitFailure); }
}
