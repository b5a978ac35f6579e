#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <json.hpp>
#include <sstream>
#include <unistd.h>

#include "carleman_lab/commands.hpp"
#include "carleman_lab/config.hpp"
#include "clab/errors.hpp"
#include "clab/io.hpp"

using namespace clab;
using namespace clab::app;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    return fs::temp_directory_path() / ("clab_cli_test_" + std::to_string(::getpid())) / name;
}

fs::path write_config(const std::string& name, const std::string& text) {
    const auto path = scratch(name);
    io::write_text(path, text);
    return path;
}

struct Run {
    int code;
    std::string out, err;
};

Run cli(std::vector<std::string> args) {
    args.insert(args.begin(), "carleman-lab");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

template <class E>
std::string message_of(const std::string& text) {
    try {
        (void)parse_config_text(text);
    } catch (const E& e) {
        return e.what();
    }
    return "<no throw>";
}

const char* kSmall = R"({"grid": {"t": 16, "x": 8, "xn": 64, "z": 8}, "bound_samples": 300,
  "subelliptic_family": 3, "carleman_family": 2, "forward": {"steps": 16, "cells": 8},
  "ucp": {"steps": 8, "cells": 40, "beta": {"start": 50, "stop": 100, "count": 2, "log": false}}, "seed": 7})";

}  // namespace

TEST_CASE("empty config gives the defaults") {
    const RunConfig c = parse_config_text("{}");
    CHECK(c.params.alpha == 0.5);
    CHECK(c.params.tau0 == -1.0);
    CHECK(c.params.X == 0.1);
    CHECK(c.params.T == 1.0);
    CHECK(c.params.n == 2);
    CHECK(c.grid.t == 64);
    const auto b = c.beta.values();
    REQUIRE(b.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(b[i] == doctest::Approx(20.0 * std::pow(2.0, i)).epsilon(1e-14));
    CHECK(c.ucp.beta.values().front() == 50.0);
    CHECK(c.ucp.beta.values().back() == 400.0);
    CHECK(c.ucp.beta.values()[1] == doctest::Approx(100.0));
    CHECK(c.seed == 1);
}

TEST_CASE("model parameter errors name the field") {
    CHECK_THROWS_AS(parse_config_text(R"({"alpha": 1.5})"), DomainError);
    CHECK(message_of<DomainError>(R"({"alpha": 1.5})").find("alpha") != std::string::npos);
    CHECK(message_of<DomainError>(R"({"tau0": 0.0})").find("tau0") != std::string::npos);
    CHECK(message_of<DomainError>(R"({"n": 0})").find("n ") != std::string::npos);
}

TEST_CASE("schema violations are config errors naming the field") {
    const std::pair<const char*, const char*> cases[] = {
        {R"({"alhpa": 0.5})", "alhpa"},
        {R"({"alpha": "half"})", "alpha"},
        {R"({"grid": {"t": 48}})", "grid.t"},
        {R"({"grid": {"x": "8"}})", "grid.x"},
        {R"({"grid": {"q": 8}})", "grid.q"},
        {R"({"grid": 8})", "grid"},
        {R"({"beta": {"start": 0.5}})", "beta.start"},
        {R"({"beta": {"start": 10, "stop": 5}})", "beta.stop"},
        {R"({"beta": {"count": 1}})", "beta.count"},
        {R"({"ucp": {"beta": {"log": 1}}})", "ucp.beta.log"},
        {R"({"ucp": {"n": 0}})", "ucp.n"},
        {R"({"forward": {"cells": 1}})", "forward.cells"},
        {R"({"bound_samples": 0})", "bound_samples"},
        {R"({"seed": -3})", "seed"},
        {R"({"out": ""})", "out"},
    };
    for (const auto& [text, field] : cases) {
        CAPTURE(text);
        CHECK(message_of<ConfigError>(text).find(std::string("\"") + field + "\"") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config_text("[1, 2]"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("{"), ConfigError);
    CHECK_THROWS_AS(parse_config(scratch("does-not-exist.json")), ConfigError);
}

TEST_CASE("config round trip") {
    const RunConfig a = parse_config_text(R"({"alpha": 0.3, "tau0": -2.5, "X": 0.05, "n": 1, "grid": {"z": 128},
        "beta": {"start": 3, "stop": 300, "count": 5, "log": true}, "seed": 18446744073709551615, "out": "x/y"})");
    const std::string once = to_json(a);
    const RunConfig b = parse_config_text(once);
    CHECK(to_json(b) == once);
    CHECK(b.params.alpha == 0.3);
    CHECK(b.seed == 18446744073709551615ULL);
    CHECK(b.grid.z == 128);
    CHECK(b.out == "x/y");
    CHECK(parse_config_text(to_json(RunConfig{})).grid.xn == RunConfig{}.grid.xn);
}

TEST_CASE("config hash ignores the output directory only") {
    RunConfig a, b;
    b.out = "elsewhere";
    CHECK(config_hash(a) == config_hash(b));
    CHECK(config_hash(a).size() == 16);
    b.seed = 2;
    CHECK(config_hash(a) != config_hash(b));
    b = a;
    b.params.alpha = 0.25;
    CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("beta sweeps") {
    const BetaSweep lin{10.0, 40.0, 4, false};
    CHECK(lin.values() == std::vector<double>{10.0, 20.0, 30.0, 40.0});
    const BetaSweep geo{1.0, 1000.0, 4, true};
    const auto v = geo.values();
    CHECK(v[1] == doctest::Approx(10.0));
    CHECK(v[2] == doctest::Approx(100.0));
    CHECK(v[3] == 1000.0);
}

TEST_CASE("command line errors exit with 2") {
    const auto cfg = write_config("ok.json", "{}");
    auto r = cli({"frobnicate", "--config", cfg.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("usage: carleman-lab") != std::string::npos);
    CHECK(cli({"verify-symbols"}).code == 2);
    CHECK(cli({}).code == 2);
    CHECK(cli({"verify-symbols", "--config", scratch("missing.json").string()}).code == 2);
    const auto bad = write_config("bad.json", R"({"alpha": 2})");
    r = cli({"verify-symbols", "--config", bad.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("alpha") != std::string::npos);
    CHECK(cli({"--help"}).code == 0);
    std::ostringstream log;
    CHECK_THROWS_AS(run_command("nope", RunConfig{}, log), ConfigError);
}

TEST_CASE("verify-symbols writes five stamped reports") {
    const auto cfg = write_config("small.json", kSmall);
    const auto out = scratch("vs");
    const auto r = cli({"verify-symbols", "--config", cfg.string(), "--out", out.string()});
    CHECK(r.code == 0);
    const std::string hash = config_hash(parse_config(cfg));
    for (const char* kind : {"FracReal", "Characteristic", "Bracket", "Elliptic", "Hypoelliptic"}) {
        const auto j = nlohmann::json::parse(io::read_text(out / "verify-symbols" / (std::string(kind) + ".json")));
        CHECK(j["kind"] == kind);
        CHECK(j["pass"] == true);
        CHECK(j["samples"] == 300);
        CHECK(j["config_hash"] == hash);
        CHECK(j["seed"] == 7);
    }
    CHECK(nlohmann::json::parse(io::read_text(out / "config.json"))["seed"] == 7);
}

TEST_CASE("outputs are deterministic and carry hash and seed") {
    const auto cfg = write_config("small.json", kSmall);
    for (const char* cmd : {"subelliptic", "carleman-sweep", "solve-forward"}) {
        CAPTURE(cmd);
        const auto a = scratch(std::string("det_a_") + cmd), b = scratch(std::string("det_b_") + cmd);
        CHECK(cli({cmd, "--config", cfg.string(), "--out", a.string()}).code == 0);
        CHECK(cli({cmd, "--config", cfg.string(), "--out", b.string()}).code == 0);
        const auto manifest = nlohmann::json::parse(io::read_text(a / cmd / "manifest.json"));
        REQUIRE(manifest["csv"].size() >= 1);
        for (const auto& entry : manifest["csv"]) {
            const std::string file = entry["file"];
            const std::string ta = io::read_text(a / cmd / file);
            CHECK(ta == io::read_text(b / cmd / file));
            CHECK(ta.find("# config_hash " + manifest["config_hash"].get<std::string>()) == 0);
            CHECK(ta.find("# seed 7\n") != std::string::npos);
            std::string header;
            for (const auto& c : entry["columns"]) header += (header.empty() ? "" : ",") + c.get<std::string>();
            CHECK(ta.find("\n" + header + "\n") != std::string::npos);
        }
    }
}

TEST_CASE("seed override changes the family and the stamp") {
    const auto cfg = write_config("small.json", kSmall);
    const auto a = scratch("seed_a"), b = scratch("seed_b");
    CHECK(cli({"subelliptic", "--config", cfg.string(), "--out", a.string()}).code == 0);
    CHECK(cli({"subelliptic", "--config", cfg.string(), "--out", b.string(), "--seed", "8"}).code == 0);
    const std::string ta = io::read_text(a / "subelliptic" / "ratios.csv");
    const std::string tb = io::read_text(b / "subelliptic" / "ratios.csv");
    CHECK(tb.find("# seed 8\n") != std::string::npos);
    CHECK(ta.substr(ta.find("member")) != tb.substr(tb.find("member")));
}

TEST_CASE("failed checks exit with 1 and library errors with 2") {
    const auto cfg = write_config("small.json", kSmall);
    // a coarse mesh cannot localize the commutator
    auto r = cli({"ucp-demo", "--config", cfg.string(), "--out", scratch("ucp").string()});
    CHECK(r.code == 1);
    CHECK(r.out.find("[ucp-demo] FAIL") != std::string::npos);
    const auto summary = nlohmann::json::parse(io::read_text(scratch("ucp") / "ucp-demo" / "summary.json"));
    CHECK(summary["pass"] == false);

    const auto hot = write_config("hot.json", R"({"grid": {"t": 16, "x": 8, "xn": 64}, "carleman_family": 1,
        "beta": {"start": 100, "stop": 5000, "count": 2}})");
    r = cli({"carleman-sweep", "--config", hot.string(), "--out", scratch("hot").string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("OverflowGuard") != std::string::npos);
}
