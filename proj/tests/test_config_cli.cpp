#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hyperfront/config.hpp"
#include "hyperfront/errors.hpp"

using namespace hyperfront;
namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
    const std::string cmd =
        std::string(HYPERFRONT_BIN) + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(rc));
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::path("cli_scratch") / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("float formatting is shortest round-trip") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(-2.5) == "-2.5");
    CHECK(format_double(120.0) == "120");
    CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
    CHECK(format_double(0.0) == "0");
    for (double v : {1.0 / 3.0, 0.1, 1e-300, 123456.789, -2.5e-7, 1.6, 0.05,
                     6.02214076e23}) {
        const std::string s = format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
}

TEST_CASE("config text parsing: comments, overrides, errors") {
    ExperimentConfig cfg;
    parse_config_text(
        "# experiment\n"
        "epsilon = 0.25\n"
        "t_end = 10   # trailing comment\n"
        "\n"
        "ic = front\n"
        "epsilon = 0.75\n",  // later lines win
        "test.cfg", cfg);
    CHECK(cfg.epsilon == 0.75);
    CHECK(cfg.t_end == 10.0);
    CHECK(cfg.ic == "front");

    ExperimentConfig c2;
    CHECK_THROWS_WITH_AS(
        parse_config_text("epsilon = 0.5\n\nbogus = 1\n", "test.cfg", c2),
        doctest::Contains("test.cfg:3"), ValidationError);
    CHECK_THROWS_WITH_AS(parse_config_text("epsilon 0.5\n", "f", c2),
                         doctest::Contains("expected 'key = value'"), ValidationError);
    CHECK_THROWS_WITH_AS(parse_config_text("epsilon = abc\n", "f", c2),
                         doctest::Contains("invalid number"), ValidationError);
}

TEST_CASE("typed setters: lists, optionals, booleans") {
    ExperimentConfig cfg;
    cfg.set("epsilons", "0.5, 1 ,2", "flag");
    REQUIRE(cfg.epsilons.size() == 3);
    CHECK(cfg.epsilons[1] == 1.0);
    CHECK(!cfg.speed.has_value());
    cfg.set("speed", "1.7", "flag");
    CHECK(cfg.speed == 1.7);
    cfg.set("center", "-13", "flag");
    CHECK(cfg.center == -13.0);
    cfg.set("critical", "true", "flag");
    CHECK(cfg.critical);
    cfg.set("critical", "0", "flag");
    CHECK(!cfg.critical);
    CHECK_THROWS_AS(cfg.set("critical", "maybe", "flag"), ValidationError);
    CHECK_THROWS_AS(cfg.set("epsilons", "0.5,,1", "flag"), ValidationError);
    CHECK_THROWS_AS(cfg.set("jobs", "2.5", "flag"), ValidationError);
}

TEST_CASE("validation rejects inconsistent values") {
    const std::vector<std::pair<std::string, std::string>> bad = {
        {"epsilon", "-1"},   {"epsilon", "0"},    {"rate", "0"},
        {"a", "200"},        {"dx", "0"},         {"dx", "1000"},
        {"t_end", "-1"},     {"cfl", "0"},        {"cfl", "1"},
        {"snapshot_every", "-0.5"},               {"ic", "bogus"},
        {"level", "0"},      {"level", "1"},      {"discard", "1"},
        {"discard", "-0.1"}, {"jobs", "-1"},      {"mode", "bogus"},
        {"amplitude", "inf"},                     {"width", "0"},
        {"growth", "gompertz"},                   {"speed", "-2"},
    };
    for (const auto& [key, value] : bad) {
        CAPTURE(key);
        CAPTURE(value);
        ExperimentConfig cfg;
        cfg.set(key, value, "flag");
        CHECK_THROWS_AS(cfg.validate(), ValidationError);
    }
    ExperimentConfig ok;
    ok.set("amplitude", "0", "flag");  // "no perturbation" is a valid experiment
    CHECK_NOTHROW(ok.validate());
    ExperimentConfig neg;
    neg.set("amplitude", "-0.01", "flag");  // carves density out: allowed
    CHECK_NOTHROW(neg.validate());
}

TEST_CASE("render round-trips losslessly") {
    ExperimentConfig cfg;
    cfg.epsilon = 1.0 / 3.0;
    cfg.epsilons = {0.3, 0.7, 1.1};
    cfg.speed = 1.7000000000000002;
    cfg.center = -0.1;
    cfg.critical = true;
    cfg.jobs = 3;
    cfg.out = "results";
    const std::string once = cfg.render();
    ExperimentConfig back;
    parse_config_text(once, "rendered", back);
    CHECK(back.render() == once);
    CHECK(back.epsilon == cfg.epsilon);
    CHECK(back.speed == cfg.speed);
    CHECK(back.epsilons == cfg.epsilons);

    // Prefixed render is the CSV header form.
    const std::string pref = cfg.render("# ");
    CHECK(pref.rfind("# epsilon = ", 0) == 0);
}

TEST_CASE("presets pin the three reference experiments") {
    ExperimentConfig cfg;
    cfg.speed = 9.0;  // presets run at the regime's own speed
    apply_preset(cfg, "fig1b");
    CHECK(cfg.epsilon == 1.0);
    CHECK(cfg.t_end == 60.0);
    CHECK(!cfg.speed.has_value());
    CHECK(cfg.a == -30.0);
    CHECK(cfg.b == 120.0);
    CHECK(cfg.dx == 0.05);
    CHECK(cfg.ic == "step");

    apply_preset(cfg, "fig1c");
    CHECK(cfg.epsilon == 2.0);
    CHECK(cfg.t_end == 120.0);  // slow front: longer settling run

    apply_preset(cfg, "fig1a");
    CHECK(cfg.epsilon == 0.5);
    CHECK(cfg.t_end == 60.0);

    CHECK_THROWS_AS(apply_preset(cfg, "fig2"), ValidationError);
}

TEST_CASE("cli: dispersion table with version header") {
    const fs::path dir = fresh_dir("disp");
    REQUIRE(run_cli("dispersion --epsilons 0.5,1,2 --out " + dir.string()) == 0);
    const std::string csv = slurp(dir / "dispersion.csv");
    CHECK(csv.rfind("# hyperfront 0.1.0\n", 0) == 0);
    CHECK(csv.find("epsilon,regime,s_star,lambda,lambda_prime,theta") !=
          std::string::npos);
    CHECK(csv.find("\n0.5,parabolic,1.6,") != std::string::npos);
    CHECK(csv.find("\n1,critical,1,") != std::string::npos);
    CHECK(csv.find("\n2,hyperbolic,0.5,") != std::string::npos);
}

TEST_CASE("cli: profile output is byte-stable across runs") {
    const fs::path dir = fresh_dir("prof");
    REQUIRE(run_cli("profile --epsilon 2 --out " + dir.string()) == 0);
    const std::string first = slurp(dir / "profile.csv");
    REQUIRE(run_cli("profile --epsilon 2 --out " + dir.string()) == 0);
    const std::string second = slurp(dir / "profile.csv");
    REQUIRE(first.size() > 100);
    CHECK(first == second);
    CHECK(first.find("# kind = ") != std::string::npos);
    CHECK(first.find("z,nu") != std::string::npos);
}

TEST_CASE("cli: validation failures exit with code 1") {
    CHECK(run_cli("dispersion --epsilon -1") == 1);
    CHECK(run_cli("frobnicate") == 1);
    CHECK(run_cli("simulate --cfl 1.5") == 1);
}

TEST_CASE("cli: explicit flags override the config file") {
    const fs::path dir = fresh_dir("ovr");
    const fs::path cfg_file = dir / "exp.cfg";
    {
        std::ofstream out(cfg_file);
        out << "epsilon = 2\nout = " << dir.string() << "\n";
    }
    REQUIRE(run_cli("dispersion --config " + cfg_file.string() + " --epsilon 0.5") ==
            0);
    const std::string csv = slurp(dir / "dispersion.csv");
    CHECK(csv.find("# epsilon = 0.5\n") != std::string::npos);
    CHECK(csv.find("\n0.5,parabolic,") != std::string::npos);
    CHECK(csv.find("\n2,hyperbolic,") == std::string::npos);
}

TEST_CASE("cli: zero-amplitude stability run reports identically zero energy") {
    const fs::path dir = fresh_dir("zero");
    REQUIRE(run_cli("stability --epsilon 0.5 --amplitude 0 --a -20 --b 20 "
                    "--t-end 2 --snapshot-every 0.5 --out " +
                    dir.string()) == 0);
    const std::string csv = slurp(dir / "energy.csv");
    std::istringstream in(csv);
    std::string line;
    int data_rows = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("t,", 0) == 0) continue;
        ++data_rows;
        const std::size_t comma = line.find(',');
        REQUIRE(comma != std::string::npos);
        CHECK(line.substr(comma) == ",0,0,0,0,0,0");
    }
    CHECK(data_rows >= 4);
}
