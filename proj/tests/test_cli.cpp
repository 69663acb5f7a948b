#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fima/experiments.hpp"

using namespace fima;
namespace fs = std::filesystem;

namespace {
std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

fs::path temp_dir(const std::string& tag) {
    const auto dir = fs::temp_directory_path() / ("fima_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}
}  // namespace

TEST_CASE("config parsing and overrides") {
    const std::string text = R"(
experiment = sampler-check
[model]
alpha = 1.8
d = 0.3
kernel = gamma(2.0, 1.0)
[ensemble]
replicas = 5000
master_seed = 99
[dependence]
lags = 8, 16, 32
)";
    const auto cfg = parse_config_text(text);
    CHECK(cfg.experiment == "sampler-check");
    CHECK(cfg.alpha == 1.8);
    CHECK(cfg.d == 0.3);
    CHECK(cfg.replicas == 5000);
    CHECK(cfg.master_seed == 99);
    CHECK(cfg.lags == std::vector<double>{8, 16, 32});
    CHECK_NOTHROW(cfg.validate());

    CHECK_THROWS_AS(parse_config_text("experiment = x\nnot a key value line\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("experiment = x\n[model]\nalpha = abc\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("experiment = x\n[model]\nunknown = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[model]\nalpha = 1.5\n"), ConfigError);  // no experiment
}

TEST_CASE("constraint diagnostics carry the allowed range") {
    auto cfg = parse_config_text("experiment = lfsm\n[model]\nalpha = 1.5\nd = 0.5\n");
    try {
        cfg.validate();
        CHECK(false);
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("(0, 0.333") != std::string::npos);
    }
}

TEST_CASE("kernel vocabulary") {
    CHECK(parse_kernel_spec("exp(1.0)")(1.0) == doctest::Approx(std::exp(-1.0)));
    CHECK(parse_kernel_spec("gamma(2,1)")(2.0) == doctest::Approx(2.0 * std::exp(-2.0)));
    CHECK(parse_kernel_spec("indicator(0,1)")(0.5) == 1.0);
    CHECK(parse_kernel_spec("truncexp(1,2)")(3.0) == 0.0);
    CHECK(parse_kernel_spec("zero()").is_zero());
    CHECK_THROWS_AS(parse_kernel_spec("cauchy(1)"), ConfigError);
    CHECK_THROWS_AS(parse_kernel_spec("exp"), ConfigError);
    CHECK_THROWS_AS(parse_kernel_spec("gamma(0.5, 1)"), ConfigError);  // shape < 1
}

TEST_CASE("experiment registry lists the eight experiments") {
    const auto& reg = experiment_registry();
    CHECK(reg.size() == 8);
    const std::vector<std::string> names{"sampler-check", "isometry",     "lfsm",
                                         "representation", "stationarity", "dependence",
                                         "lrd-fit",        "lln"};
    for (std::size_t i = 0; i < names.size(); ++i) CHECK(reg[i].name == names[i]);
    for (const auto& e : reg) CHECK(!e.claim.empty());
}

TEST_CASE("sampler-check experiment runs and reruns byte-identically" * doctest::timeout(300)) {
    auto cfg = parse_config_text("experiment = sampler-check\n[ensemble]\nreplicas = 20000\n");
    cfg.master_seed = 7;

    const auto dir1 = temp_dir("run1");
    const auto res1 = run_experiment(cfg, dir1);
    CHECK(res1.all_pass());
    CHECK(fs::exists(dir1 / "summary.json"));
    CHECK(fs::exists(dir1 / "meta.json"));
    CHECK(fs::exists(dir1 / "sampler_cf.csv"));

    const auto j = nlohmann::json::parse(slurp(dir1 / "summary.json"));
    CHECK(j["experiment"] == "sampler-check");
    CHECK(j["all_pass"] == true);
    CHECK(j["config"]["ensemble"]["master_seed"] == 7);
    CHECK(j.contains("version"));

    const auto dir2 = temp_dir("run2");
    const auto res2 = run_experiment(cfg, dir2);
    CHECK(res2.all_pass());
    CHECK(slurp(dir1 / "summary.json") == slurp(dir2 / "summary.json"));
    CHECK(slurp(dir1 / "sampler_cf.csv") == slurp(dir2 / "sampler_cf.csv"));

    fs::remove_all(dir1);
    fs::remove_all(dir2);
}

TEST_CASE("unknown experiment is a config error") {
    auto cfg = parse_config_text("experiment = nope\n");
    CHECK_THROWS_AS(run_experiment(cfg, temp_dir("bad")), ConfigError);
}
