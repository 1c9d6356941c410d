#include <doctest.h>

#include "fucik/config.hpp"

#include <sstream>

using namespace fucik;

TEST_CASE("configuration parsing with comments and overrides") {
    std::istringstream in(
        "# geometry\n"
        "alpha = 0.4\n"
        "epsilon = 0.2  # collar width\n"
        "resolution = 101\n"
        "\n"
        "s_grid = 0, 0.5, 1\n"
        "output_dir = out\n");
    RunConfig cfg = parse_config(in);
    CHECK(cfg.domain.alpha == doctest::Approx(0.4));
    CHECK(cfg.domain.epsilon == doctest::Approx(0.2));
    CHECK(cfg.resolution == 101);
    REQUIRE(cfg.s_grid.size() == 3);
    CHECK(cfg.s_grid[1] == doctest::Approx(0.5));
    CHECK(cfg.output_dir == "out");

    apply_override(cfg, "p", "3");
    apply_override(cfg, "alpha_list", "0.9,0.95");
    CHECK(cfg.domain.p == doctest::Approx(3.0));
    REQUIRE(cfg.alpha_list.size() == 2);

    CHECK_THROWS_AS(apply_override(cfg, "no_such_key", "1"), ConfigError);
    CHECK_THROWS_AS(apply_override(cfg, "resolution", "many"), ConfigError);

    std::istringstream bad("alpha 0.4\n");
    CHECK_THROWS_AS(parse_config(bad), ConfigError);
}

TEST_CASE("normalize fills defaults and validates") {
    RunConfig cfg;
    cfg.normalize();
    REQUIRE(cfg.s_grid.size() == 14); // 0..1 step 0.1, then 2, 4, 8
    CHECK(cfg.s_grid.front() == 0.0);
    CHECK(cfg.s_grid.back() == 8.0);
    REQUIRE(cfg.alpha_list.size() == 3);

    RunConfig bad;
    bad.resolution = 4;
    CHECK_THROWS_AS(bad.normalize(), ConfigError);
    bad = RunConfig{};
    bad.path_samples = 5;
    CHECK_THROWS_AS(bad.normalize(), ConfigError);
    bad = RunConfig{};
    bad.domain.alpha = 2.0;
    CHECK_THROWS_AS(bad.normalize(), ConfigError);
}

TEST_CASE("config hash is stable and value-sensitive") {
    RunConfig a, b;
    a.normalize();
    b.normalize();
    CHECK(config_hash(a) == config_hash(b));
    CHECK(canonical_text(a) == canonical_text(b));

    apply_override(b, "alpha", "0.51");
    CHECK(config_hash(a) != config_hash(b));

    RunConfig c = a;
    c.seed = 2;
    CHECK(config_hash(a) != config_hash(c));
}
