#include <doctest.h>

#include <sstream>

#include "optcov/config.hpp"

using namespace optcov;

TEST_CASE("defaults") {
  const RunConfig c;
  CHECK(c.deployment.radius == 5.0);
  CHECK(c.deployment.width == 50.0);
  CHECK(c.optics.eps == 10.0);
  CHECK(c.protocol.weights.battery == 0.4);
  CHECK(c.protocol.weights.neighbors == 0.3);
  CHECK(c.protocol.weights.distance == 0.2);
  CHECK(c.protocol.theta == 0.1);
  CHECK(c.protocol.cut_for(c.optics) == 5.0);
  CHECK(c.experiment.d_list.size() == 9);
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("ini parsing") {
  std::istringstream in(
      "[deployment]\ncount = 40\nseed = 9\n"
      "[optics]\neps = 7.5\nmin_pts = 3\neps_prime = 3\n"
      "[protocol]\ntheta = 0.2\nweight_distance = 0.5\n"
      "[experiment]\nd_list = 10, 20,30\ntrials = 2\n"
      "[output]\ndir = out/x\n");
  const RunConfig c = parse_config(in);
  CHECK(c.deployment.count == 40);
  CHECK(c.deployment.seed == 9);
  CHECK(c.optics.eps == 7.5);
  CHECK(c.optics.min_pts == 3);
  CHECK(c.protocol.eps_prime == 3.0);
  CHECK(c.protocol.theta == 0.2);
  CHECK(c.protocol.weights.distance == 0.5);
  CHECK(c.experiment.d_list == std::vector<std::size_t>{10, 20, 30});
  CHECK(c.experiment.trials == 2);
  CHECK(c.output_dir == "out/x");
}

TEST_CASE("written ini parses back to the same values") {
  RunConfig c;
  c.deployment.seed = 77;
  c.protocol.eps_prime = 4.0;
  c.experiment.d_list = {5, 6};
  std::ostringstream out;
  c.write_ini(out);
  std::istringstream in(out.str());
  const RunConfig back = parse_config(in);
  std::ostringstream again;
  back.write_ini(again);
  CHECK(out.str() == again.str());
}

TEST_CASE("config errors") {
  std::istringstream unknown("[optics]\nfoo = 1\n");
  CHECK_THROWS_AS(parse_config(unknown), ConfigError);
  std::istringstream bad_number("[optics]\neps = ten\n");
  CHECK_THROWS_AS(parse_config(bad_number), ConfigError);
  std::istringstream unsectioned("eps = 3\n");
  CHECK_THROWS_AS(parse_config(unsectioned), ConfigError);

  RunConfig c;
  c.optics.eps = 4.0;
  try {
    c.validate();
    FAIL("eps < radius must be rejected");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("2r <= 2*eps") != std::string::npos);
  }

  RunConfig t;
  t.experiment.trials = 0;
  CHECK_THROWS_AS(t.validate(), ConfigError);

  RunConfig cut;
  cut.protocol.eps_prime = 11.0;
  CHECK_THROWS_AS(cut.validate(), ConfigError);
}

TEST_CASE("overrides") {
  RunConfig c;
  apply_override(c, "protocol.theta=0.25");
  apply_override(c, "experiment.d_list=1");
  CHECK(c.protocol.theta == 0.25);
  CHECK(c.experiment.d_list == std::vector<std::size_t>{1});
  CHECK_THROWS_AS(apply_override(c, "theta=0.2"), ConfigError);
  CHECK_THROWS_AS(apply_override(c, "protocol.nope=1"), ConfigError);
}
