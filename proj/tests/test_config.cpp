#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "mmvr/config.hpp"
#include "mmvr/error.hpp"

using namespace mmvr;

TEST_CASE("defaults describe the baseline study") {
  const SweepConfig c;
  CHECK_NOTHROW(c.validate());
  CHECK(c.codebooks() == default_codebooks());
  CHECK(c.esn0.points().size() == 21);
  CHECK(c.user_power_w() == doctest::Approx(5e-3));
  CHECK(c.noise_reference_w() == c.p_b);
  const auto t = c.topology();
  CHECK(t.num_aps() == 2);
  CHECK(t.num_users() == 2);
  CHECK(t.aps()[0].id == 1);
}

TEST_CASE("parsing key = value lines") {
  const auto c = parse_config(R"(
# comment line
fc = 28e9          # trailing comment
n_sc = 16
n_t = 2, 4
n_rf = 1
scenario = min
esn0_start = -2
esn0_step = 0.5
esn0_stop = 2
ul_gain = gaussian
ap_positions = 1,1,2 ; 9,16,2
user_positions = 5,5,1
u = 1
seed = 99
)");
  CHECK(c.channel.grid.carrier_frequency_hz == 28e9);
  CHECK(c.channel.grid.n_sc == 16);
  CHECK(c.codebooks().size() == 2);
  CHECK(c.scenarios == std::vector<GainAggregation>{GainAggregation::Min});
  CHECK(c.esn0.points().size() == 9);
  CHECK(c.esn0.points().back() == doctest::Approx(2.0));
  CHECK(c.channel.ul_gain_model == UlGainModel::Gaussian);
  CHECK(c.ap_positions[1] == Position3D(9, 16, 2));
  CHECK(c.seed == 99);
  CHECK(c.channel.seed == 99);
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("malformed configuration is rejected") {
  CHECK_THROWS_AS(parse_config("nonsense = 1"), ConfigError);
  CHECK_THROWS_AS(parse_config("fc"), ConfigError);
  CHECK_THROWS_AS(parse_config("fc = sixty"), ConfigError);
  CHECK_THROWS_AS(parse_config("n_sc = 1.5"), ConfigError);
  CHECK_THROWS_AS(parse_config("scenario = median"), ConfigError);
  CHECK_THROWS_AS(parse_config("ap_positions = 1,2"), ConfigError);
  CHECK_THROWS_AS(parse_config("fc ="), ConfigError);

  try {
    parse_config("fc = 60e9\n\nbogus = 1\n");
    FAIL("expected an error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }

  CHECK_THROWS_AS(parse_config("mu = 1e-9\nlambda = 2e-9").validate(), ConfigError);
  CHECK_THROWS_AS(parse_config("u = 3").validate(), ConfigError);
  CHECK_THROWS_AS(parse_config("user_positions = 3,8,1.5 ; 70,10,1.5").validate(), ConfigError);
  CHECK_THROWS_AS(parse_config("codebooks = 2x4").validate(), ConfigError);
}

TEST_CASE("Es/N0 range strings") {
  const auto g = parse_esn0_range("0:5:20");
  CHECK(g.points() == std::vector<double>{0, 5, 10, 15, 20});
  CHECK(parse_esn0_range("0:0.1:1").points().size() == 11);
  CHECK_THROWS_AS(parse_esn0_range("5:1:0"), ConfigError);
  CHECK_THROWS_AS(parse_esn0_range("0:0:1"), ConfigError);
  CHECK_THROWS_AS(parse_esn0_range("0:1"), ConfigError);
}

TEST_CASE("codebook lists replace the n_t x n_rf grid") {
  const auto list = parse_codebook_list("2x1, 8X2", 1, 1);
  REQUIRE(list.size() == 2);
  CHECK(list[1] == Codebook{8, 2, 1, 1});
  CHECK_THROWS_AS(parse_codebook_list("2-1", 1, 1), ConfigError);

  SweepConfig c;
  c.codebook_filter = parse_codebook_list("8x2,2x1,8x2,16x1", 1, 1);
  const auto books = c.codebooks();
  REQUIRE(books.size() == 3);
  CHECK(books[0] == Codebook{8, 2, 1, 1});
  CHECK(books[2] == Codebook{16, 1, 1, 1});
}

TEST_CASE("scenario and queue unit parsing") {
  CHECK(parse_scenarios("both").size() == 2);
  CHECK(parse_scenarios("mean") == std::vector<GainAggregation>{GainAggregation::Mean});
  CHECK_THROWS_AS(parse_scenarios(""), ConfigError);
  CHECK(parse_queue_units("reciprocal") == QueueUnits::Reciprocal);
  CHECK_THROWS_AS(parse_queue_units("ns"), ConfigError);

  SweepConfig c;
  c.queue_units = QueueUnits::Reciprocal;
  CHECK(c.effective_traffic().mu == 4e9);
  CHECK(c.effective_traffic().lambda == 2e9);
}

TEST_CASE("random placement is reproducible") {
  SweepConfig c;
  c.random_placement = true;
  c.seed = 5;
  const auto a = c.topology();
  const auto b = c.topology();
  for (int i = 0; i < 2; ++i) CHECK(a.users()[i].position == b.users()[i].position);
}

TEST_CASE("load_config surfaces I/O failures") {
  CHECK_THROWS_AS(load_config("/nonexistent/dir/config.cfg"), IoError);
  const auto path = std::filesystem::temp_directory_path() / "mmvr_test_config.cfg";
  {
    std::ofstream out(path);
    out << "n_sc = 8\n";
  }
  CHECK(load_config(path).channel.grid.n_sc == 8);
  std::filesystem::remove(path);
}
