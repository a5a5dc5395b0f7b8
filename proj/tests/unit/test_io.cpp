#include "doctest.h"

#include <random>

#include "deqfi/json_io.hpp"
#include "deqfi/transform.hpp"
#include "test_utils.hpp"

using namespace deqfi;

TEST_CASE("state json round trip") {
  std::mt19937_64 rng(211);
  const DensityMatrix rho = scenarios::random_density(2, rng);
  const DensityMatrix back = io::state_from_json(io::state_to_json(rho));
  CHECK(ComplexMatrix::distance(back.mat(), rho.mat()) <= 1e-15);
  CHECK(back.n_qubits() == 2);
}

TEST_CASE("channel json round trip validates") {
  std::mt19937_64 rng(223);
  const KrausChannel ch = random_shp(2, 3, rng());
  const KrausChannel back = io::channel_from_json(io::channel_to_json(ch));
  CHECK(channels_equal(ch, back, 1e-12));

  // a non-CPTP list must be rejected on load
  io::json bad = io::channel_to_json(ch);
  bad["kraus"].push_back(bad["kraus"][0]);
  CHECK_THROWS_AS(io::channel_from_json(bad), std::invalid_argument);

  io::json malformed = {{"n", 1}};
  CHECK_THROWS_AS(io::channel_from_json(malformed), std::invalid_argument);

  io::json ragged = {{"n", 1}, {"kraus", io::json::array({io::json::array(
                                    {io::json::array({io::json::array({1.0, 0.0})})})})}};
  CHECK_THROWS_AS(io::channel_from_json(ragged), std::invalid_argument);
}

TEST_CASE("choi export uses the block convention") {
  const KrausChannel id(1, {ComplexMatrix::identity(2)});
  const io::json j = io::choi_to_json(choi_of(id));
  CHECK(j.at("n") == 1);
  // block (0, 1), inner entry (0, 1) -> row 0, column 3
  CHECK(j.at("choi").at(0).at(3).at(0).get<double>() == 1.0);
  CHECK(j.at("choi").at(1).at(2).at(0).get<double>() == 0.0);
}

TEST_CASE("verdict json carries certificates") {
  const io::json w = io::verdict_to_json(
      shp_nonmembership_certifier(named_channel(NamedChannel::W, 2)));
  CHECK(w.at("verdict") == "non_member");
  CHECK(w.at("certificate").at("type") == "span_coverage");
  CHECK(w.at("certificate").at("kraus_space_dim").get<int>() == 5);
  CHECK(w.at("certificate").at("covered_dim").get<int>() == 1);

  const io::json u = io::verdict_to_json(is_hdp(named_channel(NamedChannel::USio, 2)));
  CHECK(u.at("verdict") == "non_member");
  CHECK(u.at("certificate").at("type") == "choi_entry");
  CHECK(u.at("certificate").at("i").get<int>() == 0);
  CHECK(u.at("certificate").at("j").get<int>() == 3);
  CHECK(u.at("certificate").at("x").get<int>() == 0);
  CHECK(u.at("certificate").at("y").get<int>() == 2);
}

TEST_CASE("hdf json shape") {
  const auto fs = enumerate_hdf(2);
  const io::json j = io::hdf_to_json(fs[1]);
  CHECK(j.at("table").size() == 4);
  CHECK(j.at("mask").get<int>() == 0);
  CHECK(j.at("reorder") == io::json::array({1, 0}));
}
