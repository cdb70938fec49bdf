#include "sqda/array.hpp"

#include <doctest.h>

using namespace sqda;

TEST_CASE("standard 8x16 array has 56 seat dots") {
  const ArrayConfig config = buildStandardArray(8, 16, 4);
  const auto seats = seatDots(config);
  CHECK(seats.size() == 56);
  // independent count: non-row-shared columns off the bus row
  int expected = 0;
  for (int r = 1; r <= config.rows(); ++r) {
    for (int c = 1; c <= config.cols(); ++c) {
      if (r != config.busRow() && !config.isR(c)) {
        ++expected;
      }
    }
  }
  CHECK(static_cast<int>(seats.size()) == expected);
  for (const Dot& d : seats) {
    CHECK(isSeat(config, d));
    CHECK(d.col % 2 == 1);
    CHECK(d.row != 4);
  }
}

TEST_CASE("standard array wiring") {
  const ArrayConfig config = buildStandardArray(8, 16, 4);
  for (int c = 1; c <= 16; ++c) {
    CHECK(config.isR(c) == (c % 2 == 0));
  }
  CHECK(config.hasChannel({3, 5}, {3, 6}));
  CHECK(config.hasChannel({3, 6}, {3, 5}));
  CHECK(config.hasChannel({3, 6}, {4, 6}));   // vertical inside an aisle column
  CHECK(!config.hasChannel({3, 5}, {4, 5}));  // no vertical in seat columns
  CHECK(!config.hasChannel({3, 5}, {3, 7}));
  CHECK(config.hasStandardChannels());
}

TEST_CASE("seat dots are sorted row-major") {
  const ArrayConfig config = buildStandardArray(5, 6, 3);
  const auto seats = seatDots(config);
  for (std::size_t i = 1; i < seats.size(); ++i) {
    CHECK(seats[i - 1] < seats[i]);
  }
}

TEST_CASE("dot index round trip") {
  const ArrayConfig config = buildStandardArray(5, 6, 3);
  for (int i = 0; i < config.dotCount(); ++i) {
    CHECK(config.dotIndex(config.dotAt(i)) == i);
  }
}

TEST_CASE("invalid configurations are rejected") {
  CHECK_THROWS_AS(buildStandardArray(8, 15, 4), SqdaError); // odd column count
  CHECK_THROWS_AS(buildStandardArray(2, 4, 1), SqdaError);  // bus row on the edge
  CHECK_THROWS_AS(buildStandardArray(8, 16, 8), SqdaError);
  // channels must join dots at Manhattan distance 1
  CHECK_THROWS_AS(ArrayConfig(3, 3, 2, {}, {{Dot{1, 1}, Dot{1, 3}}}), SqdaError);
  CHECK_THROWS_AS(ArrayConfig(3, 3, 2, {}, {{Dot{1, 1}, Dot{2, 2}}}), SqdaError);
  CHECK_THROWS_AS(ArrayConfig(3, 3, 5, {}, {}), SqdaError);
  CHECK_THROWS_AS(ArrayConfig(3, 3, 2, {4}, {}), SqdaError);
  CHECK_THROWS_AS(ArrayConfig(3, 3, 2, {}, {{Dot{1, 1}, Dot{1, 0}}}), SqdaError);
}

TEST_CASE("custom array accepts explicit channel lists") {
  const ArrayConfig config(2, 4, 2, {},
                           {{Dot{1, 1}, Dot{1, 2}}, {Dot{1, 2}, Dot{1, 3}}});
  CHECK(config.hasChannel({1, 1}, {1, 2}));
  CHECK(!config.hasChannel({1, 3}, {1, 4}));
  CHECK(!config.hasStandardChannels());
  CHECK(config.channels().size() == 2);
}
