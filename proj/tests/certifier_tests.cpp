#include "sqda/constraints.hpp"

#include <doctest.h>

using namespace sqda;

namespace {

ArrayConfig smallStandard() { return buildStandardArray(5, 6, 3); }

// Two-row corridor: seats fill row 1, movement only sideways, no
// row-shared columns, so a full row can never rearrange.
ArrayConfig corridor() {
  std::vector<std::pair<Dot, Dot>> channels;
  for (int c = 1; c < 4; ++c) {
    channels.push_back({Dot{1, c}, Dot{1, c + 1}});
    channels.push_back({Dot{2, c}, Dot{2, c + 1}});
  }
  return ArrayConfig(2, 4, 2, {}, channels);
}

} // namespace

TEST_CASE("small standard arrays satisfy all six conditions") {
  const ArrayConfig config = smallStandard();
  for (int electrons = 1; electrons <= 2; ++electrons) {
    const CertReport report = certifyConditions(config, electrons, 2000000);
    CAPTURE(electrons);
    CHECK(report.allHold());
  }
}

TEST_CASE("serial and parallel certification agree") {
  const ArrayConfig config = smallStandard();
  const CertReport parallel = certifyConditions(config, 2, 2000000, true);
  const CertReport serial = certifyConditions(config, 2, 2000000, false);
  CHECK(parallel.statesExplored == serial.statesExplored);
  REQUIRE(parallel.verdicts.size() == serial.verdicts.size());
  for (const auto& [name, result] : parallel.verdicts) {
    CHECK(serial.verdicts.at(name).verdict == result.verdict);
    CHECK(serial.verdicts.at(name).witness == result.witness);
  }
}

TEST_CASE("one electron explores exactly the dot graph") {
  const ArrayConfig config = smallStandard();
  const CertReport report = certifyConditions(config, 1, 2000000);
  CHECK(report.allHold());
  // every dot is reachable, so the state space is the dot set
  CHECK(report.statesExplored == static_cast<std::size_t>(config.dotCount()));
}

TEST_CASE("an overfilled corridor cannot rearrange: C2 fails with a witness") {
  const CertReport report = certifyConditions(corridor(), 4, 2000000);
  CHECK(report.verdicts.at("C2").verdict == Verdict::Fails);
  CHECK(!report.verdicts.at("C2").witness.empty());
  CHECK(report.verdicts.at("C5").verdict == Verdict::Holds);
  // measurements need the rightmost column, forever out of reach as well
  CHECK(report.verdicts.at("C3").verdict == Verdict::Fails);
}

TEST_CASE("exhausting the budget yields unknown verdicts but decides C5") {
  const CertReport report = certifyConditions(smallStandard(), 2, 50);
  CHECK(report.verdicts.at("C1").verdict == Verdict::Unknown);
  CHECK(report.verdicts.at("C4").verdict == Verdict::Unknown);
  CHECK(report.verdicts.at("C5").verdict == Verdict::Holds);
  CHECK(!report.allHold());
}

TEST_CASE("certifier scale limits") {
  CHECK_THROWS_AS(certifyConditions(smallStandard(), 9, 1000), SqdaError);
  CHECK_THROWS_AS(certifyConditions(buildStandardArray(16, 16, 4), 1, 1000), SqdaError);
}
