#include "doctest.h"

#include "oracle/equivalence.hpp"

using namespace blastertrace;

namespace {
const std::vector<std::int64_t> kSlacks{0, 1'000'000, 60'000'000, 300'000'000, 900'000'000};
const std::vector<std::int64_t> kWindows{0, 25'000'000, 300'000'000};
}  // namespace

TEST_CASE("tracing passes agree with the exhaustive scan on small corpora") {
  std::size_t nonempty = 0;
  for (std::uint64_t seed = 1; seed <= 1500; ++seed) {
    oracle::SmallCorpusGen gen(seed);
    auto corpus = gen.make(static_cast<std::size_t>(gen.gen().range(0, 100)));
    REQUIRE(corpus.size() <= 100);
    if (!corpus.victim_fw.empty()) ++nonempty;
    auto diff = oracle::compare_all(corpus, kSlacks, kWindows);
    INFO("seed " << seed);
    REQUIRE(diff.empty());
  }
  CHECK(nonempty > 1000);
}

TEST_CASE("oracle self-check: picks the lower index on equal timestamps") {
  std::vector<FirewallEntry> fw(3);
  for (auto& e : fw) {
    e.ts = *Timestamp::make(Date{2009, 5, 7}, 14, 13, 34);
    e.action = FirewallAction::parse("OPEN-INBOUND");
    e.protocol = "TCP";
    e.src_ip = IpAddress{{1, 1, 1, 1}};
    e.dst_ip = IpAddress{{2, 2, 2, 2}};
    e.dst_port = Port{135};
  }
  fw[0].dst_port = Port{80};
  auto out = oracle::victim_firewall(fw, IpAddress{{2, 2, 2, 2}});
  REQUIRE(out.size() == 2);
  CHECK(out[0].attempt == 1);
  CHECK(out[1].attempt == 2);
}
