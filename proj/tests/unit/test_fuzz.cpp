#include "doctest.h"

#include "blastertrace/parsers.hpp"
#include "blastertrace/text_input.hpp"
#include "support/data.hpp"
#include "support/gen.hpp"

using namespace blastertrace;

namespace {

// Random bytes, random mutations of real log text, and splices of the two.
std::string fuzz_input(testgen::Gen& g, const std::vector<std::string>& seeds) {
  switch (g.range(0, 2)) {
    case 0:
      return g.bytes(static_cast<std::size_t>(g.range(0, 400)));
    case 1: {
      std::string s = g.pick(seeds);
      for (long n = g.range(1, 12); n > 0 && !s.empty(); --n) {
        auto pos = static_cast<std::size_t>(g.range(0, static_cast<long>(s.size()) - 1));
        switch (g.range(0, 3)) {
          case 0: s[pos] = static_cast<char>(g.range(0, 255)); break;
          case 1: s.erase(pos, static_cast<std::size_t>(g.range(1, 8))); break;
          case 2: s.insert(pos, g.bytes(static_cast<std::size_t>(g.range(1, 8)))); break;
          default: s.insert(pos, "\n"); break;
        }
      }
      return s;
    }
    default: {
      std::string a = g.pick(seeds);
      std::string b = g.pick(seeds);
      auto cut_a = static_cast<std::size_t>(g.range(0, static_cast<long>(a.size())));
      auto cut_b = static_cast<std::size_t>(g.range(0, static_cast<long>(b.size())));
      return a.substr(0, cut_a) + b.substr(cut_b);
    }
  }
}

std::vector<std::string> seeds() {
  std::vector<std::string> out;
  for (const char* f : {"victim/pfirewall.log", "attacker/pfirewall.log", "victim/system.txt",
                        "victim/application.txt", "victim/security.txt", "attacker/security.txt", "ids/alert.log"}) {
    out.push_back(testdata::testbed(f));
  }
  out.push_back("\xFF\xFE" + std::string("2\0000\0000\0009\0", 8));
  out.push_back("\xEF\xBB\xBF#Fields: date time\r\n");
  return out;
}

template <class T>
void check_outcome(const ParseOutcome<T>& out, const std::string& input) {
  REQUIRE(out.lines.balanced());
  CHECK(out.lines.rejected == out.issues.size());
  CHECK(out.lines.total == split_lines(decode_log_text(input)).size());
  for (const auto& issue : out.issues) {
    CHECK(issue.line >= 1);
    CHECK(issue.line <= out.lines.total);
  }
}

}  // namespace

TEST_CASE("fuzz: parsers never throw and always account for every line") {
  const auto corpus = seeds();
  testgen::Gen g(77);
  for (int i = 0; i < 3000; ++i) {
    std::string input = fuzz_input(g, corpus);
    CAPTURE(i);
    ParseOutcome<FirewallEntry> fw;
    ParseOutcome<EventLogEntry> ev;
    ParseOutcome<IdsAlert> ids;
    REQUIRE_NOTHROW(fw = parse_firewall_log(input));
    REQUIRE_NOTHROW(ev = parse_event_log(input));
    REQUIRE_NOTHROW(ids = parse_ids_alert_log(input, static_cast<int>(g.range(1, 9999))));
    check_outcome(fw, input);
    check_outcome(ev, input);
    check_outcome(ids, input);
  }
}

TEST_CASE("fuzz: decoding odd-length UTF-16 and lone surrogates") {
  CHECK_NOTHROW(decode_log_text(std::string("\xFF\xFE\x41", 3)));
  CHECK_NOTHROW(decode_log_text(std::string("\xFF\xFE\x00\xD8\x41\x00", 6)));
  CHECK_NOTHROW(decode_log_text(std::string("\xFF\xFE\x00\xDC", 4)));
  CHECK(decode_log_text(std::string("\xFF\xFE", 2)).empty());
}
