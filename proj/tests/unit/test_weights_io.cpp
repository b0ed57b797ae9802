#include <doctest.h>

#include <fstream>
#include <string>

#include "otter/weights_io.hpp"

using namespace otter;

namespace {

std::string message_of(const std::string& text) {
  try {
    parse_weights(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("csv integers are exact; gaps are zero") {
  auto w = parse_weights("k,weight\n# comment\n1,3\n\n3,5\n");
  REQUIRE(w.is_exact());
  CHECK(w.exact_values() == std::vector<BigInt>{3, 0, 5});
}

TEST_CASE("csv decimals make the sequence real") {
  auto w = parse_weights("1,0.5\n2,1e-3\n");
  CHECK_FALSE(w.is_exact());
  CHECK(w.size() == 2);
  CHECK(w.real_at(2).contains(Float("0.001")));
}

TEST_CASE("json arrays") {
  auto w = parse_weights("[1, 2, 3]");
  CHECK(w.exact_values() == std::vector<BigInt>{1, 2, 3});
  auto r = parse_weights("[0.25, 1]", WeightFormat::Json);
  CHECK_FALSE(r.is_exact());
}

TEST_CASE("errors name the row") {
  CHECK(message_of("k,weight\n1,0.5\n2,abc\n").find("line 3") != std::string::npos);
  CHECK(message_of("1,2\n0,1\n").find("line 2") != std::string::npos);
  CHECK(message_of("1,2\n1,3\n").find("line 2") != std::string::npos);
  CHECK(message_of("1,-2\n").find("line 1") != std::string::npos);
  CHECK(message_of("[1, \"x\"]").find("element 2") != std::string::npos);
  CHECK(message_of("[1,\n 2,\n").find("line") != std::string::npos);
  CHECK(message_of("").size() > 0);
}

TEST_CASE("files") {
  std::string path = "otter_weights_test.csv";
  {
    std::ofstream out(path);
    out << "1,1\n2,1\n";
  }
  CHECK(read_weight_file(path).size() == 2);
  CHECK_THROWS_AS(read_weight_file("does/not/exist.csv"), ParseError);
}
