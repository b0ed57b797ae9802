#include "otter/weights_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "otter/error.hpp"

namespace otter {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

const std::regex kInteger(R"(\+?[0-9]+)");
const std::regex kDecimal(R"([+-]?([0-9]+\.?[0-9]*|\.[0-9]+)([eE][+-]?[0-9]+)?)");

struct Entry {
  std::string text;
  bool integer;
};

WeightSequence build(const std::map<std::size_t, Entry>& entries) {
  if (entries.empty()) throw ParseError("weight file contains no entries");
  const std::size_t n = entries.rbegin()->first;
  bool all_integer = std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.second.integer; });
  if (all_integer) {
    std::vector<BigInt> w(n, BigInt(0));
    for (const auto& [k, e] : entries) w[k - 1] = BigInt(e.text[0] == '+' ? e.text.substr(1) : e.text);
    return WeightSequence::exact(std::move(w));
  }
  std::vector<RealValue> w(n, RealValue(0L));
  for (const auto& [k, e] : entries) w[k - 1] = RealValue::from_string(e.text);
  return WeightSequence::real(std::move(w));
}

WeightSequence parse_csv(const std::string& text) {
  std::map<std::size_t, Entry> entries;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string row = trim(line);
    if (row.empty() || row[0] == '#') continue;
    auto where = "line " + std::to_string(line_no) + ": ";
    auto comma = row.find(',');
    if (comma == std::string::npos) throw ParseError(where + "expected 'k,weight', got '" + row + "'");
    std::string k_text = trim(row.substr(0, comma)), w_text = trim(row.substr(comma + 1));
    if (entries.empty() && k_text == "k" && w_text == "weight") continue;
    if (!std::regex_match(k_text, kInteger)) throw ParseError(where + "index '" + k_text + "' is not a positive integer");
    std::size_t k = 0;
    try {
      k = std::stoul(k_text);
    } catch (const std::exception&) {
      throw ParseError(where + "index '" + k_text + "' is out of range");
    }
    if (k == 0) throw ParseError(where + "indices start at 1");
    if (entries.count(k)) throw ParseError(where + "duplicate index " + k_text);
    if (!w_text.empty() && w_text[0] == '-') throw ParseError(where + "weight '" + w_text + "' is negative");
    if (std::regex_match(w_text, kInteger))
      entries[k] = {w_text, true};
    else if (std::regex_match(w_text, kDecimal))
      entries[k] = {w_text, false};
    else
      throw ParseError(where + "weight '" + w_text + "' is not a number");
  }
  return build(entries);
}

std::size_t line_of_byte(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

WeightSequence parse_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("line " + std::to_string(line_of_byte(text, e.byte)) + ": invalid JSON (" + e.what() + ")");
  }
  if (!doc.is_array()) throw ParseError("JSON weights must be an array of numbers");
  std::map<std::size_t, Entry> entries;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& v = doc[i];
    auto where = "element " + std::to_string(i + 1) + ": ";
    if (v.is_number_unsigned()) {
      entries[i + 1] = {std::to_string(v.get<std::uint64_t>()), true};
    } else if (v.is_number_integer()) {
      throw ParseError(where + "weight " + v.dump() + " is negative");
    } else if (v.is_number_float()) {
      double d = v.get<double>();
      if (d < 0) throw ParseError(where + "weight " + v.dump() + " is negative");
      entries[i + 1] = {v.dump(), false};
    } else {
      throw ParseError(where + "expected a number, got " + v.dump());
    }
  }
  return build(entries);
}

}  // namespace

WeightSequence parse_weights(const std::string& text, WeightFormat format) {
  if (format == WeightFormat::Auto) {
    std::string t = trim(text);
    format = !t.empty() && t[0] == '[' ? WeightFormat::Json : WeightFormat::Csv;
  }
  return format == WeightFormat::Json ? parse_json(text) : parse_csv(text);
}

WeightSequence read_weight_file(const std::string& path, WeightFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open weight file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_weights(buf.str(), format);
}

}  // namespace otter
