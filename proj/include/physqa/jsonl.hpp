#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "physqa/errors.hpp"

namespace physqa {

// Deterministic serialization everywhere: insertion-ordered keys.
using Json = nlohmann::ordered_json;

struct JsonlLine {
  std::size_t line_no;  // 1-based
  Json value;
};

inline bool is_blank_line(const std::string& line) {
  for (char c : line) {
    if (c != ' ' && c != '\t' && c != '\r') return false;
  }
  return true;
}

// Reads one JSON value per non-blank line; parse failures carry the line number.
inline std::vector<JsonlLine> read_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path.string());
  std::vector<JsonlLine> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_line(line)) continue;
    try {
      out.push_back({line_no, Json::parse(line)});
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) +
                       ": malformed line: " + e.what());
    }
  }
  return out;
}

inline void write_jsonl(const std::filesystem::path& path,
                        const std::vector<Json>& values) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path.string());
  for (const Json& v : values) out << v.dump() << "\n";
}

inline Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

inline void write_json_file(const std::filesystem::path& path, const Json& v) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path.string());
  out << v.dump(2) << "\n";
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path.string());
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

inline void write_text_file(const std::filesystem::path& path,
                            const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path.string());
  out << content;
}

}  // namespace physqa
