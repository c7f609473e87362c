#include "output.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <system_error>

#include <anticyc/errors.hpp>

namespace anticyc::cli {

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot write " + tmp.string());
    f << content;
    if (!f.flush()) throw ConfigError("cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw ConfigError("cannot move output into place: " + path.string());
}

void emit(const std::optional<std::filesystem::path>& out, const std::string& name, const std::string& content) {
  if (out)
    write_atomic(*out / name, content);
  else
    std::cout << content;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string r = "\"";
  for (char c : s) {
    if (c == '"') r += '"';
    r += c;
  }
  return r + "\"";
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string r;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) r += ',';
    r += csv_field(fields[i]);
  }
  return r + "\n";
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
}

}  // namespace anticyc::cli
