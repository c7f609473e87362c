#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <anticyc/serialization.hpp>

namespace anticyc::cli {

/// Writes via a temporary file and rename, so readers never see partial output.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Writes to <out>/<name> when out is set, otherwise to stdout.
void emit(const std::optional<std::filesystem::path>& out, const std::string& name, const std::string& content);

std::string dump(const json& j);

std::string csv_field(const std::string& s);
std::string csv_line(const std::vector<std::string>& fields);

json read_json_file(const std::filesystem::path& path);

}  // namespace anticyc::cli
