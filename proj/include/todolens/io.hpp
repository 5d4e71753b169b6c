// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The todolens Authors

#pragma once

#include <nlohmann/json.hpp>

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace todolens {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// Calls `fn(record, line_no)` for every non-blank line. Parse errors and
// exceptions thrown by `fn` are rethrown as DataError carrying
// "<source>:<line>: <message>".
void read_jsonl(std::istream& in, std::string_view source,
                const std::function<void(const json&, std::size_t)>& fn);
void read_jsonl_file(const std::filesystem::path& path,
                     const std::function<void(const json&, std::size_t)>& fn);

// Compact single-line serialization used for every JSONL output.
std::string to_jsonl_line(const ordered_json& j);

std::string read_file(const std::filesystem::path& path);

// Writes via a temporary sibling and rename. Throws Error when the
// destination is not writable.
void write_file(const std::filesystem::path& path, std::string_view contents);

// Minimal RFC 4180 CSV: fields containing ',', '"' or newlines are quoted.
std::string csv_escape(std::string_view field);
std::string csv_row(const std::vector<std::string>& fields);
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path& path);

// Fixed-point rendering with `decimals` digits ("0.20", "166.31").
std::string format_fixed(double value, int decimals);

} // namespace todolens
