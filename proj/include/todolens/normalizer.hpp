// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The todolens Authors

#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace todolens::text {

inline constexpr std::string_view kInfoTag = "<info_tag>";
inline constexpr std::string_view kCommitId = "<commit_id>";
inline constexpr std::string_view kLinkId = "<link_id>";

struct NormalizedTodo {
    std::vector<std::string> tokens;
    std::map<std::string, int> placeholder_counts;
    bool question = false; // a '?' outside links, lost by tokenization

    bool empty() const { return tokens.empty(); }
};

struct NormalizedDiff {
    std::vector<std::string> tokens;
    bool malformed = false; // body lines that do not look like unified diff
};

// Canonical form of a TODO comment:
//  * comment markers stripped and lines joined with single spaces,
//  * a parenthesised span right after the TODO keyword becomes <info_tag>,
//  * '#' + digits and URLs become <link_id>,
//  * 7-40 character hex words become <commit_id>,
//  * lowercased and split on whitespace and ASCII punctuation.
NormalizedTodo normalize_todo(std::string_view raw_comment);

// Drops diff header lines, lowercases and tokenizes the remaining body.
NormalizedDiff normalize_diff(std::string_view diff_text);

// Lowercases and splits on whitespace/ASCII punctuation. Placeholders present
// in the input are kept whole; hex words of length 7-40 become <commit_id>.
std::vector<std::string> tokenize(std::string_view text);

bool is_placeholder(std::string_view token);
bool is_hex_run(std::string_view token); // 7-40 hex digits

std::string join_tokens(const std::vector<std::string>& tokens);

} // namespace todolens::text
