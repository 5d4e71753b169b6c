// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The todolens Authors

#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace todolens::mining {

// A comment region within a single source line, as byte offsets [begin, end).
struct CommentSpan {
    std::size_t begin = 0;
    std::size_t end = 0;
    bool block = false;       // /* */ (including Javadoc) as opposed to //
    bool continues = false;   // block comment still open at end of line
    bool from_previous = false; // block comment opened on an earlier line
};

struct LineScan {
    std::vector<CommentSpan> comments;
    bool has_code = false; // non-blank text outside comments and on this line
};

// Line-at-a-time lexer for Java comment syntax. String, char and text-block
// literals are skipped so that comment markers inside them are ignored.
//
// Diff hunks start at arbitrary lines, so the scanner treats a line whose
// first non-blank character is '*' as the middle of a block comment when it
// is not already inside one.
class JavaCommentScanner {
public:
    LineScan scan(std::string_view line);
    bool in_block() const noexcept { return in_block_; }
    void reset() noexcept {
        in_block_ = false;
        in_text_block_ = false;
    }

private:
    bool in_block_ = false;
    bool in_text_block_ = false;
};

// True when `text` contains the TODO keyword not glued to a preceding
// identifier character. Returns the offset through `at` when found.
bool contains_todo(std::string_view text, bool case_sensitive, std::size_t* at = nullptr);

} // namespace todolens::mining
