// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The todolens Authors

#include "todolens/comment_scanner.hpp"

#include <catch_amalgamated.hpp>

#include <string>

using namespace todolens::mining;

namespace {

std::string span_text(std::string_view line, const CommentSpan& s) {
    return std::string(line.substr(s.begin, s.end - s.begin));
}

} // namespace

TEST_CASE("line comments after code") {
    JavaCommentScanner sc;
    std::string_view line = "int x = 1; // TODO: tune";
    auto scan = sc.scan(line);
    REQUIRE(scan.comments.size() == 1);
    CHECK_FALSE(scan.comments[0].block);
    CHECK(span_text(line, scan.comments[0]) == "// TODO: tune");
    CHECK(scan.has_code);
}

TEST_CASE("comment markers inside string and char literals are ignored") {
    JavaCommentScanner sc;
    auto scan = sc.scan(R"(String s = "// TODO not a comment /* nor this */";)");
    CHECK(scan.comments.empty());
    CHECK(scan.has_code);

    auto esc = sc.scan(R"(String s = "quote \" // still string"; // real)");
    REQUIRE(esc.comments.size() == 1);
    CHECK(span_text(R"(String s = "quote \" // still string"; // real)", esc.comments[0]) == "// real");

    auto ch = sc.scan("char c = '/'; char d = '*'; // x");
    REQUIRE(ch.comments.size() == 1);
}

TEST_CASE("text blocks span lines without producing comments") {
    JavaCommentScanner sc;
    CHECK(sc.scan("String s = \"\"\"").comments.empty());
    CHECK(sc.scan("   // TODO inside a text block").comments.empty());
    auto end = sc.scan("   \"\"\"; // after");
    REQUIRE(end.comments.size() == 1);
}

TEST_CASE("block comments across lines") {
    JavaCommentScanner sc;
    auto a = sc.scan("/* TODO: first");
    REQUIRE(a.comments.size() == 1);
    CHECK(a.comments[0].block);
    CHECK(a.comments[0].continues);
    CHECK_FALSE(a.comments[0].from_previous);
    CHECK(sc.in_block());

    auto b = sc.scan("   still inside");
    REQUIRE(b.comments.size() == 1);
    CHECK(b.comments[0].from_previous);
    CHECK(b.comments[0].continues);
    CHECK_FALSE(b.has_code);

    auto c = sc.scan("   end */ int y;");
    REQUIRE(c.comments.size() == 1);
    CHECK(c.comments[0].from_previous);
    CHECK_FALSE(c.comments[0].continues);
    CHECK(c.has_code);
    CHECK_FALSE(sc.in_block());
}

TEST_CASE("a leading star is read as the middle of a block comment") {
    JavaCommentScanner sc;
    auto s = sc.scan("     * TODO: document the return value");
    REQUIRE(s.comments.size() == 1);
    CHECK(s.comments[0].from_previous);
    CHECK(s.comments[0].continues);

    JavaCommentScanner assign;
    auto m = assign.scan("    *= 2;");
    CHECK(m.comments.empty());
}

TEST_CASE("inline block comment followed by a line comment") {
    JavaCommentScanner sc;
    std::string_view line = "f(/* a */ 1); // b";
    auto s = sc.scan(line);
    REQUIRE(s.comments.size() == 2);
    CHECK(span_text(line, s.comments[0]) == "/* a */");
    CHECK(span_text(line, s.comments[1]) == "// b");
    CHECK(s.has_code);
}

TEST_CASE("TODO keyword detection") {
    std::size_t at = 0;
    CHECK(contains_todo("// TODO: x", true, &at));
    CHECK(at == 3);
    CHECK(contains_todo("TODO", true));
    CHECK_FALSE(contains_todo("// todo: x", true));
    CHECK(contains_todo("// todo: x", false));
    CHECK_FALSE(contains_todo("MYTODO", true));
    CHECK_FALSE(contains_todo("my_TODO", true));
    CHECK(contains_todo("(TODO)", true));
    CHECK_FALSE(contains_todo("TOD", true));
}
