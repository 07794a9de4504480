#pragma once

#include <cctype>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "bideal/error.hpp"

namespace bideal::detail {

// Minimal recursive-descent helper shared by all term grammars.
class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    void skipWs() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool atEnd() {
        skipWs();
        return pos_ >= text_.size();
    }

    char peek() {
        skipWs();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool accept(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    // Accepts an exact keyword when it is not followed by an identifier character.
    bool acceptWord(std::string_view word) {
        skipWs();
        if (text_.substr(pos_, word.size()) != word) return false;
        std::size_t end = pos_ + word.size();
        if (end < text_.size() && isIdent(text_[end])) return false;
        pos_ = end;
        return true;
    }

    std::string identifier() {
        skipWs();
        std::size_t start = pos_;
        while (pos_ < text_.size() && isIdent(text_[pos_])) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    bool atDigit() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }

    std::uint64_t natural() {
        skipWs();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail("expected a natural number");
        std::uint64_t v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            auto d = static_cast<std::uint64_t>(text_[pos_] - '0');
            if (v > (std::numeric_limits<std::uint64_t>::max() - d) / 10) fail("number too large");
            v = v * 10 + d;
            ++pos_;
        }
        return v;
    }

    void expectEnd() {
        if (!atEnd()) fail("unexpected trailing input");
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " at offset " + std::to_string(pos_) + " in '" +
                         std::string(text_) + "'");
    }

private:
    static bool isIdent(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace bideal::detail
