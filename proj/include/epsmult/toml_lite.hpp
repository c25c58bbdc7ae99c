#ifndef EPSMULT_TOML_LITE_HPP
#define EPSMULT_TOML_LITE_HPP

#include "error.hpp"

#include <nlohmann/json.hpp>

#include <cctype>
#include <string>
#include <string_view>

namespace epsmult {

/// Reader for the flat TOML subset used by instance and semigroup files:
/// top-level `key = value` pairs where a value is a basic string, an
/// integer, or a (possibly nested, possibly multi-line) array of those.
/// Comments start with '#'. Tables and other value types are rejected.
class TomlLite {
public:
  static nlohmann::json parse(std::string_view text) {
    TomlLite p(text);
    return p.document();
  }

private:
  explicit TomlLite(std::string_view t) : t_(t) {}

  [[noreturn]] void fail(const std::string& why) const {
    std::size_t line = 1;
    for (std::size_t i = 0; i < pos_ && i < t_.size(); ++i)
      line += t_[i] == '\n';
    throw IngestionError("TOML line " + std::to_string(line) + ": " + why);
  }

  bool at_end() const { return pos_ >= t_.size(); }

  void skip_inline_ws() {
    while (!at_end() && (t_[pos_] == ' ' || t_[pos_] == '\t'))
      ++pos_;
  }
  void skip_comment() {
    if (!at_end() && t_[pos_] == '#')
      while (!at_end() && t_[pos_] != '\n')
        ++pos_;
  }
  /// Whitespace, newlines and comments (inside arrays and between pairs).
  void skip_all() {
    while (!at_end()) {
      char c = t_[pos_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r')
        ++pos_;
      else if (c == '#')
        skip_comment();
      else
        break;
    }
  }

  nlohmann::json document() {
    nlohmann::json doc = nlohmann::json::object();
    while (true) {
      skip_all();
      if (at_end())
        return doc;
      if (t_[pos_] == '[')
        fail("tables are not supported");
      auto key = parse_key();
      skip_inline_ws();
      if (at_end() || t_[pos_] != '=')
        fail("expected '=' after key '" + key + "'");
      ++pos_;
      skip_inline_ws();
      if (doc.contains(key))
        fail("duplicate key '" + key + "'");
      doc[key] = parse_value();
      skip_inline_ws();
      skip_comment();
      if (!at_end() && t_[pos_] != '\n' && t_[pos_] != '\r')
        fail("unexpected text after value of '" + key + "'");
    }
  }

  std::string parse_key() {
    if (t_[pos_] == '"')
      return parse_string();
    std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(t_[pos_])) || t_[pos_] == '_' ||
                         t_[pos_] == '-'))
      ++pos_;
    if (start == pos_)
      fail("expected a key");
    return std::string(t_.substr(start, pos_ - start));
  }

  std::string parse_string() {
    ++pos_; // opening quote
    std::string out;
    while (true) {
      if (at_end() || t_[pos_] == '\n')
        fail("unterminated string");
      char c = t_[pos_++];
      if (c == '"')
        return out;
      if (c == '\\') {
        if (at_end())
          fail("unterminated escape");
        char e = t_[pos_++];
        switch (e) {
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        default: fail(std::string("unsupported escape \\") + e);
        }
      } else {
        out += c;
      }
    }
  }

  nlohmann::json parse_value() {
    if (at_end())
      fail("missing value");
    char c = t_[pos_];
    if (c == '"')
      return parse_string();
    if (c == '[') {
      ++pos_;
      nlohmann::json arr = nlohmann::json::array();
      while (true) {
        skip_all();
        if (at_end())
          fail("unterminated array");
        if (t_[pos_] == ']') {
          ++pos_;
          return arr;
        }
        arr.push_back(parse_value());
        skip_all();
        if (!at_end() && t_[pos_] == ',') {
          ++pos_;
          continue;
        }
        skip_all();
        if (at_end() || t_[pos_] != ']')
          fail("expected ',' or ']' in array");
      }
    }
    if (c == '-' || c == '+' || std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      ++pos_;
      while (!at_end() && (std::isdigit(static_cast<unsigned char>(t_[pos_])) || t_[pos_] == '_'))
        ++pos_;
      std::string digits;
      for (char d : t_.substr(start, pos_ - start))
        if (d != '_')
          digits += d;
      if (digits == "-" || digits == "+")
        fail("malformed integer");
      try {
        return std::stoll(digits);
      } catch (const std::exception&) {
        fail("integer out of range");
      }
    }
    fail("unsupported value");
  }

  std::string_view t_;
  std::size_t pos_ = 0;
};

} // namespace epsmult

#endif
