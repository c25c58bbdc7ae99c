#ifndef EPSMULT_EXPONENT_HPP
#define EPSMULT_EXPONENT_HPP

#include "error.hpp"

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace epsmult {

using Exponent = std::uint32_t;

/// A point of N^D: the exponent vector of a monic monomial.
class ExponentVector {
public:
  ExponentVector() = default;
  explicit ExponentVector(std::size_t dim) : e_(dim, 0) {}
  ExponentVector(std::initializer_list<Exponent> e) : e_(e) {}
  explicit ExponentVector(std::vector<Exponent> e) : e_(std::move(e)) {}

  static ExponentVector unit(std::size_t dim, std::size_t i, Exponent k = 1) {
    ExponentVector v(dim);
    v.e_[i] = k;
    return v;
  }

  std::size_t size() const noexcept { return e_.size(); }
  Exponent operator[](std::size_t i) const { return e_[i]; }
  Exponent& operator[](std::size_t i) { return e_[i]; }
  auto begin() const noexcept { return e_.begin(); }
  auto end() const noexcept { return e_.end(); }
  const std::vector<Exponent>& raw() const noexcept { return e_; }

  std::uint64_t degree() const noexcept {
    std::uint64_t d = 0;
    for (auto x : e_)
      d += x;
    return d;
  }

  bool is_zero() const noexcept {
    return std::all_of(e_.begin(), e_.end(), [](Exponent x) { return x == 0; });
  }

  /// Componentwise <=, i.e. this monomial divides `other`.
  bool divides(const ExponentVector& other) const noexcept {
    for (std::size_t i = 0; i < e_.size(); ++i)
      if (e_[i] > other.e_[i])
        return false;
    return true;
  }

  bool operator==(const ExponentVector&) const = default;
  auto operator<=>(const ExponentVector& o) const { return e_ <=> o.e_; }

private:
  std::vector<Exponent> e_;
};

inline void require_same_dim(const ExponentVector& a, const ExponentVector& b) {
  if (a.size() != b.size())
    throw DimensionMismatch("exponent vectors of lengths " + std::to_string(a.size()) +
                            " and " + std::to_string(b.size()));
}

inline Exponent checked_add(Exponent a, std::uint64_t b) {
  std::uint64_t s = std::uint64_t(a) + b;
  if (s > std::numeric_limits<Exponent>::max())
    throw ExponentOverflow("exponent exceeds " +
                           std::to_string(std::numeric_limits<Exponent>::max()));
  return static_cast<Exponent>(s);
}

/// Monomial product.
inline ExponentVector operator+(const ExponentVector& a, const ExponentVector& b) {
  require_same_dim(a, b);
  ExponentVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = checked_add(a[i], b[i]);
  return r;
}

/// Componentwise max(a - b, 0): generator of (a) : (b).
inline ExponentVector monus(const ExponentVector& a, const ExponentVector& b) {
  require_same_dim(a, b);
  ExponentVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = a[i] > b[i] ? a[i] - b[i] : 0;
  return r;
}

inline ExponentVector lcm(const ExponentVector& a, const ExponentVector& b) {
  require_same_dim(a, b);
  ExponentVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = std::max(a[i], b[i]);
  return r;
}

/// Order used for canonical generator lists: total degree, then lex.
inline bool degree_lex_less(const ExponentVector& a, const ExponentVector& b) {
  auto da = a.degree(), db = b.degree();
  if (da != db)
    return da < db;
  return a < b;
}

struct ExponentVectorHash {
  std::size_t operator()(const ExponentVector& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto x : v) {
      h ^= std::hash<Exponent>{}(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

/// Named ring variables; index order is the coordinate order of exponent
/// vectors.
class VariableSet {
public:
  VariableSet() = default;
  explicit VariableSet(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (!valid_name(names_[i]))
        throw IngestionError("invalid variable name '" + names_[i] + "'");
      for (std::size_t j = 0; j < i; ++j)
        if (names_[j] == names_[i])
          throw IngestionError("duplicate variable name '" + names_[i] + "'");
    }
  }

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::size_t index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name)
        return i;
    throw IngestionError("undeclared variable '" + std::string(name) + "'");
  }

  static bool valid_name(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
      return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
  }

private:
  std::vector<std::string> names_;
};

/// Parses `term ('*' term)* | '1'` with `term := var ('^' posint)?`.
/// Repeated variables multiply.
inline ExponentVector parse_monomial(std::string_view text, const VariableSet& vars) {
  ExponentVector out(vars.size());
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw IngestionError("cannot parse monomial '" + std::string(text) + "': " + why);
  };
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  };
  skip_ws();
  if (pos < text.size() && text[pos] == '1') {
    ++pos;
    skip_ws();
    if (pos != text.size())
      fail("trailing characters after '1'");
    return out;
  }
  while (true) {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    if (start == pos)
      fail("expected a variable name");
    std::size_t idx = vars.index_of(text.substr(start, pos - start));
    skip_ws();
    std::uint64_t power = 1;
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      skip_ws();
      std::size_t ds = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        ++pos;
      if (ds == pos)
        fail("expected an exponent after '^'");
      if (pos - ds > 9)
        fail("exponent too large");
      power = std::stoull(std::string(text.substr(ds, pos - ds)));
      if (power == 0)
        fail("exponents must be positive");
      skip_ws();
    }
    out[idx] = checked_add(out[idx], power);
    if (pos == text.size())
      break;
    if (text[pos] != '*')
      fail(std::string("unexpected character '") + text[pos] + "'");
    ++pos;
  }
  return out;
}

inline std::string format_monomial(const ExponentVector& m, const VariableSet& vars) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0)
      continue;
    if (!out.empty())
      out += '*';
    out += vars.name(i);
    if (m[i] > 1)
      out += '^' + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

} // namespace epsmult

#endif
