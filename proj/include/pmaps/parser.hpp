#pragma once

#include <cctype>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pmaps/errors.hpp"
#include "pmaps/multi_poly.hpp"
#include "pmaps/poly_map.hpp"

// .pmap format:
//
//   # comment
//   name: quartic example
//   expect: classification=dth3-negative
//   vars: X1 X2
//   F1 = X1 + (X2 + X1^2)^2
//   F2 = X2 + X1^2
//
// Expressions use + - * ^ (non-negative integer exponents), parentheses,
// rational literals a/b and the imaginary unit i. Multiplication is explicit.

namespace pmaps {

struct MapDocument {
  std::string name;
  std::map<std::string, std::string> expect;
  PolyMap map;
};

namespace detail {

inline bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
inline bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

// Recursive-descent parser for one expression; columns are 1-based.
class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, std::size_t line, std::size_t column_offset, ContextPtr ctx)
      : text_(text), line_(line), offset_(column_offset), ctx_(std::move(ctx)) {}

  MultiPoly parse() {
    MultiPoly result = expression();
    skip_space();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, offset_ + pos_ + 1); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  MultiPoly expression() {
    MultiPoly acc = term();
    while (true) {
      if (peek('+')) {
        ++pos_;
        acc += term();
      } else if (peek('-')) {
        ++pos_;
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  MultiPoly term() {
    MultiPoly acc = unary();
    while (true) {
      if (peek('*')) {
        ++pos_;
        acc *= unary();
      } else if (peek('/')) {
        fail("division is only allowed inside rational literals a/b");
      } else {
        skip_space();
        if (pos_ < text_.size() && (is_ident_start(text_[pos_]) || is_digit(text_[pos_]) || text_[pos_] == '(')) {
          fail("implicit multiplication is not allowed; use '*'");
        }
        return acc;
      }
    }
  }

  MultiPoly unary() {
    if (peek('-')) {
      ++pos_;
      return -unary();
    }
    if (peek('+')) {
      ++pos_;
      return unary();
    }
    return power();
  }

  MultiPoly power() {
    MultiPoly base = primary();
    if (peek('^')) {
      ++pos_;
      skip_space();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
      if (start == pos_) fail("exponent must be a non-negative integer");
      const std::string digits(text_.substr(start, pos_ - start));
      if (digits.size() > 5 || std::stoul(digits) > std::numeric_limits<std::uint16_t>::max()) fail("exponent too large");
      base = base.pow(static_cast<unsigned>(std::stoul(digits)));
      if (peek('^')) fail("chained exponents need parentheses");
    }
    return base;
  }

  MultiPoly primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      MultiPoly inner = expression();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (is_digit(c)) return number();
    if (is_ident_start(c)) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      if (name == "i") return MultiPoly(ctx_, Scalar::imaginary_unit());
      const auto idx = ctx_->index_of(name);
      if (!idx) {
        pos_ = start;
        fail("undeclared variable '" + std::string(name) + "'");
      }
      return MultiPoly::variable(ctx_, *idx);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  MultiPoly number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
    std::string literal(text_.substr(start, pos_ - start));
    std::size_t save = pos_;
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      skip_space();
      const std::size_t dstart = pos_;
      while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
      if (dstart == pos_) fail("malformed rational: expected an integer denominator");
      const std::string den(text_.substr(dstart, pos_ - dstart));
      if (den.find_first_not_of('0') == std::string::npos) {
        pos_ = dstart;
        fail("malformed rational: zero denominator");
      }
      literal += "/" + den;
    } else {
      pos_ = save;
    }
    if (pos_ < text_.size() && text_[pos_] == '.') fail("malformed rational: decimal points are not supported");
    return MultiPoly(ctx_, Scalar::parse_rational(literal));
  }

  std::string_view text_;
  std::size_t line_;
  std::size_t offset_;
  ContextPtr ctx_;
  std::size_t pos_ = 0;
};

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace detail

inline MultiPoly parse_polynomial(std::string_view text, const ContextPtr& ctx) {
  return detail::ExpressionParser(text, 1, 0, ctx).parse();
}

inline MapDocument parse_document(std::string_view text) {
  std::optional<ContextPtr> ctx;
  std::string name;
  std::map<std::string, std::string> expect;
  std::map<std::size_t, MultiPoly> comps;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    const std::string_view line = detail::trim(raw);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const std::size_t indent = static_cast<std::size_t>(line.data() - raw.data());

    const auto keyword = [&](std::string_view kw) { return line.substr(0, kw.size()) == kw; };
    if (keyword("vars:")) {
      if (ctx) throw ParseError("duplicate 'vars:' header", line_no, indent + 1);
      std::vector<std::string> names;
      std::istringstream in{std::string(line.substr(5))};
      std::string v;
      while (in >> v) {
        if (!detail::is_ident_start(v.front()) ||
            v.find_first_not_of("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_") != std::string::npos) {
          throw ParseError("invalid variable name '" + v + "'", line_no, indent + 1);
        }
        if (v == "i") throw ParseError("'i' is reserved for the imaginary unit", line_no, indent + 1);
        for (const auto& prev : names) {
          if (prev == v) throw ParseError("duplicate variable '" + v + "'", line_no, indent + 1);
        }
        names.push_back(v);
      }
      if (names.empty()) throw ParseError("'vars:' needs at least one variable", line_no, indent + 1);
      ctx = make_context(std::move(names));
    } else if (keyword("name:")) {
      name = std::string(detail::trim(line.substr(5)));
    } else if (keyword("expect:")) {
      std::istringstream in{std::string(line.substr(7))};
      std::string kv;
      while (in >> kv) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) throw ParseError("expect entries are key=value", line_no, indent + 1);
        expect[kv.substr(0, eq)] = kv.substr(eq + 1);
      }
    } else {
      if (!ctx) throw ParseError("component before the 'vars:' header", line_no, indent + 1);
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) throw ParseError("expected 'Fk = expression'", line_no, indent + 1);
      const std::string_view lhs = detail::trim(line.substr(0, eq));
      if (lhs.size() < 2 || lhs.front() != 'F' || lhs.substr(1).find_first_not_of("0123456789") != std::string_view::npos ||
          lhs[1] == '0') {
        throw ParseError("component name must be F1, F2, ...", line_no, indent + 1);
      }
      const std::size_t k = std::stoul(std::string(lhs.substr(1)));
      if (comps.count(k)) throw ParseError("duplicate component F" + std::to_string(k), line_no, indent + 1);
      const std::string_view rhs = line.substr(eq + 1);
      comps.emplace(k, detail::ExpressionParser(rhs, line_no, indent + eq + 1, *ctx).parse());
    }
    if (end == text.size()) break;
  }
  if (!ctx) throw ParseError("missing 'vars:' header", line_no, 1);
  if (comps.empty()) throw ParseError("no components", line_no, 1);
  std::vector<MultiPoly> ordered;
  std::size_t expected = 1;
  for (auto& [k, p] : comps) {
    if (k != expected) throw ParseError("components must be numbered F1..Fm without gaps", line_no, 1);
    ordered.push_back(std::move(p));
    ++expected;
  }
  return MapDocument{std::move(name), std::move(expect), PolyMap(*ctx, std::move(ordered))};
}

inline PolyMap parse_map(std::string_view text) { return parse_document(text).map; }

inline std::string render_map(const PolyMap& f) {
  std::string out = "vars:";
  for (const auto& v : f.context()->names()) out += " " + v;
  out += "\n";
  for (std::size_t j = 0; j < f.m(); ++j) out += "F" + std::to_string(j + 1) + " = " + f[j].to_string() + "\n";
  return out;
}

inline std::string render_document(const MapDocument& doc) {
  std::string out;
  if (!doc.name.empty()) out += "name: " + doc.name + "\n";
  if (!doc.expect.empty()) {
    out += "expect:";
    for (const auto& [k, v] : doc.expect) out += " " + k + "=" + v;
    out += "\n";
  }
  return out + render_map(doc.map);
}

// Comma-separated vector of rationals/Gaussian rationals, e.g. "0,1/2,-3".
inline Vector parse_vector(std::string_view text) {
  Vector v;
  const ContextPtr ctx = make_context({});
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view item = detail::trim(text.substr(start, end - start));
    if (item.empty()) throw ParseError("empty vector entry", 1, start + 1);
    const MultiPoly p = detail::ExpressionParser(item, 1, start, ctx).parse();
    v.push_back(p.constant_term());
    start = end + 1;
    if (end == text.size()) break;
  }
  return v;
}

}  // namespace pmaps
