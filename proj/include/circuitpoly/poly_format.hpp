#pragma once

// Polynomial serialisation.
//
// Text: terms in canonical (descending grevlex) order, each written as
// `<|coeff|>*x_i_j^e*...` with variables in ascending (i,j) order and `^e`
// omitted when e = 1. Terms are joined by " + " or " - "; a negative first
// term is prefixed with "-". The zero polynomial is "0".
//
//   x_1_2^2*x_3_4 + ...      (written as 1*x_1_2^2*x_3_4 + ...)
//
// JSON: an array of [coefficient-as-decimal-string, [[i, j, e], ...]], one
// entry per term in canonical order.

#include <cctype>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "circuitpoly/graph.hpp"
#include "circuitpoly/multipoly.hpp"

namespace circuitpoly {

inline void write_poly_text(std::ostream& os, const MultiPoly& p) {
  if (p.is_zero()) {
    os << '0';
    return;
  }
  bool first = true;
  for (const Term& t : p.terms()) {
    bool negative = t.coef.sign() < 0;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    os << t.coef.abs().to_string();
    for (int k = 0; k < kVarCount; ++k) {
      int e = t.mono.exponent(k);
      if (!e) continue;
      VarId v = VarId::from_index(k);
      os << "*x_" << v.i << '_' << v.j;
      if (e > 1) os << '^' << e;
    }
  }
}

inline std::string to_text(const MultiPoly& p) {
  std::ostringstream os;
  write_poly_text(os, p);
  return os.str();
}

namespace detail {

class TextPolyParser {
 public:
  explicit TextPolyParser(std::string_view s) : s_(s) {}

  MultiPoly parse() {
    std::vector<Term> terms;
    skip_ws();
    int sign = 1;
    if (peek() == '-') {
      sign = -1;
      ++pos_;
    } else if (peek() == '+') {
      ++pos_;
    }
    terms.push_back(term(sign));
    for (;;) {
      skip_ws();
      if (pos_ >= s_.size()) break;
      char c = s_[pos_++];
      if (c != '+' && c != '-') fail("expected '+' or '-'");
      terms.push_back(term(c == '-' ? -1 : 1));
    }
    return MultiPoly::from_terms(std::move(terms));
  }

 private:
  Term term(int sign) {
    skip_ws();
    Term t;
    bool need_factor = true;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      t.coef = Integer::from_string(digits());
      need_factor = false;
    } else {
      t.coef = Integer(1);
    }
    for (;;) {
      skip_ws();
      if (!need_factor) {
        if (peek() != '*') break;
        ++pos_;
        skip_ws();
      }
      need_factor = false;
      if (peek() != 'x') fail("expected variable");
      ++pos_;
      expect('_');
      int i = std::stoi(digits());
      expect('_');
      int j = std::stoi(digits());
      int e = 1;
      skip_ws();
      if (peek() == '^') {
        ++pos_;
        skip_ws();
        e = std::stoi(digits());
      }
      VarId v(i, j);
      t.mono.set_exponent(v, t.mono.exponent(v) + e);
    }
    if (sign < 0) t.coef = -t.coef;
    return t;
  }

  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(s_.substr(start, pos_ - start));
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("polynomial text, offset " + std::to_string(pos_) + ": " + msg);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline MultiPoly parse_poly_text(std::string_view text) {
  std::size_t b = text.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) throw InputError("polynomial text is empty");
  std::string_view trimmed = text.substr(b, text.find_last_not_of(" \t\r\n") - b + 1);
  if (trimmed == "0") return {};
  try {
    return detail::TextPolyParser(trimmed).parse();
  } catch (const std::out_of_range& e) {
    throw InputError(std::string("polynomial text: ") + e.what());
  }
}

/// Streams the JSON term list without building a DOM (large polynomials).
inline void write_poly_json(std::ostream& os, const MultiPoly& p) {
  os << '[';
  bool first = true;
  for (const Term& t : p.terms()) {
    if (!first) os << ',';
    first = false;
    os << "[\"" << t.coef.to_string() << "\",[";
    bool first_var = true;
    for (int k = 0; k < kVarCount; ++k) {
      int e = t.mono.exponent(k);
      if (!e) continue;
      VarId v = VarId::from_index(k);
      if (!first_var) os << ',';
      first_var = false;
      os << '[' << v.i << ',' << v.j << ',' << e << ']';
    }
    os << "]]";
  }
  os << ']';
}

inline std::string to_json_string(const MultiPoly& p) {
  std::ostringstream os;
  write_poly_json(os, p);
  return os.str();
}

inline MultiPoly poly_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw InputError("polynomial JSON must be an array");
  std::vector<Term> terms;
  terms.reserve(j.size());
  try {
    for (const auto& entry : j) {
      Term t;
      t.coef = Integer::from_string(entry.at(0).get<std::string>());
      for (const auto& f : entry.at(1)) {
        VarId v(f.at(0).get<int>(), f.at(1).get<int>());
        int e = f.at(2).get<int>();
        t.mono.set_exponent(v, t.mono.exponent(v) + e);
      }
      terms.push_back(std::move(t));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("polynomial JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("polynomial JSON: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw InputError(std::string("polynomial JSON: ") + e.what());
  }
  return MultiPoly::from_terms(std::move(terms));
}

inline MultiPoly parse_poly_json(std::string_view text) {
  try {
    return poly_from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("polynomial JSON: ") + e.what());
  }
}

}  // namespace circuitpoly
