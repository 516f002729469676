#include "tadic/cli/parse.hpp"

#include <cctype>
#include <limits>
#include <map>

#include "tadic/errors.hpp"

namespace tadic {
namespace {

struct RawTerm {
  std::map<int, i64> exps;  // variable index (1-based) -> exponent
  FieldCtx::Elem coeff;
  std::size_t offset;
};

class Parser {
 public:
  Parser(const std::string& s, const FieldCtx& F) : s_(s), F_(F) {}

  std::vector<RawTerm> poly() {
    std::vector<RawTerm> out;
    skip();
    bool negate = false;
    if (peek() == '+' || peek() == '-') {
      negate = peek() == '-';
      ++i_;
    }
    out.push_back(term(negate));
    while (true) {
      skip();
      if (i_ == s_.size()) break;
      const char c = s_[i_];
      if (c != '+' && c != '-') fail("expected '+' or '-'");
      ++i_;
      out.push_back(term(c == '-'));
    }
    return out;
  }

 private:
  char peek() {
    skip();
    return i_ < s_.size() ? s_[i_] : '\0';
  }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, i_); }

  // Unsigned digits.
  u64 digits() {
    skip();
    if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_]))) fail("expected digits");
    u64 v = 0;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      const u64 d = static_cast<u64>(s_[i_] - '0');
      if (v > (std::numeric_limits<u64>::max() / 4 - d) / 10) fail("integer too large");
      v = v * 10 + d;
      ++i_;
    }
    return v;
  }

  i64 signed_int() {
    skip();
    bool neg = false;
    if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) {
      neg = s_[i_] == '-';
      ++i_;
    }
    const u64 v = digits();
    if (v > static_cast<u64>(std::numeric_limits<i64>::max())) fail("integer too large");
    return neg ? -static_cast<i64>(v) : static_cast<i64>(v);
  }

  RawTerm term(bool negate) {
    skip();
    RawTerm t{{}, F_.one(), i_};
    const char c = peek();
    bool have_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t at = i_;
      const u64 v = digits();
      t.coeff = F_.from_int(static_cast<i64>(v % F_.p()));
      if (t.coeff == F_.zero()) throw ParseError("coefficient is 0 in F_q", at);
      have_coeff = true;
    } else if (c == 'g') {
      ++i_;
      skip();
      if (i_ >= s_.size() || s_[i_] != '^') fail("expected '^' after g");
      ++i_;
      const i64 e = signed_int();
      const i64 order = static_cast<i64>(F_.order() - 1);
      t.coeff = F_.exp(static_cast<u64>(((e % order) + order) % order));
      have_coeff = true;
    }
    if (have_coeff) {
      if (peek() == '*') {
        ++i_;
        mono(t);
      }
    } else {
      mono(t);
    }
    if (negate) t.coeff = F_.neg(t.coeff);
    return t;
  }

  void mono(RawTerm& t) {
    factor(t);
    while (peek() == '*') {
      ++i_;
      factor(t);
    }
  }

  void factor(RawTerm& t) {
    if (peek() != 'x') fail("expected a variable x<index>");
    ++i_;
    if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_]))) fail("expected a variable index");
    const u64 idx = digits();
    if (idx == 0 || idx > 64) fail("variable index out of range");
    i64 e = 1;
    if (peek() == '^') {
      ++i_;
      e = signed_int();
    }
    t.exps[static_cast<int>(idx)] += e;
  }

  const std::string& s_;
  const FieldCtx& F_;
  std::size_t i_ = 0;
};

}  // namespace

LaurentPoly parse_laurent(const std::string& text, const FieldPtr& field, int n) {
  Parser P(text, *field);
  const auto raw = P.poly();
  int max_idx = 0;
  for (const auto& t : raw)
    for (const auto& [i, e] : t.exps) max_idx = std::max(max_idx, i);
  if (n == 0) n = std::max(max_idx, 1);
  if (max_idx > n) {
    throw DomainError("variable x" + std::to_string(max_idx) + " exceeds n = " + std::to_string(n));
  }
  LaurentPoly f(n, field);
  for (const auto& t : raw) {
    Point u(static_cast<std::size_t>(n), 0);
    for (const auto& [i, e] : t.exps) u[static_cast<std::size_t>(i - 1)] = e;
    try {
      f.add_term(u, t.coeff);
    } catch (const DomainError& e) {
      throw ParseError(e.what(), t.offset);
    }
  }
  return f;
}

}  // namespace tadic
