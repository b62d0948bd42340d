#include "cylproof/exprparse.hpp"

#include <cctype>
#include <stdexcept>

namespace cylproof {

namespace {

class Parser {
 public:
  Parser(const std::string& text, int m, int n) : t_(text), m_(m), n_(n) {}

  SymbolicSum parse() {
    SymbolicSum s = expr();
    skip();
    if (pos_ != t_.size()) fail("unexpected character");
    return s;
  }

 private:
  const std::string& t_;
  int m_;
  int n_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("parse error at offset " + std::to_string(pos_) + ": " + why + " in '" + t_ + "'");
  }
  void skip() {
    while (pos_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < t_.size() ? t_[pos_] : '\0';
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  long number() {
    skip();
    std::size_t start = pos_;
    while (pos_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::stol(t_.substr(start, pos_ - start));
  }
  long signed_number() {
    int sign = 1;
    while (peek() == '-' || peek() == '+') {
      if (t_[pos_] == '-') sign = -sign;
      ++pos_;
    }
    return sign * number();
  }

  SymbolicSum constant(const PolyQZ& p) const {
    SymbolicSum s;
    if (!p.is_zero()) s.terms[SymbolicTerm{std::vector<int>(2 * n_, 0), std::nullopt}] = p;
    return s;
  }

  static void add_into(SymbolicSum& a, const SymbolicSum& b, int sign) {
    for (const auto& [k, v] : b.terms) {
      PolyQZ& slot = a.terms[k];
      if (sign > 0) {
        slot += v;
      } else {
        slot -= v;
      }
      if (slot.is_zero()) a.terms.erase(k);
    }
  }

  SymbolicSum multiply(const SymbolicSum& a, const SymbolicSum& b) const {
    SymbolicSum out;
    for (const auto& [ka, va] : a.terms) {
      for (const auto& [kb, vb] : b.terms) {
        if (ka.s && kb.s) fail("product of two S factors");
        SymbolicTerm k{ka.lin, ka.s ? ka.s : kb.s};
        for (std::size_t i = 0; i < k.lin.size(); ++i) k.lin[i] += kb.lin[i];
        PolyQZ& slot = out.terms[k];
        slot += va * vb;
        if (slot.is_zero()) out.terms.erase(k);
      }
    }
    return out;
  }

  SymbolicSum expr() {
    SymbolicSum acc;
    int sign = 1;
    if (peek() == '-' || peek() == '+') {
      sign = t_[pos_] == '-' ? -1 : 1;
      ++pos_;
    }
    add_into(acc, term(), sign);
    while (peek() == '+' || peek() == '-') {
      sign = t_[pos_] == '-' ? -1 : 1;
      ++pos_;
      add_into(acc, term(), sign);
    }
    return acc;
  }

  bool starts_factor(char c) const {
    return c == '(' || c == 'q' || c == 'z' || c == 'S' || std::isdigit(static_cast<unsigned char>(c));
  }

  SymbolicSum term() {
    SymbolicSum acc = power();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc = multiply(acc, power());
      } else if (c == '/') {
        ++pos_;
        SymbolicSum d = power();
        if (d.terms.size() != 1) fail("division by a non-monomial");
        const auto& [k, v] = *d.terms.begin();
        if (k.s || !v.is_unit()) fail("division by a non-monomial");
        const Exp e = v.low_corner();
        SymbolicTerm inv{k.lin, std::nullopt};
        for (int& x : inv.lin) x = -x;
        SymbolicSum r;
        r.terms[inv] = PolyQZ::monomial(v.terms().front().second, -e.q, -e.z);
        acc = multiply(acc, r);
      } else if (starts_factor(c)) {
        acc = multiply(acc, power());
      } else {
        return acc;
      }
    }
  }

  SymbolicSum power() {
    char c = peek();
    if (c == 'q') {
      ++pos_;
      SymbolicTerm k{std::vector<int>(2 * n_, 0), std::nullopt};
      int e = 1;
      if (peek() == '^') {
        ++pos_;
        if (peek() == '{') {
          ++pos_;
          e = linear(k.lin);
          expect('}');
        } else {
          e = static_cast<int>(signed_number());
        }
      }
      SymbolicSum s;
      s.terms[k] = PolyQZ::q_power(e);
      return s;
    }
    if (c == 'z') {
      ++pos_;
      int e = 1;
      if (peek() == '^') {
        ++pos_;
        if (peek() == '{') {
          ++pos_;
          e = static_cast<int>(signed_number());
          expect('}');
        } else {
          e = static_cast<int>(signed_number());
        }
      }
      return constant(PolyQZ::monomial(1, 0, e));
    }
    if (c == 'S') {
      ++pos_;
      return sterm();
    }
    SymbolicSum base;
    if (c == '(') {
      ++pos_;
      base = expr();
      expect(')');
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      base = constant(PolyQZ(number()));
    } else {
      fail("expected a factor");
    }
    if (peek() == '^') {
      ++pos_;
      long e = number();
      SymbolicSum r = constant(PolyQZ(1));
      for (long i = 0; i < e; ++i) r = multiply(r, base);
      return r;
    }
    return base;
  }

  // Linear form in r_i, s_i plus an integer constant; returns the constant.
  int linear(std::vector<int>& lin) {
    int constant_part = 0;
    int sign = 1;
    if (peek() == '-' || peek() == '+') {
      sign = t_[pos_] == '-' ? -1 : 1;
      ++pos_;
    }
    for (;;) {
      long coef = 1;
      bool have_num = false;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        coef = number();
        have_num = true;
        if (peek() == '*') ++pos_;
      }
      char v = peek();
      if (v == 'r' || v == 's') {
        ++pos_;
        if (peek() == '_') ++pos_;
        long i = number();
        if (i < 1 || i > n_) fail("variable index out of range");
        lin[static_cast<std::size_t>((v == 'r' ? 0 : n_) + i - 1)] += static_cast<int>(sign * coef);
      } else if (have_num) {
        constant_part += static_cast<int>(sign * coef);
      } else {
        fail("expected a term of the exponent");
      }
      char c = peek();
      if (c == '+' || c == '-') {
        sign = c == '-' ? -1 : 1;
        ++pos_;
      } else {
        return constant_part;
      }
    }
  }

  std::vector<int> vec() {
    expect('(');
    std::vector<int> v;
    v.push_back(static_cast<int>(signed_number()));
    while (peek() == ',') {
      ++pos_;
      v.push_back(static_cast<int>(signed_number()));
    }
    expect(')');
    return v;
  }

  SymbolicSum sterm() {
    expect('(');
    std::vector<int> rho = vec();
    expect('|');
    std::vector<int> sigma = vec();
    expect(')');
    if (static_cast<int>(rho.size()) != n_ || static_cast<int>(sigma.size()) != n_) fail("index length does not match the modulus");
    SymbolicSum s;
    s.terms[SymbolicTerm{std::vector<int>(2 * n_, 0), SIndex{m_, std::move(rho), std::move(sigma)}}] = PolyQZ(1);
    return s;
  }
};

}  // namespace

SExpr SymbolicSum::to_sexpr(int m) const {
  SExpr out(m);
  for (const auto& [k, v] : terms) {
    if (!k.s) throw std::invalid_argument("to_sexpr: term without an S factor");
    for (int x : k.lin) {
      if (x != 0) throw std::invalid_argument("to_sexpr: symbolic exponent in an S expression");
    }
    out.add(*k.s, v);
  }
  return out;
}

SymbolicSum parse_symbolic(const std::string& text, int m) {
  const int n = m >= 5 ? family_k(m) - 1 : 0;
  return Parser(text, m, n).parse();
}

PolyQZ parse_poly_expr(const std::string& text) {
  SymbolicSum s = Parser(text, 0, 0).parse();
  PolyQZ out;
  for (const auto& [k, v] : s.terms) {
    if (k.s) throw std::invalid_argument("parse_poly_expr: unexpected S factor");
    out += v;
  }
  return out;
}

}  // namespace cylproof
