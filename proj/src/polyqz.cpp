#include "cylproof/polyqz.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <stdexcept>

namespace cylproof {

namespace {

// Merges a sorted term list with repeated exponents into canonical form.
std::vector<PolyQZ::Term> canonicalize(std::vector<PolyQZ::Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const PolyQZ::Term& a, const PolyQZ::Term& b) { return a.first < b.first; });
  std::vector<PolyQZ::Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
      if (out.back().second == 0) out.pop_back();
    } else if (t.second != 0) {
      out.push_back(std::move(t));
    }
  }
  return out;
}

// Dense univariate polynomials over Z in z, index = exponent. Used by the gcd.
using UPoly = std::vector<BigInt>;

void utrim(UPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

UPoly usub(const UPoly& a, const UPoly& b) {
  UPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  utrim(r);
  return r;
}

UPoly umul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  utrim(r);
  return r;
}

BigInt ucontent(const UPoly& a) {
  BigInt g = 0;
  for (const auto& c : a) {
    g = gcd(g, c);
    if (g == 1) break;
  }
  return g;
}

UPoly udivexact_scalar(const UPoly& a, const BigInt& d) {
  UPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = divexact(a[i], d);
  return r;
}

// Pseudo-remainder of a by b in Z[z].
UPoly uprem(UPoly a, const UPoly& b) {
  const std::size_t m = b.size() - 1;
  const BigInt& lc = b.back();
  while (!a.empty() && a.size() - 1 >= m) {
    const std::size_t shift = a.size() - 1 - m;
    BigInt t = a.back();
    for (auto& c : a) c *= lc;
    for (std::size_t j = 0; j <= m; ++j) {
      mpz_submul(a[j + shift].get_mpz_t(), t.get_mpz_t(), b[j].get_mpz_t());
    }
    utrim(a);
  }
  return a;
}

UPoly uprimitive(const UPoly& a) {
  if (a.empty()) return a;
  BigInt c = ucontent(a);
  if (a.back() < 0) c = -c;
  return udivexact_scalar(a, c);
}

UPoly ugcd(UPoly a, UPoly b) {
  utrim(a);
  utrim(b);
  if (a.empty()) return uprimitive(b);
  if (b.empty()) return uprimitive(a);
  BigInt g = gcd(ucontent(a), ucontent(b));
  a = uprimitive(a);
  b = uprimitive(b);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    UPoly r = uprem(a, b);
    a = std::move(b);
    b = uprimitive(r);
  }
  a = uprimitive(a);
  for (auto& c : a) c *= g;
  return a;
}

// Exact division in Z[z]; the caller guarantees divisibility.
UPoly udivexact(UPoly a, const UPoly& b) {
  const std::size_t m = b.size() - 1;
  if (a.size() < b.size()) return {};
  UPoly q(a.size() - m);
  for (std::size_t i = a.size(); i-- > m;) {
    BigInt t = divexact(a[i], b.back());
    q[i - m] = t;
    for (std::size_t j = 0; j <= m; ++j) {
      mpz_submul(a[i - m + j].get_mpz_t(), t.get_mpz_t(), b[j].get_mpz_t());
    }
  }
  utrim(q);
  return q;
}

// Polynomials in q over Z[z], index = q exponent.
using BPoly = std::vector<UPoly>;

void btrim(BPoly& a) {
  while (!a.empty() && a.back().empty()) a.pop_back();
}

// Content in Z[z]: primitive gcd of the coefficients times their integer content.
UPoly bcontent(const BPoly& a) {
  UPoly g;
  for (const auto& c : a) {
    if (c.empty()) continue;
    g = g.empty() ? uprimitive(c) : uprimitive(ugcd(g, c));
    if (g.size() == 1) break;
  }
  BigInt ic = 0;
  for (const auto& c : a) ic = gcd(ic, ucontent(c));
  for (auto& c : g) c *= ic;
  return g;
}

BPoly bprimitive(const BPoly& a) {
  UPoly c = bcontent(a);
  BPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].empty()) r[i] = udivexact(a[i], c);
  }
  return r;
}

BPoly bprem(BPoly a, const BPoly& b) {
  const std::size_t m = b.size() - 1;
  const UPoly& lc = b.back();
  while (!a.empty() && a.size() - 1 >= m) {
    const std::size_t shift = a.size() - 1 - m;
    UPoly t = a.back();
    for (auto& c : a) c = umul(c, lc);
    for (std::size_t j = 0; j <= m; ++j) {
      a[j + shift] = usub(a[j + shift], umul(t, b[j]));
    }
    btrim(a);
  }
  return a;
}

BPoly to_bpoly(const PolyQZ& p) {
  // p has its exponent box at the origin.
  BPoly r(p.max_q() + 1);
  for (const auto& [e, c] : p.terms()) {
    auto& row = r[e.q];
    if (row.size() <= static_cast<std::size_t>(e.z)) row.resize(e.z + 1);
    row[e.z] = c;
  }
  return r;
}

PolyQZ from_bpoly(const BPoly& b) {
  std::vector<PolyQZ::Term> terms;
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = 0; j < b[i].size(); ++j) {
      if (b[i][j] != 0) terms.push_back({Exp{static_cast<int>(i), static_cast<int>(j)}, b[i][j]});
    }
  }
  return PolyQZ::from_terms(std::move(terms));
}

PolyQZ bivariate_gcd(const PolyQZ& a, const PolyQZ& b) {
  BPoly A = to_bpoly(a);
  BPoly B = to_bpoly(b);
  UPoly c = ugcd(bcontent(A), bcontent(B));
  A = bprimitive(A);
  B = bprimitive(B);
  if (A.size() < B.size()) std::swap(A, B);
  while (!B.empty()) {
    BPoly r = bprem(A, B);
    A = std::move(B);
    btrim(r);
    B = r.empty() ? r : bprimitive(r);
  }
  A = bprimitive(A);
  for (auto& coeff : A) coeff = umul(coeff, c);
  return from_bpoly(A);
}

}  // namespace

PolyQZ::PolyQZ(long c) {
  if (c != 0) terms_.push_back({Exp{}, BigInt(c)});
}

PolyQZ::PolyQZ(const BigInt& c) {
  if (c != 0) terms_.push_back({Exp{}, c});
}

PolyQZ PolyQZ::monomial(const BigInt& c, int qexp, int zexp) {
  PolyQZ p;
  if (c != 0) p.terms_.push_back({Exp{qexp, zexp}, c});
  return p;
}

PolyQZ PolyQZ::from_terms(std::vector<Term> terms) {
  PolyQZ p;
  p.terms_ = canonicalize(std::move(terms));
  return p;
}

bool PolyQZ::is_unit() const {
  return terms_.size() == 1 && (terms_[0].second == 1 || terms_[0].second == -1);
}

bool PolyQZ::is_one() const {
  return terms_.size() == 1 && terms_[0].first == Exp{} && terms_[0].second == 1;
}

BigInt PolyQZ::coefficient(int qexp, int zexp) const {
  Exp e{qexp, zexp};
  auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                             [](const Term& t, const Exp& x) { return t.first < x; });
  if (it != terms_.end() && it->first == e) return it->second;
  return 0;
}

int PolyQZ::min_q() const { return terms_.front().first.q; }
int PolyQZ::max_q() const { return terms_.back().first.q; }

int PolyQZ::min_z() const {
  int m = std::numeric_limits<int>::max();
  for (const auto& t : terms_) m = std::min(m, t.first.z);
  return m;
}

int PolyQZ::max_z() const {
  int m = std::numeric_limits<int>::min();
  for (const auto& t : terms_) m = std::max(m, t.first.z);
  return m;
}

int PolyQZ::total_degree_span() const {
  if (terms_.empty()) return 0;
  return (max_q() - min_q()) + (max_z() - min_z());
}

BigInt PolyQZ::max_abs_coefficient() const {
  BigInt m = 0;
  for (const auto& t : terms_) {
    if (abs(t.second) > m) m = abs(t.second);
  }
  return m;
}

PolyQZ PolyQZ::operator-() const {
  PolyQZ r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

void PolyQZ::add_scaled(const PolyQZ& o, int sign) {
  if (o.terms_.empty()) return;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
      out.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
      out.push_back({o.terms_[j].first, sign > 0 ? o.terms_[j].second : BigInt(-o.terms_[j].second)});
      ++j;
    } else {
      BigInt c = std::move(terms_[i].second);
      if (sign > 0) {
        c += o.terms_[j].second;
      } else {
        c -= o.terms_[j].second;
      }
      if (c != 0) out.push_back({terms_[i].first, std::move(c)});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
}

PolyQZ& PolyQZ::operator+=(const PolyQZ& o) {
  add_scaled(o, 1);
  return *this;
}

PolyQZ& PolyQZ::operator-=(const PolyQZ& o) {
  add_scaled(o, -1);
  return *this;
}

PolyQZ& PolyQZ::operator*=(const PolyQZ& o) {
  *this = *this * o;
  return *this;
}

PolyQZ operator*(const PolyQZ& a, const PolyQZ& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.size() == 1) return b.times_monomial(a.terms_[0].second, a.terms_[0].first.q, a.terms_[0].first.z);
  if (b.size() == 1) return a.times_monomial(b.terms_[0].second, b.terms_[0].first.q, b.terms_[0].first.z);
  const int qlo = a.min_q() + b.min_q();
  const int qhi = a.max_q() + b.max_q();
  const int zlo = a.min_z() + b.min_z();
  const int zhi = a.max_z() + b.max_z();
  const long width = zhi - zlo + 1;
  const long area = static_cast<long>(qhi - qlo + 1) * width;
  const long pairs = static_cast<long>(a.size()) * static_cast<long>(b.size());
  PolyQZ r;
  if (area <= 4 * pairs + 64) {
    std::vector<BigInt> acc(area);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        long idx = static_cast<long>(ea.q + eb.q - qlo) * width + (ea.z + eb.z - zlo);
        mpz_addmul(acc[idx].get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
      }
    }
    for (long idx = 0; idx < area; ++idx) {
      if (acc[idx] != 0) {
        r.terms_.push_back({Exp{static_cast<int>(idx / width) + qlo, static_cast<int>(idx % width) + zlo},
                            std::move(acc[idx])});
      }
    }
    return r;
  }
  std::vector<PolyQZ::Term> prods;
  prods.reserve(pairs);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) prods.push_back({Exp{ea.q + eb.q, ea.z + eb.z}, ca * cb});
  }
  r.terms_ = canonicalize(std::move(prods));
  return r;
}

PolyQZ PolyQZ::times_monomial(const BigInt& c, int qexp, int zexp) const {
  if (c == 0) return {};
  PolyQZ r = *this;
  for (auto& t : r.terms_) {
    t.first.q += qexp;
    t.first.z += zexp;
    if (c != 1) t.second *= c;
  }
  return r;
}

PolyQZ PolyQZ::z_shift(int n) const {
  if (n == 0) return *this;
  std::vector<Term> terms = terms_;
  for (auto& t : terms) t.first.q += n * t.first.z;
  return from_terms(std::move(terms));
}

PolyQZ PolyQZ::at_z(long value) const {
  std::vector<Term> terms;
  terms.reserve(terms_.size());
  for (const auto& [e, c] : terms_) {
    if (value == 0 && e.z != 0) continue;
    if (e.z < 0 && value != 1 && value != -1) {
      throw std::domain_error("at_z: negative z exponent with non-unit value");
    }
    BigInt v;
    mpz_pow_ui(v.get_mpz_t(), BigInt(value).get_mpz_t(), static_cast<unsigned long>(std::abs(e.z)));
    terms.push_back({Exp{e.q, 0}, c * v});
  }
  return from_terms(std::move(terms));
}

BigInt PolyQZ::integer_content() const {
  BigInt g = 0;
  for (const auto& t : terms_) {
    g = cylproof::gcd(g, t.second);
    if (g == 1) break;
  }
  return g;
}

Exp PolyQZ::low_corner() const { return Exp{min_q(), min_z()}; }

PolyQZ PolyQZ::divexact_integer(const BigInt& d) const {
  if (d == 1) return *this;
  PolyQZ r = *this;
  for (auto& t : r.terms_) t.second = divexact(t.second, d);
  return r;
}

PolyQZ PolyQZ::normalized() const {
  if (terms_.empty()) return {};
  BigInt c = integer_content();
  if (terms_.front().second < 0) c = -c;
  Exp lo = low_corner();
  PolyQZ r;
  r.terms_.reserve(terms_.size());
  for (const auto& [e, v] : terms_) r.terms_.push_back({Exp{e.q - lo.q, e.z - lo.z}, divexact(v, c)});
  return r;
}

std::string PolyQZ::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const bool neg = c < 0;
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    BigInt a = abs(c);
    std::string mono;
    auto append = [&mono](char var, int ex) {
      if (ex == 0) return;
      if (!mono.empty()) mono += "*";
      mono += var;
      if (ex != 1) mono += "^" + std::to_string(ex);
    };
    append('q', e.q);
    append('z', e.z);
    if (mono.empty()) {
      out += a.get_str();
    } else if (a == 1) {
      out += mono;
    } else {
      out += a.get_str() + "*" + mono;
    }
  }
  return out;
}

PolyQZ PolyQZ::parse(std::string_view text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const char* what) {
    throw std::invalid_argument(std::string("PolyQZ::parse: ") + what + " in '" + std::string(text) + "'");
  };
  auto read_uint = [&]() -> std::string {
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) fail("expected digits");
    return std::string(text.substr(start, pos - start));
  };
  auto read_exponent = [&]() -> int {
    skip();
    if (pos >= text.size() || text[pos] != '^') return 1;
    ++pos;
    skip();
    bool paren = pos < text.size() && text[pos] == '(';
    if (paren) ++pos;
    skip();
    bool neg = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
      neg = text[pos] == '-';
      ++pos;
    }
    int v = std::stoi(read_uint());
    skip();
    if (paren) {
      if (pos >= text.size() || text[pos] != ')') fail("expected ')'");
      ++pos;
    }
    return neg ? -v : v;
  };

  std::vector<Term> terms;
  skip();
  if (text.substr(pos) == "0") return {};
  bool first = true;
  while (true) {
    skip();
    if (pos >= text.size()) {
      if (first) fail("empty input");
      break;
    }
    int sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first) {
      fail("expected sign");
    }
    first = false;
    BigInt c = 1;
    Exp e;
    bool any = false;
    while (true) {
      skip();
      if (pos >= text.size()) break;
      char ch = text[pos];
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        c *= BigInt(read_uint());
      } else if (ch == 'q') {
        ++pos;
        e.q += read_exponent();
      } else if (ch == 'z') {
        ++pos;
        e.z += read_exponent();
      } else {
        break;
      }
      any = true;
      skip();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        continue;
      }
      break;
    }
    if (!any) fail("expected term");
    terms.push_back({e, sign * c});
  }
  return from_terms(std::move(terms));
}

std::optional<PolyQZ> try_divide(const PolyQZ& a, const PolyQZ& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if (a.is_zero()) return PolyQZ{};
  if (b.is_monomial()) {
    const auto& [eb, cb] = b.terms().front();
    std::vector<PolyQZ::Term> out;
    out.reserve(a.size());
    for (const auto& [ea, ca] : a.terms()) {
      if (!divides(cb, ca)) return std::nullopt;
      out.push_back({Exp{ea.q - eb.q, ea.z - eb.z}, divexact(ca, cb)});
    }
    return PolyQZ::from_terms(std::move(out));
  }
  const int qlb = a.min_q() - b.min_q();
  const int qub = a.max_q() - b.max_q();
  const int zlb = a.min_z() - b.min_z();
  const int zub = a.max_z() - b.max_z();
  if (qub < qlb || zub < zlb) return std::nullopt;
  std::map<Exp, BigInt> rem;
  for (const auto& t : a.terms()) rem.emplace(t.first, t.second);
  const auto& [lte, ltc] = b.terms().back();
  std::vector<PolyQZ::Term> quot;
  while (!rem.empty()) {
    auto it = std::prev(rem.end());
    Exp e{it->first.q - lte.q, it->first.z - lte.z};
    if (e.q < qlb || e.q > qub || e.z < zlb || e.z > zub) return std::nullopt;
    if (!divides(ltc, it->second)) return std::nullopt;
    BigInt c = divexact(it->second, ltc);
    for (const auto& [eb, cb] : b.terms()) {
      Exp k{eb.q + e.q, eb.z + e.z};
      auto [slot, inserted] = rem.try_emplace(k, 0);
      mpz_submul(slot->second.get_mpz_t(), c.get_mpz_t(), cb.get_mpz_t());
      if (slot->second == 0) rem.erase(slot);
    }
    quot.push_back({e, std::move(c)});
  }
  return PolyQZ::from_terms(std::move(quot));
}

PolyQZ divexact(const PolyQZ& a, const PolyQZ& b) {
  auto q = try_divide(a, b);
  if (!q) throw std::domain_error("divexact: " + b.to_string() + " does not divide " + a.to_string());
  return *std::move(q);
}

PolyQZ gcd(const PolyQZ& a, const PolyQZ& b) {
  if (a.is_zero()) return b.normalized();
  if (b.is_zero()) return a.normalized();
  BigInt g = cylproof::gcd(a.integer_content(), b.integer_content());
  PolyQZ pa = a.normalized();
  PolyQZ pb = b.normalized();
  if (pa.is_one() || pb.is_one()) return PolyQZ(g);
  if (pa.size() < pb.size() || (pa.size() == pb.size() && pa.total_degree_span() < pb.total_degree_span())) {
    std::swap(pa, pb);
  }
  PolyQZ r;
  if (try_divide(pa, pb)) {
    r = pb;
  } else {
    r = bivariate_gcd(pa, pb).normalized();
  }
  return r.times_monomial(g, 0, 0);
}

}  // namespace cylproof
