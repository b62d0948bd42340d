#include "cylproof/series.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace cylproof {

namespace {

bool valid(int qexp, int zexp, int q_order, int z_order) { return qexp <= q_order && zexp <= z_order; }

int min_z_of(const std::vector<PolyQZ::Term>& terms) {
  int m = std::numeric_limits<int>::max();
  for (const auto& t : terms) m = std::min(m, t.first.z);
  return terms.empty() ? 0 : m;
}

int max_z_of(const std::vector<PolyQZ::Term>& terms) {
  int m = std::numeric_limits<int>::min();
  for (const auto& t : terms) m = std::max(m, t.first.z);
  return terms.empty() ? 0 : m;
}

int sat_add(int a, int b) {
  long s = static_cast<long>(a) + b;
  if (s >= TruncSeries::kExactZ) return TruncSeries::kExactZ;
  return static_cast<int>(s);
}

// Truncated product of two sorted term lists.
std::vector<PolyQZ::Term> mul_terms(const std::vector<PolyQZ::Term>& a, const std::vector<PolyQZ::Term>& b,
                                    int q_order, int z_order) {
  std::vector<PolyQZ::Term> out;
  if (a.empty() || b.empty()) return out;
  const int qlo = a.front().first.q + b.front().first.q;
  const int qhi = std::min(q_order, a.back().first.q + b.back().first.q);
  if (qhi < qlo) return out;
  const int zlo = min_z_of(a) + min_z_of(b);
  const int zhi = std::min<long>(z_order, static_cast<long>(max_z_of(a)) + max_z_of(b));
  if (zhi < zlo) return out;
  const long width = zhi - zlo + 1;
  const long area = static_cast<long>(qhi - qlo + 1) * width;
  if (area <= 8 * static_cast<long>(a.size()) * static_cast<long>(b.size()) + 1024) {
    std::vector<BigInt> acc(area);
    for (const auto& [ea, ca] : a) {
      if (ea.q + b.front().first.q > qhi) break;
      for (const auto& [eb, cb] : b) {
        const int qe = ea.q + eb.q;
        if (qe > qhi) break;
        const int ze = ea.z + eb.z;
        if (ze > zhi) continue;
        mpz_addmul(acc[static_cast<long>(qe - qlo) * width + (ze - zlo)].get_mpz_t(), ca.get_mpz_t(),
                   cb.get_mpz_t());
      }
    }
    for (long idx = 0; idx < area; ++idx) {
      if (acc[idx] != 0) {
        out.push_back({Exp{static_cast<int>(idx / width) + qlo, static_cast<int>(idx % width) + zlo},
                       std::move(acc[idx])});
      }
    }
    return out;
  }
  std::map<Exp, BigInt> acc;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      Exp e{ea.q + eb.q, ea.z + eb.z};
      if (e.q > qhi) break;
      if (e.z > zhi) continue;
      mpz_addmul(acc[e].get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    }
  }
  for (auto& [e, c] : acc) {
    if (c != 0) out.push_back({e, std::move(c)});
  }
  return out;
}

std::string render_terms(const std::vector<PolyQZ::Term>& terms) {
  return PolyQZ::from_terms(terms).to_string();
}

}  // namespace

TruncSeries::TruncSeries(int q_order, int z_order) : q_order_(q_order), z_order_(z_order) {}

TruncSeries TruncSeries::from_poly(const PolyQZ& p, int q_order, int z_order) {
  TruncSeries s(q_order, z_order);
  std::vector<PolyQZ::Term> terms;
  for (const auto& t : p.terms()) {
    if (valid(t.first.q, t.first.z, q_order, z_order)) terms.push_back(t);
  }
  s.terms_ = std::move(terms);
  return s;
}

void TruncSeries::set_terms(std::vector<PolyQZ::Term> terms) {
  std::vector<PolyQZ::Term> kept;
  kept.reserve(terms.size());
  for (auto& t : terms) {
    if (valid(t.first.q, t.first.z, q_order_, z_order_) && t.second != 0) kept.push_back(std::move(t));
  }
  terms_ = std::move(kept);
}

BigInt TruncSeries::coefficient(int qexp, int zexp) const {
  if (!valid(qexp, zexp, q_order_, z_order_)) {
    throw std::out_of_range("TruncSeries::coefficient: exponent beyond the valid order");
  }
  Exp e{qexp, zexp};
  auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                             [](const PolyQZ::Term& t, const Exp& x) { return t.first < x; });
  if (it != terms_.end() && it->first == e) return it->second;
  return 0;
}

void TruncSeries::add_term(int qexp, int zexp, const BigInt& c) {
  if (c == 0 || !valid(qexp, zexp, q_order_, z_order_)) return;
  Exp e{qexp, zexp};
  auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                             [](const PolyQZ::Term& t, const Exp& x) { return t.first < x; });
  if (it != terms_.end() && it->first == e) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  } else {
    terms_.insert(it, {e, c});
  }
}

bool TruncSeries::is_zero() const { return terms_.empty(); }

int TruncSeries::min_q() const { return terms_.empty() ? q_order_ + 1 : terms_.front().first.q; }

TruncSeries TruncSeries::operator-() const {
  TruncSeries r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

TruncSeries& TruncSeries::operator+=(const TruncSeries& o) {
  q_order_ = std::min(q_order_, o.q_order_);
  z_order_ = std::min(z_order_, o.z_order_);
  PolyQZ sum = PolyQZ::from_terms(terms_) + PolyQZ::from_terms(o.terms_);
  set_terms(sum.terms());
  return *this;
}

TruncSeries& TruncSeries::operator-=(const TruncSeries& o) { return *this += -o; }

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
  int q_order = std::min(a.q_order_ + std::min(b.min_q(), b.q_order_ + 1),
                         b.q_order_ + std::min(a.min_q(), a.q_order_ + 1));
  int z_order = TruncSeries::kExactZ;
  if (!a.z_exact()) z_order = std::min(z_order, sat_add(a.z_order_, min_z_of(b.terms_)));
  if (!b.z_exact()) z_order = std::min(z_order, sat_add(b.z_order_, min_z_of(a.terms_)));
  TruncSeries r(q_order, z_order);
  r.terms_ = mul_terms(a.terms_, b.terms_, q_order, z_order);
  return r;
}

TruncSeries operator*(const PolyQZ& p, const TruncSeries& s) {
  if (p.is_zero()) return TruncSeries(s.q_order_, s.z_order_);
  int q_order = s.q_order_ + p.min_q();
  int z_order = s.z_exact() ? TruncSeries::kExactZ : sat_add(s.z_order_, p.min_z());
  TruncSeries r(q_order, z_order);
  r.terms_ = mul_terms(p.terms(), s.terms_, q_order, z_order);
  return r;
}

bool operator==(const TruncSeries& a, const TruncSeries& b) {
  return a.q_order_ == b.q_order_ && a.z_order_ == b.z_order_ && a.terms_ == b.terms_;
}

TruncSeries TruncSeries::truncated(int q_order, int z_order) const {
  if (q_order > q_order_ || z_order > z_order_) {
    throw std::invalid_argument("TruncSeries::truncated: requested order exceeds the valid order");
  }
  TruncSeries r(q_order, z_order);
  r.set_terms(terms_);
  return r;
}

TruncSeries TruncSeries::at_z_one() const {
  if (!z_exact()) throw std::invalid_argument("TruncSeries::at_z_one: z is truncated");
  TruncSeries r(q_order_);
  r.set_terms(PolyQZ::from_terms(terms_).at_z(1).terms());
  return r;
}

TruncSeries TruncSeries::z_shift(int n) const {
  // z^j q^i -> z^j q^(i + n j); with z-exponents >= 0 and n >= 0 the q-order is kept.
  if (n < 0 && !terms_.empty() && max_z_of(terms_) > 0 && !z_exact()) {
    throw std::invalid_argument("TruncSeries::z_shift: negative shift of a z-truncated series");
  }
  int q_order = q_order_;
  if (!terms_.empty()) {
    const int zmin = min_z_of(terms_);
    if (n < 0) q_order = q_order_ + n * std::max(0, max_z_of(terms_));
    if (zmin < 0 && n > 0) q_order = q_order_ + n * zmin;
  }
  TruncSeries r(q_order, z_order_);
  r.set_terms(PolyQZ::from_terms(terms_).z_shift(n).terms());
  return r;
}

std::vector<std::tuple<int, int, BigInt>> TruncSeries::terms() const {
  std::vector<std::tuple<int, int, BigInt>> out;
  out.reserve(terms_.size());
  for (const auto& [e, c] : terms_) out.emplace_back(e.q, e.z, c);
  return out;
}

PolyQZ TruncSeries::to_poly() const { return PolyQZ::from_terms(terms_); }

std::string TruncSeries::to_string() const {
  std::string out;
  if (!terms_.empty()) out = render_terms(terms_) + " + ";
  out += "O(q^" + std::to_string(q_order_ + 1) + ")";
  if (!z_exact()) out += " + O(z^" + std::to_string(z_order_ + 1) + ")";
  return out;
}

bool agree(const TruncSeries& a, const TruncSeries& b, int q_order, int z_order) {
  return first_difference(a, b, q_order, z_order).empty();
}

std::string first_difference(const TruncSeries& a, const TruncSeries& b, int q_order, int z_order) {
  if (q_order > a.q_order() || q_order > b.q_order() || z_order > a.z_order() || z_order > b.z_order()) {
    throw std::invalid_argument("comparison beyond the common valid order");
  }
  std::map<Exp, BigInt> diff;
  for (const auto& [qe, ze, c] : a.terms()) {
    if (qe <= q_order && ze <= z_order) diff[Exp{qe, ze}] += c;
  }
  for (const auto& [qe, ze, c] : b.terms()) {
    if (qe <= q_order && ze <= z_order) diff[Exp{qe, ze}] -= c;
  }
  for (const auto& [e, c] : diff) {
    if (c != 0) {
      return "q^" + std::to_string(e.q) + " z^" + std::to_string(e.z) + ": " + a.coefficient(e.q, e.z).get_str() +
             " vs " + b.coefficient(e.q, e.z).get_str();
    }
  }
  return {};
}

TruncSeries inverse(const TruncSeries& s) {
  if (s.is_zero()) throw std::domain_error("inverse of a zero series");
  const int v = s.min_q();
  // Rows by q-degree after dividing by q^v; each row is a polynomial in z.
  std::map<int, PolyQZ> rows;
  for (const auto& [qe, ze, c] : s.terms()) rows[qe - v] += PolyQZ::monomial(c, 0, ze);
  const PolyQZ& lead = rows[0];
  if (!lead.is_unit() || lead.terms().front().first != Exp{}) {
    throw std::domain_error("inverse: lowest coefficient is not +-1");
  }
  const BigInt c0 = lead.terms().front().second;
  const int n_max = s.q_order() - 2 * v;
  TruncSeries r(n_max, s.z_order());
  std::vector<PolyQZ> inv(std::max(0, n_max + v + 1));
  std::vector<PolyQZ::Term> out;
  const int count = n_max + v;  // rows 0..count of the shifted inverse are needed
  for (int n = 0; n <= count; ++n) {
    PolyQZ acc;
    if (n == 0) {
      acc = PolyQZ(c0);
    } else {
      for (const auto& [i, row] : rows) {
        if (i == 0) continue;
        if (i > n) break;
        acc -= row * inv[n - i];
      }
      acc = acc.times_monomial(c0, 0, 0);
      if (!s.z_exact()) {
        std::vector<PolyQZ::Term> kept;
        for (const auto& t : acc.terms()) {
          if (t.first.z <= s.z_order()) kept.push_back(t);
        }
        acc = PolyQZ::from_terms(std::move(kept));
      }
    }
    inv[n] = acc;
    for (const auto& [e, c] : acc.terms()) out.push_back({Exp{n - v, e.z}, c});
  }
  r.set_terms(std::move(out));
  return r;
}

}  // namespace cylproof
