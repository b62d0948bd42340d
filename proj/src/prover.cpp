#include "cylproof/prover.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

namespace cylproof {

namespace {

constexpr int kKeyEntryBias = 128;

}  // namespace

ColKey column_key(const SIndex& s) {
  int maxnorm = 0;
  int l1 = 0;
  for (const auto* v : {&s.rho, &s.sigma}) {
    for (int x : *v) {
      if (x < -127 || x > 127) throw std::out_of_range("column_key: index entry out of range");
      maxnorm = std::max(maxnorm, std::abs(x));
      l1 += std::abs(x);
    }
  }
  if (s.rho.size() + s.sigma.size() > 12) throw std::out_of_range("column_key: index too long");
  ColKey key = static_cast<ColKey>(maxnorm);
  key = (key << 12) | static_cast<ColKey>(l1);
  for (const auto* v : {&s.rho, &s.sigma}) {
    for (int x : *v) key = (key << 8) | static_cast<ColKey>(x + kKeyEntryBias);
  }
  return key;
}

SIndex key_to_sindex(ColKey key, int m) {
  const int n = family_k(m) - 1;
  std::vector<int> all(2 * n);
  for (int i = 2 * n - 1; i >= 0; --i) {
    all[i] = static_cast<int>(key & 0xff) - kKeyEntryBias;
    key >>= 8;
  }
  return SIndex{m, std::vector<int>(all.begin(), all.begin() + n), std::vector<int>(all.begin() + n, all.end())};
}

// ---------------------------------------------------------------------------
// Certificates

int Certificate::max_index_magnitude() const {
  int mx = 0;
  for (const auto& e : entries) mx = std::max(mx, e.name.max_abs_entry());
  return mx;
}

std::string Certificate::to_text() const {
  std::ostringstream os;
  os << "modulus: " << m << "\n";
  if (!target.empty()) {
    os << "target: H";
    os << profile_to_string(target) << "\n";
  }
  os << "status: proved\n";
  for (const auto& e : entries) {
    os << e.name.to_string() << " : " << e.num.to_string() << " / " << e.den.to_string() << "\n";
  }
  return os.str();
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Certificate Certificate::parse(const std::string& text) {
  Certificate c;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  bool have_modulus = false;
  bool have_status = false;
  auto fail = [&](const std::string& why) {
    throw std::runtime_error("certificate line " + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(is, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    try {
      if (line.rfind("modulus:", 0) == 0) {
        c.m = std::stoi(line.substr(8));
        have_modulus = true;
      } else if (line.rfind("target:", 0) == 0) {
        std::string t = trim(line.substr(7));
        if (t.size() < 4 || t[0] != 'H' || t[1] != '(' || t.back() != ')') fail("bad target");
        c.target = parse_profile(t.substr(2, t.size() - 3));
      } else if (line.rfind("status:", 0) == 0) {
        if (trim(line.substr(7)) != "proved") fail("status is not 'proved'");
        have_status = true;
      } else {
        const auto colon = line.find(" : ");
        const auto slash = line.rfind(" / ");
        if (colon == std::string::npos || slash == std::string::npos || slash < colon) fail("expected '<relation> : <num> / <den>'");
        Entry e{parse_relname(trim(line.substr(0, colon))), PolyQZ::parse(trim(line.substr(colon + 3, slash - colon - 3))),
                PolyQZ::parse(trim(line.substr(slash + 3)))};
        if (e.den.is_zero()) fail("zero denominator");
        c.entries.push_back(std::move(e));
      }
    } catch (const std::runtime_error&) {
      throw;
    } catch (const std::exception& ex) {
      fail(ex.what());
    }
  }
  if (!have_modulus) throw std::runtime_error("certificate: missing modulus line");
  if (!have_status) throw std::runtime_error("certificate: missing status line");
  return c;
}

bool verify_certificate(const Certificate& cert, const SExpr& h, RelationForm form) {
  if (!h.empty() && h.modulus() != cert.m) throw std::invalid_argument("verify_certificate: modulus mismatch");
  PolyQZ L(1);
  for (const auto& e : cert.entries) {
    if (e.den.is_zero()) return false;
    PolyQZ g = gcd(L, e.den);
    L = divexact(L, g) * e.den;
  }
  SExpr sum(cert.m);
  for (const auto& e : cert.entries) {
    if (!relation_valid(cert.m, e.name)) return false;
    Relation rel = generate(cert.m, e.name, form);
    sum += (e.num * divexact(L, e.den)) * rel.body;
  }
  SExpr rhs = L * h;
  return sum == rhs;
}

// ---------------------------------------------------------------------------
// Exact elimination

namespace {

using Row = RelMatrix::Row;
using Entry = RelMatrix::Entry;
using ProvTerm = RelMatrix::ProvTerm;

std::tuple<int, std::size_t, int> lc_rank(const PolyQZ& p) {
  return {p.is_unit() ? 0 : 1, p.size(), p.total_degree_span()};
}

PolyQZ scaled(const PolyQZ& a, const PolyQZ& x) { return a.is_one() ? x : a * x; }

// a * x - b * y over entries sorted by descending key.
std::vector<Entry> lincomb(const PolyQZ& a, const std::vector<Entry>& x, const PolyQZ& b, const std::vector<Entry>& y) {
  std::vector<Entry> out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].key > y[j].key)) {
      out.push_back({x[i].key, scaled(a, x[i].val)});
      ++i;
    } else if (i == x.size() || y[j].key > x[i].key) {
      out.push_back({y[j].key, -scaled(b, y[j].val)});
      ++j;
    } else {
      PolyQZ v = scaled(a, x[i].val) - scaled(b, y[j].val);
      if (!v.is_zero()) out.push_back({x[i].key, std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

// Same for provenance lists sorted by ascending relation index.
std::vector<ProvTerm> lincomb(const PolyQZ& a, const std::vector<ProvTerm>& x, const PolyQZ& b,
                              const std::vector<ProvTerm>& y) {
  std::vector<ProvTerm> out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].rel < y[j].rel)) {
      out.push_back({x[i].rel, scaled(a, x[i].coeff)});
      ++i;
    } else if (i == x.size() || y[j].rel < x[i].rel) {
      out.push_back({y[j].rel, -scaled(b, y[j].coeff)});
      ++j;
    } else {
      PolyQZ v = scaled(a, x[i].coeff) - scaled(b, y[j].coeff);
      if (!v.is_zero()) out.push_back({x[i].rel, std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

// R <- a R - b P, choosing a, b so that the entry of R at position pos (whose
// key is the leading key of P) cancels.
void combine(Row& R, std::size_t pos, const Row& P) {
  const PolyQZ& lr = R.entries[pos].val;
  const PolyQZ& lp = P.entries[0].val;
  PolyQZ a(1), b;
  std::optional<PolyQZ> quot;
  if (lp.is_unit() || lp.size() <= lr.size()) quot = try_divide(lr, lp);
  if (quot) {
    b = std::move(*quot);
  } else {
    PolyQZ g = gcd(lr, lp);
    a = divexact(lp, g);
    b = divexact(lr, g);
  }
  R.entries = lincomb(a, R.entries, b, P.entries);
  if (R.den.is_one() && P.den.is_one()) {
    R.prov = lincomb(a, R.prov, b, P.prov);
    R.hc = scaled(a, R.hc) - b * P.hc;
  } else {
    PolyQZ gd = gcd(R.den, P.den);
    PolyQZ fa = a * divexact(P.den, gd);
    PolyQZ fb = b * divexact(R.den, gd);
    R.prov = lincomb(fa, R.prov, fb, P.prov);
    R.hc = fa * R.hc - fb * P.hc;
    R.den = divexact(R.den, gd) * P.den;
  }
}

void for_each_n(Row& R, const std::function<void(PolyQZ&)>& f) {
  for (auto& t : R.prov) f(t.coeff);
  if (!R.hc.is_zero()) f(R.hc);
}

// Divides the row by its content. Unit parts are divided out of the provenance
// as well; other parts are divided out of it when they divide every
// provenance coefficient and are moved into the denominator otherwise.
void tidy(Row& R, bool poly_content) {
  if (R.entries.empty()) return;
  int mq = R.entries[0].val.min_q();
  int mz = R.entries[0].val.min_z();
  BigInt c = 0;
  for (const auto& e : R.entries) {
    mq = std::min(mq, e.val.min_q());
    mz = std::min(mz, e.val.min_z());
    if (c != 1) c = gcd(c, e.val.integer_content());
  }
  const int sign = R.entries[0].val.terms().front().second < 0 ? -1 : 1;
  if (mq != 0 || mz != 0 || sign < 0) {
    for (auto& e : R.entries) e.val = e.val.times_monomial(sign, -mq, -mz);
    for_each_n(R, [&](PolyQZ& p) { p = p.times_monomial(sign, -mq, -mz); });
  }
  auto absorb = [&](const auto& divides_all, const auto& divide, const PolyQZ& as_poly) {
    bool all = true;
    for (const auto& t : R.prov) {
      if (!divides_all(t.coeff)) {
        all = false;
        break;
      }
    }
    if (all && !R.hc.is_zero() && !divides_all(R.hc)) all = false;
    if (all) {
      for_each_n(R, [&](PolyQZ& p) { p = divide(p); });
    } else {
      R.den = R.den * as_poly;
    }
  };
  if (c > 1) {
    for (auto& e : R.entries) e.val = e.val.divexact_integer(c);
    absorb([&](const PolyQZ& p) { return divides(c, p.integer_content()); },
           [&](const PolyQZ& p) { return p.divexact_integer(c); }, PolyQZ(c));
  }
  if (!poly_content || R.entries[0].val.is_monomial()) return;
  PolyQZ g = R.entries[0].val;
  for (std::size_t i = 1; i < R.entries.size() && g.size() > 1; ++i) g = gcd(g, R.entries[i].val);
  if (g.size() <= 1) return;
  for (auto& e : R.entries) e.val = divexact(e.val, g);
  absorb([&](const PolyQZ& p) { return try_divide(p, g).has_value(); }, [&](const PolyQZ& p) { return divexact(p, g); },
         g);
}

}  // namespace

RelMatrix RelMatrix::build(const std::vector<Relation>& relations) {
  if (relations.empty()) throw std::invalid_argument("RelMatrix::build: no relations");
  RelMatrix M(relations.front().body.modulus());
  M.add_relations(relations);
  return M;
}

void RelMatrix::add_relations(const std::vector<Relation>& relations) {
  for (const auto& r : relations) {
    if (!r.body.empty() && r.body.modulus() != m_) throw std::invalid_argument("RelMatrix: modulus mismatch");
    relations_.push_back(r);
  }
  if (!relations.empty()) echelon_ = false;
}

std::size_t RelMatrix::column_count() const {
  std::set<ColKey> cols;
  for (const auto& r : relations_) {
    for (const auto& [idx, c] : r.body.terms()) cols.insert(column_key(idx));
  }
  return cols.size();
}

RelMatrix::Row RelMatrix::row_from(const SExpr& e) const {
  Row r;
  r.entries.reserve(e.size());
  for (const auto& [idx, c] : e.terms()) r.entries.push_back({column_key(idx), c});
  std::sort(r.entries.begin(), r.entries.end(), [](const Entry& a, const Entry& b) { return a.key > b.key; });
  return r;
}

void RelMatrix::insert(Row row) {
  for (;;) {
    if (row.entries.empty()) {
      ++zero_rows_;
      return;
    }
    const ColKey lead = row.entries[0].key;
    auto it = pivot_of_.find(lead);
    if (it == pivot_of_.end()) {
      tidy(row, true);
      pivot_of_.emplace(lead, rows_.size());
      rows_.push_back(std::move(row));
      return;
    }
    Row& P = rows_[it->second];
    if (lc_rank(row.entries[0].val) < lc_rank(P.entries[0].val)) {
      tidy(row, true);
      std::swap(row, P);
    }
    combine(row, 0, P);
    tidy(row, false);
  }
}

void RelMatrix::echelonize() {
  for (; pending_from_ < relations_.size(); ++pending_from_) {
    Row r = row_from(relations_[pending_from_].body);
    r.prov.push_back({static_cast<std::uint32_t>(pending_from_), PolyQZ(1)});
    insert(std::move(r));
  }
  echelon_ = true;
}

std::vector<const RelMatrix::Row*> RelMatrix::rows_in_order() const {
  std::vector<const Row*> out;
  out.reserve(rows_.size());
  for (const auto& [key, i] : pivot_of_) out.push_back(&rows_[i]);
  return out;
}

SExpr RelMatrix::row_as_sexpr(const Row& r) const {
  SExpr e(m_);
  for (const auto& en : r.entries) e.add(key_to_sindex(en.key, m_), en.val);
  return e;
}

RelMatrix::Reduction RelMatrix::reduce(const SExpr& h) const {
  if (!echelon_) throw std::logic_error("RelMatrix::reduce: call echelonize() first");
  if (!h.empty() && h.modulus() != m_) throw std::invalid_argument("RelMatrix::reduce: modulus mismatch");
  Row R = row_from(h);
  R.hc = PolyQZ(1);
  std::size_t pos = 0;
  std::size_t steps = 0;
  while (pos < R.entries.size()) {
    auto it = pivot_of_.find(R.entries[pos].key);
    if (it == pivot_of_.end()) {
      ++pos;
      continue;
    }
    combine(R, pos, rows_[it->second]);
    if (++steps % 16 == 0) tidy(R, false);
  }
  tidy(R, false);
  Reduction out;
  out.remainder = row_as_sexpr(R);
  out.row = std::move(R);
  return out;
}

namespace {

// num / den in lowest terms with the unit part of den moved into num.
std::pair<PolyQZ, PolyQZ> reduced_fraction(const PolyQZ& num, const PolyQZ& den) {
  PolyQZ g = gcd(num, den);
  PolyQZ n = divexact(num, g);
  PolyQZ d = divexact(den, g);
  const Exp lo = d.low_corner();
  const int sign = d.terms().front().second < 0 ? -1 : 1;
  d = d.times_monomial(sign, -lo.q, -lo.z);
  n = n.times_monomial(sign, -lo.q, -lo.z);
  return {std::move(n), std::move(d)};
}

}  // namespace

Certificate RelMatrix::extract_certificate(const SExpr& h) const {
  Reduction red = reduce(h);
  if (!red.remainder.empty()) {
    throw NonMemberError("target is not in the span of the relations (" + std::to_string(red.remainder.size()) +
                             " remainder terms)",
                         red.remainder);
  }
  Certificate cert;
  cert.m = m_;
  for (const auto& t : red.row.prov) {
    auto [n, d] = reduced_fraction(-t.coeff, red.row.hc);
    cert.entries.push_back({relations_[t.rel].name, std::move(n), std::move(d)});
  }
  std::sort(cert.entries.begin(), cert.entries.end(),
            [](const Certificate::Entry& a, const Certificate::Entry& b) { return a.name < b.name; });
  return cert;
}

bool RelMatrix::check_provenance() const {
  for (const auto& r : rows_) {
    SExpr lhs = r.den * row_as_sexpr(r);
    SExpr rhs(m_);
    for (const auto& t : r.prov) rhs += t.coeff * relations_[t.rel].body;
    if (!(lhs == rhs)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Modular image

namespace {

constexpr std::uint64_t kP = (std::uint64_t{1} << 61) - 1;

std::uint64_t addm(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s >= kP ? s - kP : s;
}
std::uint64_t subm(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kP - b; }
std::uint64_t mulm(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 x = static_cast<unsigned __int128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(x & kP);
  std::uint64_t hi = static_cast<std::uint64_t>(x >> 61);
  return addm(lo, hi);
}
std::uint64_t powm(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulm(r, a);
    a = mulm(a, a);
    e >>= 1;
  }
  return r;
}
std::uint64_t invm(std::uint64_t a) { return powm(a, kP - 2); }

}  // namespace

struct ModularImage::Impl {
  int m;
  std::uint64_t q0, z0, q0inv, z0inv;
  std::map<int, std::uint64_t> qpow, zpow;
  using MEntry = std::pair<ColKey, std::uint64_t>;
  struct Pivot {
    std::vector<MEntry> entries;  // leading value 1
    std::uint32_t rel;
    std::uint64_t inv;
    std::vector<std::pair<std::uint32_t, std::uint64_t>> trace;
  };
  std::vector<Pivot> pivots;
  std::vector<std::vector<MEntry>> originals;
  std::map<ColKey, std::uint32_t> pivot_of;
  std::size_t rows = 0;
  std::size_t zero = 0;

  std::uint64_t power(std::map<int, std::uint64_t>& cache, std::uint64_t x, std::uint64_t xinv, int e) {
    auto it = cache.find(e);
    if (it != cache.end()) return it->second;
    std::uint64_t v = e >= 0 ? powm(x, static_cast<std::uint64_t>(e)) : powm(xinv, static_cast<std::uint64_t>(-e));
    cache.emplace(e, v);
    return v;
  }

  std::uint64_t eval(const PolyQZ& p) {
    std::uint64_t acc = 0;
    for (const auto& [e, c] : p.terms()) {
      std::uint64_t cm = mpz_fdiv_ui(c.get_mpz_t(), kP);
      acc = addm(acc, mulm(cm, mulm(power(qpow, q0, q0inv, e.q), power(zpow, z0, z0inv, e.z))));
    }
    return acc;
  }

  std::vector<MEntry> row_of(const SExpr& e) {
    std::vector<MEntry> r;
    for (const auto& [idx, c] : e.terms()) {
      std::uint64_t v = eval(c);
      if (v) r.push_back({column_key(idx), v});
    }
    std::sort(r.begin(), r.end(), [](const MEntry& a, const MEntry& b) { return a.first > b.first; });
    return r;
  }

  // r <- r - c * P, where P's leading key equals r's leading key.
  static void eliminate(std::vector<MEntry>& r, std::uint64_t c, const std::vector<MEntry>& P) {
    std::vector<MEntry> out;
    out.reserve(r.size() + P.size());
    std::size_t i = 0, j = 0;
    while (i < r.size() || j < P.size()) {
      if (j == P.size() || (i < r.size() && r[i].first > P[j].first)) {
        out.push_back(r[i++]);
      } else if (i == r.size() || P[j].first > r[i].first) {
        out.push_back({P[j].first, subm(0, mulm(c, P[j].second))});
        ++j;
      } else {
        std::uint64_t v = subm(r[i].second, mulm(c, P[j].second));
        if (v) out.push_back({r[i].first, v});
        ++i;
        ++j;
      }
    }
    r.swap(out);
  }
};

ModularImage::ModularImage(int m, std::uint64_t seed) : impl_(new Impl) {
  impl_->m = m;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(2, kP - 2);
  impl_->q0 = dist(rng);
  impl_->z0 = dist(rng);
  impl_->q0inv = invm(impl_->q0);
  impl_->z0inv = invm(impl_->z0);
}

ModularImage::~ModularImage() { delete impl_; }

std::size_t ModularImage::row_count() const { return impl_->rows; }
std::size_t ModularImage::zero_rows() const { return impl_->zero; }

void ModularImage::add_relations(const std::vector<Relation>& relations) {
  Impl& I = *impl_;
  for (const auto& rel : relations) {
    const auto relno = static_cast<std::uint32_t>(I.rows++);
    auto row = I.row_of(rel.body);
    I.originals.push_back(row);
    std::vector<std::pair<std::uint32_t, std::uint64_t>> trace;
    while (!row.empty()) {
      auto it = I.pivot_of.find(row[0].first);
      if (it == I.pivot_of.end()) break;
      const std::uint64_t c = row[0].second;
      trace.push_back({it->second, c});
      Impl::eliminate(row, c, I.pivots[it->second].entries);
    }
    if (row.empty()) {
      ++I.zero;
      continue;
    }
    const std::uint64_t inv = invm(row[0].second);
    for (auto& e : row) e.second = mulm(e.second, inv);
    I.pivot_of.emplace(row[0].first, static_cast<std::uint32_t>(I.pivots.size()));
    I.pivots.push_back({std::move(row), relno, inv, std::move(trace)});
  }
}

std::optional<std::vector<std::size_t>> ModularImage::support(const SExpr& h) const {
  Impl& I = *impl_;
  auto row = I.row_of(h);
  std::vector<std::uint64_t> lambda(I.pivots.size(), 0);
  while (!row.empty()) {
    auto it = I.pivot_of.find(row[0].first);
    if (it == I.pivot_of.end()) return std::nullopt;
    const std::uint64_t c = row[0].second;
    lambda[it->second] = addm(lambda[it->second], c);
    Impl::eliminate(row, c, I.pivots[it->second].entries);
  }
  // Pivot p equals inv_p (R_rel - sum c_t P_t); its trace only uses earlier pivots.
  std::map<std::uint32_t, std::uint64_t> mu;
  for (std::size_t p = I.pivots.size(); p-- > 0;) {
    if (!lambda[p]) continue;
    const auto& P = I.pivots[p];
    const std::uint64_t w = mulm(lambda[p], P.inv);
    mu[P.rel] = addm(mu[P.rel], w);
    for (const auto& [t, c] : P.trace) lambda[t] = subm(lambda[t], mulm(w, c));
  }
  std::vector<std::size_t> out;
  for (const auto& [rel, v] : mu) {
    if (v) out.push_back(rel);
  }
  return out;
}

namespace {

// Rank of a small dense matrix over Z/p; destroys its argument.
std::size_t dense_rank(std::vector<std::vector<std::uint64_t>>& a) {
  std::size_t rank = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t p = rank;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[rank]);
    const std::uint64_t inv = invm(a[rank][c]);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == rank || a[r][c] == 0) continue;
      const std::uint64_t f = mulm(a[r][c], inv);
      for (std::size_t k = c; k < cols; ++k) a[r][k] = subm(a[r][k], mulm(f, a[rank][k]));
    }
    ++rank;
  }
  return rank;
}

}  // namespace

std::vector<std::vector<std::size_t>> ModularImage::smallest_supports(const SExpr& h, std::size_t max_size,
                                                                      std::size_t limit, std::uint64_t budget) const {
  Impl& I = *impl_;
  const auto hrow = I.row_of(h);
  std::map<ColKey, int> col_id;
  for (const auto& [k, v] : hrow) col_id.emplace(k, static_cast<int>(col_id.size()));
  const int target_cols = static_cast<int>(col_id.size());
  std::vector<std::vector<int>> cols(I.originals.size());
  for (std::size_t r = 0; r < I.originals.size(); ++r) {
    for (const auto& [k, v] : I.originals[r]) cols[r].push_back(col_id.emplace(k, static_cast<int>(col_id.size())).first->second);
  }
  std::vector<int> count(col_id.size(), 0);
  std::vector<std::vector<std::size_t>> found;
  std::uint64_t examined = 0;

  auto covered = [&](const std::vector<std::size_t>& subset) {
    std::vector<int> touched;
    for (std::size_t r : subset) {
      for (int c : cols[r]) {
        if (count[c]++ == 0) touched.push_back(c);
      }
    }
    bool ok = true;
    for (int c = 0; c < target_cols && ok; ++c) ok = count[c] >= 1;
    for (int c : touched) {
      if (c >= target_cols && count[c] < 2) ok = false;
    }
    std::vector<int> cols_used = touched;
    for (int c : touched) count[c] = 0;
    return std::make_pair(ok, cols_used);
  };

  auto spans = [&](const std::vector<std::size_t>& subset, const std::vector<int>& used) {
    std::map<int, std::size_t> pos;
    for (int c : used) pos.emplace(c, pos.size());
    for (int c = 0; c < target_cols; ++c) pos.emplace(c, pos.size());
    std::vector<std::vector<std::uint64_t>> a(subset.size(), std::vector<std::uint64_t>(pos.size(), 0));
    for (std::size_t i = 0; i < subset.size(); ++i) {
      const auto& row = I.originals[subset[i]];
      for (std::size_t j = 0; j < row.size(); ++j) a[i][pos[cols[subset[i]][j]]] = row[j].second;
    }
    auto b = a;
    const std::size_t r0 = dense_rank(b);
    if (r0 != subset.size()) return false;  // a dependent subset is never the smallest
    std::vector<std::uint64_t> hv(pos.size(), 0);
    for (std::size_t j = 0; j < hrow.size(); ++j) hv[pos[static_cast<int>(j)]] = hrow[j].second;
    a.push_back(hv);
    return dense_rank(a) == r0;
  };

  const std::size_t n = I.originals.size();
  std::vector<std::size_t> subset;
  std::function<bool(std::size_t, std::size_t)> walk = [&](std::size_t start, std::size_t size) -> bool {
    if (subset.size() == size) {
      if (++examined > budget) return false;
      auto [ok, used] = covered(subset);
      if (ok && spans(subset, used)) found.push_back(subset);
      return found.size() < limit;
    }
    for (std::size_t i = start; i < n; ++i) {
      if (cols[i].empty()) continue;
      subset.push_back(i);
      const bool go_on = walk(i + 1, size);
      subset.pop_back();
      if (!go_on) return false;
    }
    return true;
  };
  for (std::size_t size = 1; size <= max_size; ++size) {
    const bool finished = walk(0, size);
    if (!found.empty()) return found;
    if (!finished) return {};
  }
  return {};
}

// ---------------------------------------------------------------------------
// Driver

namespace {

std::vector<Relation> pick(const std::vector<Relation>& all, const std::vector<std::size_t>& idx) {
  std::vector<Relation> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(all[i]);
  return out;
}

// Greedily drops relations (latest first) while the target stays in the span
// at the sample point.
std::vector<std::size_t> prune_support(int m, const std::vector<Relation>& all, std::vector<std::size_t> sup,
                                       const SExpr& h, std::uint64_t seed) {
  for (std::size_t k = sup.size(); k-- > 0;) {
    std::vector<std::size_t> trial;
    trial.reserve(sup.size() - 1);
    for (std::size_t j = 0; j < sup.size(); ++j) {
      if (j != k) trial.push_back(sup[j]);
    }
    ModularImage img(m, seed);
    img.add_relations(pick(all, trial));
    auto s = img.support(h);
    if (s) {
      std::vector<std::size_t> mapped;
      for (std::size_t j : *s) mapped.push_back(trial[j]);
      sup = std::move(mapped);
      k = std::min(k, sup.size());
    }
  }
  return sup;
}

// Preference among equally small supports: smaller index entries first.
std::pair<int, int> support_rank(const std::vector<Relation>& all, const std::vector<std::size_t>& sup) {
  int worst = 0;
  int total = 0;
  for (std::size_t i : sup) {
    worst = std::max(worst, all[i].name.max_abs_entry());
    for (const auto* v : {&all[i].name.rho, &all[i].name.sigma}) {
      for (int x : *v) total += std::abs(x);
    }
  }
  return {worst, total};
}

std::optional<Certificate> exact_solve(int m, const std::vector<Relation>& rels, const SExpr& h, std::size_t* rows) {
  RelMatrix M(m);
  M.add_relations(rels);
  M.echelonize();
  if (rows) *rows = rels.size();
  try {
    return M.extract_certificate(h);
  } catch (const NonMemberError&) {
    return std::nullopt;
  }
}

}  // namespace

ProofResult prove_membership(int m, const SExpr& h, const ProverOptions& opt) {
  ProofResult res;
  std::ostringstream log;
  if (!h.empty() && h.modulus() != m) throw std::invalid_argument("prove_membership: modulus mismatch");
  if (h.empty()) {
    res.member = true;
    res.cert.m = m;
    res.depth = 0;
    return res;
  }
  std::set<SIndex> seed;
  for (const auto& [idx, c] : h.terms()) seed.insert(idx);

  std::vector<Relation> all;
  ModularImage img(m, opt.seed);
  std::optional<RelMatrix> exact;
  if (!opt.modular_filter) exact.emplace(m);

  auto attempt = [&](int depth) -> bool {
    if (opt.modular_filter) {
      auto sup = img.support(h);
      log << "depth " << depth << ": " << all.size() << " relations, " << img.zero_rows() << " dependent";
      if (!sup) {
        log << ", target outside span\n";
        return false;
      }
      log << ", support " << sup->size();
      if (opt.minimize && sup->size() <= opt.minimize_limit) {
        *sup = prune_support(m, all, std::move(*sup), h, opt.seed);
        log << " (pruned to " << sup->size() << ")";
      }
      if (opt.minimize && sup->size() > 1 && opt.sparsest_max > 0) {
        auto small = img.smallest_supports(h, std::min(sup->size() - 1, opt.sparsest_max), 256, opt.sparsest_budget);
        if (!small.empty()) {
          *sup = *std::min_element(small.begin(), small.end(), [&](const auto& a, const auto& b) {
            return support_rank(all, a) < support_rank(all, b);
          });
          log << " (sparsest " << sup->size() << " of " << small.size() << ")";
        }
      }
      log << "\n";
      auto cert = exact_solve(m, pick(all, *sup), h, &res.exact_rows);
      if (!cert) {
        log << "exact solve on the support failed; using all relations\n";
        cert = exact_solve(m, all, h, &res.exact_rows);
      }
      if (!cert) return false;
      res.cert = std::move(*cert);
    } else {
      exact->echelonize();
      log << "depth " << depth << ": " << all.size() << " relations, " << exact->zero_rows() << " dependent\n";
      try {
        res.cert = exact->extract_certificate(h);
      } catch (const NonMemberError& e) {
        res.remainder = e.remainder();
        return false;
      }
      res.exact_rows = all.size();
    }
    if (!verify_certificate(res.cert, h, opt.form)) throw std::logic_error("prove_membership: certificate failed verification");
    res.member = true;
    res.depth = depth;
    return true;
  };

  auto feed = [&](std::vector<Relation> fresh) {
    if (opt.modular_filter) img.add_relations(fresh);
    if (exact) exact->add_relations(fresh);
    for (auto& r : fresh) all.push_back(std::move(r));
  };

  bool done = false;
  if (opt.mode == FeedMode::kSpanning) {
    feed(spanning_set(m, opt.cap, opt.form));
    done = attempt(0);
  } else {
    for (int depth = 0; depth <= opt.max_depth && !done; ++depth) {
      FrontierResult fr = frontier_set(m, seed, opt.cap, depth, opt.form);
      std::vector<Relation> fresh(fr.relations.begin() + static_cast<std::ptrdiff_t>(all.size()), fr.relations.end());
      const bool grew = !fresh.empty();
      feed(std::move(fresh));
      if (grew || depth == 0) done = attempt(depth);
      if (fr.closed && !done) {
        log << "frontier closed at depth " << depth << "\n";
        break;
      }
    }
  }
  res.frontier_rows = all.size();
  res.zero_rows = opt.modular_filter ? img.zero_rows() : exact->zero_rows();
  if (!done) {
    if (exact) {
      if (res.remainder.empty()) res.remainder = exact->reduce(h).remainder;
    } else if (all.size() <= opt.exact_failure_limit) {
      RelMatrix M(m);
      M.add_relations(all);
      M.echelonize();
      res.exact_rows = all.size();
      auto red = M.reduce(h);
      if (red.remainder.empty()) {
        // The sample point was degenerate; the exact elimination decides.
        res.cert = M.extract_certificate(h);
        res.member = verify_certificate(res.cert, h, opt.form);
        if (!res.member) throw std::logic_error("prove_membership: certificate failed verification");
      } else {
        res.remainder = std::move(red.remainder);
      }
    } else {
      res.remainder = h;
      res.remainder_exact = false;
    }
  }
  res.log = log.str();
  return res;
}

}  // namespace cylproof
