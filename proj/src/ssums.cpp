#include "cylproof/ssums.hpp"

#include <algorithm>
#include <limits>
#include <regex>
#include <sstream>
#include <stdexcept>

#include "cylproof/dense.hpp"
#include "cylproof/qseries.hpp"

namespace cylproof {

Family family_of(int m) {
  switch (((m % 3) + 3) % 3) {
    case 2:
      return Family::kMinusOne;
    case 0:
      return Family::kZero;
    default:
      return Family::kPlusOne;
  }
}

int family_k(int m) {
  if (m < 5) throw std::invalid_argument("modulus must be at least 5");
  return (m + 1) / 3;  // round(m / 3) for every residue
}

namespace {

std::string render_vec(const std::vector<int>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + "}";
}

}  // namespace

std::string SIndex::to_string() const {
  return "S" + std::to_string(m) + "[" + render_vec(rho) + "," + render_vec(sigma) + "]";
}

int SIndex::max_abs_entry() const {
  int mx = 0;
  for (int v : rho) mx = std::max(mx, std::abs(v));
  for (int v : sigma) mx = std::max(mx, std::abs(v));
  return mx;
}

SIndex make_sindex(int m, std::vector<int> rho, std::vector<int> sigma) {
  const std::size_t n = static_cast<std::size_t>(family_k(m) - 1);
  if (rho.size() != n || sigma.size() != n) {
    throw std::invalid_argument("index vectors for modulus " + std::to_string(m) + " must have length " +
                                std::to_string(n));
  }
  return SIndex{m, std::move(rho), std::move(sigma)};
}

SIndex parse_sindex(const std::string& text) {
  static const std::regex re(R"(\s*S(\d+)\[\{([-0-9,\s]*)\},\{([-0-9,\s]*)\}\]\s*)");
  std::smatch mt;
  if (!std::regex_match(text, mt, re)) throw std::invalid_argument("malformed S-index '" + text + "'");
  auto parse_list = [](const std::string& s) {
    std::vector<int> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(std::stoi(item));
    return v;
  };
  return make_sindex(std::stoi(mt[1].str()), parse_list(mt[2].str()), parse_list(mt[3].str()));
}

std::vector<int> e_vec(int n, int i) {
  std::vector<int> v(n, 1);
  for (int j = 0; j < i && j < n; ++j) v[j] = 0;
  return v;
}

std::vector<int> delta_vec(int n, int i) {
  if (i < 1 || i > n) throw std::invalid_argument("delta index out of range");
  std::vector<int> v(n, 0);
  v[i - 1] = 1;
  return v;
}

std::vector<int> vec_add(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> v(a);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += b[i];
  return v;
}

std::vector<int> vec_scale(int c, const std::vector<int>& a) {
  std::vector<int> v(a);
  for (auto& x : v) x *= c;
  return v;
}

SExpr SExpr::term(const SIndex& idx, const PolyQZ& coeff) {
  SExpr e(idx.m);
  e.add(idx, coeff);
  return e;
}

PolyQZ SExpr::coefficient(const SIndex& idx) const {
  auto it = terms_.find(idx);
  return it == terms_.end() ? PolyQZ() : it->second;
}

void SExpr::add(const SIndex& idx, const PolyQZ& coeff) {
  if (coeff.is_zero()) return;
  if (terms_.empty() && m_ == 0) m_ = idx.m;
  if (idx.m != m_) throw std::invalid_argument("SExpr: modulus mismatch");
  auto [it, inserted] = terms_.try_emplace(idx, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

SExpr& SExpr::operator+=(const SExpr& o) {
  for (const auto& [idx, c] : o.terms_) add(idx, c);
  return *this;
}

SExpr& SExpr::operator-=(const SExpr& o) {
  for (const auto& [idx, c] : o.terms_) add(idx, -c);
  return *this;
}

SExpr operator*(const PolyQZ& c, const SExpr& e) {
  SExpr r(e.m_);
  if (c.is_zero()) return r;
  for (const auto& [idx, p] : e.terms_) r.add(idx, c * p);
  return r;
}

std::string SExpr::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [idx, c] : terms_) {
    out += "(" + c.to_string() + ") * " + idx.to_string() + "\n";
  }
  return out;
}

SExpr sexpr_combine(const std::vector<std::pair<PolyQZ, SExpr>>& terms) {
  SExpr r;
  for (const auto& [c, e] : terms) {
    if (!e.empty() && !r.empty() && e.modulus() != r.modulus()) {
      throw std::invalid_argument("sexpr_combine: modulus mismatch");
    }
    r += c * e;
  }
  return r;
}

SExpr z_shift(const SExpr& e, int n) {
  SExpr r(e.modulus());
  for (const auto& [idx, c] : e.terms()) {
    SIndex s = idx;
    s.rho[0] += n;
    r.add(s, c.z_shift(n));
  }
  return r;
}

// Factor tables for one truncation order Q: 1/(q;q)_n and cached products.
struct SEvaluator::Tables {
  int Q;
  std::vector<DenseSeries> recip;  // 1/(q;q)_n for n = 0..Q
  std::map<std::pair<int, int>, DenseSeries> pairs;
  std::map<std::tuple<int, int, int>, DenseSeries> blocks;

  explicit Tables(int q) : Q(q) {
    std::vector<BigInt> c(Q + 1);
    c[0] = 1;
    recip.push_back(DenseSeries::from_big(c));
    for (int j = 1; j <= Q; ++j) {
      for (int i = j; i <= Q; ++i) c[i] += c[i - j];
      recip.push_back(DenseSeries::from_big(c));
    }
  }

  const DenseSeries& inv_poch(int n) const { return recip[std::min(n, Q)]; }

  const DenseSeries& pair(int a, int b) {
    a = std::min(a, Q);
    b = std::min(b, Q);
    if (a > b) std::swap(a, b);
    auto it = pairs.find({a, b});
    if (it != pairs.end()) return it->second;
    return pairs.emplace(std::make_pair(a, b), mul_trunc(inv_poch(a), inv_poch(b), Q + 1)).first->second;
  }

  const DenseSeries& block(Family fam, int r, int s) {
    auto key = std::make_tuple(static_cast<int>(fam), r, s);
    auto it = blocks.find(key);
    if (it != blocks.end()) return it->second;
    DenseSeries b;
    if (fam == Family::kZero) {
      b = mul_trunc(inv_poch(r + s), inv_poch(r + s + 1), Q + 1);
      PolyQZ gb = qbinom(r + s, r, 3);
      std::vector<BigInt> g(Q + 1);
      for (const auto& [e, c] : gb.terms()) {
        if (e.q <= Q) g[e.q] = c;
      }
      b = mul_trunc(b, DenseSeries::from_big(std::move(g)), Q + 1);
    } else {
      b = mul_trunc(pair(r, s), inv_poch(r + s + 1), Q + 1);
    }
    return blocks.emplace(key, std::move(b)).first->second;
  }
};

SEvaluator::SEvaluator() = default;
SEvaluator::~SEvaluator() = default;

SEvaluator::Tables& SEvaluator::tables_for(int Q) {
  auto it = tables_.find(Q);
  if (it != tables_.end()) return *it->second;
  return *tables_.emplace(Q, std::make_unique<Tables>(Q)).first->second;
}

namespace {

long floor_div2(long x) { return x >= 0 ? x / 2 : -((-x + 1) / 2); }

// Lower bound (doubled) of r^2 - r s + s^2 + rho r + sigma s over r, s >= 0 is g(rho) + g(sigma).
long neg_part_sq(int c) { return c >= 0 ? 0 : -static_cast<long>(c) * c; }

struct ChainWalk {
  const SIndex& idx;
  Family fam;
  int n;
  int Q;
  long bound;  // Q + slack
  int zmax;
  long base;
  std::vector<long> rest_lb;  // lower bound of the levels after i
  SEvaluator::Tables* tables;
  std::map<int, std::vector<BigInt>> rows;
  std::vector<int> r, s;
  long chains = 0;

  long level_value(int i, long ri, long si) const {
    long v = ri * ri - ri * si + si * si + static_cast<long>(idx.rho[i]) * ri + static_cast<long>(idx.sigma[i]) * si;
    if (fam == Family::kMinusOne && i == n - 1) v += 2 * ri * si;
    return v;
  }

  void emit(long E, const DenseSeries* prefix) {
    ++chains;
    if (E > Q) return;
    const std::size_t len = static_cast<std::size_t>(Q - E + 1);
    const DenseSeries& blk = tables->block(fam, r[n - 1], s[n - 1]);
    DenseSeries term = prefix ? mul_trunc(*prefix, blk, len) : blk.truncated(len);
    auto& row = rows[r[0]];
    if (row.empty()) row.resize(static_cast<std::size_t>(Q - base + 1));
    term.add_into(row, static_cast<std::size_t>(E - base));
  }

  void walk(int i, long partial, const DenseSeries* prefix) {
    const long rlimit = (i == 0) ? (zmax == TruncSeries::kExactZ ? std::numeric_limits<long>::max() : zmax) : r[i - 1];
    const long slimit = (i == 0) ? std::numeric_limits<long>::max() : s[i - 1];
    const long rho = idx.rho[i];
    const long sig = idx.sigma[i];
    for (long ri = 0; ri <= rlimit; ++ri) {
      if (ri >= -rho) {
        // Over all s >= 0: 2 f >= (r + rho)^2 - rho^2 + g(sigma).
        long lb = floor_div2((ri + rho) * (ri + rho) - rho * rho + neg_part_sq(static_cast<int>(sig)));
        if (partial + lb + rest_lb[i] > bound) break;
      }
      // f(r, s) is a convex quadratic in s with vertex at -(sigma - r + extra) / 2.
      const long extra = (fam == Family::kMinusOne && i == n - 1) ? 2 * ri : 0;
      const long twice_vertex = -(sig - ri + extra);
      for (long si = 0; si <= slimit; ++si) {
        const long e = partial + level_value(i, ri, si);
        if (e + rest_lb[i] > bound) {
          if (2 * si >= twice_vertex) break;
          continue;
        }
        r[i] = static_cast<int>(ri);
        s[i] = static_cast<int>(si);
        if (i == 0) {
          if (i == n - 1) {
            emit(e, nullptr);
          } else {
            walk(i + 1, e, nullptr);
          }
          continue;
        }
        const long need = Q - (e + rest_lb[i]) + 1;
        if (need <= 0) {
          ++chains;
          continue;
        }
        const DenseSeries& pr = tables->pair(r[i - 1] - r[i], s[i - 1] - s[i]);
        DenseSeries next = prefix ? mul_trunc(*prefix, pr, static_cast<std::size_t>(need))
                                  : pr.truncated(static_cast<std::size_t>(need));
        if (i == n - 1) {
          emit(e, &next);
        } else {
          walk(i + 1, e, &next);
        }
      }
    }
  }
};

}  // namespace

TruncSeries SEvaluator::eval(const SIndex& idx, int Q, int Zmax, int slack) {
  if (Q < 0 || Zmax < 0) throw std::invalid_argument("eval_S: negative order");
  const int n = family_k(idx.m) - 1;
  if (static_cast<int>(idx.rho.size()) != n || static_cast<int>(idx.sigma.size()) != n) {
    throw std::invalid_argument("eval_S: index length does not match the modulus");
  }
  auto key = std::make_tuple(idx, Q, Zmax);
  if (slack == 0) {
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  std::vector<long> rest_lb(n, 0);
  long total_d = 0;
  for (int i = n - 1; i >= 0; --i) {
    rest_lb[i] = floor_div2(total_d);
    total_d += neg_part_sq(idx.rho[i]) + neg_part_sq(idx.sigma[i]);
  }
  const long base = std::min(0L, floor_div2(total_d));
  // Summands starting at q^base need their factors to order Q - base.
  ChainWalk w{idx, family_of(idx.m), n, Q, static_cast<long>(Q) + slack, Zmax, base, std::move(rest_lb),
              &tables_for(static_cast<int>(Q - base)), {}, std::vector<int>(n, 0), std::vector<int>(n, 0)};
  w.walk(0, 0, nullptr);
  last_chains_ = w.chains;

  std::vector<PolyQZ::Term> terms;
  for (auto& [z, row] : w.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i] != 0) terms.push_back({Exp{static_cast<int>(i + w.base), z}, std::move(row[i])});
    }
  }
  TruncSeries out = TruncSeries::from_poly(PolyQZ::from_terms(std::move(terms)), Q, Zmax);
  if (slack == 0) memo_.emplace(std::move(key), out);
  return out;
}

TruncSeries SEvaluator::eval(const SExpr& e, int Q, int Zmax) {
  TruncSeries acc(Q, Zmax);
  for (const auto& [idx, c] : e.terms()) {
    const int qs = Q - c.min_q();
    long zs = Zmax == TruncSeries::kExactZ ? TruncSeries::kExactZ : static_cast<long>(Zmax) - c.min_z();
    if (zs < 0 || qs < 0) continue;
    TruncSeries s = eval(idx, qs, static_cast<int>(zs));
    TruncSeries t = c * s;
    acc += t.truncated(Q, Zmax);
  }
  return acc;
}

TruncSeries eval_S(const SIndex& idx, int Q, int Zmax, int slack) {
  SEvaluator ev;
  return ev.eval(idx, Q, Zmax, slack);
}

TruncSeries eval_SExpr(const SExpr& e, int Q, int Zmax) {
  SEvaluator ev;
  return ev.eval(e, Q, Zmax);
}

}  // namespace cylproof
