#include "cylproof/cylindric.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "cylproof/qseries.hpp"

namespace cylproof {

int level(const Profile& c) { return std::accumulate(c.begin(), c.end(), 0); }

int modulus_of(const Profile& c) { return static_cast<int>(c.size()) + level(c); }

Profile cyclic_normalize(const Profile& c) {
  Profile best = c;
  Profile cur = c;
  for (std::size_t i = 1; i < c.size(); ++i) {
    std::rotate(cur.begin(), cur.begin() + 1, cur.end());
    if (cur > best) best = cur;
  }
  return best;
}

std::vector<Profile> essentially_unique_profiles(int r, int lvl) {
  std::vector<Profile> out;
  Profile c(r, 0);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == r - 1) {
      c[pos] = left;
      if (cyclic_normalize(c) == c) out.push_back(c);
      return;
    }
    for (int v = left; v >= 0; --v) {
      c[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  if (r >= 1) rec(rec, 0, lvl);
  return out;
}

std::string profile_to_string(const Profile& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c[i]);
  }
  return s + ")";
}

Profile parse_profile(const std::string& text) {
  Profile c;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size() && item.find_first_not_of(' ', used) != std::string::npos) {
        throw std::invalid_argument("trailing characters");
      }
      if (v < 0) throw std::invalid_argument("negative part");
      c.push_back(v);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed profile '" + text + "'");
    }
  }
  if (c.empty()) throw std::invalid_argument("empty profile");
  return c;
}

std::vector<int> nonzero_indices(const Profile& c) {
  std::vector<int> out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] != 0) out.push_back(static_cast<int>(i) + 1);
  }
  return out;
}

Profile c_of_J(const Profile& c, const std::vector<int>& J) {
  const int r = static_cast<int>(c.size());
  if (J.empty()) throw std::invalid_argument("c_of_J: J must be non-empty");
  std::vector<bool> in(r + 1, false);
  for (int j : J) {
    if (j < 1 || j > r || c[j - 1] == 0) throw std::invalid_argument("c_of_J: J is not a subset of the nonzero indices");
    in[j] = true;
  }
  Profile out(c);
  for (int i = 1; i <= r; ++i) {
    const int prev = (i == 1) ? r : i - 1;
    if (in[i] && !in[prev]) {
      out[i - 1] -= 1;
    } else if (!in[i] && in[prev]) {
      out[i - 1] += 1;
    }
  }
  return out;
}

bool is_cylindric(const CylPartition& p) {
  const int r = static_cast<int>(p.profile.size());
  if (static_cast<int>(p.components.size()) != r) return false;
  auto part = [&](int comp, int j) -> int {  // 1-based j, absent entries read as 0
    const auto& v = p.components[comp];
    return j >= 1 && j <= static_cast<int>(v.size()) ? v[j - 1] : 0;
  };
  for (int i = 0; i < r; ++i) {
    const int next = (i + 1) % r;
    const int shift = p.profile[next];
    const int len = std::max(p.components[i].size(), p.components[next].size()) + shift + 1;
    for (int j = 1; j <= len; ++j) {
      if (part(i, j) < part(next, j + shift)) return false;
    }
  }
  return true;
}

TruncSeries borodin_product(const Profile& c, int Q) {
  const int r = static_cast<int>(c.size());
  const int m = modulus_of(c);
  auto s = [&](int i, int j) {  // c_i + ... + c_j, 1-based, empty when i > j
    int t = 0;
    for (int x = i; x <= j; ++x) t += c[x - 1];
    return t;
  };
  std::vector<int> exps{m};
  for (int i = 1; i <= r; ++i) {
    for (int j = i; j <= r; ++j) {
      for (int k = 1; k <= c[i - 1]; ++k) exps.push_back(k + j - i + s(i + 1, j));
    }
  }
  for (int i = 2; i <= r; ++i) {
    for (int j = 2; j <= i; ++j) {
      for (int k = 1; k <= c[i - 1]; ++k) exps.push_back(m - k + j - i - s(j, i - 1));
    }
  }
  TruncSeries denom = TruncSeries::one(Q);
  for (int a : exps) denom = denom * poch_infinite(Monomial{1, a, 0}, Q, m);
  return inverse(denom);
}

TruncSeries OracleTable::as_series() const {
  TruncSeries s(max_total);
  for (const auto& [key, cnt] : counts) s.add_term(key.second, key.first, cnt);
  return s;
}

nlohmann::json OracleTable::to_json() const {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [key, cnt] : counts) {
    entries.push_back({{"max_part", key.first}, {"total", key.second}, {"count", cnt.get_str()}});
  }
  return {{"profile", profile}, {"max_total", max_total}, {"entries", entries}};
}

namespace {

struct Enumerator {
  const Profile& c;
  int r;
  int max_total;
  std::vector<std::vector<int>> comps;
  std::map<std::pair<int, int>, BigInt>& counts;

  static int at(const std::vector<int>& v, int j) {
    return j >= 1 && j <= static_cast<int>(v.size()) ? v[j - 1] : 0;
  }

  // Upper bound for part j of component i from pi^(i-1)_{j - c_i} >= pi^(i)_j.
  int upper(int i, int j) const {
    if (i == 0) return max_total;
    const int k = j - c[i];
    if (k < 1) return max_total;
    return at(comps[i - 1], k);
  }

  bool wrap_ok() const {
    // pi^(r)_j >= pi^(1)_{j + c_1}
    const auto& last = comps[r - 1];
    const auto& first = comps[0];
    for (int j = 1; j + c[0] <= static_cast<int>(first.size()); ++j) {
      if (at(last, j) < first[j + c[0] - 1]) return false;
    }
    return true;
  }

  void record(int total) {
    int mx = 0;
    for (const auto& v : comps) {
      if (!v.empty()) mx = std::max(mx, v[0]);
    }
    counts[{mx, total}] += 1;
  }

  void component(int i, int budget, int total) {
    if (i == r) {
      if (wrap_ok()) record(total);
      return;
    }
    comps[i].clear();
    parts(i, 1, max_total, budget, total);
  }

  void parts(int i, int j, int prev, int budget, int total) {
    // Option: stop this component here.
    component(i + 1, budget, total);
    const int ub = std::min({prev, upper(i, j), budget});
    for (int v = 1; v <= ub; ++v) {
      comps[i].push_back(v);
      parts(i, j + 1, v, budget - v, total + v);
      comps[i].pop_back();
    }
  }
};

}  // namespace

OracleTable enumerate_oracle(const Profile& c, int max_total) {
  if (max_total > kOracleMaxTotal) {
    throw std::invalid_argument("enumerate_oracle: max-total " + std::to_string(max_total) +
                                " exceeds the exhaustive bound " + std::to_string(kOracleMaxTotal));
  }
  if (c.empty()) throw std::invalid_argument("enumerate_oracle: empty profile");
  OracleTable t;
  t.profile = c;
  t.max_total = max_total;
  Enumerator e{c, static_cast<int>(c.size()), max_total, std::vector<std::vector<int>>(c.size()), t.counts};
  e.component(0, max_total, 0);
  return t;
}

TruncSeries h_from_f(const TruncSeries& f) {
  const int Q = f.q_order();
  return poch_infinite(Monomial{1, 1, 1}, Q) * (reciprocal_poch(Q, Q) * f);
}

TruncSeries f_from_h(const TruncSeries& h) {
  const int Q = h.q_order();
  return inverse(poch_infinite(Monomial{1, 1, 1}, Q)) * (poch_infinite(Monomial{1, 1, 0}, Q) * h);
}

std::vector<HTerm> cw_equation(const Profile& c) {
  std::vector<HTerm> out;
  out.push_back({PolyQZ(1), HLabel{cyclic_normalize(c), 0}});
  const auto idx = nonzero_indices(c);
  const unsigned n = static_cast<unsigned>(idx.size());
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> J;
    for (unsigned b = 0; b < n; ++b) {
      if (mask & (1u << b)) J.push_back(idx[b]);
    }
    const int size = static_cast<int>(J.size());
    PolyQZ coeff = poch_finite(Monomial{1, 1, 1}, size - 1);
    if (size % 2 == 1) coeff = -coeff;  // -(-1)^{|J|-1}
    out.push_back({coeff, HLabel{cyclic_normalize(c_of_J(c, J)), size}});
  }
  return out;
}

}  // namespace cylproof
