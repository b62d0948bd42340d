#include "cylproof/relations.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace cylproof {

namespace {

std::string render_vec(const std::vector<int>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + "}";
}

std::vector<int> parse_list(const std::string& s) {
  std::vector<int> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(std::stoi(item));
  return v;
}

int sum_first(const std::vector<int>& v, int count) { return std::accumulate(v.begin(), v.begin() + count, 0); }

// sum_{j=1}^{count} delta_j
std::vector<int> ones_prefix(int n, int count) {
  std::vector<int> v(n, 0);
  for (int j = 0; j < count; ++j) v[j] = 1;
  return v;
}

void check_lengths(int m, const std::vector<int>& rho, const std::vector<int>& sigma) {
  const int n = family_k(m) - 1;
  if (static_cast<int>(rho.size()) != n || static_cast<int>(sigma.size()) != n) {
    throw std::invalid_argument("relation index vectors must have length " + std::to_string(n));
  }
}

SIndex idx(int m, const std::vector<int>& rho, const std::vector<int>& sigma) { return SIndex{m, rho, sigma}; }

PolyQZ q(int e) { return PolyQZ::q_power(e); }
PolyQZ zq(int e) { return PolyQZ::monomial(1, e, 1); }

Relation build(RelName name, int m, const std::vector<std::pair<PolyQZ, SIndex>>& terms) {
  std::vector<std::pair<PolyQZ, SExpr>> parts;
  parts.reserve(terms.size());
  for (const auto& [c, s] : terms) parts.push_back({c, SExpr::term(s)});
  SExpr body = sexpr_combine(parts);
  (void)m;
  return Relation{std::move(name), std::move(body)};
}

}  // namespace

std::string RelName::to_string() const {
  std::string inner = "{" + render_vec(rho) + "," + render_vec(sigma) + "}";
  const int k = static_cast<int>(kind);
  if (kind == RelKind::kR1 || kind == RelKind::kR2) {
    return "R" + std::to_string(k) + "[{" + std::to_string(i) + "}," + inner + "]";
  }
  return "R" + std::to_string(k) + "[" + inner + "]";
}

int RelName::max_abs_entry() const {
  int mx = 0;
  for (int v : rho) mx = std::max(mx, std::abs(v));
  for (int v : sigma) mx = std::max(mx, std::abs(v));
  return mx;
}

RelName parse_relname(const std::string& text) {
  static const std::regex with_i(R"(\s*R([12])\[\{(\d+)\},\{\{([-0-9,\s]*)\},\{([-0-9,\s]*)\}\}\]\s*)");
  static const std::regex without_i(R"(\s*R([34])\[\{\{([-0-9,\s]*)\},\{([-0-9,\s]*)\}\}\]\s*)");
  std::smatch mt;
  RelName n;
  if (std::regex_match(text, mt, with_i)) {
    n.kind = static_cast<RelKind>(std::stoi(mt[1].str()));
    n.i = std::stoi(mt[2].str());
    n.rho = parse_list(mt[3].str());
    n.sigma = parse_list(mt[4].str());
    return n;
  }
  if (std::regex_match(text, mt, without_i)) {
    n.kind = static_cast<RelKind>(std::stoi(mt[1].str()));
    n.rho = parse_list(mt[2].str());
    n.sigma = parse_list(mt[3].str());
    return n;
  }
  throw std::invalid_argument("malformed relation name '" + text + "'");
}

Relation gen_R1(int m, int i, const std::vector<int>& rho, const std::vector<int>& sigma) {
  check_lengths(m, rho, sigma);
  const int n = family_k(m) - 1;
  if (i < 1 || i > n - 1) throw std::invalid_argument("R1: superscript out of range 1..k-2");
  const auto D = ones_prefix(n, i);
  return build(RelName{RelKind::kR1, i, rho, sigma}, m,
               {{PolyQZ(1), idx(m, rho, sigma)},
                {PolyQZ(-1), idx(m, vec_add(rho, vec_add(delta_vec(n, i), vec_scale(-1, delta_vec(n, i + 1)))), sigma)},
                {-zq(i + sum_first(rho, i)), idx(m, vec_add(rho, vec_scale(2, D)), vec_add(sigma, vec_scale(-1, D)))}});
}

Relation gen_R2(int m, int i, const std::vector<int>& rho, const std::vector<int>& sigma, RelationForm form) {
  check_lengths(m, rho, sigma);
  const int n = family_k(m) - 1;
  if (i < 1 || i > n - 1) throw std::invalid_argument("R2: superscript out of range 1..k-2");
  const auto D = ones_prefix(n, i);
  const int e = i + sum_first(sigma, i);
  const PolyQZ third = form == RelationForm::kAsPrinted ? zq(e) : q(e);
  return build(RelName{RelKind::kR2, i, rho, sigma}, m,
               {{PolyQZ(1), idx(m, rho, sigma)},
                {PolyQZ(-1), idx(m, rho, vec_add(sigma, vec_add(delta_vec(n, i), vec_scale(-1, delta_vec(n, i + 1)))))},
                {-third, idx(m, vec_add(rho, vec_scale(-1, D)), vec_add(sigma, vec_scale(2, D)))}});
}

bool relation_valid(int m, const RelName& name) {
  const int n = family_k(m) - 1;
  if (static_cast<int>(name.rho.size()) != n || static_cast<int>(name.sigma.size()) != n) return false;
  switch (name.kind) {
    case RelKind::kR1:
    case RelKind::kR2:
      return name.i >= 1 && name.i <= n - 1;
    case RelKind::kR3:
      if (name.i != 0) return false;
      if (family_of(m) == Family::kMinusOne) return n >= 2 && name.sigma[n - 1] == 0;
      return true;
    case RelKind::kR4:
      if (name.i != 0) return false;
      if (family_of(m) == Family::kMinusOne) return n >= 2 && name.rho[n - 1] == 0;
      return true;
  }
  return false;
}

Relation gen_R3(int m, const std::vector<int>& rho, const std::vector<int>& sigma, RelationForm form) {
  check_lengths(m, rho, sigma);
  const int n = family_k(m) - 1;
  const auto dl = delta_vec(n, n);
  const auto all = ones_prefix(n, n);
  RelName name{RelKind::kR3, 0, rho, sigma};
  switch (family_of(m)) {
    case Family::kMinusOne: {
      if (n < 2) throw std::invalid_argument("R3: needs k >= 3 for m = -1 mod 3");
      if (sigma[n - 1] != 0) throw std::invalid_argument("R3: requires sigma_{k-1} = 0 for m = -1 mod 3");
      const auto dp = delta_vec(n, n - 1);
      return build(name, m,
                   {{PolyQZ(1), idx(m, rho, sigma)},
                    {PolyQZ(-1), idx(m, rho, vec_add(sigma, dl))},
                    {-q(1), idx(m, vec_add(rho, dl), vec_add(sigma, dl))},
                    {q(1), idx(m, vec_add(rho, dl), vec_add(sigma, vec_add(dp, dl)))}});
    }
    case Family::kZero: {
      const auto head = ones_prefix(n, n - 1);
      return build(name, m,
                   {{PolyQZ(1), idx(m, rho, sigma)},
                    {-(PolyQZ(1) + q(1)), idx(m, vec_add(rho, dl), vec_add(sigma, dl))},
                    {q(1), idx(m, vec_add(rho, vec_scale(2, dl)), vec_add(sigma, vec_scale(2, dl)))},
                    {-zq(n + sum_first(rho, n)), idx(m, vec_add(rho, vec_scale(2, all)), vec_add(sigma, vec_scale(-1, all)))},
                    {-q(n + sum_first(sigma, n)),
                     idx(m, vec_add(vec_add(rho, vec_scale(-1, head)), vec_scale(2, dl)), vec_add(sigma, vec_scale(2, all)))}});
    }
    case Family::kPlusOne: {
      const auto mid = form == RelationForm::kAsPrinted ? vec_add(sigma, vec_scale(2, dl)) : vec_add(sigma, dl);
      return build(name, m,
                   {{PolyQZ(1), idx(m, rho, sigma)},
                    {PolyQZ(-1), idx(m, rho, vec_add(sigma, dl))},
                    {-q(1), idx(m, vec_add(rho, dl), mid)},
                    {q(1), idx(m, vec_add(rho, dl), vec_add(sigma, vec_scale(2, dl)))},
                    {-q(n + sum_first(sigma, n)), idx(m, vec_add(rho, vec_scale(-1, all)), vec_add(sigma, vec_scale(2, all)))}});
    }
  }
  throw std::logic_error("unreachable");
}

Relation gen_R4(int m, const std::vector<int>& rho, const std::vector<int>& sigma, RelationForm form) {
  (void)form;
  check_lengths(m, rho, sigma);
  const int n = family_k(m) - 1;
  const auto dl = delta_vec(n, n);
  const auto all = ones_prefix(n, n);
  RelName name{RelKind::kR4, 0, rho, sigma};
  switch (family_of(m)) {
    case Family::kMinusOne: {
      if (n < 2) throw std::invalid_argument("R4: needs k >= 3 for m = -1 mod 3");
      if (rho[n - 1] != 0) throw std::invalid_argument("R4: requires rho_{k-1} = 0 for m = -1 mod 3");
      const auto dp = delta_vec(n, n - 1);
      return build(name, m,
                   {{PolyQZ(1), idx(m, rho, sigma)},
                    {PolyQZ(-1), idx(m, vec_add(rho, dl), sigma)},
                    {-q(1), idx(m, vec_add(rho, dl), vec_add(sigma, dl))},
                    {q(1), idx(m, vec_add(rho, vec_add(dp, dl)), vec_add(sigma, dl))}});
    }
    case Family::kZero: {
      const auto head = ones_prefix(n, n - 1);
      return build(name, m,
                   {{PolyQZ(1), idx(m, rho, sigma)},
                    {-(PolyQZ(1) + q(1)), idx(m, vec_add(rho, dl), vec_add(sigma, dl))},
                    {q(1), idx(m, vec_add(rho, vec_scale(2, dl)), vec_add(sigma, vec_scale(2, dl)))},
                    {-zq(n + sum_first(rho, n)),
                     idx(m, vec_add(rho, vec_scale(2, all)), vec_add(vec_add(sigma, vec_scale(-1, head)), vec_scale(2, dl)))},
                    {-q(n + sum_first(sigma, n)), idx(m, vec_add(rho, vec_scale(-1, all)), vec_add(sigma, vec_scale(2, all)))}});
    }
    case Family::kPlusOne: {
      return build(name, m,
                   {{PolyQZ(1), idx(m, rho, sigma)},
                    {PolyQZ(-1), idx(m, vec_add(rho, dl), sigma)},
                    {-q(1), idx(m, vec_add(rho, dl), vec_add(sigma, dl))},
                    {q(1), idx(m, vec_add(rho, vec_scale(2, dl)), vec_add(sigma, dl))},
                    {-zq(n + sum_first(rho, n)), idx(m, vec_add(rho, vec_scale(2, all)), vec_add(sigma, vec_scale(-1, all)))}});
    }
  }
  throw std::logic_error("unreachable");
}

Relation generate(int m, const RelName& name, RelationForm form) {
  switch (name.kind) {
    case RelKind::kR1:
      return gen_R1(m, name.i, name.rho, name.sigma);
    case RelKind::kR2:
      return gen_R2(m, name.i, name.rho, name.sigma, form);
    case RelKind::kR3:
      return gen_R3(m, name.rho, name.sigma, form);
    case RelKind::kR4:
      return gen_R4(m, name.rho, name.sigma, form);
  }
  throw std::logic_error("unreachable");
}

std::vector<RelName> relation_shapes(int m) {
  const int n = family_k(m) - 1;
  std::vector<RelName> out;
  for (int i = 1; i <= n - 1; ++i) out.push_back(RelName{RelKind::kR1, i, {}, {}});
  for (int i = 1; i <= n - 1; ++i) out.push_back(RelName{RelKind::kR2, i, {}, {}});
  if (family_of(m) != Family::kMinusOne || n >= 2) {
    out.push_back(RelName{RelKind::kR3, 0, {}, {}});
    out.push_back(RelName{RelKind::kR4, 0, {}, {}});
  }
  return out;
}

namespace {

// Calls f(rho, sigma) for every pair of vectors in [-N, N]^n, lexicographically.
template <class F>
void for_each_box(int n, int N, F&& f) {
  std::vector<int> v(2 * n, -N);
  while (true) {
    f(std::vector<int>(v.begin(), v.begin() + n), std::vector<int>(v.begin() + n, v.end()));
    int p = 2 * n - 1;
    while (p >= 0 && v[p] == N) {
      v[p] = -N;
      --p;
    }
    if (p < 0) break;
    ++v[p];
  }
}

// Offsets of each term of a relation shape relative to its base (rho, sigma).
std::vector<std::pair<std::vector<int>, std::vector<int>>> term_offsets(int m, const RelName& shape) {
  const int n = family_k(m) - 1;
  RelName probe = shape;
  // A base far from the side-condition boundary keeps every term distinct.
  probe.rho.assign(n, 0);
  probe.sigma.assign(n, 0);
  Relation r = generate(m, probe, RelationForm::kCorrected);
  std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
  for (const auto& [s, c] : r.body.terms()) out.push_back({s.rho, s.sigma});
  return out;
}

}  // namespace

std::vector<Relation> spanning_set(int m, int N, RelationForm form) {
  const int n = family_k(m) - 1;
  std::vector<Relation> out;
  for (const auto& shape : relation_shapes(m)) {
    for_each_box(n, N, [&](const std::vector<int>& rho, const std::vector<int>& sigma) {
      RelName name = shape;
      name.rho = rho;
      name.sigma = sigma;
      if (relation_valid(m, name)) out.push_back(generate(m, name, form));
    });
  }
  return out;
}

std::vector<RelName> relations_touching(int m, const SIndex& t, int cap) {
  static thread_local std::map<int, std::vector<std::pair<RelName, std::vector<std::pair<std::vector<int>, std::vector<int>>>>>> cache;
  auto it = cache.find(m);
  if (it == cache.end()) {
    std::vector<std::pair<RelName, std::vector<std::pair<std::vector<int>, std::vector<int>>>>> shapes;
    for (const auto& shape : relation_shapes(m)) shapes.push_back({shape, term_offsets(m, shape)});
    it = cache.emplace(m, std::move(shapes)).first;
  }
  std::vector<RelName> out;
  for (const auto& [shape, offsets] : it->second) {
    for (const auto& [dr, ds] : offsets) {
      RelName name = shape;
      name.rho = vec_add(t.rho, vec_scale(-1, dr));
      name.sigma = vec_add(t.sigma, vec_scale(-1, ds));
      if (name.max_abs_entry() > cap || !relation_valid(m, name)) continue;
      out.push_back(std::move(name));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

FrontierResult frontier_set(int m, const std::set<SIndex>& seed, int cap, int max_depth, RelationForm form) {
  FrontierResult res;
  std::set<RelName> included;
  std::set<SIndex> frontier = seed;
  std::set<SIndex> expanded;
  for (int depth = 0; depth <= max_depth; ++depth) {
    std::set<RelName> fresh;
    for (const auto& t : frontier) {
      if (expanded.count(t)) continue;
      for (auto& name : relations_touching(m, t, cap)) {
        if (!included.count(name)) fresh.insert(std::move(name));
      }
      expanded.insert(t);
    }
    std::set<SIndex> next;
    for (const auto& name : fresh) {
      Relation r = generate(m, name, form);
      for (const auto& [s, c] : r.body.terms()) {
        if (!expanded.count(s)) next.insert(s);
      }
      included.insert(name);
      res.relations.push_back(std::move(r));
    }
    res.depth_end.push_back(res.relations.size());
    if (fresh.empty()) {
      res.closed = true;
      break;
    }
    frontier = std::move(next);
  }
  return res;
}

bool relation_vanishes(const Relation& rel, int Q, int Zmax, SEvaluator& ev) {
  return ev.eval(rel.body, Q, Zmax).is_zero();
}

RelationForm select_form(int m, int Q, int Zmax) {
  SEvaluator ev;
  const int n = family_k(m) - 1;
  std::vector<int> base(n, 1);
  for (RelationForm form : {RelationForm::kCorrected, RelationForm::kAsPrinted}) {
    bool ok = true;
    for (const auto& shape : relation_shapes(m)) {
      if (shape.kind != RelKind::kR2 && shape.kind != RelKind::kR3) continue;
      RelName name = shape;
      name.rho = base;
      name.sigma = base;
      if (family_of(m) == Family::kMinusOne && shape.kind == RelKind::kR3) name.sigma[n - 1] = 0;
      if (!relation_valid(m, name)) continue;
      if (!relation_vanishes(generate(m, name, form), Q, Zmax, ev)) {
        ok = false;
        break;
      }
    }
    if (ok) return form;
  }
  throw std::runtime_error("select_form: no relation form vanishes for modulus " + std::to_string(m));
}

}  // namespace cylproof
