#include "fusionforge/grouptheory.hpp"

#include "fusionforge/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace fusionforge {

namespace {

long long powMod(long long b, long long e, long long m) {
  long long r = 1 % m;
  b %= m;
  if (b < 0) b += m;
  while (e > 0) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

long long invMod(long long a, long long p) { return powMod(a, p - 2, p); }

bool isPrime(long long n) {
  if (n < 2) return false;
  for (long long q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

Perm compose(const Perm& a, const Perm& b) {  // a then b
  Perm c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = b[a[i]];
  return c;
}

std::vector<char> membership(const PermGroup& g, const Subgroup& h) {
  std::vector<char> in(g.order(), 0);
  for (int x : h) in[x] = 1;
  return in;
}

}  // namespace

PermGroup PermGroup::fromGenerators(int degree, const std::vector<Perm>& gens, int cap) {
  PermGroup g;
  g.degree_ = std::max(degree, 1);
  for (const auto& s : gens) {
    Perm p = s;
    p.resize(g.degree_);
    for (int i = static_cast<int>(s.size()); i < g.degree_; ++i) p[i] = i;
    std::vector<char> seen(g.degree_, 0);
    for (int x : p) {
      if (x < 0 || x >= g.degree_ || seen[x]) throw FusionError("generator is not a permutation");
      seen[x] = 1;
    }
    g.gens_.push_back(p);
  }
  Perm id(g.degree_);
  std::iota(id.begin(), id.end(), 0);
  std::map<Perm, int> index{{id, 0}};
  std::vector<int> parent{-1}, via{-1};
  g.elements_.push_back(id);
  const int ng = static_cast<int>(g.gens_.size());
  std::vector<std::vector<int>> right;  // right[a][s] = a * gen_s
  for (size_t q = 0; q < g.elements_.size(); ++q) {
    right.emplace_back(ng);
    for (int s = 0; s < ng; ++s) {
      Perm next = compose(g.elements_[q], g.gens_[s]);
      auto it = index.find(next);
      if (it == index.end()) {
        if (static_cast<int>(g.elements_.size()) >= cap)
          throw CapExceeded("group order exceeds cap " + std::to_string(cap));
        int id2 = static_cast<int>(g.elements_.size());
        index.emplace(next, id2);
        g.elements_.push_back(std::move(next));
        parent.push_back(static_cast<int>(q));
        via.push_back(s);
        right[q][s] = id2;
      } else {
        right[q][s] = it->second;
      }
    }
  }
  const int n = static_cast<int>(g.elements_.size());
  g.order_ = n;
  g.table_.assign(static_cast<size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a) {
    g.table_[static_cast<size_t>(a) * n] = static_cast<uint16_t>(a);
    for (int b = 1; b < n; ++b)
      g.table_[static_cast<size_t>(a) * n + b] =
          static_cast<uint16_t>(right[g.mul(a, parent[b])][via[b]]);
  }
  g.inverse_.assign(n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g.mul(a, b) == 0) {
        g.inverse_[a] = b;
        break;
      }
  g.elementOrder_.assign(n, 1);
  for (int a = 1; a < n; ++a) {
    int k = 1, x = a;
    while (x != 0) {
      x = g.mul(x, a);
      ++k;
    }
    g.elementOrder_[a] = k;
  }
  return g;
}

int PermGroup::exponent() const {
  long long e = 1;
  for (int a = 0; a < order_; ++a) e = std::lcm(e, static_cast<long long>(elementOrder_[a]));
  return static_cast<int>(e);
}

bool PermGroup::isAbelian() const {
  for (const auto& a : gens_)
    for (const auto& b : gens_)
      if (compose(a, b) != compose(b, a)) return false;
  return true;
}

const std::vector<int>& PermGroup::classOf() const {
  if (classOf_.empty()) {
    classOf_.assign(order_, -1);
    classCount_ = 0;
    for (int a = 0; a < order_; ++a) {
      if (classOf_[a] >= 0) continue;
      for (int x = 0; x < order_; ++x) classOf_[mul(mul(x, a), inv(x))] = classCount_;
      ++classCount_;
    }
  }
  return classOf_;
}

int PermGroup::classCount() const {
  classOf();
  return classCount_;
}

// ---- group specs ----

namespace {

struct GenSet {
  int degree = 1;
  std::vector<Perm> gens;
};

Perm identityPerm(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Perm cyclePerm(int n, const std::vector<int>& cyc) {
  Perm p = identityPerm(n);
  for (size_t i = 0; i < cyc.size(); ++i) p[cyc[i]] = cyc[(i + 1) % cyc.size()];
  return p;
}

class SpecParser {
 public:
  explicit SpecParser(const std::string& s) : s_(s) {}

  GenSet parse() {
    skip();
    GenSet g = group();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return g;
  }

 private:
  const std::string& s_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("group spec: " + what, 1, static_cast<int>(pos_) + 1);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  long long number() {
    skip();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::stoll(s_.substr(start, pos_ - start));
  }

  GenSet group() {
    skip();
    if (peek('(')) return cycles();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string name = s_.substr(start, pos_ - start);
    if (name.empty()) fail("expected a constructor or cycle");
    expect('(');
    GenSet out;
    if (name == "C" || name == "D" || name == "S" || name == "A") {
      long long n = number();
      if (n < 1 || n > 100000) fail("bad constructor argument");
      out = named(name, static_cast<int>(n));
    } else if (name == "Direct") {
      GenSet a = group();
      expect(',');
      GenSet b = group();
      out.degree = a.degree + b.degree;
      for (const auto& p : a.gens) {
        Perm q = identityPerm(out.degree);
        for (int i = 0; i < a.degree; ++i) q[i] = p[i];
        out.gens.push_back(q);
      }
      for (const auto& p : b.gens) {
        Perm q = identityPerm(out.degree);
        for (int i = 0; i < b.degree; ++i) q[a.degree + i] = a.degree + p[i];
        out.gens.push_back(q);
      }
    } else if (name == "SemiDirect") {
      long long n = cyclicArg();
      expect(',');
      long long m = cyclicArg();
      expect(',');
      long long k = number();
      if (n * m > 1000000) fail("semidirect product too large");
      if (powMod(k, m, n) != 1 % n)
        throw InvalidAction("k = " + std::to_string(k) + " has order not dividing " +
                            std::to_string(m) + " modulo " + std::to_string(n));
      // Right regular action on pairs (a, b) -> a + n b with (a,b)(a',b') = (a + k^b a', b + b').
      int deg = static_cast<int>(n * m);
      Perm x(deg), y(deg);
      for (long long b = 0; b < m; ++b) {
        long long kb = powMod(k, b, n);
        for (long long a = 0; a < n; ++a) {
          x[a + n * b] = static_cast<int>((a + kb) % n + n * b);
          y[a + n * b] = static_cast<int>(a + n * ((b + 1) % m));
        }
      }
      out.degree = deg;
      out.gens = {x, y};
    } else {
      fail("unknown constructor " + name);
    }
    expect(')');
    return out;
  }

  long long cyclicArg() {
    skip();
    if (s_.compare(pos_, 1, "C") != 0) fail("expected C(n)");
    ++pos_;
    expect('(');
    long long n = number();
    expect(')');
    if (n < 1) fail("bad cyclic order");
    return n;
  }

  GenSet named(const std::string& name, int n) {
    GenSet g;
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    if (name == "C") {
      g.degree = n;
      if (n > 1) g.gens.push_back(cyclePerm(n, all));
    } else if (name == "D") {
      if (n == 1) {
        g.degree = 2;
        g.gens.push_back(cyclePerm(2, {0, 1}));
      } else if (n == 2) {
        g.degree = 4;
        g.gens.push_back(compose(cyclePerm(4, {0, 1}), cyclePerm(4, {2, 3})));
        g.gens.push_back(compose(cyclePerm(4, {0, 2}), cyclePerm(4, {1, 3})));
      } else {
        g.degree = n;
        g.gens.push_back(cyclePerm(n, all));
        Perm r(n);
        for (int i = 0; i < n; ++i) r[i] = (n - i) % n;
        g.gens.push_back(r);
      }
    } else if (name == "S") {
      g.degree = n;
      if (n > 1) {
        g.gens.push_back(cyclePerm(n, all));
        g.gens.push_back(cyclePerm(n, {0, 1}));
      }
    } else {
      g.degree = n;
      for (int k = 2; k < n; ++k) g.gens.push_back(cyclePerm(n, {0, 1, k}));
    }
    return g;
  }

  GenSet cycles() {
    std::vector<std::vector<std::vector<int>>> gens;
    int degree = 1;
    while (true) {
      std::vector<std::vector<int>> word;
      while (peek('(')) {
        ++pos_;
        std::vector<int> cyc;
        while (!peek(')')) {
          long long x = number();
          if (x < 1 || x > 1000000) fail("bad point");
          cyc.push_back(static_cast<int>(x - 1));
          degree = std::max(degree, static_cast<int>(x));
          if (peek(',')) ++pos_;
        }
        ++pos_;
        std::set<int> distinct(cyc.begin(), cyc.end());
        if (distinct.size() != cyc.size()) fail("repeated point in cycle");
        word.push_back(cyc);
      }
      if (word.empty()) fail("expected a cycle");
      gens.push_back(word);
      if (peek(',') || peek(';')) {
        ++pos_;
        continue;
      }
      break;
    }
    GenSet g;
    g.degree = degree;
    for (const auto& word : gens) {
      Perm p = identityPerm(degree);
      for (const auto& c : word)
        if (c.size() > 1) p = compose(p, cyclePerm(degree, c));
      g.gens.push_back(p);
    }
    return g;
  }
};

}  // namespace

PermGroup enumerateGroup(const std::string& spec, int cap) {
  GenSet g = SpecParser(spec).parse();
  return PermGroup::fromGenerators(g.degree, g.gens, cap);
}

// ---- subgroups ----

Subgroup subgroupFromSpec(const PermGroup& g, const std::string& spec) {
  GenSet h = SpecParser(spec).parse();
  if (h.degree > g.degree()) throw FusionError("subgroup acts on more points than the group");
  std::map<Perm, int> index;
  for (int a = 0; a < g.order(); ++a) index.emplace(g.element(a), a);
  std::vector<int> gens;
  for (auto p : h.gens) {
    for (int i = h.degree; i < g.degree(); ++i) p.push_back(i);
    auto it = index.find(p);
    if (it == index.end()) throw FusionError("subgroup generator is not in the group");
    gens.push_back(it->second);
  }
  return generatedSubgroup(g, gens);
}

Subgroup generatedSubgroup(const PermGroup& g, const std::vector<int>& gens) {
  std::vector<char> in(g.order(), 0);
  std::vector<int> elems{0};
  in[0] = 1;
  for (size_t q = 0; q < elems.size(); ++q)
    for (int s : gens) {
      int x = g.mul(elems[q], s);
      if (!in[x]) {
        in[x] = 1;
        elems.push_back(x);
      }
    }
  std::sort(elems.begin(), elems.end());
  return elems;
}

Subgroup wholeGroup(const PermGroup& g) {
  Subgroup all(g.order());
  std::iota(all.begin(), all.end(), 0);
  return all;
}

Subgroup conjugate(const PermGroup& g, const Subgroup& h, int x) {
  Subgroup out;
  out.reserve(h.size());
  int xi = g.inv(x);
  for (int y : h) out.push_back(g.mul(g.mul(x, y), xi));
  std::sort(out.begin(), out.end());
  return out;
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  Subgroup out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool isAbelian(const PermGroup& g, const Subgroup& h) {
  for (int x : h)
    for (int y : h)
      if (g.mul(x, y) != g.mul(y, x)) return false;
  return true;
}

bool isCyclic(const PermGroup& g, const Subgroup& h) {
  for (int x : h)
    if (g.elementOrder(x) == static_cast<int>(h.size())) return true;
  return false;
}

namespace {

std::vector<std::pair<long long, int>> factorize(long long n) {
  std::vector<std::pair<long long, int>> out;
  for (long long q = 2; q * q <= n; ++q)
    if (n % q == 0) {
      int e = 0;
      while (n % q == 0) {
        n /= q;
        ++e;
      }
      out.push_back({q, e});
    }
  if (n > 1) out.push_back({n, 1});
  return out;
}

}  // namespace

std::string describeSubgroup(const PermGroup& g, const Subgroup& h) {
  const long long n = static_cast<long long>(h.size());
  if (n == 1) return "1";
  if (isCyclic(g, h)) return "C" + std::to_string(n);
  std::map<int, int> orders;
  for (int x : h) ++orders[g.elementOrder(x)];
  if (isAbelian(g, h)) {
    // Invariant factors from the counts of elements killed by q^j.
    std::vector<long long> factors;
    for (auto [q, e] : factorize(n)) {
      std::vector<int> ranks;  // number of cyclic q-factors of order >= q^j
      long long prev = 1;
      for (int j = 1; j <= e; ++j) {
        long long qj = 1;
        for (int t = 0; t < j; ++t) qj *= q;
        long long killed = 0;
        for (int x : h) {
          int o = g.elementOrder(x);
          if (qj % o == 0) ++killed;
        }
        int r = 0;
        for (long long t = killed / prev; t > 1; t /= q) ++r;
        ranks.push_back(r);
        prev = killed;
      }
      // ranks[j-1] = #factors of order >= q^j
      std::vector<long long> qfactors;
      for (int j = e; j >= 1; --j) {
        int count = ranks[j - 1] - (j < e ? ranks[j] : 0);
        long long qj = 1;
        for (int t = 0; t < j; ++t) qj *= q;
        for (int c = 0; c < count; ++c) qfactors.push_back(qj);
      }
      for (size_t i = 0; i < qfactors.size(); ++i) {
        if (i >= factors.size()) factors.push_back(1);
        factors[i] *= qfactors[i];
      }
    }
    std::sort(factors.begin(), factors.end());
    std::string out;
    for (size_t i = 0; i < factors.size(); ++i) out += (i ? " x C" : "C") + std::to_string(factors[i]);
    return out;
  }
  if (n % 2 == 0 && n >= 6 && orders.count(static_cast<int>(n / 2)) &&
      orders[2] >= static_cast<int>(n / 2)) {
    // Dihedral: a cyclic subgroup of index two and involutions outside it.
    for (int x : h)
      if (g.elementOrder(x) == n / 2) {
        Subgroup c = generatedSubgroup(g, {x});
        bool dihedral = true;
        for (int y : h)
          if (!std::binary_search(c.begin(), c.end(), y) && g.elementOrder(y) != 2) dihedral = false;
        if (dihedral) return n == 6 ? "S3" : "D" + std::to_string(n / 2);
        break;
      }
  }
  if (n == 12 && !orders.count(6) && orders[3] == 8) return "A4";
  if (n == 24 && orders[4] == 6 && orders[3] == 8 && orders[2] == 9) return "S4";
  if (n == 60 && orders[2] == 15 && orders[3] == 20 && orders[5] == 24) return "A5";
  return "order-" + std::to_string(n) + " group";
}

std::vector<Subgroup> subgroups(const PermGroup& g, const SubgroupOptions& opts) {
  // Cyclic subgroups, one generator each.
  std::set<Subgroup> cyclicSeen;
  std::vector<std::pair<Subgroup, int>> cyclic;
  for (int x = 0; x < g.order(); ++x) {
    Subgroup c = generatedSubgroup(g, {x});
    if (cyclicSeen.insert(c).second) cyclic.push_back({c, x});
  }
  // Class representatives joined with every cyclic subgroup reach every class, since
  // A^y joined with <x> is conjugate to A joined with <x^(y^-1)>.
  std::set<Subgroup> seen;
  std::vector<std::pair<Subgroup, std::vector<int>>> reps;
  auto addClass = [&](const Subgroup& s, const std::vector<int>& gens) {
    if (seen.count(s)) return false;
    for (int y = 0; y < g.order(); ++y) seen.insert(conjugate(g, s, y));
    reps.push_back({s, gens});
    return true;
  };
  std::vector<size_t> frontier;
  for (const auto& [c, x] : cyclic)
    if (addClass(c, x == 0 ? std::vector<int>{} : std::vector<int>{x})) frontier.push_back(reps.size() - 1);
  while (!frontier.empty()) {
    std::vector<size_t> next;
    for (size_t idx : frontier) {
      const Subgroup a = reps[idx].first;
      const std::vector<int> gens = reps[idx].second;
      std::vector<char> in = membership(g, a);
      for (const auto& [c, x] : cyclic) {
        if (in[x]) continue;
        std::vector<int> jg = gens;
        jg.push_back(x);
        Subgroup j = generatedSubgroup(g, jg);
        if (addClass(j, jg)) next.push_back(reps.size() - 1);
      }
    }
    frontier.swap(next);
  }
  auto bySize = [](const Subgroup& a, const Subgroup& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  };
  std::vector<Subgroup> out;
  if (opts.upToConjugacy) {
    // The smallest conjugate represents its class.
    for (const auto& [s, gens] : reps) {
      Subgroup best = s;
      for (int y = 0; y < g.order(); ++y) {
        Subgroup c = conjugate(g, s, y);
        if (bySize(c, best)) best = c;
      }
      out.push_back(best);
    }
  } else {
    out.assign(seen.begin(), seen.end());
  }
  std::sort(out.begin(), out.end(), bySize);
  return out;
}

DoubleCosetData doubleCosets(const PermGroup& g, const Subgroup& h) {
  DoubleCosetData out;
  out.cosetOf.assign(g.order(), -1);
  long long total = 0;
  for (int x = 0; x < g.order(); ++x) {
    if (out.cosetOf[x] >= 0) continue;
    const int id = static_cast<int>(out.cosets.size());
    DoubleCoset dc;
    dc.representative = x;
    for (int a : h) {
      int ax = g.mul(a, x);
      for (int b : h) {
        int y = g.mul(ax, b);
        if (out.cosetOf[y] < 0) {
          out.cosetOf[y] = id;
          ++dc.size;
        }
      }
    }
    dc.stabilizer = intersect(h, conjugate(g, h, x));
    dc.index = static_cast<long long>(h.size() / dc.stabilizer.size());
    if (dc.size != static_cast<long long>(h.size()) * dc.index)
      throw FusionError("double coset size mismatch");
    total += dc.size;
    out.cosets.push_back(std::move(dc));
  }
  if (total != g.order()) throw FusionError("double coset sizes do not sum to |G|");
  return out;
}

// ---- characters ----

namespace {

struct Classes {
  std::vector<int> classOf;  // ambient index, -1 outside
  std::vector<int> reps;
  std::vector<int> sizes;
};

Classes classesOf(const PermGroup& g, const Subgroup& k) {
  Classes c;
  c.classOf.assign(g.order(), -1);
  for (int a : k) {
    if (c.classOf[a] >= 0) continue;
    int id = static_cast<int>(c.reps.size());
    int size = 0;
    for (int x : k) {
      int y = g.mul(g.mul(x, a), g.inv(x));
      if (c.classOf[y] < 0) {
        c.classOf[y] = id;
        ++size;
      }
    }
    c.reps.push_back(a);
    c.sizes.push_back(size);
  }
  return c;
}

using ModMatrix = std::vector<std::vector<long long>>;

// Characteristic polynomial (ascending) via Hessenberg reduction modulo p.
std::vector<long long> charPolyMod(ModMatrix a, long long p) {
  const int n = static_cast<int>(a.size());
  for (int m = 1; m + 1 < n; ++m) {
    int piv = -1;
    for (int i = m; i < n; ++i)
      if (a[i][m - 1] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != m) {
      std::swap(a[piv], a[m]);
      for (int i = 0; i < n; ++i) std::swap(a[i][piv], a[i][m]);
    }
    long long inv = invMod(a[m][m - 1], p);
    for (int i = m + 1; i < n; ++i) {
      long long t = a[i][m - 1] * inv % p;
      if (t == 0) continue;
      for (int j = 0; j < n; ++j) a[i][j] = ((a[i][j] - t * a[m][j]) % p + p) % p;
      for (int j = 0; j < n; ++j) a[j][m] = (a[j][m] + t * a[j][i]) % p;
    }
  }
  std::vector<std::vector<long long>> polys(n + 1);
  polys[0] = {1};
  for (int m = 1; m <= n; ++m) {
    std::vector<long long> pm(m + 1, 0);
    const auto& prev = polys[m - 1];
    for (int d = 0; d < m; ++d) {
      pm[d + 1] = (pm[d + 1] + prev[d]) % p;
      pm[d] = ((pm[d] - a[m - 1][m - 1] * prev[d]) % p + p) % p;
    }
    long long prod = 1;
    for (int i = m - 1; i >= 1; --i) {
      prod = prod * a[i][i - 1] % p;
      long long coeff = prod * a[i - 1][m - 1] % p;
      if (coeff == 0) continue;
      const auto& q = polys[i - 1];
      for (size_t d = 0; d < q.size(); ++d) pm[d] = ((pm[d] - coeff * q[d]) % p + p) % p;
    }
    polys[m] = pm;
  }
  return polys[n];
}

// Basis of the null space modulo p.
ModMatrix nullSpaceMod(ModMatrix a, long long p) {
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  std::vector<int> pivotCol;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (a[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[piv], a[r]);
    long long inv = invMod(a[r][c], p);
    for (auto& v : a[r]) v = v * inv % p;
    for (int i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      long long t = a[i][c];
      for (int j = 0; j < cols; ++j) a[i][j] = ((a[i][j] - t * a[r][j]) % p + p) % p;
    }
    pivotCol.push_back(c);
    ++r;
  }
  std::vector<char> isPivot(cols, 0);
  for (int c : pivotCol) isPivot[c] = 1;
  ModMatrix basis;
  for (int f = 0; f < cols; ++f) {
    if (isPivot[f]) continue;
    std::vector<long long> v(cols, 0);
    v[f] = 1;
    for (int i = 0; i < r; ++i) v[pivotCol[i]] = (p - a[i][f]) % p;
    basis.push_back(v);
  }
  return basis;
}

// Reduce columns of a basis to echelon form with unit pivots; returns pivot rows.
std::vector<int> echelon(ModMatrix& basis, long long p) {
  std::vector<int> piv;
  const int k = static_cast<int>(basis.size());
  const int n = k ? static_cast<int>(basis[0].size()) : 0;
  int t = 0;
  for (int row = 0; row < n && t < k; ++row) {
    int sel = -1;
    for (int i = t; i < k; ++i)
      if (basis[i][row] != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(basis[sel], basis[t]);
    long long inv = invMod(basis[t][row], p);
    for (auto& v : basis[t]) v = v * inv % p;
    for (int i = 0; i < k; ++i) {
      if (i == t || basis[i][row] == 0) continue;
      long long c = basis[i][row];
      for (int j = 0; j < n; ++j) basis[i][j] = ((basis[i][j] - c * basis[t][j]) % p + p) % p;
    }
    piv.push_back(row);
    ++t;
  }
  return piv;
}

long long primitiveRoot(long long p) {
  auto fs = factorize(p - 1);
  for (long long g = 2; g < p; ++g) {
    bool ok = true;
    for (auto [q, e] : fs)
      if (powMod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  return 1;
}

void sortCharacters(GroupCharacters& t) {
  std::vector<int> idx(t.degrees.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return t.degrees[a] != t.degrees[b] ? t.degrees[a] < t.degrees[b] : t.values[a] < t.values[b];
  });
  GroupCharacters s = t;
  for (size_t i = 0; i < idx.size(); ++i) {
    s.degrees[i] = t.degrees[idx[i]];
    s.values[i] = t.values[idx[i]];
  }
  t = std::move(s);
}

GroupCharacters abelianCharacters(const PermGroup& g, const Subgroup& k, long long p,
                                 const Classes& cls) {
  const long long e = g.exponent();
  const long long zeta = powMod(primitiveRoot(p), (p - 1) / e, p);
  std::map<long long, long long> dlog;
  for (long long t = 0, z = 1; t < e; ++t, z = z * zeta % p) dlog[z] = t;
  // Extend characters one generator at a time: chi maps ambient index -> F_p.
  std::vector<int> sub{0};
  std::vector<char> in(g.order(), 0);
  in[0] = 1;
  std::vector<std::map<int, long long>> chars{{{0, 1}}};
  for (int x : k) {
    if (in[x]) continue;
    int m = 1;
    int xm = x;
    while (!in[xm]) {
      xm = g.mul(xm, x);
      ++m;
    }
    std::vector<int> ext;
    for (int j = 0, xj = 0; j < m; ++j, xj = g.mul(xj, x))
      for (int s : sub) ext.push_back(g.mul(s, xj));
    std::vector<std::map<int, long long>> next;
    for (const auto& chi : chars) {
      long long t = dlog.at(chi.at(xm));
      size_t before = next.size();
      for (long long s0 = 0; s0 < e; ++s0) {
        if ((s0 * m - t) % e != 0) continue;
        std::map<int, long long> c2;
        long long v = powMod(zeta, s0, p);
        for (int j = 0, xj = 0; j < m; ++j, xj = g.mul(xj, x)) {
          long long vj = powMod(v, j, p);
          for (int s : sub) c2[g.mul(s, xj)] = chi.at(s) * vj % p;
        }
        next.push_back(std::move(c2));
      }
      if (next.size() - before != static_cast<size_t>(m))
        throw FusionError("abelian character extension failed");
    }
    chars.swap(next);
    sub = ext;
    for (int y : sub) in[y] = 1;
  }
  GroupCharacters t;
  t.p = p;
  t.classOf = cls.classOf;
  t.classSize = cls.sizes;
  for (const auto& chi : chars) {
    t.degrees.push_back(1);
    std::vector<long long> row;
    for (int r : cls.reps) row.push_back(chi.at(r));
    t.values.push_back(row);
  }
  sortCharacters(t);
  return t;
}

}  // namespace

long long characterPrime(const PermGroup& g) {
  const long long e = g.exponent();
  const long long lower = 2 * static_cast<long long>(std::ceil(std::sqrt(static_cast<double>(g.order())))) + 2;
  for (long long p = e + 1;; p += e)
    if (p > lower && isPrime(p)) return p;
}

GroupCharacters characters(const PermGroup& g, const Subgroup& k) {
  return characters(g, k, characterPrime(g));
}

GroupCharacters characters(const PermGroup& g, const Subgroup& k, long long p) {
  Classes cls = classesOf(g, k);
  const int r = static_cast<int>(cls.reps.size());
  if (r == static_cast<int>(k.size())) return abelianCharacters(g, k, p, cls);
  // Class algebra constants: M_i[j][l] = #{x in C_i : x^-1 z_l in C_j}.
  std::vector<ModMatrix> m(r, ModMatrix(r, std::vector<long long>(r, 0)));
  for (int l = 0; l < r; ++l) {
    int z = cls.reps[l];
    for (int x : k) {
      int y = g.mul(g.inv(x), z);
      ++m[cls.classOf[x]][cls.classOf[y]][l];
    }
  }
  // Split the space by common eigenvectors of the class matrices.
  std::vector<ModMatrix> spaces;
  {
    ModMatrix id(r, std::vector<long long>(r, 0));
    for (int i = 0; i < r; ++i) id[i][i] = 1;
    spaces.push_back(id);
  }
  for (int i = 1; i < r; ++i) {
    bool allOne = true;
    for (const auto& s : spaces)
      if (s.size() > 1) allOne = false;
    if (allOne) break;
    std::vector<ModMatrix> next;
    for (auto& basis : spaces) {
      if (basis.size() == 1) {
        next.push_back(basis);
        continue;
      }
      std::vector<int> piv = echelon(basis, p);
      const int kd = static_cast<int>(basis.size());
      // A[s][t] = (M_i b_t)[piv[s]]
      ModMatrix a(kd, std::vector<long long>(kd, 0));
      for (int t = 0; t < kd; ++t)
        for (int s = 0; s < kd; ++s) {
          long long v = 0;
          for (int l = 0; l < r; ++l) v = (v + m[i][piv[s]][l] * basis[t][l]) % p;
          a[s][t] = v;
        }
      std::vector<long long> cp = charPolyMod(a, p);
      int covered = 0;
      for (long long lam = 0; lam < p && covered < kd; ++lam) {
        long long v = 0;
        for (size_t d = cp.size(); d-- > 0;) v = (v * lam + cp[d]) % p;
        if (v != 0) continue;
        ModMatrix shifted = a;
        for (int s = 0; s < kd; ++s) shifted[s][s] = (shifted[s][s] - lam + p) % p;
        ModMatrix ys = nullSpaceMod(shifted, p);
        ModMatrix sub;
        for (const auto& y : ys) {
          std::vector<long long> w(r, 0);
          for (int t = 0; t < kd; ++t)
            for (int l = 0; l < r; ++l) w[l] = (w[l] + y[t] * basis[t][l]) % p;
          sub.push_back(w);
        }
        covered += static_cast<int>(sub.size());
        next.push_back(sub);
      }
      if (covered != kd) throw FusionError("class algebra did not split modulo p");
    }
    spaces.swap(next);
  }
  GroupCharacters t;
  t.p = p;
  t.classOf = cls.classOf;
  t.classSize = cls.sizes;
  std::vector<int> invClass(r);
  for (int l = 0; l < r; ++l) invClass[l] = cls.classOf[g.inv(cls.reps[l])];
  const long long order = static_cast<long long>(k.size());
  for (const auto& s : spaces) {
    if (s.size() != 1) throw FusionError("class algebra did not split modulo p");
    std::vector<long long> w = s[0];
    if (w[0] == 0) throw FusionError("degenerate central character");
    long long n0 = invMod(w[0], p);
    for (auto& v : w) v = v * n0 % p;
    long long denom = 0;
    for (int l = 0; l < r; ++l)
      denom = (denom + w[l] * w[invClass[l]] % p * invMod(cls.sizes[l], p)) % p;
    long long d2 = order % p * invMod(denom, p) % p;
    int deg = 0;
    for (long long d = 1; d * d <= order; ++d)
      if (d * d % p == d2) {
        deg = static_cast<int>(d);
        break;
      }
    if (deg == 0) throw FusionError("character degree not recovered");
    std::vector<long long> row(r);
    for (int l = 0; l < r; ++l) row[l] = deg * w[l] % p * invMod(cls.sizes[l], p) % p;
    t.degrees.push_back(deg);
    t.values.push_back(row);
  }
  long long sum = 0;
  for (int d : t.degrees) sum += static_cast<long long>(d) * d;
  if (sum != order) throw FusionError("character degrees do not satisfy sum d^2 = |G|");
  sortCharacters(t);
  return t;
}

std::vector<int> characterDegrees(const PermGroup& g) {
  if (g.isAbelian()) return std::vector<int>(g.order(), 1);
  return characters(g, wholeGroup(g)).degrees;
}

int conjugacyClassCount(const PermGroup& g, const Subgroup& k) {
  return static_cast<int>(classesOf(g, k).reps.size());
}

bool sylowCyclic(const PermGroup& g, const Subgroup& k) {
  for (auto [q, e] : factorize(static_cast<long long>(k.size()))) {
    long long qe = 1;
    for (int t = 0; t < e; ++t) qe *= q;
    bool found = false;
    for (int x : k)
      if (g.elementOrder(x) % qe == 0) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

// ---- group-theoretical categories ----

GroupTheoreticalData groupTheoretical(const PermGroup& g, const Subgroup& h) {
  DoubleCosetData dc = doubleCosets(g, h);
  const long long p = characterPrime(g);
  const int nc = static_cast<int>(dc.cosets.size());
  std::vector<GroupCharacters> tables;
  GroupTheoreticalData out;
  for (const auto& c : dc.cosets) {
    tables.push_back(characters(g, c.stabilizer, p));
    if (!sylowCyclic(g, c.stabilizer)) out.cocycleSensitive = true;
  }
  // Base order: (coset, character).
  std::vector<std::pair<int, int>> objs;
  std::vector<int> offset(nc + 1, 0);
  for (int c = 0; c < nc; ++c) {
    offset[c] = static_cast<int>(objs.size());
    for (size_t x = 0; x < tables[c].degrees.size(); ++x) objs.push_back({c, static_cast<int>(x)});
  }
  offset[nc] = static_cast<int>(objs.size());
  const int n = static_cast<int>(objs.size());
  std::vector<long long> dim(n);
  for (int o = 0; o < n; ++o)
    dim[o] = dc.cosets[objs[o].first].index * tables[objs[o].first].degrees[objs[o].second];
  std::vector<char> inH = membership(g, h);
  std::vector<int> dual(n, -1);
  for (int c = 0; c < nc; ++c) {
    const int x = dc.cosets[c].representative;
    const int xi = g.inv(x);
    const int c2 = dc.cosetOf[xi];
    const int x2 = dc.cosets[c2].representative;
    const auto& t1 = tables[c];
    const auto& t2 = tables[c2];
    std::vector<int> reps2(t2.classSize.size(), -1);
    for (int y : dc.cosets[c2].stabilizer)
      if (reps2[t2.classOf[y]] < 0) reps2[t2.classOf[y]] = y;
    for (size_t rho = 0; rho < t1.degrees.size(); ++rho) {
      int matched = -1;
      for (int h1 : h) {
        // g' = h1 g^-1 h2 with h2 = g h1^-1 g'.
        int h2 = g.mul(g.mul(x, g.inv(h1)), x2);
        if (!inH[h2]) continue;
        std::vector<long long> nuStar(reps2.size());
        for (size_t cl = 0; cl < reps2.size(); ++cl) {
          int hinv = g.inv(reps2[cl]);
          int y = g.mul(g.mul(g.mul(g.mul(x, g.inv(h1)), hinv), h1), xi);
          int k = t1.classOf[y];
          if (k < 0) throw CharacterMatchFailed("transported element leaves the stabilizer");
          nuStar[cl] = t1.values[rho][k];
        }
        int found = -1;
        for (size_t s = 0; s < t2.values.size(); ++s)
          if (t2.values[s] == nuStar) {
            if (found >= 0) throw CharacterMatchFailed("ambiguous character match");
            found = static_cast<int>(s);
          }
        if (found < 0) throw CharacterMatchFailed("no irreducible character matches");
        if (matched >= 0 && matched != found)
          throw CharacterMatchFailed("dual depends on the choice of h1");
        matched = found;
      }
      if (matched < 0) throw CharacterMatchFailed("no h1 realizes g'");
      dual[offset[c] + static_cast<int>(rho)] = offset[c2] + matched;
    }
  }
  for (int o = 0; o < n; ++o)
    if (dual[dual[o]] != o || dim[dual[o]] != dim[o])
      throw CharacterMatchFailed("duality is not a dimension-preserving involution");
  // Unit first, by dimension; self-dual objects precede adjacent dual pairs.
  std::vector<int> base(n);
  std::iota(base.begin(), base.end(), 0);
  std::stable_sort(base.begin(), base.end(), [&](int a, int b) { return dim[a] < dim[b]; });
  std::vector<int> order;
  std::vector<char> placed(n, 0);
  for (size_t i = 0; i < base.size();) {
    size_t j = i;
    while (j < base.size() && dim[base[j]] == dim[base[i]]) ++j;
    for (size_t t = i; t < j; ++t)
      if (dual[base[t]] == base[t]) {
        order.push_back(base[t]);
        placed[base[t]] = 1;
      }
    for (size_t t = i; t < j; ++t) {
      int o = base[t];
      if (placed[o]) continue;
      order.push_back(o);
      order.push_back(dual[o]);
      placed[o] = placed[dual[o]] = 1;
    }
    i = j;
  }
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;
  long long sumSq = 0;
  for (int i = 0; i < n; ++i) {
    out.type.push_back(dim[order[i]]);
    out.duality.push_back(pos[dual[order[i]]]);
    sumSq += dim[order[i]] * dim[order[i]];
  }
  if (sumSq != g.order()) throw FusionError("sum of squared dimensions differs from |G|");
  return out;
}

std::vector<long long> groupTheoreticalType(const PermGroup& g, const Subgroup& h) {
  return groupTheoretical(g, h).type;
}

std::vector<int> groupTheoreticalDuality(const PermGroup& g, const Subgroup& h) {
  return groupTheoretical(g, h).duality;
}

// ---- catalogs ----

std::vector<CatalogGroup> parseCatalog(const std::string& text) {
  std::vector<CatalogGroup> out;
  std::istringstream in(text);
  std::string line;
  auto trim = [](std::string s) {
    size_t a = s.find_first_not_of(" \t\r");
    size_t b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    CatalogGroup g;
    auto sep = line.rfind('=');
    if (sep == std::string::npos) {
      g.name = g.spec = line;
    } else {
      g.name = trim(line.substr(0, sep));
      g.spec = trim(line.substr(sep + 1));
    }
    out.push_back(g);
  }
  return out;
}

std::vector<CatalogGroup> loadCatalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path, 0, 0);
  std::stringstream ss;
  ss << in.rdbuf();
  return parseCatalog(ss.str());
}

std::vector<CatalogGroup> squareFreeCatalog(long long n) {
  for (auto [q, e] : factorize(n))
    if (e > 1) throw FusionError(std::to_string(n) + " is not square-free");
  std::vector<CatalogGroup> out;
  for (long long m = 1; m <= n; ++m) {
    if (n % m != 0) continue;
    long long k = n / m;
    if (std::gcd(m, k) != 1) continue;
    if (m == 1) {
      out.push_back({"C" + std::to_string(n), "C(" + std::to_string(n) + ")"});
      continue;
    }
    std::set<long long> classes;
    for (long long r = 1; r < m; ++r) {
      if (powMod(r, k, m) != 1 || std::gcd(r - 1, m) != 1) continue;
      long long best = r;
      for (long long s = 1; s < k; ++s)
        if (std::gcd(s, k) == 1) best = std::min(best, powMod(r, s, m));
      classes.insert(best);
    }
    for (long long r : classes)
      out.push_back({"C" + std::to_string(m) + " : C" + std::to_string(k) + " (k=" + std::to_string(r) + ")",
                     "SemiDirect(C(" + std::to_string(m) + "),C(" + std::to_string(k) + ")," +
                         std::to_string(r) + ")"});
  }
  return out;
}

FindGroupReport findGroupSubgroup(const std::vector<long long>& type,
                                  const std::vector<CatalogGroup>& catalog, int cap) {
  FindGroupReport report;
  std::vector<long long> target(type);
  std::sort(target.begin(), target.end());
  long long order = 0;
  for (long long d : target) order += d * d;
  for (const auto& entry : catalog) {
    PermGroup g;
    try {
      g = enumerateGroup(entry.spec, cap);
    } catch (const CapExceeded&) {
      report.skipped.push_back(entry.name);
      continue;
    }
    if (g.order() != order) continue;
    auto subs = subgroups(g, {.upToConjugacy = true});
    for (size_t i = 0; i < subs.size(); ++i) {
      const auto& h = subs[i];
      DoubleCosetData dc = doubleCosets(g, h);
      size_t rank = 0;
      for (const auto& c : dc.cosets) rank += conjugacyClassCount(g, c.stabilizer);
      if (rank != target.size()) continue;
      GroupTheoreticalData data = groupTheoretical(g, h);
      std::vector<long long> t = data.type;
      std::sort(t.begin(), t.end());
      if (t != target) continue;
      report.matches.push_back({entry.name, static_cast<int>(i), static_cast<int>(h.size()),
                                describeSubgroup(g, h), data});
    }
  }
  return report;
}

bool sameDualityPattern(const std::vector<long long>& type, const std::vector<int>& a,
                        const std::vector<int>& b) {
  if (a.size() != type.size() || b.size() != type.size()) return false;
  std::map<long long, std::pair<int, int>> fixed;
  for (size_t i = 0; i < type.size(); ++i) {
    if (a[a[i]] != static_cast<int>(i) || b[b[i]] != static_cast<int>(i)) return false;
    if (type[a[i]] != type[i] || type[b[i]] != type[i]) return false;
    if (a[i] == static_cast<int>(i)) ++fixed[type[i]].first;
    if (b[i] == static_cast<int>(i)) ++fixed[type[i]].second;
  }
  for (auto& [d, f] : fixed)
    if (f.first != f.second) return false;
  return true;
}

}  // namespace fusionforge
