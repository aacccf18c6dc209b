#include "fusionforge/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>

#include "fusionforge/spectra.hpp"

namespace fusionforge {

long long budgetFromEnvironment(long long fallback) {
  const char* s = std::getenv("FUSIONFORGE_BUDGET");
  if (!s || !*s) return fallback;
  char* end = nullptr;
  long long v = std::strtoll(s, &end, 10);
  if (end == s || v <= 0) return fallback;
  return v;
}

// ---------------------------------------------------------------- Egyptian fractions

namespace {

using i128 = __int128;

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

i128 mulChecked(i128 a, i128 b) {
  i128 out;
  if (__builtin_mul_overflow(a, b, &out)) throw FusionError("Egyptian fraction arithmetic overflow");
  return out;
}

struct Frac {
  i128 p = 0, q = 1;  // reduced, q > 0
};

Frac subtract(const Frac& a, i128 w, i128 f) {
  // a - w/f
  i128 g = gcd128(a.q, f);
  i128 lhs = mulChecked(a.p, f / g);
  i128 rhs = mulChecked(w, a.q / g);
  i128 q = mulChecked(a.q / g, f);
  Frac r{lhs - rhs, q};
  i128 h = gcd128(r.p, r.q);
  if (h > 1) {
    r.p /= h;
    r.q /= h;
  }
  return r;
}

struct EgyptianEnumerator {
  std::vector<std::pair<int, int>> weights;  // (weight, remaining count)
  std::vector<EgyptianBlock> cur;
  std::vector<std::vector<EgyptianBlock>> out;

  int remainingSlots() const {
    int s = 0;
    for (auto& w : weights) s += w.second;
    return s;
  }

  int remainingWeight() const {
    int s = 0;
    for (auto& w : weights) s += w.first * w.second;
    return s;
  }

  void run(const Frac& rem, long long prevF, int prevW) {
    int slots = remainingSlots();
    if (slots == 0) {
      if (rem.p == 0) out.push_back(cur);
      return;
    }
    if (rem.p <= 0) return;
    if (slots == 1) {
      for (auto& w : weights) {
        if (w.second == 0) continue;
        // w / f = p / q
        i128 num = mulChecked(w.first, rem.q);
        if (num % rem.p) return;
        i128 f = num / rem.p;
        if (f < prevF || (f == prevF && w.first < prevW)) return;
        cur.push_back({static_cast<long long>(f), w.first});
        out.push_back(cur);
        cur.pop_back();
      }
      return;
    }
    int wmin = 0;
    for (auto& w : weights)
      if (w.second && (!wmin || w.first < wmin)) wmin = w.first;
    // f >= wmin / rem and f <= W / rem.
    i128 lo = (mulChecked(wmin, rem.q) + rem.p - 1) / rem.p;
    if (lo < prevF) lo = prevF;
    i128 hi = mulChecked(remainingWeight(), rem.q) / rem.p;
    for (i128 f = lo; f <= hi; ++f) {
      for (auto& w : weights) {
        if (w.second == 0) continue;
        if (f == prevF && w.first < prevW) continue;
        // w / f <= rem
        if (mulChecked(w.first, rem.q) > mulChecked(rem.p, f)) continue;
        --w.second;
        cur.push_back({static_cast<long long>(f), w.first});
        run(subtract(rem, w.first, f), static_cast<long long>(f), w.first);
        cur.pop_back();
        ++w.second;
      }
    }
  }
};

}  // namespace

long long EgyptianSolution::globalCandidate() const {
  long long f1 = 0;
  for (const auto& b : blocks)
    if (b.n == 1) f1 = std::max(f1, b.f);
  return f1;
}

std::string EgyptianSolution::render() const {
  std::string s = "[";
  for (size_t i = 0; i < denominators.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(denominators[i]);
  }
  return s + "]";
}

std::vector<EgyptianSolution> egyptianFractions(int length, const EgyptianOptions& opts) {
  if (length < 1) throw FusionError("length must be positive");
  std::map<int, int> counts;
  int used = 0;
  if (opts.mnsd) {
    if (length % 2 == 0) return {};
    counts[1] = 1;
    if (length > 1) counts[2] = (length - 1) / 2;
    used = length;
  } else {
    for (int n : opts.ncPattern) {
      if (n < 1) throw FusionError("block sizes must be positive");
      counts[n] += 1;
      used += n;
    }
    if (used > length) throw FusionError("block pattern longer than the fraction");
    if (length - used > 0) counts[1] += length - used;
  }
  // Rank of the Wedderburn shape: one per unit block, n^2 per n x n block.
  int rank = 0;
  for (auto& [w, c] : counts) rank += (opts.mnsd ? w : w * w) * c;
  EgyptianEnumerator e;
  for (auto& [w, c] : counts) e.weights.push_back({w, c});
  e.run(Frac{1, 1}, 1, 0);

  std::vector<EgyptianSolution> out;
  for (auto& blocks : e.out) {
    EgyptianSolution s;
    s.blocks = blocks;
    long long f1 = s.globalCandidate();
    long long fmax = 0;
    for (auto& b : blocks) fmax = std::max(fmax, b.f);
    bool div = f1 > 0 && f1 == fmax;
    for (auto& b : blocks)
      if (div && f1 % b.f != 0) div = false;
    s.divisibility = div;
    if (opts.mnsd) {
      bool ok = div;
      for (auto& b : blocks)
        if (ok && ((f1 / b.f) % 2 == 0)) ok = false;
      if (!ok) continue;
      s.mnsd = true;
    }
    if (opts.divisibility && !div) continue;
    if (f1 < rank) continue;
    if (opts.maxDenominator > 0 && f1 > opts.maxDenominator) continue;
    // Weight-two MNSD slots are pairs of equal unit fractions; blocks of size n are n copies.
    for (auto& b : blocks)
      for (int k = 0; k < b.n; ++k) s.denominators.push_back(b.f);
    std::sort(s.denominators.begin(), s.denominators.end());
    if (opts.mnsd) {
      std::vector<EgyptianBlock> expanded;
      for (auto& b : blocks)
        for (int k = 0; k < b.n; ++k) expanded.push_back({b.f, 1});
      s.blocks = expanded;
    }
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const EgyptianSolution& a, const EgyptianSolution& b) {
    if (a.denominators != b.denominators) return a.denominators < b.denominators;
    return std::lexicographical_compare(a.blocks.begin(), a.blocks.end(), b.blocks.begin(), b.blocks.end(),
                                        [](const EgyptianBlock& x, const EgyptianBlock& y) {
                                          return std::tie(x.f, x.n) < std::tie(y.f, y.n);
                                        });
  });
  return out;
}

MnsdVerdict mnsdPredicates(const std::vector<long long>& seq) {
  auto isMnsd = [](std::vector<long long> m) {
    if (m.empty() || m.size() % 2 == 0) return false;
    std::sort(m.begin(), m.end());
    if (m[0] != 1) return false;
    for (long long x : m)
      if (x <= 0 || x % 2 == 0) return false;
    for (size_t j = 1; j + 1 < m.size(); j += 2)
      if (m[j] != m[j + 1]) return false;
    return true;
  };
  MnsdVerdict v;
  v.isMNSD = isMnsd(seq);
  if (!seq.empty()) {
    long long n1 = *std::max_element(seq.begin(), seq.end());
    bool ok = true;
    std::vector<long long> q;
    for (long long x : seq) {
      if (x <= 0 || n1 % x != 0) {
        ok = false;
        break;
      }
      q.push_back(n1 / x);
    }
    v.isCoMNSD = ok && isMnsd(q);
  }
  return v;
}

// ---------------------------------------------------------------- types and dualities

std::vector<TypeVector> typesForFPdim(long long n, int r, const TypeOptions& opts) {
  std::vector<TypeVector> out;
  if (r < 1 || n < r) return out;
  std::vector<long long> cur{1};
  auto admissible = [&](long long d) { return (!opts.oneFrobenius || n % d == 0) && (!opts.mnsd || d % 2 == 1); };
  if (opts.mnsd) {
    if (r % 2 == 0) return out;
    // 1 followed by (r-1)/2 equal pairs.
    auto rec = [&](auto&& self, long long rem, int pairs, long long lo) -> void {
      if (pairs == 0) {
        if (rem == 0) out.push_back(TypeVector{cur});
        return;
      }
      for (long long d = lo; 2 * d * d * pairs <= rem; ++d) {
        if (!admissible(d)) continue;
        cur.push_back(d);
        cur.push_back(d);
        self(self, rem - 2 * d * d, pairs - 1, d);
        cur.pop_back();
        cur.pop_back();
      }
    };
    rec(rec, n - 1, (r - 1) / 2, 1);
    return out;
  }
  auto rec = [&](auto&& self, long long rem, int k, long long lo) -> void {
    if (k == 0) {
      if (rem == 0) out.push_back(TypeVector{cur});
      return;
    }
    for (long long d = lo; d * d * k <= rem; ++d) {
      if (!admissible(d)) continue;
      if (k == 1 && d * d != rem) continue;
      cur.push_back(d);
      self(self, rem - d * d, k - 1, d);
      cur.pop_back();
    }
  };
  rec(rec, n - 1, r - 1, 1);
  return out;
}

std::vector<std::vector<int>> dualityCandidates(const TypeVector& type) {
  if (!type.valid()) throw FusionError("invalid type");
  const int r = static_cast<int>(type.dims.size());
  // Equal-dimension blocks of indices; index 0 is fixed and excluded.
  std::vector<std::vector<int>> blocks;
  for (int i = 1; i < r; ++i) {
    if (blocks.empty() || type.dims[blocks.back().back()] != type.dims[i]) blocks.push_back({});
    blocks.back().push_back(i);
  }
  std::vector<std::vector<int>> out;
  std::vector<int> dual(r);
  std::iota(dual.begin(), dual.end(), 0);
  auto rec = [&](auto&& self, size_t b) -> void {
    if (b == blocks.size()) {
      out.push_back(dual);
      return;
    }
    const auto& idx = blocks[b];
    int m = static_cast<int>(idx.size());
    for (int pairs = 0; 2 * pairs <= m; ++pairs) {
      int fixed = m - 2 * pairs;
      for (int t = 0; t < fixed; ++t) dual[idx[t]] = idx[t];
      for (int p = 0; p < pairs; ++p) {
        int a = idx[fixed + 2 * p], c = idx[fixed + 2 * p + 1];
        dual[a] = c;
        dual[c] = a;
      }
      self(self, b + 1);
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- fusion data search

namespace {

long long floorDiv(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long long ceilDiv(long long a, long long b) { return -floorDiv(-a, b); }

long long isqrtFloor(long long x) {
  if (x <= 0) return 0;
  long long s = static_cast<long long>(std::sqrt(static_cast<long double>(x)));
  while (s * s > x) --s;
  while ((s + 1) * (s + 1) <= x) ++s;
  return s;
}

long long isqrtCeil(long long x) {
  if (x <= 0) return 0;
  long long s = isqrtFloor(x);
  return s * s == x ? s : s + 1;
}

struct Term {
  int a, b;  // variable ids; b < 0 for linear terms
  long long c;
};

struct Constraint {
  std::vector<Term> terms;
  long long c0 = 0;
};

class FusionSolver {
 public:
  FusionSolver(const TypeVector& type, const std::vector<int>& duality, long long budget)
      : r_(static_cast<int>(type.dims.size())), d_(type.dims), dual_(duality), budget_(budget) {}

  SearchResult solve() {
    SearchResult res;
    if (!build()) return res;
    std::vector<long long> lo(nv_, 0), hi = initialHi_;
    std::vector<int> all(cons_.size());
    std::iota(all.begin(), all.end(), 0);
    if (!propagate(lo, hi, all)) return res;
    search(lo, hi);
    res.complete = !aborted_;
    res.nodes = nodes_;
    res.rings.assign(found_.begin(), found_.end());
    return res;
  }

 private:
  int r_;
  std::vector<long long> d_;
  std::vector<int> dual_;
  long long budget_;
  long long nodes_ = 0;
  bool aborted_ = false;

  int nv_ = 0;
  std::vector<int> varOf_;        // per flattened entry; -1 when constant
  std::vector<int> constOf_;      // value when constant
  std::vector<long long> initialHi_;
  std::vector<Constraint> cons_;
  std::vector<std::vector<int>> consOfVar_;
  std::set<FusionData> found_;

  int idx(int i, int j, int k) const { return (i * r_ + j) * r_ + k; }

  bool build() {
    const int r = r_;
    const int n = r * r * r;
    varOf_.assign(n, -1);
    constOf_.assign(n, 0);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        for (int k = 0; k < r; ++k) {
          int e = idx(i, j, k);
          if (i == 0)
            constOf_[e] = j == k;
          else if (j == 0)
            constOf_[e] = i == k;
          else if (k == 0)
            constOf_[e] = dual_[i] == j;
        }
    // Frobenius-reciprocity orbits over triples with all indices nonzero.
    std::vector<long long> hiOf;
    for (int i = 1; i < r; ++i)
      for (int j = 1; j < r; ++j)
        for (int k = 1; k < r; ++k) {
          if (varOf_[idx(i, j, k)] >= 0) continue;
          int v = nv_++;
          long long bound = -1;
          std::vector<std::array<int, 3>> stack{{i, j, k}};
          varOf_[idx(i, j, k)] = v;
          while (!stack.empty()) {
            auto [a, b, c] = stack.back();
            stack.pop_back();
            long long bb = d_[a] * d_[b] / d_[c];
            if (bound < 0 || bb < bound) bound = bb;
            std::array<std::array<int, 3>, 3> next{{{c, dual_[b], a}, {dual_[c], a, dual_[b]}, {dual_[b], dual_[a], dual_[c]}}};
            for (auto& t : next) {
              int e = idx(t[0], t[1], t[2]);
              if (varOf_[e] < 0) {
                varOf_[e] = v;
                stack.push_back(t);
              }
            }
          }
          hiOf.push_back(bound);
        }
    initialHi_ = hiOf;

    std::set<std::pair<std::vector<std::array<long long, 3>>, long long>> seen;
    auto addConstraint = [&](std::map<std::pair<int, int>, long long>& terms, long long c0) -> bool {
      std::vector<std::array<long long, 3>> key;
      for (auto& [ab, c] : terms)
        if (c != 0) key.push_back({ab.first, ab.second, c});
      if (key.empty()) return c0 == 0;
      if (key[0][2] < 0) {
        for (auto& t : key) t[2] = -t[2];
        c0 = -c0;
      }
      if (!seen.insert({key, c0}).second) return true;
      Constraint con;
      con.c0 = c0;
      for (auto& t : key) con.terms.push_back({static_cast<int>(t[0]), static_cast<int>(t[1]), t[2]});
      cons_.push_back(std::move(con));
      return true;
    };
    // Dimension equations.
    for (int i = 1; i < r; ++i)
      for (int j = 1; j < r; ++j) {
        std::map<std::pair<int, int>, long long> terms;
        long long c0 = -d_[i] * d_[j] + (dual_[i] == j ? 1 : 0);
        for (int k = 1; k < r; ++k) terms[{varOf_[idx(i, j, k)], -1}] += d_[k];
        if (!addConstraint(terms, c0)) return false;
      }
    // Associativity: sum_s N_ij^s N_sk^t - N_jk^s N_is^t = 0.
    for (int i = 1; i < r; ++i)
      for (int j = 1; j < r; ++j)
        for (int k = 1; k < r; ++k)
          for (int t = 1; t < r; ++t) {
            std::map<std::pair<int, int>, long long> terms;
            long long c0 = 0;
            auto addProduct = [&](int e1, int e2, long long sign) {
              int v1 = varOf_[e1], v2 = varOf_[e2];
              if (v1 < 0 && v2 < 0) {
                c0 += sign * constOf_[e1] * constOf_[e2];
              } else if (v1 < 0) {
                if (constOf_[e1]) terms[{v2, -1}] += sign * constOf_[e1];
              } else if (v2 < 0) {
                if (constOf_[e2]) terms[{v1, -1}] += sign * constOf_[e2];
              } else {
                terms[{std::min(v1, v2), std::max(v1, v2)}] += sign;
              }
            };
            for (int s = 0; s < r; ++s) {
              addProduct(idx(i, j, s), idx(s, k, t), 1);
              addProduct(idx(j, k, s), idx(i, s, t), -1);
            }
            if (!addConstraint(terms, c0)) return false;
          }
    consOfVar_.assign(nv_, {});
    for (size_t c = 0; c < cons_.size(); ++c) {
      std::set<int> vs;
      for (auto& t : cons_[c].terms) {
        vs.insert(t.a);
        if (t.b >= 0) vs.insert(t.b);
      }
      for (int v : vs) consOfVar_[v].push_back(static_cast<int>(c));
    }
    return true;
  }

  // Bounds of one term's value.
  static void termRange(const Term& t, const std::vector<long long>& lo, const std::vector<long long>& hi,
                        long long& mn, long long& mx) {
    long long plo, phi;
    if (t.b < 0) {
      plo = lo[t.a];
      phi = hi[t.a];
    } else {
      plo = lo[t.a] * lo[t.b];
      phi = hi[t.a] * hi[t.b];
    }
    if (t.c > 0) {
      mn = t.c * plo;
      mx = t.c * phi;
    } else {
      mn = t.c * phi;
      mx = t.c * plo;
    }
  }

  bool tighten(int v, long long nlo, long long nhi, std::vector<long long>& lo, std::vector<long long>& hi,
               std::vector<int>& queue, std::vector<char>& inQueue) {
    bool changed = false;
    if (nlo > lo[v]) {
      lo[v] = nlo;
      changed = true;
    }
    if (nhi < hi[v]) {
      hi[v] = nhi;
      changed = true;
    }
    if (lo[v] > hi[v]) return false;
    if (changed)
      for (int c : consOfVar_[v])
        if (!inQueue[c]) {
          inQueue[c] = 1;
          queue.push_back(c);
        }
    return true;
  }

  bool propagate(std::vector<long long>& lo, std::vector<long long>& hi, const std::vector<int>& seed) {
    std::vector<int> queue(seed);
    std::vector<char> inQueue(cons_.size(), 0);
    for (int c : seed) inQueue[c] = 1;
    size_t head = 0;
    while (head < queue.size()) {
      int ci = queue[head++];
      inQueue[ci] = 0;
      if (head > 4096 && head * 2 > queue.size()) {
        queue.erase(queue.begin(), queue.begin() + static_cast<long>(head));
        head = 0;
      }
      const Constraint& con = cons_[ci];
      long long smin = con.c0, smax = con.c0;
      for (const auto& t : con.terms) {
        long long mn, mx;
        termRange(t, lo, hi, mn, mx);
        smin += mn;
        smax += mx;
      }
      if (smin > 0 || smax < 0) return false;
      if (smin == smax) continue;
      for (const auto& t : con.terms) {
        long long mn, mx;
        termRange(t, lo, hi, mn, mx);
        if (mn == mx) continue;
        long long omin = smin - mn, omax = smax - mx;
        // t.c * P in [-omax, -omin]
        long long plo, phi;
        if (t.c > 0) {
          plo = ceilDiv(-omax, t.c);
          phi = floorDiv(-omin, t.c);
        } else {
          plo = ceilDiv(omin, -t.c);
          phi = floorDiv(omax, -t.c);
        }
        if (plo < 0) plo = 0;
        if (t.b < 0) {
          if (!tighten(t.a, plo, phi, lo, hi, queue, inQueue)) return false;
        } else if (t.a == t.b) {
          if (!tighten(t.a, isqrtCeil(plo), isqrtFloor(phi), lo, hi, queue, inQueue)) return false;
        } else {
          for (int side = 0; side < 2; ++side) {
            int x = side ? t.b : t.a, y = side ? t.a : t.b;
            long long nlo = lo[x], nhi = hi[x];
            if (lo[y] > 0) nhi = std::min(nhi, phi / lo[y]);
            if (plo > 0) {
              if (hi[y] == 0) return false;
              nlo = std::max(nlo, ceilDiv(plo, hi[y]));
            }
            if (!tighten(x, nlo, nhi, lo, hi, queue, inQueue)) return false;
          }
        }
        // Refresh the sums after a change to this term.
        long long mn2, mx2;
        termRange(t, lo, hi, mn2, mx2);
        smin += mn2 - mn;
        smax += mx2 - mx;
        if (smin > 0 || smax < 0) return false;
      }
    }
    return true;
  }

  void record(const std::vector<long long>& lo) {
    FusionData f(r_, dual_);
    for (int e = 0; e < r_ * r_ * r_; ++e) f.tensor[e] = varOf_[e] < 0 ? constOf_[e] : static_cast<int>(lo[varOf_[e]]);
    if (validate(f)) throw FusionError("search produced invalid fusion data");
    found_.insert(canonicalForm(f));
  }

  void search(std::vector<long long>& lo, std::vector<long long>& hi) {
    if (aborted_) return;
    int best = -1;
    long long bestSize = 0;
    for (int v = 0; v < nv_; ++v) {
      long long sz = hi[v] - lo[v];
      if (sz == 0) continue;
      if (best < 0 || sz < bestSize ||
          (sz == bestSize && consOfVar_[v].size() > consOfVar_[best].size())) {
        best = v;
        bestSize = sz;
      }
    }
    if (best < 0) {
      record(lo);
      return;
    }
    for (long long val = lo[best]; val <= hi[best]; ++val) {
      if (++nodes_ > budget_) {
        aborted_ = true;
        return;
      }
      std::vector<long long> lo2 = lo, hi2 = hi;
      lo2[best] = hi2[best] = val;
      if (!propagate(lo2, hi2, consOfVar_[best])) continue;
      search(lo2, hi2);
      if (aborted_) return;
    }
  }
};

}  // namespace

SearchResult fusionDataSearch(const TypeVector& type, const std::vector<int>& duality, const SearchOptions& opts) {
  if (!type.valid()) throw FusionError("invalid type");
  const int r = static_cast<int>(type.dims.size());
  if (static_cast<int>(duality.size()) != r) throw FusionError("duality length differs from rank");
  for (int i = 0; i < r; ++i) {
    if (duality[i] < 0 || duality[i] >= r || duality[duality[i]] != i) throw FusionError("duality is not an involution");
    if (type.dims[duality[i]] != type.dims[i]) throw FusionError("duality does not preserve dimensions");
  }
  if (duality[0] != 0) throw FusionError("duality must fix the unit");
  if (r == 1) {
    SearchResult res;
    res.rings.push_back(trivialRing());
    return res;
  }
  FusionSolver solver(type, duality, opts.budget);
  return solver.solve();
}

// ---------------------------------------------------------------- pipeline

ClassifyReport classifyPipeline(const ClassifyOptions& opts) {
  ClassifyReport rep;
  rep.rank = opts.rank;
  const int r = opts.rank;
  std::vector<EgyptianSolution> fractions;
  if (opts.noncommutativeOnly) {
    // Wedderburn shapes with at least one 2x2 block: rank = ones + 4 * twos.
    for (int twos = 1; 4 * twos <= r; ++twos) {
      EgyptianOptions eo;
      eo.divisibility = true;
      eo.ncPattern.assign(twos, 2);
      eo.maxDenominator = opts.maxFPdim;
      int length = (r - 4 * twos) + 2 * twos;
      auto part = egyptianFractions(length, eo);
      fractions.insert(fractions.end(), part.begin(), part.end());
    }
  } else {
    EgyptianOptions eo;
    eo.divisibility = true;
    eo.mnsd = opts.mnsd;
    eo.maxDenominator = opts.maxFPdim;
    fractions = egyptianFractions(r, eo);
  }
  rep.egyptianCount = static_cast<long long>(fractions.size());
  std::set<long long> fpdimSet;
  for (auto& s : fractions) fpdimSet.insert(s.globalCandidate());
  rep.fpdimCount = static_cast<long long>(fpdimSet.size());

  std::vector<TypeVector> types;
  for (long long n : fpdimSet) {
    TypeOptions to;
    to.oneFrobenius = opts.oneFrobenius;
    to.mnsd = opts.mnsd;
    auto t = typesForFPdim(n, r, to);
    types.insert(types.end(), t.begin(), t.end());
  }
  rep.typeCount = static_cast<long long>(types.size());

  struct Job {
    size_t type;
    std::vector<int> duality;
  };
  std::vector<Job> jobs;
  for (size_t t = 0; t < types.size(); ++t) {
    std::vector<std::vector<int>> duals;
    if (opts.mnsd) {
      // Maximally non-self-dual: every nontrivial element paired.
      for (auto& d : dualityCandidates(types[t])) {
        bool ok = true;
        for (int i = 1; i < r; ++i)
          if (d[i] == i) ok = false;
        if (ok) duals.push_back(d);
      }
    } else {
      duals = dualityCandidates(types[t]);
    }
    for (auto& d : duals) jobs.push_back({t, d});
  }

  std::vector<SearchResult> results(jobs.size());
  std::atomic<size_t> next{0};
  std::mutex errMutex;
  std::string error;
  auto worker = [&]() {
    while (true) {
      size_t j = next++;
      if (j >= jobs.size()) return;
      try {
        SearchOptions so;
        so.budget = opts.budget;
        results[j] = fusionDataSearch(types[jobs[j].type], jobs[j].duality, so);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(errMutex);
        if (error.empty()) error = e.what();
      }
    }
  };
  int nThreads = std::max(1, opts.jobs);
  std::vector<std::thread> pool;
  for (int t = 1; t < nThreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (!error.empty()) throw FusionError(error);

  std::vector<char> admits(types.size(), 0), incomplete(types.size(), 0);
  std::vector<FusionData> rings;
  for (size_t j = 0; j < jobs.size(); ++j) {
    const auto& res = results[j];
    if (!res.complete) incomplete[jobs[j].type] = 1;
    for (const auto& f : res.rings) {
      if (opts.noncommutativeOnly && isCommutative(f)) continue;
      admits[jobs[j].type] = 1;
      rings.push_back(f);
    }
  }
  for (size_t t = 0; t < types.size(); ++t) {
    if (admits[t]) ++rep.admittingTypes;
    if (incomplete[t]) {
      rep.incompleteTypes.push_back(types[t]);
      rep.complete = false;
    }
  }
  rep.ringCount = static_cast<long long>(rings.size());
  for (const auto& f : rings) {
    bool drinfeld = false;
    try {
      drinfeld = isDrinfeld(codegreeProfile(f)).drinfeld;
      if (drinfeld && opts.mnsd) {
        auto prof = codegreeProfile(f);
        std::vector<long long> cg;
        for (auto& b : prof.blocks) cg.push_back(static_cast<long long>(numerator(b.exact)));
        drinfeld = mnsdPredicates(cg).isCoMNSD;
      }
    } catch (const AmbiguousDecomposition&) {
      drinfeld = false;
    }
    if (drinfeld) ++rep.drinfeldCount;
    if (!opts.drinfeldOnly || drinfeld) rep.rings.push_back(f);
  }
  std::sort(rep.rings.begin(), rep.rings.end(), [](const FusionData& a, const FusionData& b) {
    FPdims da = fpdims(a), db = fpdims(b);
    if (da.globalExact != db.globalExact) return da.globalExact < db.globalExact;
    auto ta = da.type().dims, tb = db.type().dims;
    if (ta != tb) return ta < tb;
    if (a.duality != b.duality) return a.duality < b.duality;
    return a.tensor < b.tensor;
  });
  return rep;
}

}  // namespace fusionforge
