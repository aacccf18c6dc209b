#include "fusionforge/core.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace fusionforge {

FusionData::FusionData(int r, std::vector<int> dual)
    : rank(r), duality(std::move(dual)), tensor(static_cast<size_t>(r) * r * r, 0) {}

bool FusionData::operator<(const FusionData& o) const {
  if (rank != o.rank) return rank < o.rank;
  if (duality != o.duality) return duality < o.duality;
  return tensor < o.tensor;
}

FusionData FusionData::fromNested(const std::vector<std::vector<std::vector<int>>>& n,
                                  std::vector<int> dual) {
  int r = static_cast<int>(n.size());
  FusionData f(r, std::move(dual));
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(n[i].size()) != r) throw FusionError("tensor is not cubic");
    for (int j = 0; j < r; ++j) {
      if (static_cast<int>(n[i][j].size()) != r) throw FusionError("tensor is not cubic");
      for (int k = 0; k < r; ++k) f.at(i, j, k) = n[i][j][k];
    }
  }
  return f;
}

std::vector<std::vector<std::vector<int>>> FusionData::nested() const {
  std::vector<std::vector<std::vector<int>>> n(rank, std::vector<std::vector<int>>(rank, std::vector<int>(rank)));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j)
      for (int k = 0; k < rank; ++k) n[i][j][k] = (*this)(i, j, k);
  return n;
}

long long TypeVector::globalFPdim() const {
  long long s = 0;
  for (long long d : dims) s += d * d;
  return s;
}

bool TypeVector::valid() const {
  if (dims.empty() || dims[0] != 1) return false;
  for (size_t i = 1; i < dims.size(); ++i)
    if (dims[i] < dims[i - 1]) return false;
  return true;
}

std::vector<std::pair<long long, int>> TypeVector::grouped() const {
  std::vector<std::pair<long long, int>> g;
  for (long long d : dims) {
    if (!g.empty() && g.back().first == d)
      ++g.back().second;
    else
      g.emplace_back(d, 1);
  }
  return g;
}

bool TypeVector::operator<(const TypeVector& o) const {
  if (dims.size() != o.dims.size()) return dims.size() < o.dims.size();
  return dims < o.dims;
}

std::string axiomName(Axiom a) {
  switch (a) {
    case Axiom::Shape: return "shape";
    case Axiom::Duality: return "duality";
    case Axiom::Unit: return "unit";
    case Axiom::Dual: return "dual";
    case Axiom::AntiInvolution: return "anti-involution";
    case Axiom::Associativity: return "associativity";
    case Axiom::FrobeniusReciprocity: return "frobenius-reciprocity";
  }
  return "unknown";
}

std::string AxiomViolation::describe() const {
  std::ostringstream os;
  os << "axiom violated: " << axiomName(axiom) << " at (";
  bool first = true;
  for (int x : indices) {
    if (x < 0) continue;
    if (!first) os << ",";
    os << x;
    first = false;
  }
  os << ")";
  return os.str();
}

std::optional<AxiomViolation> validate(const FusionData& f) {
  const int r = f.rank;
  if (r <= 0 || static_cast<int>(f.duality.size()) != r ||
      f.tensor.size() != static_cast<size_t>(r) * r * r)
    return AxiomViolation{Axiom::Shape, {}};
  for (int x : f.tensor)
    if (x < 0) return AxiomViolation{Axiom::Shape, {}};
  for (int i = 0; i < r; ++i) {
    int d = f.duality[i];
    if (d < 0 || d >= r || f.duality[d] != i) return AxiomViolation{Axiom::Duality, {i, -1, -1, -1}};
  }
  if (f.duality[0] != 0) return AxiomViolation{Axiom::Duality, {0, -1, -1, -1}};
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      int e = i == j ? 1 : 0;
      if (f(0, i, j) != e || f(i, 0, j) != e) return AxiomViolation{Axiom::Unit, {i, j, -1, -1}};
    }
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      int e = i == j ? 1 : 0;
      int is = f.dual(i);
      if (f(is, j, 0) != e || f(j, is, 0) != e) return AxiomViolation{Axiom::Dual, {i, j, -1, -1}};
    }
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k)
        if (f(i, j, k) != f(f.dual(j), f.dual(i), f.dual(k)))
          return AxiomViolation{Axiom::AntiInvolution, {i, j, k, -1}};
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k)
        for (int t = 0; t < r; ++t) {
          long long lhs = 0, rhs = 0;
          for (int s = 0; s < r; ++s) {
            lhs += static_cast<long long>(f(i, j, s)) * f(s, k, t);
            rhs += static_cast<long long>(f(j, k, s)) * f(i, s, t);
          }
          if (lhs != rhs) return AxiomViolation{Axiom::Associativity, {i, j, k, t}};
        }
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k) {
        int v = f(i, j, k);
        int is = f.dual(i), js = f.dual(j), ks = f.dual(k);
        if (v != f(k, js, i) || v != f(ks, i, js) || v != f(js, is, ks) || v != f(j, ks, is) ||
            v != f(is, k, j))
          return AxiomViolation{Axiom::FrobeniusReciprocity, {i, j, k, -1}};
      }
  return std::nullopt;
}

void requireValid(const FusionData& data) {
  if (auto v = validate(data)) throw AxiomError(*v);
}

TypeVector FPdims::type() const {
  if (!integral) throw NonIntegralInput("type requested for a non-integral ring");
  TypeVector t;
  t.dims = exact;
  std::sort(t.dims.begin(), t.dims.end());
  return t;
}

FPdims fpdims(const FusionData& f) {
  using Real = boost::multiprecision::cpp_bin_float_50;
  const int r = f.rank;
  // A = sum_i L_i is entrywise positive, so its Perron vector (normalized at the unit) is d.
  std::vector<std::vector<long long>> a(r, std::vector<long long>(r, 0));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k) a[k][j] += f(i, j, k);
  std::vector<Real> v(r, Real(1)), w(r);
  const Real tol("1e-30");
  bool converged = false;
  for (int it = 0; it < 20000; ++it) {
    for (int k = 0; k < r; ++k) {
      Real s = 0;
      for (int j = 0; j < r; ++j) s += a[k][j] * v[j];
      w[k] = s;
    }
    Real norm = w[0];
    Real diff = 0;
    for (int k = 0; k < r; ++k) {
      w[k] /= norm;
      diff = std::max<Real>(diff, abs(w[k] - v[k]));
    }
    v.swap(w);
    if (diff < tol) {
      converged = true;
      break;
    }
  }
  if (!converged) throw NonConvergence("Perron vector iteration did not converge");
  FPdims out;
  out.values.resize(r);
  Real global = 0;
  for (int i = 0; i < r; ++i) {
    out.values[i] = static_cast<long double>(v[i]);
    global += v[i] * v[i];
  }
  out.globalApprox = static_cast<long double>(global);
  // Rounded candidate, verified exactly against d_i d_j = sum_k N d_k.
  std::vector<long long> cand(r);
  bool ok = true;
  for (int i = 0; i < r; ++i) {
    long double x = std::round(out.values[i]);
    if (x < 1 || std::fabs(x - out.values[i]) > 1e-12L * std::max<long double>(1, x)) ok = false;
    cand[i] = static_cast<long long>(x);
  }
  if (ok) {
    for (int i = 0; i < r && ok; ++i)
      for (int j = 0; j < r && ok; ++j) {
        long long s = 0;
        for (int k = 0; k < r; ++k) s += f(i, j, k) * cand[k];
        if (s != cand[i] * cand[j]) ok = false;
      }
  }
  if (ok) {
    out.integral = true;
    out.exact = cand;
    long long g = 0;
    for (long long d : cand) g += d * d;
    out.globalExact = g;
    for (int i = 0; i < r; ++i) out.values[i] = static_cast<long double>(cand[i]);
    out.globalApprox = static_cast<long double>(g);
  }
  return out;
}

bool isCommutative(const FusionData& f) {
  for (int i = 0; i < f.rank; ++i)
    for (int j = i + 1; j < f.rank; ++j)
      for (int k = 0; k < f.rank; ++k)
        if (f(i, j, k) != f(j, i, k)) return false;
  return true;
}

int multiplicity(const FusionData& f) {
  return f.tensor.empty() ? 0 : *std::max_element(f.tensor.begin(), f.tensor.end());
}

RingSummary summarize(const FusionData& f) {
  requireValid(f);
  RingSummary s;
  FPdims d = fpdims(f);
  s.dims = d.values;
  s.integral = d.integral;
  if (d.integral) s.type = d.type();
  s.duality = f.duality;
  s.commutative = isCommutative(f);
  s.multiplicity = multiplicity(f);
  int ones = 0;
  for (long double x : d.values)
    if (std::fabs(x - 1) < 1e-9L) ++ones;
  s.pointed = ones == f.rank;
  s.perfect = ones == 1;
  s.oneFrobenius = false;
  if (d.integral) {
    s.oneFrobenius = true;
    for (long long x : d.exact)
      if (d.globalExact % x != 0) s.oneFrobenius = false;
  }
  s.simple = fusionSubrings(f).size() <= 2;
  bool noSelfDual = true;
  for (int i = 1; i < f.rank; ++i)
    if (f.dual(i) == i) noSelfDual = false;
  s.mnsd = noSelfDual && (f.rank % 2 == 1);
  return s;
}

namespace {

std::vector<int> closure(const FusionData& f, std::vector<char> in) {
  const int r = f.rank;
  in[0] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < r; ++i) {
      if (!in[i]) continue;
      if (!in[f.dual(i)]) {
        in[f.dual(i)] = 1;
        changed = true;
      }
      for (int j = 0; j < r; ++j) {
        if (!in[j]) continue;
        for (int k = 0; k < r; ++k)
          if (!in[k] && f(i, j, k) > 0) {
            in[k] = 1;
            changed = true;
          }
      }
    }
  }
  std::vector<int> out;
  for (int i = 0; i < r; ++i)
    if (in[i]) out.push_back(i);
  return out;
}

}  // namespace

std::vector<std::vector<int>> fusionSubrings(const FusionData& f) {
  const int r = f.rank;
  std::set<std::vector<int>> found;
  std::vector<std::vector<int>> frontier;
  std::vector<char> base(r, 0);
  auto unit = closure(f, base);
  found.insert(unit);
  frontier.push_back(unit);
  // Every subring is generated by adding one basis element at a time to a smaller subring.
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& s : frontier) {
      std::vector<char> in(r, 0);
      for (int x : s) in[x] = 1;
      for (int g = 0; g < r; ++g) {
        if (in[g]) continue;
        auto mark = in;
        mark[g] = 1;
        auto c = closure(f, mark);
        if (found.insert(c).second) next.push_back(c);
      }
    }
    frontier.swap(next);
  }
  std::vector<std::vector<int>> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

FusionData restrictTo(const FusionData& f, const std::vector<int>& subset) {
  const int m = static_cast<int>(subset.size());
  std::vector<int> pos(f.rank, -1);
  for (int a = 0; a < m; ++a) pos[subset[a]] = a;
  std::vector<int> dual(m);
  for (int a = 0; a < m; ++a) dual[a] = pos[f.dual(subset[a])];
  FusionData g(m, dual);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c) g.at(a, b, c) = f(subset[a], subset[b], subset[c]);
  return g;
}

FusionData trivialRing() {
  FusionData f(1, {0});
  f.at(0, 0, 0) = 1;
  return f;
}

FusionData extendRing(const FusionData& f) {
  requireValid(f);
  FPdims d = fpdims(f);
  if (!d.integral) throw NonIntegralInput("extendRing requires an integral ring");
  const int r = f.rank;
  std::vector<int> dual = f.duality;
  dual.push_back(r);
  FusionData g(r + 1, dual);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k) g.at(i, j, k) = f(i, j, k);
  for (int i = 0; i < r; ++i) {
    g.at(r, i, r) = static_cast<int>(d.exact[i]);
    g.at(i, r, r) = static_cast<int>(d.exact[i]);
    g.at(r, r, i) = static_cast<int>(d.exact[i]);
  }
  g.at(r, r, r) = static_cast<int>(d.globalExact - 1);
  return g;
}

FusionData makeRnFamily(int n) {
  if (n < 0) throw FusionError("makeRnFamily requires n >= 0");
  // Basis: e, the two 3-cycles c, c^2, then the three transpositions.
  static const int table[6][6] = {{0, 1, 2, 3, 4, 5}, {1, 2, 0, 4, 5, 3}, {2, 0, 1, 5, 3, 4},
                                  {3, 5, 4, 0, 2, 1}, {4, 3, 5, 1, 0, 2}, {5, 4, 3, 2, 1, 0}};
  FusionData f(6, {0, 2, 1, 3, 4, 5});
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      f.at(i, j, table[i][j]) += 1;
      if (i >= 3 && j >= 3)
        for (int k = 3; k < 6; ++k) f.at(i, j, k) += n;
    }
  return f;
}

std::vector<int> dimensionLabels(const FusionData& f) {
  FPdims d = fpdims(f);
  std::vector<int> labels(f.rank, -1);
  int next = 0;
  for (int i = 0; i < f.rank; ++i) {
    if (labels[i] >= 0) continue;
    labels[i] = next;
    for (int j = i + 1; j < f.rank; ++j)
      if (labels[j] < 0 &&
          std::fabs(d.values[i] - d.values[j]) <= 1e-12L * std::max<long double>(1, d.values[i]))
        labels[j] = next;
    ++next;
  }
  return labels;
}

std::vector<std::vector<int>> admissiblePermutations(const std::vector<int>& labels,
                                                      const std::vector<int>* duality) {
  const int r = static_cast<int>(labels.size());
  std::vector<std::vector<int>> out;
  std::vector<int> perm(r, -1);
  std::vector<char> used(r, 0);
  perm[0] = 0;
  used[0] = 1;
  // perm maps new index -> old index.
  std::vector<int> idx;
  for (int i = 1; i < r; ++i) idx.push_back(i);
  auto rec = [&](auto&& self, size_t pos) -> void {
    if (pos == idx.size()) {
      if (duality) {
        for (int i = 0; i < r; ++i)
          if (perm[(*duality)[i]] != (*duality)[perm[i]]) return;
      }
      out.push_back(perm);
      return;
    }
    int i = idx[pos];
    for (int c = 1; c < r; ++c) {
      if (used[c] || labels[c] != labels[i]) continue;
      if (duality) {
        int di = (*duality)[i];
        if (di < i && perm[di] >= 0 && perm[di] != (*duality)[c]) continue;
        if (di == i && (*duality)[c] != c) continue;
      }
      used[c] = 1;
      perm[i] = c;
      self(self, pos + 1);
      used[c] = 0;
      perm[i] = -1;
    }
  };
  rec(rec, 0);
  return out;
}

FusionData permute(const FusionData& f, const std::vector<int>& p) {
  const int r = f.rank;
  std::vector<int> inv(r);
  for (int i = 0; i < r; ++i) inv[p[i]] = i;
  std::vector<int> dual(r);
  for (int i = 0; i < r; ++i) dual[i] = inv[f.dual(p[i])];
  FusionData g(r, dual);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k) g.at(i, j, k) = f(p[i], p[j], p[k]);
  return g;
}

FusionData canonicalForm(const FusionData& f) {
  const int r = f.rank;
  auto perms = admissiblePermutations(dimensionLabels(f), nullptr);
  std::vector<int> best;
  std::vector<int> bestTensor;
  for (const auto& p : perms) {
    if (best.empty()) {
      best = p;
      bestTensor = permute(f, p).tensor;
      continue;
    }
    // Compare lazily against the incumbent; most permutations lose early.
    int cmp = 0;
    size_t pos = 0;
    for (int i = 0; i < r && cmp == 0; ++i)
      for (int j = 0; j < r && cmp == 0; ++j)
        for (int k = 0; k < r; ++k, ++pos) {
          int v = f(p[i], p[j], p[k]);
          if (v != bestTensor[pos]) {
            cmp = v < bestTensor[pos] ? -1 : 1;
            break;
          }
        }
    if (cmp < 0) {
      best = p;
      bestTensor = permute(f, p).tensor;
    }
  }
  return permute(f, best);
}

bool isomorphic(const FusionData& a, const FusionData& b) {
  if (a.rank != b.rank) return false;
  return canonicalForm(a) == canonicalForm(b);
}

}  // namespace fusionforge
