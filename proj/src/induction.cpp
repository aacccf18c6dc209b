#include "fusionforge/induction.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace fusionforge {

namespace {

long long isqrtFloor(long long x) {
  if (x <= 0) return 0;
  long long s = static_cast<long long>(std::sqrt(static_cast<long double>(x)));
  while (s * s > x) --s;
  while ((s + 1) * (s + 1) <= x) ++s;
  return s;
}

// G[j][k] = sum_{u,t} N[t][j][u] N[u][t*][k]
IntRows gramTarget(const FusionData& f) {
  const int r = f.rank;
  IntRows g(r, std::vector<long long>(r, 0));
  for (int j = 0; j < r; ++j)
    for (int k = 0; k < r; ++k) {
      long long s = 0;
      for (int t = 0; t < r; ++t)
        for (int u = 0; u < r; ++u) s += static_cast<long long>(f(t, j, u)) * f(u, f.dual(t), k);
      g[j][k] = s;
    }
  return g;
}

long long rowWeight(const std::vector<long long>& row, const std::vector<long long>& d) {
  long long m = 0;
  for (size_t j = 0; j < row.size(); ++j) m += row[j] * d[j];
  return m;
}

std::vector<long long> dualRow(const std::vector<long long>& row, const std::vector<int>& dual) {
  std::vector<long long> out(row.size());
  for (size_t j = 0; j < row.size(); ++j) out[j] = row[dual[j]];
  return out;
}

bool closedUnderDuality(const IntRows& rows, const std::vector<int>& dual) {
  std::multiset<std::vector<long long>> a(rows.begin(), rows.end()), b;
  for (const auto& row : rows) b.insert(dualRow(row, dual));
  return a == b;
}

InductionSolution finalize(IntRows rows, const std::vector<long long>& d) {
  std::sort(rows.begin(), rows.end(), [&](const auto& x, const auto& y) {
    long long mx = rowWeight(x, d), my = rowWeight(y, d);
    if (mx != my) return mx < my;
    return x > y;
  });
  InductionSolution s;
  for (size_t i = 0; i < rows.size(); ++i) {
    s.centerType.push_back(rowWeight(rows[i], d));
    if (i && rows[i] == rows[i - 1]) s.duplicateRows = true;
  }
  s.F = std::move(rows);
  return s;
}

}  // namespace

InductionProblem makeInductionProblem(const FusionData& ring) {
  requireValid(ring);
  FPdims dims = fpdims(ring);
  if (!dims.integral) throw NonIntegralInput("induction matrices require an integral ring");
  CodegreeProfile prof = codegreeProfile(ring);
  if (!isDrinfeld(prof).drinfeld) throw FusionError("induction matrices require a Drinfeld ring");
  InductionProblem p;
  p.ring = ring;
  p.dims = dims.exact;
  p.globalFPdim = dims.globalExact;
  // FPdim character first, remaining blocks in profile order.
  bool unitTaken = false;
  std::vector<std::pair<int, long long>> rest;
  for (const auto& b : prof.blocks) {
    long long f = static_cast<long long>(numerator(b.exact));
    if (!unitTaken && b.n == 1 && f == p.globalFPdim) {
      unitTaken = true;
      continue;
    }
    rest.push_back({b.n, f});
  }
  p.n.push_back(1);
  p.f.push_back(p.globalFPdim);
  for (auto& [n, f] : rest) {
    p.n.push_back(n);
    p.f.push_back(f);
  }
  return p;
}

LowerSquareResult lowerSquareSolutions(const InductionProblem& p, bool keep, long long budget) {
  LowerSquareResult res;
  const int r = p.ring.rank;
  const int s = p.s();
  const auto& d = p.dims;
  IntRows base(s, std::vector<long long>(r, 0));
  base[0][0] = 1;
  for (int i = 1; i < s; ++i) base[i][0] = p.n[i];
  if (r == 1) {
    res.count = 1;
    if (keep) res.solutions.push_back(base);
    return res;
  }
  // Column targets a_j = sum_t N[t][t*][j]; row targets b_i = FPdim / f_i - n_i.
  std::vector<long long> a(r, 0), b(s, 0);
  for (int j = 1; j < r; ++j)
    for (int t = 0; t < r; ++t) a[j] += p.ring(t, p.ring.dual(t), j);
  for (int i = 1; i < s; ++i) b[i] = p.globalFPdim / p.f[i] - p.n[i];
  for (int i = 1; i < s; ++i)
    if (b[i] < 0) return res;
  // Candidate rows: sum_j d_j x_j = b_i with n_i x_j <= a_j.
  std::vector<IntRows> options(s);
  for (int i = 1; i < s; ++i) {
    std::vector<long long> x(r, 0);
    auto rec = [&](auto&& self, int j, long long left) -> void {
      if (j == r - 1) {
        if (left % d[j] != 0) return;
        long long v = left / d[j];
        if (p.n[i] * v > a[j]) return;
        x[j] = v;
        options[i].push_back(x);
        x[j] = 0;
        return;
      }
      for (long long v = 0; v * d[j] <= left && p.n[i] * v <= a[j]; ++v) {
        x[j] = v;
        self(self, j + 1, left - v * d[j]);
      }
      x[j] = 0;
    };
    rec(rec, 1, b[i]);
    if (options[i].empty()) return res;
  }
  if (s == 1) {
    for (int j = 1; j < r; ++j)
      if (a[j] != 0) return res;
    res.count = 1;
    if (keep) res.solutions.push_back(base);
    return res;
  }
  long long nodes = 0;
  std::vector<long long> col(a);  // remaining column targets
  col[0] = 0;
  if (!keep) {
    // Count by dynamic programming over remaining column targets.
    std::map<std::vector<long long>, long long> state{{col, 1}};
    for (int i = 1; i < s; ++i) {
      std::map<std::vector<long long>, long long> next;
      for (const auto& [c, cnt] : state) {
        for (const auto& x : options[i]) {
          if (++nodes > budget) {
            res.complete = false;
            return res;
          }
          std::vector<long long> c2(c);
          bool ok = true;
          for (int j = 1; j < r && ok; ++j) {
            c2[j] -= p.n[i] * x[j];
            if (c2[j] < 0) ok = false;
          }
          if (ok) next[c2] += cnt;
        }
      }
      state.swap(next);
    }
    auto it = state.find(std::vector<long long>(r, 0));
    res.count = it == state.end() ? 0 : it->second;
    return res;
  }
  IntRows cur = base;
  std::set<std::pair<int, std::vector<long long>>> dead;
  auto rowRec = [&](auto&& self, int i) -> bool {
    if (!res.complete) return false;
    if (++nodes > budget) {
      res.complete = false;
      return false;
    }
    if (i == s - 1) {
      // The last row is forced by the remaining column targets.
      long long w = 0;
      for (int j = 1; j < r; ++j) {
        if (col[j] % p.n[i] != 0) return false;
        cur[i][j] = col[j] / p.n[i];
        w += cur[i][j] * d[j];
      }
      if (w != b[i]) return false;
      ++res.count;
      res.solutions.push_back(cur);
      return true;
    }
    if (dead.count({i, col})) return false;
    bool any = false;
    for (const auto& x : options[i]) {
      bool ok = true;
      for (int j = 1; j < r && ok; ++j)
        if (p.n[i] * x[j] > col[j]) ok = false;
      if (!ok) continue;
      for (int j = 1; j < r; ++j) {
        col[j] -= p.n[i] * x[j];
        cur[i][j] = x[j];
      }
      if (self(self, i + 1)) any = true;
      for (int j = 1; j < r; ++j) col[j] += p.n[i] * x[j];
    }
    for (int j = 1; j < r; ++j) cur[i][j] = 0;
    if (!any && res.complete) dead.insert({i, col});
    return any;
  };
  rowRec(rowRec, 1);
  return res;
}

namespace {

struct Extender {
  const InductionProblem& p;
  const InductionOptions& opts;
  int r;
  std::vector<long long> d;
  IntRows residual;  // indices 1..r-1 stored at 0..r-2
  IntRows extra;
  std::set<IntRows> seen;
  FullSolutionsResult& out;
  const IntRows* lower = nullptr;
  bool stop = false;

  void record() {
    IntRows rows = *lower;
    for (const auto& x : extra) {
      std::vector<long long> row(r, 0);
      for (int j = 1; j < r; ++j) row[j] = x[j - 1];
      rows.push_back(row);
    }
    if (!closedUnderDuality(rows, p.ring.duality)) return;
    InductionSolution sol = finalize(rows, d);
    if (!seen.insert(sol.F).second) return;
    out.solutions.push_back(std::move(sol));
    if (opts.limit > 0 && static_cast<long long>(out.solutions.size()) >= opts.limit) stop = true;
  }

  void extend(const std::vector<long long>* prev) {
    if (stop) return;
    const int m = r - 1;
    int j0 = -1;
    for (int j = 0; j < m; ++j)
      if (residual[j][j] > 0) {
        j0 = j;
        break;
      }
    if (j0 < 0) {
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k)
          if (residual[j][k] != 0) return;
      record();
      return;
    }
    for (int j = 0; j < j0; ++j)
      for (int k = 0; k < m; ++k)
        if (residual[j][k] != 0) return;
    std::vector<long long> x(m, 0);
    // Rows are produced in nonincreasing lexicographic order.
    auto rec = [&](auto&& self, int j, bool tight) -> void {
      if (stop) return;
      if (++out.nodes > opts.budget) {
        out.complete = false;
        stop = true;
        return;
      }
      if (j == m) {
        if (x[j0] == 0) return;
        long long w = 0;
        for (int k = 0; k < m; ++k) w += x[k] * d[k + 1];
        if (w <= 0 || p.globalFPdim % w != 0) return;
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b) residual[a][b] -= x[a] * x[b];
        std::vector<long long> chosen = x;
        extra.push_back(x);
        extend(&chosen);
        extra.pop_back();
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b) residual[a][b] += x[a] * x[b];
        return;
      }
      long long hi = isqrtFloor(residual[j][j]);
      for (int k = 0; k < j; ++k)
        if (x[k] > 0) hi = std::min(hi, residual[k][j] / x[k]);
      if (j < j0) hi = 0;
      if (tight && prev) hi = std::min(hi, (*prev)[j]);
      long long lo = j == j0 ? 1 : 0;
      for (long long v = hi; v >= lo; --v) {
        x[j] = v;
        self(self, j + 1, tight && prev && v == (*prev)[j]);
      }
      x[j] = 0;
    };
    rec(rec, 0, prev != nullptr);
  }
};

}  // namespace

FullSolutionsResult fullSolutions(const InductionProblem& p, const InductionOptions& opts) {
  FullSolutionsResult out;
  const int r = p.ring.rank;
  LowerSquareResult lower = lowerSquareSolutions(p, true, opts.budget);
  if (!lower.complete) out.complete = false;
  IntRows g = gramTarget(p.ring);
  Extender ext{p, opts, r, p.dims, {}, {}, {}, out};
  const long long target = p.globalFPdim * p.globalFPdim;
  for (const auto& ls : lower.solutions) {
    if (ext.stop) break;
    long long used = 0;
    for (const auto& row : ls) {
      long long m = rowWeight(row, p.dims);
      used += m * m;
    }
    IntRows res(r - 1, std::vector<long long>(r - 1, 0));
    bool ok = true;
    long long dRd = 0;
    for (int j = 1; j < r && ok; ++j)
      for (int k = 1; k < r; ++k) {
        long long v = g[j][k];
        for (const auto& row : ls) v -= row[j] * row[k];
        if (v < 0) {
          ok = false;
          break;
        }
        res[j - 1][k - 1] = v;
        dRd += p.dims[j] * p.dims[k] * v;
      }
    if (!ok || used + dRd != target) continue;
    ext.residual = res;
    ext.lower = &ls;
    ext.extra.clear();
    ext.extend(nullptr);
  }
  if (ext.stop && out.nodes > opts.budget) out.complete = false;
  std::sort(out.solutions.begin(), out.solutions.end(),
            [](const InductionSolution& a, const InductionSolution& b) {
              if (a.F.size() != b.F.size()) return a.F.size() < b.F.size();
              if (a.centerType != b.centerType) return a.centerType < b.centerType;
              return a.F < b.F;
            });
  return out;
}

bool verifyInductionSolution(const InductionProblem& p, const InductionSolution& sol, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  const int r = p.ring.rank;
  const long long N = p.globalFPdim;
  for (const auto& row : sol.F) {
    if (static_cast<int>(row.size()) != r) return fail("row length");
    for (long long v : row)
      if (v < 0) return fail("negative entry");
  }
  // (2) Gram identity on every column pair.
  for (int j = 0; j < r; ++j)
    for (int k = 0; k < r; ++k) {
      long long lhs = 0;
      for (const auto& row : sol.F) lhs += row[j] * row[k];
      long long rhs = 0;
      for (int t = 0; t < r; ++t)
        for (int u = 0; u < r; ++u) rhs += static_cast<long long>(p.ring(t, j, u)) * p.ring(u, p.ring.dual(t), k);
      if (lhs != rhs) return fail("Gram identity fails at (" + std::to_string(j) + "," + std::to_string(k) + ")");
    }
  // (3), (4)
  long long sq = 0;
  for (const auto& row : sol.F) {
    long long m = 0;
    for (int j = 0; j < r; ++j) m += row[j] * p.dims[j];
    if (m <= 0 || N % m != 0) return fail("center dimension does not divide FPdim");
    sq += m * m;
  }
  if (sq != N * N) return fail("sum of squared center dimensions differs from FPdim^2");
  // (6)-(8): rows with nonzero first entry are the irreducible blocks.
  std::multiset<std::pair<long long, long long>> got, want;
  bool unitRow = false;
  for (const auto& row : sol.F) {
    if (row[0] > 0) {
      long long m = 0;
      for (int j = 0; j < r; ++j) m += row[j] * p.dims[j];
      got.insert({row[0], m});
    }
    bool unit = row[0] == 1;
    for (int j = 1; j < r; ++j)
      if (row[j] != 0) unit = false;
    if (unit) unitRow = true;
  }
  for (int i = 0; i < p.s(); ++i) want.insert({p.n[i], N / p.f[i]});
  if (!unitRow) return fail("no unit row");
  if (got != want) return fail("rows over the unit column do not match the codegree blocks");
  if (!closedUnderDuality(sol.F, p.ring.duality)) return fail("rows not closed under duality");
  return true;
}

bool ringMorphismCompatible(const InductionSolution& sol, const FusionData& ring, const FusionData& center) {
  const int n = sol.rank();
  const int r = ring.rank;
  if (center.rank != n) throw DimensionMismatch("center rank differs from the number of rows");
  FPdims cd = fpdims(center);
  if (!cd.integral) throw DimensionMismatch("center candidate is not integral");
  for (int i = 0; i < n; ++i)
    if (cd.exact[i] != sol.centerType[i]) throw DimensionMismatch("center type differs from the solution");
  const auto& F = sol.F;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < r; ++j)
      if (F[center.dual(i)][j] != F[i][ring.dual(j)]) return false;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int t = 0; t < r; ++t) {
        long long lhs = 0, rhs = 0;
        for (int k = 0; k < n; ++k) lhs += center(i, j, k) * F[k][t];
        for (int l = 0; l < r; ++l)
          if (F[i][l])
            for (int u = 0; u < r; ++u) rhs += F[i][l] * F[j][u] * ring(l, u, t);
        if (lhs != rhs) return false;
      }
  return true;
}

std::string statusName(ObstructionStatus s) {
  switch (s) {
    case ObstructionStatus::Obstructed:
      return "obstructed";
    case ObstructionStatus::Constrained:
      return "constrained";
    case ObstructionStatus::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

ObstructionReport obstructionReport(const FusionData& ring, const InductionOptions& opts) {
  ObstructionReport rep;
  FPdims d = fpdims(ring);
  if (!d.integral) {
    rep.status = ObstructionStatus::Inconclusive;
    rep.reason = "ring is not integral";
    return rep;
  }
  if (!isDrinfeld(codegreeProfile(ring)).drinfeld) {
    rep.status = ObstructionStatus::Obstructed;
    rep.reason = "ring is not Drinfeld";
    return rep;
  }
  InductionProblem p = makeInductionProblem(ring);
  FullSolutionsResult full = fullSolutions(p, opts);
  rep.solutions = std::move(full.solutions);
  if (!rep.solutions.empty()) {
    rep.status = ObstructionStatus::Constrained;
    rep.reason = std::to_string(rep.solutions.size()) + " induction matrices";
    if (!full.complete) rep.reason += " (search incomplete)";
  } else if (full.complete) {
    rep.status = ObstructionStatus::Obstructed;
    rep.reason = "no induction matrix";
  } else {
    rep.status = ObstructionStatus::Inconclusive;
    rep.reason = "budget exhausted";
  }
  return rep;
}

std::string renderInduction(const InductionSolution& sol) {
  std::ostringstream os;
  if (sol.F.empty()) return "[]\n";
  const size_t r = sol.F[0].size();
  for (size_t j = 0; j < r; ++j) {
    for (size_t i = 0; i < sol.F.size(); ++i) os << (i ? " " : "") << sol.F[i][j];
    os << "\n";
  }
  os << "[";
  for (size_t i = 0; i < sol.centerType.size(); ++i) os << (i ? "," : "") << sol.centerType[i];
  os << "]\n";
  return os.str();
}

}  // namespace fusionforge
