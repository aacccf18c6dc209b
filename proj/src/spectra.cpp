#include "fusionforge/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <Eigen/Dense>

#include "fusionforge/io.hpp"

namespace fusionforge {

IntMatrix leftMatrix(const FusionData& f, int i) {
  IntMatrix m(f.rank, std::vector<long long>(f.rank, 0));
  for (int j = 0; j < f.rank; ++j)
    for (int k = 0; k < f.rank; ++k) m[k][j] = f(i, j, k);
  return m;
}

IntMatrix centralMatrix(const FusionData& f) {
  const int r = f.rank;
  IntMatrix z(r, std::vector<long long>(r, 0));
  // (L_i L_{i*})_{k,j} = sum_u N[i][u][k] N[i*][j][u]
  for (int i = 0; i < r; ++i) {
    int is = f.dual(i);
    for (int k = 0; k < r; ++k)
      for (int j = 0; j < r; ++j) {
        long long s = 0;
        for (int u = 0; u < r; ++u) s += static_cast<long long>(f(i, u, k)) * f(is, j, u);
        z[k][j] += s;
      }
  }
  return z;
}

std::vector<BigInt> characteristicPolynomial(const IntMatrix& a) {
  // Berkowitz: p_{k+1} = T_k p_k with the Toeplitz vector [1, -a, -rc, -rAc, ...].
  const int n = static_cast<int>(a.size());
  std::vector<BigInt> p{1};  // highest degree first
  for (int k = 0; k < n; ++k) {
    std::vector<BigInt> t(k + 2);
    t[0] = 1;
    t[1] = -BigInt(a[k][k]);
    std::vector<BigInt> v(k);
    for (int i = 0; i < k; ++i) v[i] = a[i][k];
    for (int m = 0; m < k; ++m) {
      BigInt s = 0;
      for (int i = 0; i < k; ++i) s += BigInt(a[k][i]) * v[i];
      t[m + 2] = -s;
      std::vector<BigInt> w(k, 0);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) w[i] += BigInt(a[i][j]) * v[j];
      v.swap(w);
    }
    std::vector<BigInt> q(k + 2, 0);
    for (int i = 0; i < k + 2; ++i)
      for (int j = 0; j <= std::min(i, k); ++j) q[i] += t[i - j] * p[j];
    p.swap(q);
  }
  std::reverse(p.begin(), p.end());
  return p;
}

namespace {

BigInt evalPoly(const std::vector<BigInt>& p, const BigInt& x) {
  BigInt s = 0;
  for (size_t i = p.size(); i-- > 0;) s = s * x + p[i];
  return s;
}

// Divides p (ascending coefficients) by (x - e); assumes e is a root.
std::vector<BigInt> deflate(const std::vector<BigInt>& p, const BigInt& e) {
  const size_t n = p.size() - 1;
  std::vector<BigInt> q(n);
  BigInt carry = p[n];
  for (size_t i = n; i-- > 0;) {
    q[i] = carry;
    carry = p[i] + carry * e;
  }
  return q;
}

int rankOverQ(std::vector<std::vector<Rational>> m) {
  int rows = static_cast<int>(m.size());
  int cols = rows ? static_cast<int>(m[0].size()) : 0;
  int rk = 0;
  for (int c = 0; c < cols && rk < rows; ++c) {
    int piv = -1;
    for (int r = rk; r < rows; ++r)
      if (m[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[piv], m[rk]);
    for (int r = 0; r < rows; ++r) {
      if (r == rk || m[r][c] == 0) continue;
      Rational factor = m[r][c] / m[rk][c];
      for (int cc = c; cc < cols; ++cc) m[r][cc] -= factor * m[rk][cc];
    }
    ++rk;
  }
  return rk;
}

std::vector<double> symmetricEigenvalues(const IntMatrix& a) {
  const int n = static_cast<int>(a.size());
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = static_cast<double>(a[i][j]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + n);
  return ev;
}

struct Cluster {
  bool rational = false;
  long long value = 0;
  long double approx = 0;
  int mult = 0;
};

// All nonincreasing lists of positive n with sum of squares m.
void squarePartitions(int m, int maxN, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (m == 0) {
    out.push_back(cur);
    return;
  }
  for (int n = std::min(maxN, static_cast<int>(std::sqrt(static_cast<double>(m)) + 1e-9)); n >= 1; --n) {
    if (n * n > m) continue;
    cur.push_back(n);
    squarePartitions(m - n * n, n, cur, out);
    cur.pop_back();
  }
}

std::string renderRational(const Rational& q) {
  std::ostringstream os;
  os << numerator(q);
  if (denominator(q) != 1) os << "/" << denominator(q);
  return os.str();
}

}  // namespace

int centerDimension(const FusionData& f) {
  const int r = f.rank;
  std::vector<std::vector<Rational>> m;
  for (int j = 0; j < r; ++j)
    for (int k = 0; k < r; ++k) {
      std::vector<Rational> row(r);
      bool nonzero = false;
      for (int i = 0; i < r; ++i) {
        row[i] = f(i, j, k) - f(j, i, k);
        if (row[i] != 0) nonzero = true;
      }
      if (nonzero) m.push_back(row);
    }
  if (m.empty()) return r;
  return r - rankOverQ(m);
}

bool CodegreeProfile::allRational() const {
  for (const auto& b : blocks)
    if (!b.rational) return false;
  return true;
}

std::string CodegreeProfile::render() const {
  std::string s = "[";
  for (size_t i = 0; i < blocks.size(); ++i) {
    if (i) s += ", ";
    const auto& b = blocks[i];
    s += b.rational ? renderRational(b.exact) : formatNumber(b.approx);
    if (b.n > 1) s += "_" + std::to_string(b.n);
  }
  return s + "]";
}

Rational CodegreeProfile::egyptianSum() const {
  Rational s = 0;
  for (const auto& b : blocks) {
    if (!b.rational) throw FusionError("egyptianSum needs a rational profile");
    s += Rational(b.n) / b.exact;
  }
  return s;
}

std::string normalizeCodegreeString(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

CodegreeProfile codegreeProfile(const FusionData& f) {
  requireValid(f);
  const int r = f.rank;
  FPdims dims = fpdims(f);
  IntMatrix lz = centralMatrix(f);
  std::vector<BigInt> poly = characteristicPolynomial(lz);
  std::vector<double> ev = symmetricEigenvalues(lz);
  std::sort(ev.begin(), ev.end());

  // Integer roots verified exactly, with multiplicities by repeated deflation.
  std::vector<Cluster> clusters;
  std::vector<char> used(ev.size(), 0);
  std::set<long long> tried;
  int covered = 0;
  for (double x : ev) {
    long long cand = std::llround(x);
    if (std::fabs(x - static_cast<double>(cand)) > 1e-6 * std::max(1.0, std::fabs(x))) continue;
    if (!tried.insert(cand).second) continue;
    int mult = 0;
    while (poly.size() > 1 && evalPoly(poly, BigInt(cand)) == 0) {
      poly = deflate(poly, BigInt(cand));
      ++mult;
    }
    if (mult > 0) {
      clusters.push_back({true, cand, static_cast<long double>(cand), mult});
      covered += mult;
      // Mark numeric eigenvalues explained by this root.
      int marked = 0;
      for (size_t i = 0; i < ev.size() && marked < mult; ++i)
        if (!used[i] && std::fabs(ev[i] - static_cast<double>(cand)) < 1e-4 * std::max(1.0, std::fabs(ev[i]))) {
          used[i] = 1;
          ++marked;
        }
    }
  }
  // Remaining (irrational) eigenvalues grouped numerically.
  for (size_t i = 0; i < ev.size(); ++i) {
    if (used[i]) continue;
    Cluster c;
    c.approx = ev[i];
    c.mult = 0;
    for (size_t j = i; j < ev.size(); ++j)
      if (!used[j] && std::fabs(ev[j] - ev[i]) < 1e-7 * std::max(1.0, std::fabs(ev[i]))) {
        used[j] = 1;
        ++c.mult;
      }
    clusters.push_back(c);
    covered += c.mult;
  }
  if (covered != r) throw NonConvergence("eigenvalue clustering of L_Z failed");

  const bool commutative = isCommutative(f);
  const int s = commutative ? r : centerDimension(f);
  const long double global = dims.integral ? static_cast<long double>(dims.globalExact) : dims.globalApprox;

  std::vector<std::vector<std::vector<int>>> options(clusters.size());
  for (size_t c = 0; c < clusters.size(); ++c) {
    if (commutative) {
      options[c].push_back(std::vector<int>(clusters[c].mult, 1));
    } else {
      std::vector<int> cur;
      squarePartitions(clusters[c].mult, clusters[c].mult, cur, options[c]);
    }
  }

  std::vector<std::vector<CodegreeBlock>> found;
  std::vector<CodegreeBlock> cur;
  std::function<void(size_t)> rec = [&](size_t c) {
    if (c == clusters.size()) {
      if (static_cast<int>(cur.size()) != s) return;
      int top = 0;
      bool exact = true;
      Rational sum = 0;
      long double approx = 0;
      for (const auto& b : cur) {
        approx += b.n / b.approx;
        if (b.rational)
          sum += Rational(b.n) / b.exact;
        else
          exact = false;
        bool isTop = b.n == 1 && (dims.integral && b.rational ? b.exact == Rational(dims.globalExact)
                                                               : std::fabs(b.approx - global) < 1e-7L * global);
        if (isTop) ++top;
      }
      if (top < 1) return;
      if (exact ? sum != 1 : std::fabs(approx - 1) > 1e-9L) return;
      found.push_back(cur);
      return;
    }
    for (const auto& opt : options[c]) {
      size_t before = cur.size();
      for (int n : opt) {
        CodegreeBlock b;
        b.n = n;
        b.rational = clusters[c].rational;
        if (b.rational) b.exact = Rational(clusters[c].value, n);
        b.approx = clusters[c].approx / n;
        cur.push_back(b);
      }
      rec(c + 1);
      cur.resize(before);
    }
  };
  rec(0);
  if (found.empty()) throw AmbiguousDecomposition("no consistent block decomposition of L_Z");
  if (found.size() > 1) throw AmbiguousDecomposition("several consistent block decompositions of L_Z");

  CodegreeProfile prof;
  prof.blocks = found[0];
  std::sort(prof.blocks.begin(), prof.blocks.end(), [](const CodegreeBlock& a, const CodegreeBlock& b) {
    if (a.rational && b.rational && a.exact != b.exact) return a.exact < b.exact;
    if (std::fabs(a.approx - b.approx) > 1e-9L * std::max<long double>(1, a.approx)) return a.approx < b.approx;
    return a.n < b.n;
  });
  prof.rank = r;
  prof.integral = dims.integral;
  prof.globalApprox = global;
  prof.globalExact = dims.integral ? dims.globalExact : 0;
  return prof;
}

DrinfeldVerdict isDrinfeld(const CodegreeProfile& p) {
  if (!p.integral) return {false, "ring is not integral"};
  for (const auto& b : p.blocks) {
    if (!b.rational || denominator(b.exact) != 1)
      return {false, "formal codegree " + (b.rational ? renderRational(b.exact) : formatNumber(b.approx)) +
                         " is not an integer"};
    BigInt v = numerator(b.exact);
    if (BigInt(p.globalExact) % v != 0)
      return {false, "formal codegree " + renderRational(b.exact) + " does not divide " +
                         std::to_string(p.globalExact)};
  }
  return {true, "all formal codegrees are integers dividing the global FPdim"};
}

bool isSFrobenius(const FusionData& f, int s) {
  FPdims d = fpdims(f);
  if (!d.integral) throw NonIntegralInput("isSFrobenius requires an integral ring");
  BigInt g = boost::multiprecision::pow(BigInt(d.globalExact), static_cast<unsigned>(s));
  for (long long x : d.exact)
    if (g % x != 0) return false;
  return true;
}

bool traceBound(const CodegreeProfile& p) {
  if (!p.allRational()) throw FusionError("traceBound needs a rational profile");
  Rational lhs = 0;
  Rational f1 = 0;
  for (const auto& b : p.blocks) {
    lhs += 1 / (b.exact * b.exact);
    if (b.n == 1 && b.exact > f1) f1 = b.exact;
  }
  return lhs <= (1 + 1 / f1) / 2;
}

CharacterTable characterTable(const FusionData& f) {
  if (!isCommutative(f)) throw NotCommutative("character table requires a commutative ring");
  const int r = f.rank;
  FPdims dims = fpdims(f);
  std::vector<Eigen::MatrixXd> l(r, Eigen::MatrixXd::Zero(r, r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k) l[i](k, j) = f(i, j, k);
  using CMat = Eigen::MatrixXcd;
  CMat v;
  for (int attempt = 0; attempt < 8; ++attempt) {
    CMat h = CMat::Zero(r, r);
    for (int i = 0; i < r; ++i) {
      double a = std::sqrt(2.0 + i + 7.0 * attempt) / (1.0 + i);
      double b = std::sqrt(3.0 + 2.0 * i + 5.0 * attempt) / (2.0 + i);
      Eigen::MatrixXd sym = l[i] + l[i].transpose();
      Eigen::MatrixXd anti = l[i] - l[i].transpose();
      h += a * sym.cast<std::complex<double>>() + std::complex<double>(0, b) * anti.cast<std::complex<double>>();
    }
    Eigen::SelfAdjointEigenSolver<CMat> es(h);
    const auto& ev = es.eigenvalues();
    double gap = 1e300, scale = 1.0;
    for (int i = 0; i < r; ++i) scale = std::max(scale, std::fabs(ev(i)));
    for (int i = 1; i < r; ++i) gap = std::min(gap, ev(i) - ev(i - 1));
    if (r == 1 || gap > 1e-7 * scale) {
      v = es.eigenvectors();
      break;
    }
  }
  if (v.size() == 0) throw PrecisionExhausted("could not separate the characters");
  CharacterTable t;
  std::vector<std::vector<std::complex<double>>> cols(r, std::vector<std::complex<double>>(r));
  std::vector<double> c(r);
  for (int j = 0; j < r; ++j) {
    Eigen::VectorXcd x = v.col(j);
    std::complex<double> nn = x.dot(x);
    for (int i = 0; i < r; ++i) cols[j][i] = x.dot(l[i].cast<std::complex<double>>() * x) / nn;
    double s = 0;
    for (int i = 0; i < r; ++i) s += (cols[j][i] * cols[j][f.dual(i)]).real();
    c[j] = s;
  }
  std::vector<int> order(r);
  for (int j = 0; j < r; ++j) order[j] = j;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return c[a] > c[b] + 1e-9 * std::max(1.0, c[a]); });
  t.lambda.assign(r, std::vector<std::complex<double>>(r));
  for (int j = 0; j < r; ++j) {
    for (int i = 0; i < r; ++i) t.lambda[i][j] = cols[order[j]][i];
    t.codegrees.push_back(c[order[j]]);
  }
  (void)dims;
  return t;
}

namespace {

bool nearInteger(long double x, long double tol, long long& out) {
  long double rr = std::round(x);
  if (std::fabs(x - rr) > tol) return false;
  out = static_cast<long long>(rr);
  return true;
}

}  // namespace

IsaacsVerdict isIsaacs(const FusionData& f) {
  CharacterTable t = characterTable(f);
  FPdims dims = fpdims(f);
  if (!dims.integral) throw NonIntegralInput("isIsaacs is implemented for integral rings");
  const int r = f.rank;
  IntMatrix lz = centralMatrix(f);
  std::vector<BigInt> pz = characteristicPolynomial(lz);
  std::vector<bool> cRational(r, false);
  std::vector<long long> cExact(r, 0);
  for (int j = 0; j < r; ++j) {
    long long v;
    if (nearInteger(t.codegrees[j], 1e-6L, v) && evalPoly(pz, BigInt(v)) == 0) {
      cRational[j] = true;
      cExact[j] = v;
    }
  }
  const double c1 = t.codegrees[0];
  IsaacsVerdict out;
  for (int i = 0; i < r; ++i) {
    std::vector<BigInt> pl = characteristicPolynomial(leftMatrix(f, i));
    // Split ratios into exact rational ones and the rest.
    std::vector<std::complex<long double>> irr;
    bool rowOk = true;
    int badJ = -1;
    Rational badQ;
    for (int j = 0; j < r; ++j) {
      std::complex<long double> lam(t.lambda[i][j].real(), t.lambda[i][j].imag());
      long long li;
      if (cRational[j] && std::fabs(lam.imag()) < 1e-7L && nearInteger(lam.real(), 1e-7L, li) &&
          evalPoly(pl, BigInt(li)) == 0) {
        Rational q(BigInt(li) * BigInt(cExact[0]), BigInt(dims.exact[i]) * BigInt(cExact[j]));
        if (denominator(q) != 1 && rowOk) {
          rowOk = false;
          badJ = j;
          badQ = q;
        }
      } else {
        irr.push_back(lam * static_cast<long double>(c1) /
                      (static_cast<long double>(dims.exact[i]) * static_cast<long double>(t.codegrees[j])));
      }
    }
    if (rowOk && !irr.empty()) {
      // Product polynomial over the remaining roots must have integer coefficients.
      std::vector<std::complex<long double>> poly{1};
      for (const auto& root : irr) {
        std::vector<std::complex<long double>> next(poly.size() + 1, 0);
        for (size_t k = 0; k < poly.size(); ++k) {
          next[k + 1] += poly[k];
          next[k] -= poly[k] * root;
        }
        poly.swap(next);
      }
      for (size_t k = 0; k < poly.size(); ++k) {
        long double re = poly[k].real();
        long double tol = 1e-6L * std::max<long double>(1, std::fabs(re) * 1e-6L);
        long long dummy;
        if (std::fabs(poly[k].imag()) > tol || !nearInteger(re, tol, dummy)) {
          rowOk = false;
          break;
        }
      }
      if (!rowOk) {
        badJ = -1;
        // Report the ratio farthest from the algebraic-integer lattice heuristically: first root.
        for (int j = 0; j < r; ++j) {
          std::complex<long double> lam(t.lambda[i][j].real(), t.lambda[i][j].imag());
          long long li;
          if (!nearInteger(lam.real(), 1e-7L, li) || std::fabs(lam.imag()) > 1e-7L) {
            badJ = j;
            break;
          }
        }
      }
    }
    if (!rowOk) {
      out.isaacs = false;
      out.row = i;
      out.column = badJ;
      if (badJ >= 0 && denominator(badQ) != 1 && badQ != 0) {
        out.witnessRational = true;
        out.witness = badQ;
        out.witnessApprox = static_cast<double>(badQ);
      } else if (badJ >= 0) {
        out.witnessApprox = (t.lambda[i][badJ] * c1 / (static_cast<double>(dims.exact[i]) * t.codegrees[badJ])).real();
      }
      return out;
    }
  }
  return out;
}

PositivityVerdict nPositivity(const FusionData& f, int n, int cap) {
  if (n < 1) throw FusionError("n must be positive");
  if (n > cap) throw CapExceeded("n-positivity order exceeds the configured cap");
  FPdims dims = fpdims(f);
  const int r = f.rank;
  std::vector<double> d(dims.values.begin(), dims.values.end());
  PositivityVerdict out;
  std::vector<double> eig;
  if (isCommutative(f)) {
    CharacterTable t = characterTable(f);
    std::vector<int> idx(n, 0);
    while (true) {
      std::complex<double> s = 0;
      for (int i = 0; i < r; ++i) {
        std::complex<double> p = std::pow(d[i], 2.0 - n);
        for (int m = 0; m < n; ++m) p *= t.lambda[i][idx[m]];
        s += p;
      }
      eig.push_back(s.real());
      int m = 0;
      while (m < n && ++idx[m] == r) idx[m++] = 0;
      if (m == n) break;
    }
  } else {
    int size = 1;
    for (int m = 0; m < n; ++m) size *= r;
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(size, size);
    for (int i = 0; i < r; ++i) {
      Eigen::MatrixXd li(r, r);
      for (int j = 0; j < r; ++j)
        for (int k = 0; k < r; ++k) li(k, j) = f(i, j, k);
      Eigen::MatrixXd p = li;
      for (int m = 1; m < n; ++m) {
        Eigen::MatrixXd q(p.rows() * r, p.cols() * r);
        for (int a = 0; a < p.rows(); ++a)
          for (int b = 0; b < p.cols(); ++b) q.block(a * r, b * r, r, r) = p(a, b) * li;
        p.swap(q);
      }
      s += std::pow(d[i], 2.0 - n) * p;
    }
    Eigen::MatrixXd h = 0.5 * (s + s.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
    for (int i = 0; i < size; ++i) eig.push_back(es.eigenvalues()(i));
  }
  double lo = *std::min_element(eig.begin(), eig.end());
  double norm = 0;
  for (double x : eig) norm = std::max(norm, std::fabs(x));
  out.minEigenvalue = lo;
  out.norm = norm;
  out.positive = lo >= -1e-9 * std::max(1.0, norm);
  return out;
}

std::vector<long long> primeFactors(long long n) {
  std::vector<long long> p;
  for (long long q = 2; q * q <= n; ++q)
    if (n % q == 0) {
      p.push_back(q);
      while (n % q == 0) n /= q;
    }
  if (n > 1) p.push_back(n);
  return p;
}

bool primeSupportCheck(const CodegreeProfile& p) {
  if (!p.integral || !p.allRational()) throw FusionError("primeSupportCheck needs an integral rational profile");
  std::set<long long> lhs, rhs;
  for (long long q : primeFactors(p.globalExact)) lhs.insert(q);
  for (const auto& b : p.blocks) {
    Rational e = b.exact * b.n;
    if (denominator(e) != 1) return false;
    long long v = static_cast<long long>(numerator(e));
    for (long long q : primeFactors(v)) rhs.insert(q);
  }
  return lhs == rhs;
}

bool oddConsistency(const CodegreeProfile& p) {
  if (p.rank % 2 == 0) return false;
  for (const auto& b : p.blocks)
    if (b.n % 2 == 0) return false;
  return true;
}

bool strongLagrangeTypeCheck(const TypeVector& type) {
  auto g = type.grouped();
  if (g.empty() || g[0].first != 1) throw FusionError("type must start with 1");
  long long n1 = g[0].second;
  for (const auto& [d, n] : g)
    if ((static_cast<long long>(n) * d * d) % n1 != 0) return false;
  return true;
}

}  // namespace fusionforge
