#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fusionforge/catalog.hpp"
#include "fusionforge/core.hpp"
#include "fusionforge/enumerate.hpp"
#include "fusionforge/grouptheory.hpp"
#include "fusionforge/induction.hpp"
#include "fusionforge/io.hpp"
#include "fusionforge/spectra.hpp"

using namespace fusionforge;

namespace {

const std::string kData = FUSIONFORGE_TEST_DATA;

std::vector<FusionData> fixture(const std::string& name) {
  std::vector<FusionData> out;
  for (const auto& r : loadRecords(kData + "/" + name)) out.push_back(r.ring);
  return out;
}

std::vector<RingRecord> allFixtureRecords() {
  std::vector<RingRecord> out;
  for (const char* name : {"drinfeld_rank_le5.jsonl", "drinfeld_rank6_1frob.jsonl",
                           "drinfeld_rank6_non1frob.jsonl", "drinfeld_rank7.jsonl", "exotic.jsonl",
                           "mnsd.jsonl", "nc_rank6.jsonl", "nc_rank7.jsonl", "nc_rank8.jsonl"}) {
    auto recs = loadRecords(kData + "/" + name);
    out.insert(out.end(), recs.begin(), recs.end());
  }
  return out;
}

std::vector<FusionData> findRings(const std::vector<long long>& type, const std::vector<int>& duality) {
  std::vector<FusionData> out;
  for (const auto& r : allFixtureRecords()) {
    auto fp = fpdims(r.ring);
    if (fp.integral && fp.exact == type && r.ring.duality == duality) out.push_back(r.ring);
  }
  return out;
}

// Independent axiom checker, written directly from the definition.
bool oracleValid(const FusionData& f) {
  int r = f.rank;
  auto N = [&](int i, int j, int k) { return f.tensor[(i * r + j) * r + k]; };
  auto d = [&](int i) { return f.duality[i]; };
  for (int i = 0; i < r; ++i)
    if (d(d(i)) != i) return false;
  if (d(0) != 0) return false;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k) {
        if (N(i, j, k) < 0) return false;
        if (N(0, j, k) != (j == k) || N(i, 0, k) != (i == k)) return false;
        if (k == 0 && N(i, j, 0) != (j == d(i))) return false;
        if (N(i, j, k) != N(d(j), d(i), d(k))) return false;
        if (N(i, j, k) != N(d(i), k, j)) return false;
      }
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k)
        for (int t = 0; t < r; ++t) {
          long long a = 0, b = 0;
          for (int s = 0; s < r; ++s) {
            a += static_cast<long long>(N(i, j, s)) * N(s, k, t);
            b += static_cast<long long>(N(j, k, s)) * N(i, s, t);
          }
          if (a != b) return false;
        }
  return true;
}

// Orbit of a structure-constant position under the standard symmetries.
std::set<std::array<int, 3>> orbit(const FusionData& f, std::array<int, 3> p) {
  std::set<std::array<int, 3>> seen{p};
  std::vector<std::array<int, 3>> todo{p};
  while (!todo.empty()) {
    auto [i, j, k] = todo.back();
    todo.pop_back();
    for (std::array<int, 3> q : {std::array<int, 3>{f.dual(i), k, j},
                                 std::array<int, 3>{f.dual(j), f.dual(i), f.dual(k)},
                                 std::array<int, 3>{j, f.dual(k), f.dual(i)}})
      if (seen.insert(q).second) todo.push_back(q);
  }
  return seen;
}

int failures = 0;

void report(int id, const std::string& what, bool ok, const std::string& detail,
            std::chrono::steady_clock::time_point t0) {
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << (ok ? "PASS" : "FAIL") << " " << id << " " << what << ": " << detail << " ("
            << secs << " s)" << std::endl;
  if (!ok) ++failures;
}

template <class F>
void criterion(int id, const std::string& what, F body) {
  auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail += std::string(" exception: ") + e.what();
  }
  report(id, what, ok, detail, t0);
}

std::string join(const std::vector<long long>& v) { return renderList(v); }

}  // namespace

int main() {
  criterion(1, "Egyptian fraction counts", [](std::string& d) {
    std::vector<long long> plain, div;
    EgyptianOptions o;
    o.divisibility = true;
    for (int L = 1; L <= 5; ++L) {
      plain.push_back(static_cast<long long>(egyptianFractions(L).size()));
      div.push_back(static_cast<long long>(egyptianFractions(L, o).size()));
    }
    d = "unrestricted " + join(plain) + ", divisibility " + join(div);
    return plain == std::vector<long long>{1, 1, 3, 14, 147} &&
           div == std::vector<long long>{1, 1, 3, 12, 97};
  });

  criterion(2, "length-6 divisibility fractions", [](std::string& d) {
    EgyptianOptions o;
    o.divisibility = true;
    auto sols = egyptianFractions(6, o);
    std::set<long long> maxima;
    for (const auto& s : sols) maxima.insert(s.globalCandidate());
    d = std::to_string(sols.size()) + " fractions, " + std::to_string(maxima.size()) +
        " maxima, largest " + std::to_string(*maxima.rbegin());
    return sols.size() == 1568 && maxima.size() == 492 && *maxima.rbegin() == 3263442;
  });

  criterion(3, "rank <= 5 classification", [](std::string& d) {
    long long types = 0, admitting = 0, rings = 0, drinfeld = 0;
    std::vector<FusionData> found;
    bool complete = true;
    for (int r = 1; r <= 5; ++r) {
      ClassifyOptions o;
      o.rank = r;
      o.drinfeldOnly = true;
      o.jobs = 4;
      auto rep = classifyPipeline(o);
      types += rep.typeCount;
      admitting += rep.admittingTypes;
      rings += rep.ringCount;
      drinfeld += rep.drinfeldCount;
      complete = complete && rep.complete;
      found.insert(found.end(), rep.rings.begin(), rep.rings.end());
    }
    auto diff = fixtureDiff(found, fixture("drinfeld_rank_le5.jsonl"));
    d = std::to_string(types) + " types, " + std::to_string(admitting) + " admitting, " +
        std::to_string(rings) + " rings, " + std::to_string(drinfeld) + " Drinfeld, fixture diff " +
        std::to_string(diff.missing.size()) + "/" + std::to_string(diff.extra.size());
    return complete && types == 219 && admitting == 27 && rings == 36 && drinfeld == 29 &&
           diff.empty();
  });

  criterion(4, "rank-6 noncommutative", [](std::string& d) {
    EgyptianOptions eo;
    eo.divisibility = true;
    eo.ncPattern = {2};
    auto fr = egyptianFractions(4, eo);
    ClassifyOptions o;
    o.rank = 6;
    o.noncommutativeOnly = true;
    o.drinfeldOnly = true;
    auto rep = classifyPipeline(o);
    bool zs3 = rep.rings.size() == 1 && isomorphic(rep.rings[0], makeRnFamily(0)) &&
               fixtureDiff(rep.rings, fixture("nc_rank6.jsonl")).empty();
    d = std::to_string(fr.size()) + " NC fractions, " + std::to_string(rep.rings.size()) +
        " Drinfeld rings" + (zs3 ? ", ZS3" : "");
    return rep.complete && fr.size() == 4 && zs3;
  });

  criterion(5, "rank-7 noncommutative", [](std::string& d) {
    ClassifyOptions o;
    o.rank = 7;
    o.noncommutativeOnly = true;
    o.drinfeldOnly = true;
    o.jobs = 4;
    auto rep = classifyPipeline(o);
    std::multiset<std::string> got;
    for (const auto& f : rep.rings) got.insert(codegreeProfile(f).render());
    std::multiset<std::string> want{normalizeCodegreeString("[3_2, 4, 24, 24]"),
                                    normalizeCodegreeString("[3_2, 6, 7, 42]"),
                                    normalizeCodegreeString("[3_2, 4, 15, 60]")};
    std::multiset<std::string> gotNorm;
    for (const auto& s : got) gotNorm.insert(normalizeCodegreeString(s));
    bool diff = fixtureDiff(rep.rings, fixture("nc_rank7.jsonl")).empty();
    d = std::to_string(rep.rings.size()) + " rings:";
    for (const auto& s : got) d += " " + s;
    return rep.complete && gotNorm == want && diff;
  });

  criterion(6, "induction matrices", [](std::string& d) {
    bool ok = true;
    auto r1126 = findRings({1, 1, 2, 6}, {0, 1, 2, 3});
    auto full = fullSolutions(makeInductionProblem(r1126.at(0)));
    std::vector<long long> center{1, 1, 2, 6, 6, 6, 6, 6, 6, 6, 6, 14, 14, 14, 21, 21};
    bool c1 = full.complete && full.solutions.size() == 1 && full.solutions[0].centerType == center;
    d = "[1,1,2,6]: " + std::to_string(full.solutions.size()) + " solution(s)";
    ok = ok && c1;
    struct Case {
      std::vector<long long> type;
      std::vector<int> duality;
    };
    std::vector<Case> obstructedCases{{{1, 1, 4, 4, 6}, {0, 1, 3, 2, 4}},
                            {{1, 1, 1, 6, 9}, {0, 2, 1, 3, 4}},
                            {{1, 1, 5, 7, 8}, {0, 1, 2, 3, 4}},
                            {{1, 1, 2, 3, 15}, {0, 1, 2, 3, 4}},
                            {{1, 1, 2, 9, 15}, {0, 1, 2, 3, 4}},
                            {{1, 1, 2, 8, 8, 10}, {0, 1, 2, 4, 3, 5}},
                            {{1, 1, 2, 8, 8, 14}, {0, 1, 2, 4, 3, 5}},
                            {{1, 1, 1, 10, 11, 14}, {0, 2, 1, 3, 4, 5}},
                            {{1, 1, 8, 10, 10, 14}, {0, 1, 2, 4, 3, 5}},
                            {{1, 1, 1, 1, 1, 1, 3, 3}, {0, 1, 2, 3, 5, 4, 7, 6}},
                            {{1, 1, 1, 1, 1, 1, 6, 6}, {0, 1, 2, 3, 5, 4, 6, 7}}};
    int obstructed = 0, ringsSeen = 0;
    for (const auto& c : obstructedCases) {
      for (const auto& f : findRings(c.type, c.duality)) {
        ++ringsSeen;
        auto res = fullSolutions(makeInductionProblem(f));
        if (res.complete && res.solutions.empty()) ++obstructed;
      }
    }
    d += ", obstructed " + std::to_string(obstructed) + "/" + std::to_string(ringsSeen);
    ok = ok && ringsSeen >= static_cast<int>(obstructedCases.size()) && obstructed == ringsSeen;
    auto pair = findRings({1, 1, 1, 1, 1, 1, 3, 3}, {0, 1, 2, 3, 5, 4, 6, 7});
    long long m1 = -1, m2 = -1;
    for (const auto& f : pair) {
      InductionOptions io;
      io.limit = 1;
      auto res = fullSolutions(makeInductionProblem(f), io);
      if (multiplicity(f) == 1 && res.complete) m1 = static_cast<long long>(res.solutions.size());
      if (multiplicity(f) == 2) m2 = static_cast<long long>(res.solutions.size());
    }
    d += ", multiplicity one " + std::to_string(m1) + ", multiplicity two " + std::to_string(m2);
    return ok && pair.size() == 2 && m1 == 0 && m2 >= 1;
  });

  criterion(7, "codegree regressions", [](std::string& d) {
    int checked = 0, bad = 0;
    for (const auto& r : allFixtureRecords()) {
      auto it = r.extra.find("codegrees");
      if (it == r.extra.end()) continue;
      ++checked;
      if (normalizeCodegreeString(codegreeProfile(r.ring).render()) !=
          normalizeCodegreeString(it->second)) {
        ++bad;
        d += " mismatch " + renderList(r.ring.duality) + " " + it->second + ";";
      }
    }
    d = std::to_string(checked) + " rings checked, " + std::to_string(bad) + " mismatches" + d;
    return checked > 0 && bad == 0;
  });

  criterion(8, "group-theoretical data", [](std::string& d) {
    auto a5 = enumerateGroup("A(5)");
    auto a4 = subgroupFromSpec(a5, "A(4)");
    auto gt = groupTheoretical(a5, a4);
    bool t1 = gt.type == std::vector<long long>{1, 1, 1, 3, 4, 4, 4} &&
              gt.duality == std::vector<int>{0, 2, 1, 3, 4, 5, 6};
    auto m60 = findGroupSubgroup({1, 1, 2, 3, 3, 6}, loadCatalog(kData + "/groups60.txt"));
    bool t2 = m60.skipped.empty() && m60.matches.size() == 1 && m60.matches[0].group == "A5" &&
              m60.matches[0].subgroup == "S3";
    auto m903 = findGroupSubgroup({1, 1, 1, 3, 3, 21, 21}, loadCatalog(kData + "/groups903.txt"));
    bool t3 = m903.skipped.empty() && m903.matches.empty();
    d = "(A5,A4) type " + renderList(gt.type) + " duality " + renderList(gt.duality) +
        ", order 60 matches " + std::to_string(m60.matches.size()) +
        (m60.matches.empty() ? "" : " (" + m60.matches[0].group + "," + m60.matches[0].subgroup + ")") +
        ", order 903 matches " + std::to_string(m903.matches.size());
    return t1 && t2 && t3;
  });

  criterion(9, "Isaacs witness", [](std::string& d) {
    auto rings = findRings({1, 1, 2, 3, 3, 6}, {0, 1, 2, 3, 4, 5});
    auto v = isIsaacs(rings.at(0));
    d = "witness ";
    d += v.witnessRational ? v.witness.str() : std::to_string(v.witnessApprox);
    return rings.size() == 1 && !v.isaacs && v.witnessRational && v.witness == Rational(-8, 3);
  });

  criterion(10, "MNSD rank 7", [](std::string& d) {
    EgyptianOptions eo;
    eo.divisibility = true;
    eo.mnsd = true;
    auto fr = egyptianFractions(7, eo);
    std::set<long long> dims;
    for (const auto& s : fr) dims.insert(s.globalCandidate());
    ClassifyOptions o;
    o.rank = 7;
    o.mnsd = true;
    o.drinfeldOnly = true;
    auto rep = classifyPipeline(o);
    std::vector<FusionData> fx;
    for (const auto& f : fixture("mnsd.jsonl"))
      if (f.rank == 7) fx.push_back(f);
    // The transcription omits the pointed ring Rep(C7); it must be the only extra ring.
    auto diff = fixtureDiff(rep.rings, fx);
    bool extraPointed = diff.extra.size() == 1 && summarize(diff.extra[0]).pointed;
    std::set<long long> wantDims{7, 15, 27, 35, 39, 55, 63, 147, 171, 315, 903};
    d = std::to_string(fr.size()) + " fractions, " + std::to_string(dims.size()) + " FPdims, " +
        std::to_string(rep.drinfeldCount) + " Drinfeld rings, fixture missing " +
        std::to_string(diff.missing.size());
    return rep.complete && fr.size() == 13 && dims == wantDims && rep.drinfeldCount == 4 &&
           diff.missing.empty() && extraPointed;
  });

  criterion(11, "property checks", [](std::string& d) {
    // Axiom fuzz: single-entry and symmetric-orbit perturbations, judged by the oracle.
    std::mt19937 rng(20240601);
    int attempts = 0, rejected = 0, disagreements = 0;
    for (const auto& r : allFixtureRecords()) {
      const FusionData& base = r.ring;
      if (base.rank > 7) continue;
      int n = base.rank;
      std::uniform_int_distribution<int> idx(0, n - 1);
      for (int trial = 0; trial < 12; ++trial) {
        FusionData f = base;
        int i = idx(rng), j = idx(rng), k = idx(rng);
        int delta = (rng() & 1) ? 1 : -1;
        if (trial % 2 == 0) {
          f.at(i, j, k) += delta;
        } else {
          if (i == 0 || j == 0 || k == 0) i = j = k = n - 1;
          for (auto [a, b, c] : orbit(f, {i, j, k})) f.at(a, b, c) = base(a, b, c) + delta;
        }
        if (trial == 11 && n > 2) std::swap(f.duality[1], f.duality[2]);
        ++attempts;
        bool oracle = oracleValid(f);
        bool lib = !validate(f).has_value();
        if (!lib) ++rejected;
        if (oracle != lib) ++disagreements;
      }
    }
    // Egyptian identity over every rational profile.
    int profiles = 0, sumFailures = 0;
    for (const auto& r : allFixtureRecords()) {
      auto p = codegreeProfile(r.ring);
      if (!p.allRational()) continue;
      ++profiles;
      if (p.egyptianSum() != Rational(1)) ++sumFailures;
    }
    // Determinism under worker counts.
    bool deterministic = true;
    for (auto [rank, nc] : std::vector<std::pair<int, bool>>{{5, false}, {6, true}, {7, true}}) {
      std::vector<ClassifyReport> reps;
      for (int jobs : {1, 3, 8}) {
        ClassifyOptions o;
        o.rank = rank;
        o.noncommutativeOnly = nc;
        o.drinfeldOnly = true;
        o.jobs = jobs;
        reps.push_back(classifyPipeline(o));
      }
      for (const auto& rep : reps)
        deterministic = deterministic && rep.rings == reps[0].rings &&
                        rep.ringCount == reps[0].ringCount && rep.typeCount == reps[0].typeCount;
    }
    d = std::to_string(attempts) + " perturbations, " + std::to_string(rejected) + " rejected, " +
        std::to_string(disagreements) + " disagreements; " + std::to_string(profiles) +
        " profiles, " + std::to_string(sumFailures) + " sum failures; deterministic " +
        (deterministic ? "yes" : "no");
    return disagreements == 0 && rejected > 0 && sumFailures == 0 && profiles > 0 && deterministic;
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
