#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "fusionforge/catalog.hpp"
#include "fusionforge/core.hpp"
#include "fusionforge/enumerate.hpp"
#include "fusionforge/grouptheory.hpp"
#include "fusionforge/induction.hpp"
#include "fusionforge/io.hpp"
#include "fusionforge/spectra.hpp"

using namespace fusionforge;

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;
constexpr int kIncomplete = 3;

std::vector<int> toInts(const std::vector<long long>& v) { return {v.begin(), v.end()}; }

std::string timestamp() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

std::string yesNo(bool b) { return b ? "yes" : "no"; }

long long resolveBudget(long long flag) { return flag > 0 ? flag : budgetFromEnvironment(); }

int runEgyptian(int length, bool divisibility, bool mnsd, const std::string& nc, long long maxDen,
                bool countOnly) {
  EgyptianOptions opts;
  opts.divisibility = divisibility;
  opts.mnsd = mnsd;
  opts.maxDenominator = maxDen;
  if (!nc.empty()) opts.ncPattern = toInts(parseIntList(nc));
  auto sols = egyptianFractions(length, opts);
  std::set<long long> maxima;
  for (const auto& s : sols) maxima.insert(s.maxDenominator());
  if (!countOnly)
    for (const auto& s : sols) std::cout << s.render() << "\n";
  std::cout << "# solutions " << sols.size() << ", distinct maxima " << maxima.size();
  if (!maxima.empty()) std::cout << ", largest " << *maxima.rbegin();
  std::cout << "\n";
  return kOk;
}

int runTypes(long long fpdim, int rank, bool oneFrobenius, bool mnsd) {
  auto types = typesForFPdim(fpdim, rank, {oneFrobenius, mnsd});
  for (const auto& t : types) std::cout << renderList(t.dims) << "\n";
  std::cout << "# types " << types.size() << "\n";
  return kOk;
}

int runSearch(const std::string& typeStr, const std::string& dualStr, long long budget, bool json) {
  TypeVector type{parseIntList(typeStr)};
  if (!type.valid()) throw ParseError("invalid type " + typeStr, 1, 1);
  std::vector<std::vector<int>> duals;
  if (dualStr.empty())
    duals = dualityCandidates(type);
  else
    duals.push_back(toInts(parseIntList(dualStr)));
  bool complete = true;
  long long total = 0;
  for (const auto& d : duals) {
    SearchResult r = fusionDataSearch(type, d, {budget});
    complete = complete && r.complete;
    for (const auto& f : r.rings) {
      std::cout << (json ? renderJson(f) : renderText(f)) << "\n";
      ++total;
    }
    std::cerr << "duality " << renderList(d) << ": " << r.rings.size() << " rings, " << r.nodes
              << " nodes" << (r.complete ? "" : " (budget exhausted)") << "\n";
  }
  std::cerr << "total " << total << " rings\n";
  return complete ? kOk : kIncomplete;
}

void analyzeRing(const RingRecord& rec, bool& mismatch) {
  const FusionData& f = rec.ring;
  std::cout << "ring at line " << rec.line << "\n";
  if (auto v = validate(f)) {
    std::cout << "  validation: FAILED (" << v->describe() << ")\n";
    mismatch = true;
    return;
  }
  std::cout << "  validation: ok\n";
  RingSummary s = summarize(f);
  std::cout << "  rank " << f.rank << ", duality " << renderList(f.duality) << "\n";
  if (s.integral)
    std::cout << "  FPdim " << s.type.globalFPdim() << ", type " << renderList(s.type.dims) << "\n";
  else {
    std::cout << "  FPdims";
    for (auto d : s.dims) std::cout << " " << formatNumber(d);
    std::cout << "\n";
  }
  std::cout << "  commutative " << yesNo(s.commutative) << ", pointed " << yesNo(s.pointed)
            << ", perfect " << yesNo(s.perfect) << ", simple " << yesNo(s.simple)
            << ", multiplicity " << s.multiplicity << "\n";
  CodegreeProfile prof;
  try {
    prof = codegreeProfile(f);
  } catch (const FusionError& e) {
    std::cout << "  formal codegrees: unavailable (" << e.what() << ")\n";
    return;
  }
  std::cout << "  formal codegrees " << prof.render() << "\n";
  auto printed = rec.extra.find("codegrees");
  if (printed != rec.extra.end() &&
      normalizeCodegreeString(printed->second) != normalizeCodegreeString(prof.render())) {
    std::cout << "  MISMATCH with recorded codegrees " << printed->second << "\n";
    mismatch = true;
  }
  DrinfeldVerdict dv = isDrinfeld(prof);
  std::cout << "  Drinfeld " << yesNo(dv.drinfeld);
  if (!dv.drinfeld && !dv.reason.empty()) std::cout << " (" << dv.reason << ")";
  std::cout << ", 1-Frobenius " << yesNo(s.oneFrobenius) << ", MNSD " << yesNo(s.mnsd) << "\n";
  if (s.commutative) {
    IsaacsVerdict iv = isIsaacs(f);
    std::cout << "  Isaacs " << yesNo(iv.isaacs);
    if (!iv.isaacs) {
      std::cout << " (witness row " << iv.row << ", column " << iv.column << ": ";
      if (iv.witnessRational)
        std::cout << iv.witness;
      else
        std::cout << formatNumber(iv.witnessApprox);
      std::cout << ")";
    }
    std::cout << "\n";
  }
  if (s.commutative || f.rank <= 12) {
    PositivityVerdict pv = nPositivity(f, 3);
    std::cout << "  3-positivity " << yesNo(pv.positive) << " (min eigenvalue "
              << formatNumber(pv.minEigenvalue) << ")\n";
  } else {
    std::cout << "  3-positivity skipped (noncommutative rank above 12)\n";
  }
  std::cout << "  trace bound " << yesNo(traceBound(prof)) << ", prime support "
            << yesNo(primeSupportCheck(prof)) << "\n";
  auto subs = fusionSubrings(f);
  std::cout << "  fusion subrings";
  for (const auto& sub : subs) std::cout << " " << renderList(sub);
  std::cout << "\n";
}

int runAnalyze(const std::string& path) {
  auto recs = loadRecords(path);
  bool mismatch = false;
  for (const auto& r : recs) analyzeRing(r, mismatch);
  std::cout << "# analyzed " << recs.size() << " rings\n";
  return mismatch ? kMismatch : kOk;
}

int runInduction(const std::string& path, int index, long long budget, long long limit,
                 bool countLower, bool requireSolution, bool emitCenters,
                 const std::string& centerPath) {
  auto recs = loadRecords(path);
  std::vector<FusionData> centers;
  if (!centerPath.empty())
    for (const auto& r : loadRecords(centerPath)) centers.push_back(r.ring);
  bool incomplete = false, obstructed = false;
  for (size_t i = 0; i < recs.size(); ++i) {
    if (index >= 0 && static_cast<int>(i) != index) continue;
    const FusionData& f = recs[i].ring;
    std::cout << "ring " << i << ": " << renderText(f).substr(0, 80) << "\n";
    if (countLower) {
      InductionProblem p = makeInductionProblem(f);
      LowerSquareResult ls = lowerSquareSolutions(p, false, budget);
      std::cout << "  lower-square solutions " << ls.count << (ls.complete ? "" : " (incomplete)")
                << "\n";
      incomplete = incomplete || !ls.complete;
      continue;
    }
    ObstructionReport rep = obstructionReport(f, {budget, limit});
    std::cout << "  status " << statusName(rep.status);
    if (!rep.reason.empty()) std::cout << " (" << rep.reason << ")";
    std::cout << ", solutions " << rep.solutions.size() << "\n";
    for (const auto& s : rep.solutions) {
      if (emitCenters)
        std::cout << renderList(s.centerType) << "\n";
      else
        std::cout << renderInduction(s) << "\n";
      for (size_t c = 0; c < centers.size(); ++c) {
        bool ok = false;
        try {
          ok = ringMorphismCompatible(s, f, centers[c]);
        } catch (const DimensionMismatch&) {
        }
        std::cout << "  center candidate " << c << ": " << (ok ? "compatible" : "incompatible") << "\n";
      }
    }
    incomplete = incomplete || rep.status == ObstructionStatus::Inconclusive;
    obstructed = obstructed || rep.status == ObstructionStatus::Obstructed;
  }
  if (incomplete) return kIncomplete;
  if (requireSolution && obstructed) return kMismatch;
  return kOk;
}

void printGroupData(const GroupTheoreticalData& d) {
  std::cout << "type " << renderList(d.type) << "\n";
  std::cout << "duality " << renderList(d.duality) << "\n";
  if (d.cocycleSensitive)
    std::cout << "note: some stabilizer has a non-cyclic Sylow subgroup; trivial cocycles assumed\n";
}

int runGroupType(const std::string& groupSpec, const std::string& subSpec, int subIndex) {
  PermGroup g = enumerateGroup(groupSpec);
  Subgroup h;
  if (!subSpec.empty()) {
    h = subgroupFromSpec(g, subSpec);
  } else {
    auto subs = subgroups(g, {.upToConjugacy = true});
    if (subIndex < 0) {
      for (size_t i = 0; i < subs.size(); ++i)
        std::cout << i << ": " << describeSubgroup(g, subs[i]) << " (order " << subs[i].size()
                  << ")\n";
      return kOk;
    }
    if (subIndex >= static_cast<int>(subs.size())) throw FusionError("subgroup index out of range");
    h = subs[subIndex];
  }
  std::cout << "G order " << g.order() << ", H = " << describeSubgroup(g, h) << " (order "
            << h.size() << ")\n";
  DoubleCosetData dc = doubleCosets(g, h);
  for (const auto& c : dc.cosets)
    std::cout << "double coset size " << c.size << ", stabilizer "
              << describeSubgroup(g, c.stabilizer) << ", index " << c.index << "\n";
  printGroupData(groupTheoretical(g, h));
  return kOk;
}

int runFindGroup(const std::string& typeStr, const std::string& catalogPath) {
  auto type = parseIntList(typeStr);
  long long order = 0;
  for (long long d : type) order += d * d;
  std::vector<CatalogGroup> catalog =
      catalogPath.empty() ? squareFreeCatalog(order) : loadCatalog(catalogPath);
  FindGroupReport rep = findGroupSubgroup(type, catalog);
  for (const auto& s : rep.skipped) std::cerr << "warning: skipped " << s << " (over the cap)\n";
  for (const auto& m : rep.matches) {
    std::cout << "G = " << m.group << ", H = " << m.subgroup << " (class " << m.subgroupIndex
              << ", order " << m.subgroupOrder << ")\n";
    printGroupData(m.data);
  }
  std::cout << "# matches " << rep.matches.size() << "\n";
  return kOk;
}

int runClassify(const ClassifyOptions& base, const std::string& output, bool allRings,
                bool cumulative, bool text) {
  std::ostringstream pipeline;
  pipeline << "classify --rank " << base.rank << (cumulative ? " --cumulative" : "")
           << (base.noncommutativeOnly ? " --nc" : "") << (base.mnsd ? " --mnsd" : "")
           << (base.oneFrobenius ? " --one-frobenius" : "") << (allRings ? " --all" : "");
  std::vector<FusionData> rings;
  bool complete = true;
  long long totals[6] = {0, 0, 0, 0, 0, 0};
  for (int r = cumulative ? 1 : base.rank; r <= base.rank; ++r) {
    ClassifyOptions opts = base;
    opts.rank = r;
    ClassifyReport rep = classifyPipeline(opts);
    std::cerr << "rank " << rep.rank << ": Egyptian fractions " << rep.egyptianCount << ", FPdims "
              << rep.fpdimCount << ", types " << rep.typeCount << ", admitting types "
              << rep.admittingTypes << ", rings " << rep.ringCount << ", Drinfeld "
              << rep.drinfeldCount << (rep.complete ? "" : " (incomplete)") << "\n";
    for (const auto& t : rep.incompleteTypes)
      std::cerr << "budget exhausted on type " << renderList(t.dims) << "\n";
    long long row[6] = {rep.egyptianCount, rep.fpdimCount, rep.typeCount, rep.admittingTypes,
                        rep.ringCount, rep.drinfeldCount};
    for (int i = 0; i < 6; ++i) totals[i] += row[i];
    complete = complete && rep.complete;
    rings.insert(rings.end(), rep.rings.begin(), rep.rings.end());
  }
  if (cumulative)
    std::cerr << "total: types " << totals[2] << ", admitting types " << totals[3] << ", rings "
              << totals[4] << ", Drinfeld " << totals[5] << "\n";
  Provenance prov{pipeline.str(), timestamp(), base.budget, complete};
  std::ofstream file;
  if (!output.empty()) {
    file.open(output);
    if (!file) throw ParseError("cannot write " + output, 0, 0);
  }
  std::ostream& out = output.empty() ? std::cout : file;
  for (const auto& f : rings)
    out << (text ? renderText(f) : renderCatalogRecord(makeCatalogRecord(f, prov))) << "\n";
  return complete ? kOk : kIncomplete;
}

int runDiff(const std::string& computedPath, const std::string& fixturePath) {
  std::vector<FusionData> a, b;
  for (const auto& r : loadRecords(computedPath)) a.push_back(r.ring);
  for (const auto& r : loadRecords(fixturePath)) b.push_back(r.ring);
  DiffReport d = fixtureDiff(a, b);
  for (const auto& f : d.missing) std::cout << "missing " << renderText(f) << "\n";
  for (const auto& f : d.extra) std::cout << "extra " << renderText(f) << "\n";
  std::cout << "# computed " << a.size() << ", fixture " << b.size() << ", missing "
            << d.missing.size() << ", extra " << d.extra.size() << "\n";
  return d.empty() ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact enumeration and analysis of integral fusion rings"};
  app.require_subcommand(1);
  std::function<int()> action;

  auto* egy = app.add_subcommand("egyptian", "Egyptian fractions 1 = sum n_i/f_i");
  int length = 1;
  bool divisibility = false, egyMnsd = false, countOnly = false;
  std::string nc;
  long long maxDen = 0;
  egy->add_option("--length,-l", length, "number of terms")->required();
  egy->add_flag("--divisibility", divisibility, "every denominator divides the largest");
  egy->add_flag("--mnsd", egyMnsd, "1/f + sum 2/g with odd denominators");
  egy->add_option("--nc-pattern,--nc", nc, "noncommutative block sizes, e.g. 2");
  egy->add_option("--max-f1,--max", maxDen, "cap on the largest denominator");
  egy->add_flag("--count", countOnly, "print counts only");
  egy->callback([&] { action = [&] { return runEgyptian(length, divisibility, egyMnsd, nc, maxDen, countOnly); }; });

  auto* types = app.add_subcommand("types", "possible types for a global FPdim");
  long long fpdim = 0;
  int typeRank = 0;
  bool typeOneFrob = false, typeMnsd = false;
  types->add_option("--fpdim", fpdim)->required();
  types->add_option("--rank", typeRank)->required();
  types->add_flag("--one-frobenius", typeOneFrob);
  types->add_flag("--mnsd", typeMnsd);
  types->callback([&] { action = [&] { return runTypes(fpdim, typeRank, typeOneFrob, typeMnsd); }; });

  auto* search = app.add_subcommand("search", "all fusion rings of a type");
  std::string searchType, searchDual;
  long long searchBudget = 0;
  bool searchJson = false;
  search->add_option("--type", searchType, "comma-separated dims")->required();
  search->add_option("--duality", searchDual, "fixed duality; default all candidates");
  bool allDualities = false;
  search->add_flag("--all-dualities", allDualities, "every duality candidate (default without --duality)");
  search->add_option("--budget", searchBudget, "node budget");
  search->add_flag("--json", searchJson);
  search->callback([&] { action = [&] { return runSearch(searchType, allDualities ? "" : searchDual, resolveBudget(searchBudget), searchJson); }; });

  auto* analyze = app.add_subcommand("analyze", "report invariants of ring records");
  std::string analyzeFile;
  analyze->add_option("file", analyzeFile)->required();
  analyze->callback([&] { action = [&] { return runAnalyze(analyzeFile); }; });

  auto* induction = app.add_subcommand("induction", "induction matrices to the center");
  std::string indFile;
  int indIndex = -1;
  long long indBudget = 0, indLimit = 0;
  bool countLower = false, requireSolution = false;
  induction->add_option("file", indFile)->required();
  induction->add_option("--index", indIndex, "only this record (0-based)");
  induction->add_option("--budget", indBudget, "node budget");
  induction->add_option("--limit", indLimit, "stop after this many solutions");
  induction->add_flag("--count-lower", countLower, "count lower-square solutions only");
  induction->add_flag("--require-solution", requireSolution, "exit 1 when a ring is obstructed");
  bool emitCenters = false;
  std::string checkCenter;
  induction->add_flag("--emit-centers", emitCenters, "print center types only");
  induction->add_option("--check-center", checkCenter, "center candidates to test for compatibility");
  induction->callback([&] { action = [&] { return runInduction(indFile, indIndex, resolveBudget(indBudget), indLimit, countLower, requireSolution, emitCenters, checkCenter); }; });

  auto* grouptype = app.add_subcommand("grouptype", "type and duality of C(G,1,H,1)");
  std::string groupSpec, subSpec;
  int subIndex = -1;
  grouptype->add_option("--group", groupSpec, "group spec")->required();
  grouptype->add_option("--subgroup", subSpec, "subgroup spec on the same points");
  grouptype->add_option("--subgroup-index", subIndex, "subgroup class index; omit both to list");
  grouptype->callback([&] { action = [&] { return runGroupType(groupSpec, subSpec, subIndex); }; });

  auto* findgroup = app.add_subcommand("findgroup", "groups realizing a type as C(G,1,H,1)");
  std::string fgType, fgCatalog;
  findgroup->add_option("--type", fgType)->required();
  findgroup->add_option("--catalog", fgCatalog, "catalog file; default all groups of square-free order");
  findgroup->callback([&] { action = [&] { return runFindGroup(fgType, fgCatalog); }; });

  auto* classify = app.add_subcommand("classify", "rank-bounded classification pipeline");
  ClassifyOptions copts;
  bool allRings = false, cumulative = false;
  long long clsBudget = 0;
  std::string clsOut;
  classify->add_option("--rank", copts.rank)->required();
  classify->add_option("--max-fpdim", copts.maxFPdim);
  classify->add_flag("--one-frobenius", copts.oneFrobenius);
  classify->add_flag("--mnsd", copts.mnsd);
  classify->add_flag("--noncommutative,--nc", copts.noncommutativeOnly, "noncommutative rings only");
  classify->add_flag("--all", allRings, "emit every ring, not only Drinfeld rings");
  bool drinfeldOnlyFlag = false;
  classify->add_flag("--drinfeld-only", drinfeldOnlyFlag, "emit Drinfeld rings only (default)");
  std::string clsFormat = "jsonl";
  classify->add_option("--format", clsFormat, "jsonl or text")->check(CLI::IsMember({"jsonl", "text"}));
  classify->add_flag("--cumulative", cumulative, "run every rank from 1 up to --rank");
  classify->add_option("--jobs,-j", copts.jobs, "worker threads");
  classify->add_option("--budget", clsBudget, "node budget per search");
  classify->add_option("--out,--output,-o", clsOut, "output file");
  classify->callback([&] {
    action = [&] {
      copts.drinfeldOnly = !allRings || drinfeldOnlyFlag;
      copts.budget = resolveBudget(clsBudget);
      return runClassify(copts, clsOut, allRings && !drinfeldOnlyFlag, cumulative, clsFormat == "text");
    };
  });

  auto* diff = app.add_subcommand("diff", "compare catalogs up to isomorphism");
  std::string diffA, diffB;
  diff->add_option("computed", diffA)->required();
  diff->add_option("fixture", diffB)->required();
  diff->callback([&] { action = [&] { return runDiff(diffA, diffB); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  try {
    return action();
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIncomplete;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
