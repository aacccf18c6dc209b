#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fusionforge/core.hpp"

namespace fusionforge {

constexpr long long kDefaultNodeBudget = 1000000000LL;

// Node budget from FUSIONFORGE_BUDGET when set, else the fallback.
long long budgetFromEnvironment(long long fallback = kDefaultNodeBudget);

struct EgyptianOptions {
  bool divisibility = false;
  bool mnsd = false;             // 1/f_1 + sum 2/g_j with odd denominators
  long long maxDenominator = 0;  // cap on f_1 when positive
  std::vector<int> ncPattern;    // block sizes n > 1, each contributing n/f
};

struct EgyptianBlock {
  long long f = 0;
  int n = 1;
};

struct EgyptianSolution {
  std::vector<long long> denominators;  // expanded (n copies of f per block), ascending
  std::vector<EgyptianBlock> blocks;    // ascending by (f, n)
  bool divisibility = false;
  bool mnsd = false;

  long long maxDenominator() const { return denominators.empty() ? 0 : denominators.back(); }
  // The f_1 candidate: the largest weight-one denominator.
  long long globalCandidate() const;
  std::string render() const;
};

// Length counts terms: a block of size n contributes n terms n * (1/f).
std::vector<EgyptianSolution> egyptianFractions(int length, const EgyptianOptions& opts = {});

struct TypeOptions {
  bool oneFrobenius = false;
  bool mnsd = false;
};

std::vector<TypeVector> typesForFPdim(long long fpdim, int rank, const TypeOptions& opts = {});

// Involutions fixing 0 and preserving dims, one per conjugacy pattern.
std::vector<std::vector<int>> dualityCandidates(const TypeVector& type);

struct SearchOptions {
  long long budget = kDefaultNodeBudget;
};

struct SearchResult {
  std::vector<FusionData> rings;  // canonical forms, sorted
  bool complete = true;
  long long nodes = 0;
};

SearchResult fusionDataSearch(const TypeVector& type, const std::vector<int>& duality,
                              const SearchOptions& opts = {});

struct ClassifyOptions {
  int rank = 1;
  long long maxFPdim = 0;  // 0 = unbounded
  bool oneFrobenius = false;
  bool mnsd = false;
  bool noncommutativeOnly = false;
  bool drinfeldOnly = false;
  int jobs = 1;
  long long budget = kDefaultNodeBudget;
};

struct ClassifyReport {
  int rank = 0;
  long long egyptianCount = 0;
  long long fpdimCount = 0;
  long long typeCount = 0;
  long long admittingTypes = 0;
  long long ringCount = 0;     // after the commutativity filter when requested
  long long drinfeldCount = 0;
  std::vector<FusionData> rings;  // reported rings (Drinfeld only when requested)
  std::vector<TypeVector> incompleteTypes;
  bool complete = true;
};

ClassifyReport classifyPipeline(const ClassifyOptions& opts);

struct MnsdVerdict {
  bool isMNSD = false;
  bool isCoMNSD = false;
};

MnsdVerdict mnsdPredicates(const std::vector<long long>& seq);

}  // namespace fusionforge
