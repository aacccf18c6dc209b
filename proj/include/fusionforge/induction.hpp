#pragma once

#include <string>
#include <vector>

#include "fusionforge/core.hpp"
#include "fusionforge/enumerate.hpp"
#include "fusionforge/spectra.hpp"

namespace fusionforge {

class DimensionMismatch : public FusionError {
 public:
  using FusionError::FusionError;
};

struct InductionProblem {
  FusionData ring;
  std::vector<long long> dims;
  long long globalFPdim = 0;
  // Irreducible blocks of the complexified ring; block 0 is the FPdim character.
  std::vector<int> n;
  std::vector<long long> f;
  int s() const { return static_cast<int>(n.size()); }
};

// Requires an integral Drinfeld ring.
InductionProblem makeInductionProblem(const FusionData& ring);

using IntRows = std::vector<std::vector<long long>>;

struct InductionSolution {
  IntRows F;                    // n x r, rows sorted by m then descending lexicographic
  std::vector<long long> centerType;
  bool duplicateRows = false;  // two identical rows occur
  int rank() const { return static_cast<int>(F.size()); }
};

struct InductionOptions {
  long long budget = kDefaultNodeBudget;
  long long limit = 0;  // stop after this many full solutions when positive
};

struct LowerSquareResult {
  std::vector<IntRows> solutions;  // s x r, block order of the problem
  long long count = 0;
  bool complete = true;
};

// keep = false only counts.
LowerSquareResult lowerSquareSolutions(const InductionProblem& problem, bool keep = true,
                                       long long budget = kDefaultNodeBudget);

struct FullSolutionsResult {
  std::vector<InductionSolution> solutions;
  bool complete = true;
  long long nodes = 0;
};

FullSolutionsResult fullSolutions(const InductionProblem& problem, const InductionOptions& opts = {});

// Independent check of relations (1)-(8) and duality symmetry.
bool verifyInductionSolution(const InductionProblem& problem, const InductionSolution& solution,
                             std::string* why = nullptr);

bool ringMorphismCompatible(const InductionSolution& solution, const FusionData& ring,
                            const FusionData& center);

enum class ObstructionStatus { Obstructed, Constrained, Inconclusive };
std::string statusName(ObstructionStatus s);

struct ObstructionReport {
  ObstructionStatus status = ObstructionStatus::Inconclusive;
  std::string reason;
  std::vector<InductionSolution> solutions;
};

ObstructionReport obstructionReport(const FusionData& ring, const InductionOptions& opts = {});

// Induction matrix (transpose of F) followed by the center type, as displayed in the literature.
std::string renderInduction(const InductionSolution& solution);

}  // namespace fusionforge
