#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fusionforge {

class FusionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonConvergence : public FusionError {
 public:
  using FusionError::FusionError;
};

class NonIntegralInput : public FusionError {
 public:
  using FusionError::FusionError;
};

// Fusion data N[i][j][k] with a duality involution; index 0 is the unit.
struct FusionData {
  int rank = 0;
  std::vector<int> duality;
  std::vector<int> tensor;  // flattened, (i * rank + j) * rank + k

  FusionData() = default;
  FusionData(int r, std::vector<int> dual);

  int operator()(int i, int j, int k) const { return tensor[(i * rank + j) * rank + k]; }
  int& at(int i, int j, int k) { return tensor[(i * rank + j) * rank + k]; }
  int dual(int i) const { return duality[i]; }

  bool operator==(const FusionData& o) const {
    return rank == o.rank && duality == o.duality && tensor == o.tensor;
  }
  bool operator<(const FusionData& o) const;

  // Builds from nested [i][j][k] arrays.
  static FusionData fromNested(const std::vector<std::vector<std::vector<int>>>& n,
                               std::vector<int> dual);
  std::vector<std::vector<std::vector<int>>> nested() const;
};

struct TypeVector {
  std::vector<long long> dims;

  long long globalFPdim() const;
  bool valid() const;
  // Groups equal dims: [[d, count], ...].
  std::vector<std::pair<long long, int>> grouped() const;
  bool operator==(const TypeVector& o) const { return dims == o.dims; }
  bool operator<(const TypeVector& o) const;
};

enum class Axiom {
  Shape,
  Duality,
  Unit,
  Dual,
  AntiInvolution,
  Associativity,
  FrobeniusReciprocity
};

std::string axiomName(Axiom a);

struct AxiomViolation {
  Axiom axiom;
  std::array<int, 4> indices{-1, -1, -1, -1};
  std::string describe() const;
};

class AxiomError : public FusionError {
 public:
  explicit AxiomError(AxiomViolation v) : FusionError(v.describe()), violation(v) {}
  AxiomViolation violation;
};

// Returns the first violated axiom, or nullopt when the data is a valid fusion ring.
std::optional<AxiomViolation> validate(const FusionData& data);
void requireValid(const FusionData& data);

struct FPdims {
  std::vector<long double> values;
  bool integral = false;
  std::vector<long long> exact;  // filled when integral
  long double globalApprox = 0;
  long long globalExact = 0;  // filled when integral

  TypeVector type() const;  // integral only
};

FPdims fpdims(const FusionData& data);

struct RingSummary {
  std::vector<long double> dims;
  bool integral = false;
  TypeVector type;  // integral only
  std::vector<int> duality;
  bool commutative = false;
  bool pointed = false;
  bool perfect = false;
  bool simple = false;
  bool oneFrobenius = false;
  bool mnsd = false;
  int multiplicity = 0;
};

bool isCommutative(const FusionData& data);
int multiplicity(const FusionData& data);
RingSummary summarize(const FusionData& data);

// Basis subsets (sorted index lists) closed under product and duality, sorted.
std::vector<std::vector<int>> fusionSubrings(const FusionData& data);
FusionData restrictTo(const FusionData& data, const std::vector<int>& subset);

FusionData trivialRing();
FusionData extendRing(const FusionData& data);
FusionData makeRnFamily(int n);

// Isomorphism handling.
// Permutations fixing 0 that preserve the class labels (equal label = same FPdim) and,
// when given, commute with the duality.
std::vector<std::vector<int>> admissiblePermutations(const std::vector<int>& labels,
                                                      const std::vector<int>* duality);
std::vector<int> dimensionLabels(const FusionData& data);
FusionData permute(const FusionData& data, const std::vector<int>& perm);
// Lexicographically minimal relabeling over all dimension-preserving permutations fixing 0.
FusionData canonicalForm(const FusionData& data);
bool isomorphic(const FusionData& a, const FusionData& b);

}  // namespace fusionforge
