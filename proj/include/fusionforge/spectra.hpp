#pragma once

#include <complex>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fusionforge/core.hpp"

namespace fusionforge {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class AmbiguousDecomposition : public FusionError {
 public:
  using FusionError::FusionError;
};

class NotCommutative : public FusionError {
 public:
  using FusionError::FusionError;
};

class CapExceeded : public FusionError {
 public:
  using FusionError::FusionError;
};

class PrecisionExhausted : public FusionError {
 public:
  using FusionError::FusionError;
};

using IntMatrix = std::vector<std::vector<long long>>;

// Left multiplication matrix of b_i: entry (k, j) is N[i][j][k].
IntMatrix leftMatrix(const FusionData& data, int i);
IntMatrix centralMatrix(const FusionData& data);

// Characteristic polynomial det(xI - A), coefficients from x^0 upward (division-free).
std::vector<BigInt> characteristicPolynomial(const IntMatrix& a);
// Dimension of the center of the complexified ring (number of Wedderburn blocks).
int centerDimension(const FusionData& data);

struct CodegreeBlock {
  int n = 1;
  bool rational = true;
  Rational exact;          // f_V when rational
  long double approx = 0;  // f_V, always filled
};

struct CodegreeProfile {
  std::vector<CodegreeBlock> blocks;  // sorted by f ascending, then n
  int rank = 0;
  long double globalApprox = 0;
  long long globalExact = 0;  // 0 when the ring is not integral
  bool integral = false;      // ring integral

  bool allRational() const;
  std::string render() const;  // e.g. [3_2, 4, 15, 60]
  Rational egyptianSum() const;  // sum of n_V / f_V, rational profiles only
};

CodegreeProfile codegreeProfile(const FusionData& data);
std::string normalizeCodegreeString(const std::string& s);

struct DrinfeldVerdict {
  bool drinfeld = false;
  std::string reason;
};

DrinfeldVerdict isDrinfeld(const CodegreeProfile& profile);
bool isSFrobenius(const FusionData& data, int s);
bool traceBound(const CodegreeProfile& profile);

struct CharacterTable {
  std::vector<std::vector<std::complex<double>>> lambda;  // [basis i][column j]
  std::vector<double> codegrees;                          // c_j, descending
};

CharacterTable characterTable(const FusionData& data);

struct IsaacsVerdict {
  bool isaacs = true;
  int row = -1;     // zero-indexed witness
  int column = -1;
  bool witnessRational = false;
  Rational witness;
  double witnessApprox = 0;
};

IsaacsVerdict isIsaacs(const FusionData& data);

struct PositivityVerdict {
  bool positive = true;
  double minEigenvalue = 0;
  double norm = 0;
};

constexpr int kDefaultPositivityCap = 3;
PositivityVerdict nPositivity(const FusionData& data, int n, int cap = kDefaultPositivityCap);

std::vector<long long> primeFactors(long long n);
bool primeSupportCheck(const CodegreeProfile& profile);
bool oddConsistency(const CodegreeProfile& profile);
bool strongLagrangeTypeCheck(const TypeVector& type);

}  // namespace fusionforge
