#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "fusionforge/core.hpp"
#include "fusionforge/spectra.hpp"

namespace fusionforge {

class InvalidAction : public FusionError {
 public:
  using FusionError::FusionError;
};

class CocycleSensitive : public FusionError {
 public:
  using FusionError::FusionError;
};

class CharacterMatchFailed : public FusionError {
 public:
  using FusionError::FusionError;
};

constexpr int kDefaultGroupCap = 5000;

using Perm = std::vector<int>;  // 0-based images

// Finite group given by generators; elements are indexed with 0 the identity.
class PermGroup {
 public:
  int degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return gens_; }
  int order() const { return order_; }
  int mul(int a, int b) const { return table_[static_cast<size_t>(a) * order_ + b]; }
  int inv(int a) const { return inverse_[a]; }
  int elementOrder(int a) const { return elementOrder_[a]; }
  const Perm& element(int a) const { return elements_[a]; }
  int exponent() const;
  bool isAbelian() const;
  // Class index of every element; classes ordered by smallest member.
  const std::vector<int>& classOf() const;
  int classCount() const;

  static PermGroup fromGenerators(int degree, const std::vector<Perm>& gens,
                                  int cap = kDefaultGroupCap);

 private:
  int degree_ = 1;
  std::vector<Perm> gens_;
  int order_ = 1;
  std::vector<Perm> elements_;
  std::vector<uint16_t> table_;
  std::vector<int> inverse_;
  std::vector<int> elementOrder_;
  mutable std::vector<int> classOf_;
  mutable int classCount_ = 0;
};

// Grammar: C(n), D(n) (order 2n), S(n), A(n), SemiDirect(C(n),C(m),k), Direct(X,Y),
// or generators in cycle notation such as "(1 2 3)(4 5), (1 2)".
PermGroup enumerateGroup(const std::string& spec, int cap = kDefaultGroupCap);

// Subgroup as a sorted list of element indices of the ambient group.
using Subgroup = std::vector<int>;

// Subgroup generated by a spec acting on the first points of G's domain.
Subgroup subgroupFromSpec(const PermGroup& g, const std::string& spec);

Subgroup generatedSubgroup(const PermGroup& g, const std::vector<int>& gens);
Subgroup wholeGroup(const PermGroup& g);
Subgroup conjugate(const PermGroup& g, const Subgroup& h, int x);  // x h x^-1
Subgroup intersect(const Subgroup& a, const Subgroup& b);
bool isAbelian(const PermGroup& g, const Subgroup& h);
bool isCyclic(const PermGroup& g, const Subgroup& h);
// Short structural label: C6, C2 x C2, D5, or "order-12 group".
std::string describeSubgroup(const PermGroup& g, const Subgroup& h);

struct SubgroupOptions {
  bool upToConjugacy = false;
};

// Sorted by order, then by element list.
std::vector<Subgroup> subgroups(const PermGroup& g, const SubgroupOptions& opts = {});

struct DoubleCoset {
  int representative = 0;
  Subgroup stabilizer;  // H ∩ gHg^-1
  long long index = 1;  // [H : H^g]
  long long size = 0;
};

struct DoubleCosetData {
  std::vector<DoubleCoset> cosets;  // identity coset first
  std::vector<int> cosetOf;         // element -> coset index
};

DoubleCosetData doubleCosets(const PermGroup& g, const Subgroup& h);

// Irreducible characters of a subgroup, reduced modulo a prime p with p = 1 mod exp(G).
struct GroupCharacters {
  long long p = 0;
  std::vector<int> classOf;                   // ambient element -> class of K, -1 outside
  std::vector<int> classSize;
  std::vector<int> degrees;                   // ascending; trivial character first
  std::vector<std::vector<long long>> values;  // [character][class] in F_p
};

long long characterPrime(const PermGroup& g);
GroupCharacters characters(const PermGroup& g, const Subgroup& k);
GroupCharacters characters(const PermGroup& g, const Subgroup& k, long long p);
std::vector<int> characterDegrees(const PermGroup& g);

int conjugacyClassCount(const PermGroup& g, const Subgroup& k);

// Every Sylow subgroup cyclic, which forces a trivial Schur multiplier.
bool sylowCyclic(const PermGroup& g, const Subgroup& k);

struct GroupTheoreticalData {
  std::vector<long long> type;  // ascending, unit first
  std::vector<int> duality;     // involution on the same order
  // Some H^g fails the cyclic-Sylow screen; the result holds for trivial cocycles only.
  bool cocycleSensitive = false;
};

// Simple objects of C(G,1,H,1): unit first, then by dimension; within a dimension
// self-dual objects precede dual pairs, which are adjacent.
GroupTheoreticalData groupTheoretical(const PermGroup& g, const Subgroup& h);
std::vector<long long> groupTheoreticalType(const PermGroup& g, const Subgroup& h);
std::vector<int> groupTheoreticalDuality(const PermGroup& g, const Subgroup& h);

struct CatalogGroup {
  std::string name;
  std::string spec;
};

// One group per line, "name = spec" (split at the last =) or a bare spec; '#' starts a comment.
std::vector<CatalogGroup> parseCatalog(const std::string& text);
std::vector<CatalogGroup> loadCatalog(const std::string& path);

// Every group of square-free order n as C(m) semidirect C(n/m), one per isomorphism class.
std::vector<CatalogGroup> squareFreeCatalog(long long n);

struct GroupMatch {
  std::string group;
  int subgroupIndex = 0;  // position among subgroup classes
  int subgroupOrder = 0;
  std::string subgroup;
  GroupTheoreticalData data;
};

struct FindGroupReport {
  std::vector<GroupMatch> matches;
  std::vector<std::string> skipped;  // groups over the cap
};

FindGroupReport findGroupSubgroup(const std::vector<long long>& type,
                                  const std::vector<CatalogGroup>& catalog,
                                  int cap = kDefaultGroupCap);

// Same number of self-dual objects in every dimension.
bool sameDualityPattern(const std::vector<long long>& type, const std::vector<int>& a,
                        const std::vector<int>& b);

}  // namespace fusionforge
