#pragma once

#include <string>
#include <vector>

#include "fusionforge/core.hpp"
#include "fusionforge/io.hpp"
#include "fusionforge/spectra.hpp"

namespace fusionforge {

struct Provenance {
  std::string pipeline;  // e.g. "classify --rank 5"
  std::string timestamp;
  long long budget = 0;
  bool complete = true;
};

struct CatalogRecord {
  FusionData ring;
  RingSummary summary;
  CodegreeProfile profile;
  Provenance provenance;
};

CatalogRecord makeCatalogRecord(const FusionData& ring, const Provenance& provenance);
// One JSON line; readable back through parseRecords.
std::string renderCatalogRecord(const CatalogRecord& record);

struct DiffReport {
  std::vector<FusionData> missing;  // in the fixture, not computed
  std::vector<FusionData> extra;    // computed, not in the fixture
  bool empty() const { return missing.empty() && extra.empty(); }
};

// Set difference up to isomorphism.
DiffReport fixtureDiff(const std::vector<FusionData>& computed,
                       const std::vector<FusionData>& fixture);

}  // namespace fusionforge
