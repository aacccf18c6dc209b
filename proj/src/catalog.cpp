#include "fusionforge/catalog.hpp"

#include <map>

#include "json.hpp"

namespace fusionforge {

CatalogRecord makeCatalogRecord(const FusionData& ring, const Provenance& provenance) {
  return {ring, summarize(ring), codegreeProfile(ring), provenance};
}

std::string renderCatalogRecord(const CatalogRecord& record) {
  auto j = nlohmann::json::parse(renderJson(record.ring));
  j["codegrees"] = record.profile.render();
  j["provenance"] = {{"pipeline", record.provenance.pipeline},
                     {"timestamp", record.provenance.timestamp},
                     {"budget", record.provenance.budget},
                     {"complete", record.provenance.complete}};
  return j.dump();
}

DiffReport fixtureDiff(const std::vector<FusionData>& computed,
                       const std::vector<FusionData>& fixture) {
  std::map<FusionData, int> have, want;
  for (const auto& f : computed) ++have[canonicalForm(f)];
  for (const auto& f : fixture) ++want[canonicalForm(f)];
  DiffReport out;
  for (const auto& [f, n] : want) {
    int h = have.count(f) ? have[f] : 0;
    for (int i = h; i < n; ++i) out.missing.push_back(f);
  }
  for (const auto& [f, n] : have) {
    int w = want.count(f) ? want[f] : 0;
    for (int i = w; i < n; ++i) out.extra.push_back(f);
  }
  return out;
}

}  // namespace fusionforge
