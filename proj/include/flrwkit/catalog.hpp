#pragma once

#include <string>
#include <utility>
#include <vector>

#include "flrwkit/criteria.hpp"

namespace flrwkit {

/// Expected conclusion of one statement.
struct ExpectedVerdict {
  std::string id;
  Conclusion conclusion;
};

struct CatalogEntry {
  std::string name;
  SpacetimeSpec spec;
  std::vector<ExpectedVerdict> expected;
  std::string provenance;
  std::vector<std::string> flags;
};

/// Names in catalog order.
std::vector<std::string> catalog_names();

/// Throws Error{unknown_entry} for unknown names.
CatalogEntry catalog_get(const std::string& name);

/// a(t) = t^p on (0, inf) with curvature K.
CatalogEntry power_law(double p, int K = 0, int d = 3);

/// Mismatches between an entry's expected fragment and a report; empty when
/// the fragment is reproduced exactly.
std::vector<std::string> fragment_mismatches(const CatalogEntry& e, const CriterionReport& r);

}  // namespace flrwkit
