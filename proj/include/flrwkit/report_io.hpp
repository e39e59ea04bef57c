#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "flrwkit/axi_chart.hpp"
#include "flrwkit/config.hpp"
#include "flrwkit/criteria.hpp"
#include "flrwkit/probe.hpp"
#include "flrwkit/sph_chart.hpp"
#include "flrwkit/verify.hpp"

namespace flrwkit {

inline constexpr const char* kVersion = "0.1.0";

/// JSON documents. Keys keep a fixed order and numbers print in shortest
/// round-trip form, so equal inputs give byte-identical text. Every document
/// carries "kind" and "version" and validates against
/// schema/flrwkit-report.schema.json. Non-finite numbers appear as the strings
/// "inf", "-inf" and "nan".
std::string classify_json(const CriterionReport& report);
std::string probe_json(const SpacetimeSpec& spec, const ProbeSettings& settings, const ProbeResult& result,
                       const WitnessResult& witness);
std::string verify_json(const SpacetimeSpec& spec, const std::vector<VerifyReport>& reports);

/// CSV writers: ',' delimiter, '\n' line endings, fixed header row,
/// shortest round-trip numbers, no locale dependence.

/// Columns t, r, T, R, F, G, excluded on an out_nt x out_nr grid spanning the
/// chart region; excluded is 1 for points on the excluded set.
void write_spherical_csv(std::ostream& os, const SphericalChart& chart, std::size_t out_nt, std::size_t out_nr);

/// Columns T, R, theta, z, rho, A, B, C, J, sign_case, degeneracy. Fields that
/// are undefined on a degenerate locus are left empty.
void write_axi_csv(std::ostream& os, const AxiChart& chart, const AxiSettings& settings);

/// Columns t, r, R, G, C, tangent_norm.
void write_probe_csv(std::ostream& os, const ProbeResult& result);

/// One line per catalog entry: name, a tab, then the provenance.
void write_catalog_list(std::ostream& os);

}  // namespace flrwkit
