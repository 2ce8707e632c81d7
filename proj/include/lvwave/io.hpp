#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "lvwave/asymptotics.hpp"
#include "lvwave/construction.hpp"
#include "lvwave/grid.hpp"
#include "lvwave/kpp.hpp"
#include "lvwave/model_params.hpp"
#include "lvwave/pde_sim.hpp"
#include "lvwave/verification.hpp"

namespace lvwave {

using Json = nlohmann::ordered_json;

/// Shortest form that round-trips (at most 17 significant digits).
std::string format_double(double x);

/// Header `xi,u,v`, one row per node.
void write_profile_csv(std::ostream& os, const WaveProfile& w);
void write_profile_csv(const std::filesystem::path& path, const WaveProfile& w);

/// Same layout with u = v = w and a leading `# d1=... d2=... b=... c=...` comment.
void write_kpp_csv(std::ostream& os, const KppWave& w);

/// Reads a profile CSV written by write_profile_csv; lines starting with '#' are skipped.
WaveProfile read_profile_csv(const std::filesystem::path& path);
WaveProfile read_profile_csv(std::istream& is);

/// Flat `key = value` (or `key value`) text, '#' comments. Throws ValidationError with the
/// line number on anything else.
std::map<std::string, std::string> parse_config(std::istream& is);
std::map<std::string, std::string> read_config(const std::filesystem::path& path);

Json to_json(const ModelParams& p);
Json to_json(const HypothesisReport& r);
Json to_json(const ExponentSet& e);
Json to_json(const DecayFit& f);
Json to_json(const RateComparison& r);
Json to_json(const std::vector<RateComparison>& rs);
Json to_json(const ResidualNorms& r);
Json to_json(const ComparisonReport& r);
Json to_json(const UniquenessReport& r);
Json to_json(const MonotonicityReport& r);
Json to_json(const SubcriticalDiagnostic& d);
Json to_json(const TranslationReport& r);
Json to_json(const SpeedEstimate& s);

/// Sidecar report of a converged wave: params, c, l, nu, beta, iterations, final residuals.
Json wave_report(const ModelParams& p, double c, const OrderedPair& pair,
                 const IterationTrace& trace);

/// One row per comparison.
void write_rates_csv(std::ostream& os, const std::vector<RateComparison>& rs);

void write_trace_csv(std::ostream& os, const SimTrace& tr);

void write_json(const std::filesystem::path& path, const Json& j);
Json read_json(const std::filesystem::path& path);

}  // namespace lvwave
