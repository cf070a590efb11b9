#pragma once

#include <filesystem>
#include <string>

#include "dimlab/simulate.hpp"

namespace dimlab {

inline constexpr const char* kVersion = "dimlab 0.1.0";

// Decimal, 17 significant digits, '.' separator, no locale: round-trips
// doubles exactly and keeps outputs byte-stable.
std::string format_number(double x);

// Flat CSV: replica_id, point_index, coord_0..coord_{d-1}.
void write_ensemble_csv(const SampleEnsemble& ens, const std::filesystem::path& path);

// JSON sidecar carrying the SimConfig snapshot, the sample time and the
// version string; a run is reconstructible from it.
void write_ensemble_sidecar(const SampleEnsemble& ens, const std::filesystem::path& path);

SampleEnsemble read_ensemble(const std::filesystem::path& csv_path,
                             const std::filesystem::path& sidecar_path);

}  // namespace dimlab
