#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "nullwave/asympt.hpp"
#include "nullwave/config.hpp"
#include "nullwave/energetics.hpp"
#include "nullwave/evolve.hpp"
#include "nullwave/record.hpp"

// File schemas. Headers are fixed; readers check them and raise SchemaError
// naming the missing columns.

namespace nullwave::io {

inline const std::vector<std::string> kRadiationColumns = {"u",   "ell",          "m",        "Psi",
                                                           "UPsi", "Phi",         "Phi_over_lnv", "Phi_vhalf"};
inline const std::vector<std::string> kSliceColumns = {"t", "u", "v", "ell", "m", "Phi", "Psi"};
inline const std::vector<std::string> kRowColumns = {"u", "v", "ell", "m", "Phi", "Psi", "UPhi", "dtPsi"};
inline const std::vector<std::string> kEnergyColumns = {"t",      "L2_phi",        "L2_dphi",  "L2_psi",
                                                        "L2_dpsi", "cascade_ratio", "E_hyp_phi"};
inline const std::vector<std::string> kResidualColumns = {"u",     "v",     "region",  "C_int",
                                                          "C_ext", "D_int", "D_ext",   "field",
                                                          "leading", "measured", "residual"};

/// A parsed CSV: header plus string cells. Empty cells read as NaN.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column positions for `required`, in that order. Throws SchemaError.
  std::vector<int> columns(const std::string& file, const std::vector<std::string>& required) const;
};

Table read_csv(const std::string& path);
double cell_double(const std::string& s);

void write_radiation_csv(const std::string& path, const RadiationRecord& rec);
/// Rebuilds the record; h, v_max, v_inner come from the grid.
RadiationRecord read_radiation_csv(const std::string& path, const NullGridSpec& grid);

void write_slices_csv(const std::string& path, const std::vector<SliceSet>& slices, const NullGridSpec& grid);
std::vector<SliceSet> read_slices_csv(const std::string& path, const NullGridSpec& grid);

/// Every `stride`-th node of each row; read back with h = stride * grid.h.
void write_rows_csv(const std::string& path, const std::vector<RowSample>& rows, const NullGridSpec& grid,
                    int stride);
std::vector<RowSample> read_rows_csv(const std::string& path, const NullGridSpec& grid, int stride);

void write_energies_csv(const std::string& path, const std::vector<energetics::EnergySample>& e);
std::vector<energetics::EnergySample> read_energies_csv(const std::string& path);

void write_residuals_csv(const std::string& path, const std::vector<asympt::ResidualRow>& rows);

nlohmann::json sections_to_json(const Sections& s);
Sections sections_from_json(const nlohmann::json& j);

nlohmann::json constants_to_json(const asympt::AsymptoticConstants& c);
nlohmann::json identities_to_json(const asympt::IdentityReport& r);

void write_json(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json(const std::string& path);

/// Creates `dir` and its parents if needed.
void ensure_directory(const std::string& dir);

}  // namespace nullwave::io
