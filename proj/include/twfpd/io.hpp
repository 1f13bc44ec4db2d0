#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "twfpd/complexity.hpp"
#include "twfpd/verify.hpp"

namespace twfpd {

/// Failures while reading or writing files (CLI exit status 3); everything
/// else thrown by the library is a validation failure (exit status 2).
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Json = nlohmann::ordered_json;

// ---- bank configuration -------------------------------------------------

/// Parses {"n":..., "lambda":..., "directions":[{"xi":[..], "zeta":[..]?,
/// "m":..}, ..], "coset_reps":[[..],..]?, "orientation":"max_phase"?}.
/// Errors name the offending field.
BankConfig parse_bank_config(const Json& document);
BankConfig load_bank_config(const std::filesystem::path& path);
Json bank_config_to_json(const BankConfig& config);

// ---- signals -------------------------------------------------------------

/// Portable text format: line 1 "TWS1", line 2 the dimension, line 3 the
/// shape, then the samples in row-major order.
Signal read_tws(const std::filesystem::path& path);
void write_tws(const std::filesystem::path& path, const Signal& signal);

/// P2/P5 PGM, 8- or 16-bit, mapped to [0, 1] by dividing by maxval.
Signal read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const Signal& signal,
               int maxval = 65535);

/// Dispatches on content (PGM magic) falling back to TWS1.
Signal read_signal(const std::filesystem::path& path);
/// Dispatches on the extension: ".pgm" writes PGM, everything else TWS1.
void write_signal(const std::filesystem::path& path, const Signal& signal);

// ---- filter tables and reports -------------------------------------------

/// One CSV per mask (header "k1,..,kn,coeff", rows in lexicographic index
/// order) plus a companion <name>.json with role, direction data, vanishing
/// moments, and the origin tap. Returns the table manifest.
Json write_filter_tables(const FilterBank& bank, const std::filesystem::path& directory);

Json verification_report_to_json(const VerificationReport& report);
Json complexity_report_to_json(const ComplexityReport& report);

void write_json(const std::filesystem::path& path, const Json& document);
Json read_json(const std::filesystem::path& path);

// ---- decomposition persistence -------------------------------------------

/// One TWS1 file per subband plus manifest.json describing the levels.
void write_decomposition(const std::filesystem::path& directory, const FilterBank& bank,
                         const Decomposition& dec);
Decomposition read_decomposition(const std::filesystem::path& directory,
                                 const FilterBank& bank);
/// Reads back just the bank configuration stored in a decomposition manifest.
BankConfig read_decomposition_config(const std::filesystem::path& directory);

}  // namespace twfpd
