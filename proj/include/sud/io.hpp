#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "sud/block_merge.hpp"
#include "sud/finite_measure.hpp"
#include "sud/plj.hpp"
#include "sud/signed_sequence.hpp"

namespace sud::io {

/// Doubles rendered with 17 significant digits (lossless round trip).
std::string format_double(double v);

// JSON codecs; parsers are strict and reject unknown fields.
nlohmann::json plj_to_json(const plj_function& f);
plj_function plj_from_json(const nlohmann::json& j);

nlohmann::json measure_to_json(const finite_signed_measure& m);
finite_signed_measure measure_from_json(const nlohmann::json& j);

nlohmann::json plan_to_json(const block_plan& p);
block_plan plan_from_json(const nlohmann::json& j);

nlohmann::json load_json_file(const std::filesystem::path& path);
void save_json_file(const std::filesystem::path& path, const nlohmann::json& j);

// signed sequence CSV: header "step,x,eps"
void write_signed_csv(const std::filesystem::path& path, std::span<const signed_term> terms);
std::vector<signed_term> read_signed_csv(const std::filesystem::path& path);

/// Generic CSV: returns the header line and the raw data rows.
struct csv_table {
  std::string header;
  std::vector<std::string> rows;
};
csv_table read_csv(const std::filesystem::path& path);
void write_lines(const std::filesystem::path& path, const std::string& header,
                 const std::vector<std::string>& rows);

/// Resolves a relative output path against the SUD_OUT_DIR environment
/// variable when it is set.
std::filesystem::path resolve_output_path(const std::string& path);

} // namespace sud::io
