#ifndef BLF_IO_HPP
#define BLF_IO_HPP

/** @file
 * CSV and key-value text formats.
 *
 * Numbers are written in scientific notation with 17 significant digits, so
 * every double survives a write/read cycle unchanged.
 *
 * Spectrogram CSV: the first row is "t" followed by the frequency grid; each
 * following row is the 1-based time index followed by the natural-log
 * spectral density at each frequency.  Infinite cells are written as "inf".
 */

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "blf/selection.hpp"
#include "blf/simulate.hpp"
#include "blf/spectrum.hpp"

namespace blf {

std::string format_double(double v);

/// Numeric table with a header row.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

/// Reads the first column of a CSV file.  A non-numeric first line is taken
/// as a header.  Throws std::runtime_error naming the row on malformed input.
std::vector<double> read_series(const std::filesystem::path& path);
void write_series(const std::filesystem::path& path, std::span<const double> x);

Table read_table(const std::filesystem::path& path);
void write_table(const std::filesystem::path& path, const Table& table);

/// t, a_1..a_P, sigma2 and, for TVAR6, theta_1..theta_3.
void write_truth(const std::filesystem::path& path, const SimulatedProcess& p);

void write_spectrogram(const std::filesystem::path& path, const Spectrogram& sp);
/// Writes @p log_values (already on the log scale) in spectrogram layout.
void write_log_grid(const std::filesystem::path& path, std::span<const int> times,
                    std::span<const double> freqs, const Grid& log_values);

struct LogGrid {
    std::vector<int> times;
    std::vector<double> freqs;
    Grid values;
};
LogGrid read_log_grid(const std::filesystem::path& path);

void write_coefficients(const std::filesystem::path& path, const TvarFit& fit);
void write_variance(const std::filesystem::path& path, const TvarFit& fit);
void write_scree(const std::filesystem::path& path, const std::vector<ScreeRow>& rows);

using KeyValues = std::vector<std::pair<std::string, std::string>>;

KeyValues report_entries(const SelectionReport& report);
void write_key_values(const std::filesystem::path& path, const KeyValues& kv);
std::map<std::string, std::string> read_key_values(const std::filesystem::path& path);

}  // namespace blf

#endif  // BLF_IO_HPP
