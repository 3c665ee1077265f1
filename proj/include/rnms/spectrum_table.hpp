#ifndef RNMS_SPECTRUM_TABLE_HPP
#define RNMS_SPECTRUM_TABLE_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rnms/noble_means.hpp"
#include "rnms/quadratic_integer.hpp"

namespace rnms {

struct GridPoint {
  double k = 0.0;
  std::optional<QuadraticInteger> module_point;
};

struct SpectrumRow {
  double k = 0.0;
  std::optional<double> pp;  // |A_n|^2/L_n^2 (m = 1 only)
  std::optional<double> ac;  // B_n/L_n (m = 1, n >= 2 only)
  double mc_mean = 0.0;
  double mc_stderr = 0.0;
  std::optional<QuadraticInteger> module_point;

  friend bool operator==(const SpectrumRow&, const SpectrumRow&) = default;
};

struct SpectrumTable {
  std::vector<SpectrumRow> rows;

  friend bool operator==(const SpectrumTable&, const SpectrumTable&) = default;
};

/// `uniform_points` equally spaced k in [0, k_max] merged with all Fourier module points
/// in [0, k_max] whose star coordinate is at most `star_cutoff` in modulus; sorted by k.
std::vector<GridPoint> default_k_grid(int m, double k_max = 3.0, int uniform_points = 2000,
                                      double star_cutoff = 8.0);

/// The random word sampled at level n: `b` for n = 0, zeta_m^{n-1}(a) otherwise.
/// For m = 1 this is W_n of the concatenation model.
std::string level_word(int m, const ProbabilityVector& probs, int n, std::uint64_t seed);

/// Monte Carlo structure factor: for every k, mean and standard error over `samples`
/// independent level-n realizations of |sum_j exp(-2 pi i k x_j)|^2 / length, x_j the left
/// endpoints. Sample s uses seed derive_seed(seed, s). Samples are processed in fixed blocks
/// and merged in block order, so results do not depend on `threads` (0 = hardware).
/// For m = 1 the analytic pp and ac columns are filled in from the recursions at level n.
SpectrumTable mc_spectrum(int m, const ProbabilityVector& probs, int n, std::span<const GridPoint> grid,
                          int samples, std::uint64_t seed, unsigned threads = 1);

enum class SpectrumFormat { Csv, Json };

/// CSV columns k,pp,ac,mc_mean,mc_stderr,u,v with 17 significant digits; missing optional
/// values are empty cells.
void write_spectrum_csv(const SpectrumTable& table, std::ostream& out);
SpectrumTable read_spectrum_csv(std::istream& in);

void write_spectrum_json(const SpectrumTable& table, std::ostream& out);
SpectrumTable read_spectrum_json(std::istream& in);

/// Throws std::runtime_error naming `path` on I/O failure, ParameterError on an empty table.
void spectrum_export(const SpectrumTable& table, const std::filesystem::path& path, SpectrumFormat format);
SpectrumTable spectrum_import(const std::filesystem::path& path, SpectrumFormat format);

}  // namespace rnms

#endif  // RNMS_SPECTRUM_TABLE_HPP
