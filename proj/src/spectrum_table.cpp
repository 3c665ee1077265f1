#include "rnms/spectrum_table.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <complex>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "rnms/diffraction.hpp"
#include "rnms/errors.hpp"
#include "rnms/random_source.hpp"
#include "rnms/substitution.hpp"

namespace rnms {
namespace {

constexpr int kBlockSize = 64;

struct Moments {
  double count = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    count += 1.0;
    const double d = x - mean;
    mean += d / count;
    m2 += d * (x - mean);
  }

  void merge(const Moments& o) {
    if (o.count == 0.0) return;
    if (count == 0.0) {
      *this = o;
      return;
    }
    const double n = count + o.count;
    const double d = o.mean - mean;
    mean += d * o.count / n;
    m2 += o.m2 + d * d * count * o.count / n;
    count = n;
  }
};

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  if (ec != std::errc()) throw NumericError("cannot format value");
  return std::string(buf, end);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

template <typename T>
T parse_number(const std::string& s) {
  T value{};
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && s.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) throw ParameterError("malformed number in spectrum table: '" + s + "'");
  return value;
}

template <typename T>
std::optional<T> parse_optional(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_number<T>(s);
}

}  // namespace

std::vector<GridPoint> default_k_grid(int m, double k_max, int uniform_points, double star_cutoff) {
  if (uniform_points < 2) throw ParameterError("need at least two uniform grid points");
  std::vector<GridPoint> grid;
  grid.reserve(std::size_t(uniform_points));
  for (int i = 0; i < uniform_points; ++i) {
    grid.push_back({k_max * double(i) / double(uniform_points - 1), std::nullopt});
  }
  for (const auto& p : fourier_module_points(m, k_max, star_cutoff)) {
    if (p.value >= 0.0) grid.push_back({p.value, p.x});
  }
  std::stable_sort(grid.begin(), grid.end(), [](const GridPoint& a, const GridPoint& b) { return a.k < b.k; });
  // a uniform point that coincides with a module point gives way to the labelled one
  std::vector<GridPoint> merged;
  merged.reserve(grid.size());
  for (const auto& g : grid) {
    if (!merged.empty() && merged.back().k == g.k && !merged.back().module_point) merged.pop_back();
    merged.push_back(g);
  }
  return merged;
}

std::string level_word(int m, const ProbabilityVector& probs, int n, std::uint64_t seed) {
  if (n < 0) throw ParameterError("level must be nonnegative");
  if (n == 0) return "b";
  RandomSource rng(seed);
  return iterate_random(m, probs, "a", n - 1, rng);
}

SpectrumTable mc_spectrum(int m, const ProbabilityVector& probs, int n, std::span<const GridPoint> grid,
                          int samples, std::uint64_t seed, unsigned threads) {
  probs.validate(m);
  if (samples < 1) throw ParameterError("samples must be at least 1");
  if (grid.empty()) throw ParameterError("k grid is empty");
  const NobleMeans<double> nm(m);
  const int blocks = (samples + kBlockSize - 1) / kBlockSize;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, unsigned(blocks));

  std::vector<std::vector<Moments>> block_moments(std::size_t(blocks), std::vector<Moments>(grid.size()));
  std::atomic<int> next_block{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    std::vector<double> xs;
    try {
      for (int b = next_block++; b < blocks; b = next_block++) {
        auto& acc = block_moments[std::size_t(b)];
        const int end = std::min(samples, (b + 1) * kBlockSize);
        for (int s = b * kBlockSize; s < end; ++s) {
          const std::string w = level_word(m, probs, n, derive_seed(seed, std::uint64_t(s)));
          xs.clear();
          double x = 0.0;
          for (char c : w) {
            xs.push_back(x);
            x += c == 'a' ? nm.lambda : 1.0;
          }
          const double span = x;
          for (std::size_t g = 0; g < grid.size(); ++g) {
            const double k = grid[g].k;
            std::complex<double> sum(0.0, 0.0);
            for (double xj : xs) sum += std::polar(1.0, -2.0 * std::numbers::pi * k * xj);
            acc[g].add(std::norm(sum) / span);
          }
        }
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  SpectrumTable table;
  table.rows.reserve(grid.size());
  const double p0 = probs[0];
  for (std::size_t g = 0; g < grid.size(); ++g) {
    Moments total;
    for (const auto& bm : block_moments) total.merge(bm[g]);
    SpectrumRow row;
    row.k = grid[g].k;
    row.module_point = grid[g].module_point;
    row.mc_mean = total.mean;
    row.mc_stderr = total.count > 1.0 ? std::sqrt(total.m2 / (total.count - 1.0) / total.count) : 0.0;
    if (m == 1 && n >= 1) row.pp = pp_estimate(row.k, n, p0);
    if (m == 1 && n >= 2) row.ac = std::max(0.0, ac_density(row.k, n, p0));
    table.rows.push_back(row);
  }
  return table;
}

void write_spectrum_csv(const SpectrumTable& table, std::ostream& out) {
  out << "k,pp,ac,mc_mean,mc_stderr,u,v\n";
  for (const auto& r : table.rows) {
    out << format_double(r.k) << ',' << (r.pp ? format_double(*r.pp) : "") << ','
        << (r.ac ? format_double(*r.ac) : "") << ',' << format_double(r.mc_mean) << ','
        << format_double(r.mc_stderr) << ',';
    if (r.module_point) out << r.module_point->u << ',' << r.module_point->v;
    else out << ',';
    out << '\n';
  }
}

SpectrumTable read_spectrum_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "k,pp,ac,mc_mean,mc_stderr,u,v") {
    throw ParameterError("spectrum CSV header missing or malformed");
  }
  SpectrumTable table;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 7) throw ParameterError("spectrum CSV row must have 7 cells: " + line);
    SpectrumRow r;
    r.k = parse_number<double>(cells[0]);
    r.pp = parse_optional<double>(cells[1]);
    r.ac = parse_optional<double>(cells[2]);
    r.mc_mean = parse_number<double>(cells[3]);
    r.mc_stderr = parse_number<double>(cells[4]);
    if (cells[5].empty() != cells[6].empty()) throw ParameterError("u and v must both be present or both empty");
    if (!cells[5].empty()) {
      r.module_point = QuadraticInteger{parse_number<std::int64_t>(cells[5]), parse_number<std::int64_t>(cells[6])};
    }
    table.rows.push_back(r);
  }
  return table;
}

void write_spectrum_json(const SpectrumTable& table, std::ostream& out) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : table.rows) {
    nlohmann::json row{{"k", r.k}, {"mc_mean", r.mc_mean}, {"mc_stderr", r.mc_stderr}};
    row["pp"] = r.pp ? nlohmann::json(*r.pp) : nlohmann::json(nullptr);
    row["ac"] = r.ac ? nlohmann::json(*r.ac) : nlohmann::json(nullptr);
    row["module_point"] = r.module_point ? nlohmann::json{r.module_point->u, r.module_point->v} : nlohmann::json(nullptr);
    rows.push_back(std::move(row));
  }
  out << nlohmann::json{{"rows", rows}}.dump(2) << '\n';
}

SpectrumTable read_spectrum_json(std::istream& in) {
  SpectrumTable table;
  try {
    const auto doc = nlohmann::json::parse(in);
    for (const auto& row : doc.at("rows")) {
      SpectrumRow r;
      r.k = row.at("k").get<double>();
      r.mc_mean = row.at("mc_mean").get<double>();
      r.mc_stderr = row.at("mc_stderr").get<double>();
      if (!row.at("pp").is_null()) r.pp = row["pp"].get<double>();
      if (!row.at("ac").is_null()) r.ac = row["ac"].get<double>();
      if (const auto& mp = row.at("module_point"); !mp.is_null()) {
        r.module_point = QuadraticInteger{mp.at(0).get<std::int64_t>(), mp.at(1).get<std::int64_t>()};
      }
      table.rows.push_back(r);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed spectrum JSON: ") + e.what());
  }
  return table;
}

void spectrum_export(const SpectrumTable& table, const std::filesystem::path& path, SpectrumFormat format) {
  if (table.rows.empty()) throw ParameterError("refusing to export an empty spectrum table");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  if (format == SpectrumFormat::Csv) write_spectrum_csv(table, out);
  else write_spectrum_json(table, out);
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

SpectrumTable spectrum_import(const std::filesystem::path& path, SpectrumFormat format) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string() + " for reading");
  return format == SpectrumFormat::Csv ? read_spectrum_csv(in) : read_spectrum_json(in);
}

}  // namespace rnms
