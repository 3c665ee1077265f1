#include "rnms/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

#include "rnms/errors.hpp"
#include "rnms/legality.hpp"
#include "rnms/noble_means.hpp"

namespace rnms {
namespace {

struct Level {
  std::size_t word_length = 0;
  std::vector<Word> words;  // sorted
  std::unordered_set<Word> members;
};
using LevelPtr = std::shared_ptr<const Level>;

// Visit every concatenation b_0 b_1 ... b_k with b_j drawn from blocks[j].
template <typename Visit>
void for_each_product(const std::vector<const std::vector<Word>*>& blocks, Visit&& visit) {
  Word buffer;
  auto recurse = [&](auto&& self, std::size_t depth) -> void {
    if (depth == blocks.size()) {
      visit(static_cast<const Word&>(buffer));
      return;
    }
    const std::size_t mark = buffer.size();
    for (const Word& piece : *blocks[depth]) {
      buffer += piece;
      self(self, depth + 1);
      buffer.resize(mark);
    }
  };
  recurse(recurse, 0);
}

std::vector<const std::vector<Word>*> split_blocks(int m, int i, const Level& prev, const Level& prev2) {
  std::vector<const std::vector<Word>*> blocks;
  for (int j = 0; j <= m; ++j) blocks.push_back(j == i ? &prev2.words : &prev.words);
  return blocks;
}

// w in G_{n-1}^j G_{n-2} G_{n-1}^{m-j} ?
bool in_split(const Word& w, int m, int j, const Level& prev, const Level& prev2) {
  std::size_t pos = 0;
  for (int t = 0; t <= m; ++t) {
    const Level& lv = (t == j) ? prev2 : prev;
    if (!lv.members.contains(w.substr(pos, lv.word_length))) return false;
    pos += lv.word_length;
  }
  return true;
}

// Every word of G_n exactly once, from stored G_{n-1} and G_{n-2}: a word produced by split i
// is reported only if no earlier split j < i also produces it.
template <typename Visit>
void stream_distinct(int m, const Level& prev, const Level& prev2, Visit&& visit) {
  for (int i = 0; i <= m; ++i) {
    for_each_product(split_blocks(m, i, prev, prev2), [&](const Word& w) {
      for (int j = 0; j < i; ++j) {
        if (in_split(w, m, j, prev, prev2)) return;
      }
      visit(w);
    });
  }
}

double projected_letters(int m, const Level& prev, const Level& prev2, std::uint64_t length) {
  return double(m + 1) * std::pow(double(prev.words.size()), m) * double(prev2.words.size()) *
         double(length);
}

class Store {
 public:
  explicit Store(int m) : m_(m) {}

  // G_n if it can be held within limits, nullptr otherwise.
  LevelPtr get(int n, const GenerationLimits& limits) {
    std::lock_guard lock(mutex_);
    return get_locked(n, limits);
  }

 private:
  LevelPtr get_locked(int n, const GenerationLimits& limits) {
    if (auto it = levels_.find(n); it != levels_.end()) {
      const Level& cached = *it->second;
      if (double(cached.words.size()) * double(cached.word_length) > limits.max_stored_letters) return nullptr;
      return it->second;
    }
    auto level = std::make_shared<Level>();
    if (n == 1 || n == 2) {
      level->word_length = 1;
      level->words = {n == 1 ? Word("b") : Word("a")};
    } else if (n >= 3) {
      LevelPtr prev = get_locked(n - 1, limits);
      if (!prev) return nullptr;
      LevelPtr prev2 = get_locked(n - 2, limits);
      if (!prev2) return nullptr;
      level->word_length = std::size_t(m_) * prev->word_length + prev2->word_length;
      if (projected_letters(m_, *prev, *prev2, level->word_length) > limits.max_stored_letters) {
        return nullptr;
      }
      std::unordered_set<Word> all;
      for (int i = 0; i <= m_; ++i) {
        for_each_product(split_blocks(m_, i, *prev, *prev2), [&](const Word& w) { all.insert(w); });
      }
      level->words.assign(all.begin(), all.end());
      std::sort(level->words.begin(), level->words.end());
    }
    level->members.insert(level->words.begin(), level->words.end());
    levels_[n] = level;
    return level;
  }

  int m_;
  std::mutex mutex_;
  std::map<int, LevelPtr> levels_;
};

Store& store_for(int m) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<Store>> stores;
  std::lock_guard lock(mutex);
  auto& slot = stores[m];
  if (!slot) slot = std::make_unique<Store>(m);
  return *slot;
}

void check_level(int m, int n) {
  if (m < 1) throw ParameterError("m must be a positive integer");
  if (n < 0) throw ParameterError("generation level must be nonnegative");
}

int largest_stored_level(int m, const GenerationLimits& limits) {
  int n = 2;
  while (store_for(m).get(n + 1, limits)) ++n;
  return n;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw NumericError("generation count overflows 64 bits");
  return r;
}

enum class CountPlan { Stored, Overlap, Streaming, Infeasible };

CountPlan plan_count(int m, int n, const GenerationLimits& limits) {
  Store& store = store_for(m);
  if (n <= 2 || store.get(n, limits)) return CountPlan::Stored;
  const auto lengths = generation_lengths(m, n);
  if (m == 1 && n >= 5) {
    LevelPtr prev2 = store.get(n - 2, limits);
    if (prev2) {
      if (store.get(n - 1, limits)) return CountPlan::Overlap;
      LevelPtr prev3 = store.get(n - 3, limits);
      const double work = 4.0 * double(prev2->words.size()) * double(prev3->words.size()) *
                          double(lengths[std::size_t(n - 1)]);
      if (work <= limits.max_streamed_letters) return CountPlan::Overlap;
    }
    return CountPlan::Infeasible;
  }
  LevelPtr prev = store.get(n - 1, limits);
  LevelPtr prev2 = prev ? store.get(n - 2, limits) : nullptr;
  if (prev && prev2 &&
      projected_letters(m, *prev, *prev2, lengths[std::size_t(n)]) <= limits.max_streamed_letters) {
    return CountPlan::Streaming;
  }
  return CountPlan::Infeasible;
}

// m = 1: |G_n| = |P_0| + |P_1| - |P_0 ∩ P_1| with P_1 = G_{n-1}G_{n-2}, P_0 = G_{n-2}G_{n-1}.
// A word x y (x in G_{n-1}, y in G_{n-2}) lies in P_0 iff x starts with a G_{n-2} word and
// s y is in G_{n-1}, where s is the last l_{n-3} letters of x. G_{n-1} is only iterated,
// either from storage or streamed from G_{n-2}, G_{n-3}.
std::uint64_t count_by_overlap(int n, const GenerationLimits& limits) {
  Store& store = store_for(1);
  const auto lengths = generation_lengths(1, n);
  const std::size_t len_prev2 = lengths[std::size_t(n - 2)];
  const std::size_t len_prev3 = lengths[std::size_t(n - 3)];
  LevelPtr prev2 = store.get(n - 2, limits);
  LevelPtr prev = store.get(n - 1, limits);

  auto for_each_prev = [&](auto&& visit) {
    if (prev) {
      for (const Word& w : prev->words) visit(w);
    } else {
      LevelPtr prev3 = store.get(n - 3, limits);
      stream_distinct(1, *prev2, *prev3, visit);
    }
  };

  std::unordered_map<Word, std::uint64_t> completions;
  std::uint64_t prev_size = 0;
  for_each_prev([&](const Word& z) {
    ++prev_size;
    if (prev2->members.contains(z.substr(len_prev3))) ++completions[z.substr(0, len_prev3)];
  });
  std::uint64_t overlap = 0;
  for_each_prev([&](const Word& x) {
    if (!prev2->members.contains(x.substr(0, len_prev2))) return;
    if (auto it = completions.find(x.substr(len_prev2)); it != completions.end()) overlap += it->second;
  });
  return checked_mul(2, checked_mul(prev_size, prev2->words.size())) - overlap;
}

}  // namespace

std::vector<std::uint64_t> generation_lengths(int m, int n_max) {
  if (m < 1) throw ParameterError("m must be a positive integer");
  if (n_max < 0) throw ParameterError("n_max must be nonnegative");
  std::vector<std::uint64_t> len{0, 1, 1};
  for (int n = 3; n <= n_max; ++n) {
    std::uint64_t next;
    if (__builtin_mul_overflow(std::uint64_t(m), len[std::size_t(n - 1)], &next) ||
        __builtin_add_overflow(next, len[std::size_t(n - 2)], &next)) {
      throw NumericError("generation length overflows 64 bits");
    }
    len.push_back(next);
  }
  len.resize(std::size_t(n_max) + 1);
  return len;
}

GenerationSet generation_set(int m, int n, const GenerationLimits& limits) {
  check_level(m, n);
  GenerationSet out;
  out.level = n;
  if (n == 0) return out;
  LevelPtr level = store_for(m).get(n, limits);
  if (!level) {
    throw ResourceError("generation set G_" + std::to_string(n) + " for m=" + std::to_string(m) +
                        " exceeds the storage cap of " + std::to_string(limits.max_stored_letters) +
                        " letters; largest feasible n is " + std::to_string(largest_stored_level(m, limits)));
  }
  out.word_length = level->word_length;
  out.words = level->words;
  return out;
}

std::uint64_t generation_count(int m, int n, const GenerationLimits& limits) {
  check_level(m, n);
  if (n == 0) return 0;
  switch (plan_count(m, n, limits)) {
    case CountPlan::Stored:
      return store_for(m).get(n, limits)->words.size();
    case CountPlan::Overlap:
      return count_by_overlap(n, limits);
    case CountPlan::Streaming: {
      Store& store = store_for(m);
      LevelPtr prev = store.get(n - 1, limits);
      LevelPtr prev2 = store.get(n - 2, limits);
      std::uint64_t count = 0;
      stream_distinct(m, *prev, *prev2, [&](const Word&) { ++count; });
      return count;
    }
    case CountPlan::Infeasible:
      break;
  }
  throw ResourceError("counting G_" + std::to_string(n) + " for m=" + std::to_string(m) +
                      " exceeds the configured limits; largest feasible n is " +
                      std::to_string(largest_countable_level(m, limits)));
}

int largest_countable_level(int m, const GenerationLimits& limits) {
  check_level(m, 0);
  int n = 2;
  while (plan_count(m, n + 1, limits) != CountPlan::Infeasible) ++n;
  return n;
}

double empirical_entropy(int m, int n, const GenerationLimits& limits) {
  if (n < 3) throw ParameterError("empirical entropy needs n >= 3");
  const std::uint64_t count = generation_count(m, n, limits);
  return std::log(double(count)) / double(generation_lengths(m, n)[std::size_t(n)]);
}

EntropyResult entropy_series(int m, double tol) {
  if (!(tol > 0.0)) throw ParameterError("tolerance must be positive");
  const NobleMeans<double> nm(m);
  const double prefactor = (nm.lambda - 1.0) / (1.0 - nm.lambda_conj);

  // Neumaier-compensated partial sum.
  double sum = 0.0, compensation = 0.0;
  double inv_power = 1.0 / nm.lambda;  // lambda^{-i}
  EntropyResult r;
  for (int i = 2;; ++i) {
    inv_power /= nm.lambda;
    const double term = std::log(double(m) * double(i - 1) + 1.0) * inv_power;
    const double t = sum + term;
    compensation += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;

    // Tail i' > i: log(m(i'-1)+1) <= sqrt(m i'), and consecutive ratios of sqrt(m i')/lambda^i'
    // are at most sqrt((i+2)/(i+1))/lambda for i' > i.
    const double ratio = std::sqrt(double(i + 2) / double(i + 1)) / nm.lambda;
    if (ratio < 1.0) {
      const double first = std::sqrt(double(m) * double(i + 1)) * inv_power / nm.lambda;
      const double tail = prefactor * first / (1.0 - ratio);
      if (tail < tol) {
        r.value = prefactor * (sum + compensation);
        r.terms_used = i - 1;
        r.tail_bound = tail;
        return r;
      }
    }
  }
}

std::uint64_t complexity_formula(int m, int ell) {
  if (m < 1) throw ParameterError("m must be a positive integer");
  if (ell < m + 3 || ell > 2 * m + 2) {
    throw ParameterError("complexity formula holds only for m+3 <= l <= 2m+2 (m=" + std::to_string(m) +
                         ", l=" + std::to_string(ell) + ")");
  }
  const std::int64_t l = ell;
  const std::int64_t binomials = 1 + l + l * (l - 1) / 2 + l * (l - 1) * (l - 2) / 6;
  const std::int64_t correction = std::int64_t(m) * (m + 1) * (3 * l - 2 * m - 4);
  return std::uint64_t(binomials - correction / 6);
}

std::uint64_t complexity_exact(int m, int ell) { return legal_words(m, ell).size(); }

}  // namespace rnms
