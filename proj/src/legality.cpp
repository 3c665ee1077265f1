#include "rnms/legality.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_set>

#include "rnms/errors.hpp"
#include "rnms/substitution.hpp"

namespace rnms {
namespace {

using WordSet = std::unordered_set<Word>;

// Insert every length-`ell` window of every realization of zeta_m(u) into `out`.
// Realizations are explored letter by letter while only the last ell - 1 letters of each
// partial image are kept, so paths that agree on that tail are merged.
void add_image_windows(const std::vector<Word>& a_images, const Word& u, std::size_t ell,
                       WordSet& out) {
  WordSet tails{Word()};
  WordSet next;
  for (char c : u) {
    next.clear();
    for (const Word& t : tails) {
      auto extend = [&](const Word& img) {
        Word s = t + img;
        for (std::size_t end = t.size(); end < s.size(); ++end) {
          if (end + 1 >= ell) out.insert(s.substr(end + 1 - ell, ell));
        }
        next.insert(s.size() >= ell ? s.substr(s.size() - (ell - 1)) : s);
      };
      if (c == 'a') {
        for (const Word& img : a_images) extend(img);
      } else {
        extend("a");
      }
    }
    tails.swap(next);
  }
}

std::vector<Word> compute_legal_words(int m, std::size_t ell, const LegalityLimits& limits) {
  std::vector<Word> a_images;
  for (int i = 0; i <= m; ++i) a_images.push_back(rule_image_of_a(m, i));

  // Seed with the ell-factors of one long legal word. Each ell-window of zeta(x), |x| >= ell,
  // lies inside zeta(u) for some ell-factor u of x, so the map S -> windows(zeta(S)) is exact
  // on ell-words and its least fixed point above the seed is the full set D_{m,ell}.
  Word seed = "a";
  while (seed.size() < ell + 1) seed = deterministic_substitute(m, 0, seed);

  WordSet known;
  std::vector<Word> frontier;
  for (std::size_t k = 0; k + ell <= seed.size(); ++k) {
    if (known.insert(seed.substr(k, ell)).second) frontier.push_back(seed.substr(k, ell));
  }

  WordSet produced;
  while (!frontier.empty()) {
    produced.clear();
    for (const Word& u : frontier) add_image_windows(a_images, u, ell, produced);
    frontier.clear();
    for (const Word& w : produced) {
      if (known.insert(w).second) frontier.push_back(w);
    }
    if (known.size() > limits.max_words) {
      throw ResourceError("legal word closure for m=" + std::to_string(m) + ", length " +
                          std::to_string(ell) + " exceeds " + std::to_string(limits.max_words) +
                          " words");
    }
  }

  std::vector<Word> sorted(known.begin(), known.end());
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}

struct Cache {
  std::mutex mutex;
  std::map<std::pair<int, int>, std::shared_ptr<const std::vector<Word>>> entries;
};

Cache& cache() {
  static Cache c;
  return c;
}

}  // namespace

const std::vector<Word>& legal_words(int m, int ell, const LegalityLimits& limits) {
  if (m < 1) throw ParameterError("m must be a positive integer");
  if (ell < 1) throw ParameterError("word length must be positive");
  Cache& c = cache();
  {
    std::lock_guard lock(c.mutex);
    auto it = c.entries.find({m, ell});
    if (it != c.entries.end()) return *it->second;
  }
  auto words = std::make_shared<const std::vector<Word>>(
      compute_legal_words(m, static_cast<std::size_t>(ell), limits));
  std::lock_guard lock(c.mutex);
  auto [it, inserted] = c.entries.emplace(std::pair{m, ell}, std::move(words));
  return *it->second;
}

bool is_legal(int m, const Word& w, const LegalityLimits& limits) {
  if (!is_word(w)) throw ParameterError("word contains a letter other than a, b");
  if (w.empty()) return true;
  const auto& words = legal_words(m, static_cast<int>(w.size()), limits);
  return std::binary_search(words.begin(), words.end(), w);
}

std::ptrdiff_t legal_index(int m, const Word& w) {
  if (w.empty()) return -1;
  const auto& words = legal_words(m, static_cast<int>(w.size()));
  auto it = std::lower_bound(words.begin(), words.end(), w);
  if (it == words.end() || *it != w) return -1;
  return it - words.begin();
}

}  // namespace rnms
