#include "doctest.h"

#include "equipart/geometry.hpp"
#include "equipart/graycode.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <random>
#include <set>

using namespace equipart;
using namespace equipart::gray;

namespace {

// Independent count of undirected Hamiltonian cycles of Q_n: closed walks from 0 over all
// vertices, each cycle found once per direction.
long long count_cycles(int n) {
  const unsigned total = 1U << n;
  std::vector<bool> used(total, false);
  long long found = 0;
  std::function<void(unsigned, unsigned)> go = [&](unsigned v, unsigned depth) {
    if (depth == total) {
      if (std::popcount(v) == 1) ++found;
      return;
    }
    for (int b = 0; b < n; ++b) {
      const unsigned w = v ^ (1U << b);
      if (used[w]) continue;
      used[w] = true;
      go(w, depth + 1);
      used[w] = false;
    }
  };
  used[0] = true;
  go(0, 1);
  return found / 2;
}

// Least element of the orbit, generated by listing every group element explicitly.
std::vector<unsigned> orbit_min(const GrayCycle& c, bool rot, bool rev, bool perm, bool comp) {
  const std::size_t total = c.words.size();
  std::vector<int> p(static_cast<std::size_t>(c.n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<unsigned> best;
  do {
    for (unsigned mask = 0; mask < (comp ? 1U << c.n : 1U); ++mask)
      for (int r = 0; r < (rev ? 2 : 1); ++r)
        for (std::size_t s = 0; s < (rot ? total : 1); ++s) {
          std::vector<unsigned> w(total);
          for (std::size_t j = 0; j < total; ++j) {
            const unsigned src = c.words[r ? (total - j) % total : j];
            unsigned out = 0;
            for (int b = 0; b < c.n; ++b)
              if (src >> b & 1U) out |= 1U << p[static_cast<std::size_t>(b)];
            w[j] = out ^ mask;
          }
          std::rotate(w.begin(), w.begin() + static_cast<long>(s), w.end());
          if (best.empty() || w < best) best = w;
        }
  } while (perm && std::next_permutation(p.begin(), p.end()));
  return best;
}

GrayCycle relabel(const GrayCycle& c, const std::vector<int>& perm) {
  GrayCycle out{c.n, {}};
  for (unsigned w : c.words) {
    unsigned v = 0;
    for (int b = 0; b < c.n; ++b)
      if (w >> b & 1U) v |= 1U << perm[static_cast<std::size_t>(b)];
    out.words.push_back(v);
  }
  return out;
}

}  // namespace

TEST_CASE("cycle counts agree with an independent search") {
  CHECK(count_cycles(2) == 1);
  CHECK(count_cycles(3) == 6);
  CHECK(count_cycles(4) == 1344);
  for (int n = 2; n <= 4; ++n) {
    const Enumeration e = enumerate_cycles(n);
    CHECK(static_cast<long long>(e.undirected) == count_cycles(n));
    CHECK(e.raw == 2 * e.undirected);
    std::set<std::vector<unsigned>> distinct;
    for (const GrayCycle& c : e.cycles) {
      CHECK(is_valid(c));
      CHECK(c.words.front() == 0);
      distinct.insert(c.words);
    }
    CHECK(distinct.size() == e.raw);
  }
  CHECK_THROWS_AS(enumerate_cycles(5), InputError);
}

TEST_CASE("balance") {
  const GrayCycle sq{2, {0, 1, 3, 2}};
  const Balance b = is_balanced(sq);
  CHECK(b.balanced);
  CHECK(b.counts == std::vector<int>{2, 2});
  const Balance r = is_balanced(reflected_code(4));
  CHECK_FALSE(r.balanced);
  std::vector<int> counts = r.counts;
  std::sort(counts.rbegin(), counts.rend());
  CHECK(counts == std::vector<int>{8, 4, 2, 2});
  for (const GrayCycle& c : enumerate_cycles(3).cycles) CHECK_FALSE(is_balanced(c).balanced);
}

TEST_CASE("validation and transitions") {
  CHECK_THROWS_AS(validate(GrayCycle{2, {0, 1, 2, 3}}), InputError);
  CHECK_THROWS_AS(validate(GrayCycle{2, {0, 1, 3}}), InputError);
  const GrayCycle g = reflected_code(4);
  CHECK(from_transitions(4, transitions(g), g.words.front()) == g);
  CHECK_THROWS_AS(from_transitions(2, {0, 0, 1, 1}), InputError);
  CHECK(word_string(0b0010, 4) == "0100");
}

TEST_CASE("canonical form matches explicit orbit enumeration") {
  const auto cycles = enumerate_cycles(4).cycles;
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const GrayCycle& c = cycles[rng() % cycles.size()];
    const int bits = static_cast<int>(rng() % 16);
    const SymmetryGroupSpec g{(bits & 1) != 0, (bits & 2) != 0, (bits & 4) != 0, (bits & 8) != 0};
    CHECK(canonical_form(c, g).words == orbit_min(c, g.rotation, g.reversal, g.permutation, g.complement));
  }
}

TEST_CASE("canonical form basics") {
  const GrayCycle sq{2, {0, 1, 3, 2}};
  SymmetryGroupSpec rot{true, false, false, false};
  CHECK(canonical_form(sq, rot) == sq);
  const GrayCycle rev{2, {0, 2, 3, 1}};
  SymmetryGroupSpec rr{true, true, false, false};
  CHECK(canonical_form(sq, rr) == canonical_form(rev, rr));
  const GrayCycle code = canonical_balanced_code();
  CHECK(canonical_form(relabel(code, {2, 0, 3, 1}), SymmetryGroupSpec::full()) == code);
}

TEST_CASE("equivalence from canonical forms is an equivalence relation") {
  const auto cycles = enumerate_cycles(4).cycles;
  std::mt19937_64 rng(42);
  const SymmetryGroupSpec g{true, false, true, false};
  for (int trial = 0; trial < 200; ++trial) {
    const GrayCycle& a = cycles[rng() % cycles.size()];
    const GrayCycle b = canonical_form(a, g);
    const GrayCycle c = relabel(a, {1, 3, 0, 2});
    CHECK(canonical_form(b, g) == b);
    CHECK(canonical_form(c, g) == b);
  }
}

TEST_CASE("balanced 4-bit codes form one class") {
  const Classification cl = classify_balanced(4);
  CHECK(cl.classes.size() == 1);
  std::size_t raw = 0;
  for (const GrayCycle& c : enumerate_cycles(4).cycles) raw += is_balanced(c).balanced;
  CHECK(cl.raw_balanced == raw);
  REQUIRE(cl.subgroups.size() == 16);
  // Adding generators never splits classes.
  for (const auto& small : cl.subgroups)
    for (const auto& big : cl.subgroups) {
      const bool contained = (!small.group.rotation || big.group.rotation) && (!small.group.reversal || big.group.reversal) &&
                             (!small.group.permutation || big.group.permutation) && (!small.group.complement || big.group.complement);
      if (contained) CHECK(big.classes <= small.classes);
    }
  CHECK(classify_balanced(2).classes.size() == 1);
  CHECK(classify_balanced(3).classes.empty());
}

TEST_CASE("reversal equals a two-track transposition") {
  const GrayCycle code = canonical_balanced_code();
  const SwapCheck s = reversal_swap_check(code);
  CHECK(s.holds);
  REQUIRE_FALSE(s.pairs.empty());
  CHECK_THROWS_AS(reversal_swap_check(reflected_code(4)), InputError);
  // Relabelling the tracks conjugates the pair.
  const std::vector<int> perm{3, 1, 0, 2};
  const SwapCheck t = reversal_swap_check(relabel(code, perm));
  CHECK(t.holds);
  for (const auto& [a, b] : s.pairs) {
    const auto pa = std::minmax(perm[static_cast<std::size_t>(a)], perm[static_cast<std::size_t>(b)]);
    CHECK(std::find(t.pairs.begin(), t.pairs.end(), std::pair<int, int>(pa.first, pa.second)) != t.pairs.end());
  }
}
