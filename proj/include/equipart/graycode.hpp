#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace equipart::gray {

/// Cyclic Gray code on {0,1}^n. Bit k of a codeword is track k (0-based).
struct GrayCycle {
  int n = 0;
  std::vector<unsigned> words;

  std::size_t size() const { return words.size(); }
  bool operator==(const GrayCycle& o) const { return n == o.n && words == o.words; }
  bool operator<(const GrayCycle& o) const { return words < o.words; }
};

/// Throws InputError unless the cycle visits all 2^n words once with single-bit steps.
void validate(const GrayCycle& c);
bool is_valid(const GrayCycle& c);

/// Track flipped between word j and word j+1 (cyclically), 0-based.
std::vector<int> transitions(const GrayCycle& c);
/// Replays flips from `start`; throws InputError when the flips do not form a Gray cycle.
GrayCycle from_transitions(int n, const std::vector<int>& flips, unsigned start = 0);

/// Codeword as a string, track 1 first: bit k is character k.
std::string word_string(unsigned w, int n);

GrayCycle reflected_code(int n);

struct Enumeration {
  std::vector<GrayCycle> cycles;  // directed cycles starting at 0, sorted
  std::size_t raw = 0;
  std::size_t undirected = 0;
};

/// Exhaustive depth-first search over the hypercube from 0^n; 2 <= n <= 4.
Enumeration enumerate_cycles(int n);

struct Balance {
  bool balanced = false;
  std::vector<int> counts;  // flips per track
};
Balance is_balanced(const GrayCycle& c);

struct SymmetryGroupSpec {
  bool rotation = true;
  bool reversal = true;
  bool permutation = true;
  bool complement = true;

  static SymmetryGroupSpec full() { return {}; }
  bool any() const { return rotation || reversal || permutation || complement; }
  std::string name() const;
};

/// Lexicographically least codeword sequence in the orbit of c under the enabled group.
/// Reversal keeps the first word and reads the rest backwards.
GrayCycle canonical_form(const GrayCycle& c, const SymmetryGroupSpec& group);

struct SubgroupCount {
  SymmetryGroupSpec group;
  std::size_t classes = 0;
};

struct Classification {
  int n = 0;
  std::size_t raw_balanced = 0;  // directed balanced cycles starting at 0
  std::vector<GrayCycle> classes;  // canonical representatives under the full group
  std::vector<SubgroupCount> subgroups;  // all 16 combinations of generators
};

/// Balanced cycles up to symmetry; n in {2, 3, 4}, empty for n = 3.
Classification classify_balanced(int n);

/// The canonical balanced 4-bit code (least representative under the full group).
GrayCycle canonical_balanced_code();

struct SwapCheck {
  bool holds = false;
  std::vector<std::pair<int, int>> pairs;  // 0-based track pairs that work
};

/// Whether reading the cycle backwards equals the cycle with two tracks transposed, up to
/// rotation and per-track complement. Requires a balanced 4-bit cycle.
SwapCheck reversal_swap_check(const GrayCycle& c);

}  // namespace equipart::gray
