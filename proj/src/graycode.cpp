#include "equipart/graycode.hpp"

#include "equipart/geometry.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

namespace equipart::gray {
namespace {

void check_n(int n) {
  if (n < 2 || n > 4) throw InputError("Gray code length must be between 2 and 4");
}

unsigned permute_bits(unsigned w, const std::vector<int>& perm) {
  unsigned out = 0;
  for (std::size_t k = 0; k < perm.size(); ++k)
    if (w >> k & 1U) out |= 1U << perm[k];
  return out;
}

void dfs(int n, unsigned cur, std::vector<unsigned>& path, std::vector<char>& seen, std::vector<GrayCycle>& out) {
  const std::size_t total = std::size_t{1} << n;
  if (path.size() == total) {
    if (std::popcount(cur) == 1) out.push_back(GrayCycle{n, path});
    return;
  }
  for (int k = 0; k < n; ++k) {
    const unsigned nxt = cur ^ (1U << k);
    if (seen[nxt]) continue;
    seen[nxt] = 1;
    path.push_back(nxt);
    dfs(n, nxt, path, seen, out);
    path.pop_back();
    seen[nxt] = 0;
  }
}

}  // namespace

void validate(const GrayCycle& c) {
  check_n(c.n);
  const std::size_t total = std::size_t{1} << c.n;
  if (c.words.size() != total) throw InputError("Gray cycle must list every codeword once");
  std::vector<char> seen(total, 0);
  for (std::size_t j = 0; j < total; ++j) {
    const unsigned w = c.words[j];
    if (w >= total || seen[w]++) throw InputError("Gray cycle repeats or leaves the cube");
    if (std::popcount(w ^ c.words[(j + 1) % total]) != 1) throw InputError("consecutive codewords must differ in one bit");
  }
}

bool is_valid(const GrayCycle& c) {
  try {
    validate(c);
    return true;
  } catch (const InputError&) {
    return false;
  }
}

std::vector<int> transitions(const GrayCycle& c) {
  validate(c);
  std::vector<int> t(c.words.size());
  for (std::size_t j = 0; j < c.words.size(); ++j)
    t[j] = std::countr_zero(c.words[j] ^ c.words[(j + 1) % c.words.size()]);
  return t;
}

GrayCycle from_transitions(int n, const std::vector<int>& flips, unsigned start) {
  check_n(n);
  GrayCycle c{n, {}};
  unsigned w = start;
  for (std::size_t j = 0; j < flips.size(); ++j) {
    if (flips[j] < 0 || flips[j] >= n) throw InputError("transition track out of range");
    c.words.push_back(w);
    w ^= 1U << flips[j];
  }
  if (w != start) throw InputError("transitions do not return to the start");
  validate(c);
  return c;
}

std::string word_string(unsigned w, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int k = 0; k < n; ++k)
    if (w >> k & 1U) s[static_cast<std::size_t>(k)] = '1';
  return s;
}

GrayCycle reflected_code(int n) {
  check_n(n);
  GrayCycle c{n, {}};
  for (unsigned i = 0; i < (1U << n); ++i) c.words.push_back(i ^ (i >> 1));
  return c;
}

Enumeration enumerate_cycles(int n) {
  check_n(n);
  Enumeration e;
  std::vector<unsigned> path{0};
  std::vector<char> seen(std::size_t{1} << n, 0);
  seen[0] = 1;
  dfs(n, 0, path, seen, e.cycles);
  std::sort(e.cycles.begin(), e.cycles.end());
  e.raw = e.cycles.size();
  e.undirected = e.raw / 2;
  return e;
}

Balance is_balanced(const GrayCycle& c) {
  Balance b;
  b.counts.assign(static_cast<std::size_t>(c.n), 0);
  for (int t : transitions(c)) ++b.counts[static_cast<std::size_t>(t)];
  const std::size_t total = c.words.size();
  b.balanced = total % static_cast<std::size_t>(c.n) == 0 &&
               std::all_of(b.counts.begin(), b.counts.end(),
                           [&](int k) { return static_cast<std::size_t>(k) == total / static_cast<std::size_t>(c.n); });
  return b;
}

std::string SymmetryGroupSpec::name() const {
  std::string s;
  auto add = [&](bool on, const char* what) {
    if (!on) return;
    if (!s.empty()) s += "+";
    s += what;
  };
  add(rotation, "rotation");
  add(reversal, "reversal");
  add(permutation, "permutation");
  add(complement, "complement");
  return s.empty() ? "trivial" : s;
}

GrayCycle canonical_form(const GrayCycle& c, const SymmetryGroupSpec& group) {
  validate(c);
  const int n = c.n;
  const std::size_t total = c.words.size();
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<unsigned> best;
  std::vector<unsigned> mapped(total), cand(total);
  const unsigned masks = group.complement ? (1U << n) : 1U;
  const int reversals = group.reversal ? 2 : 1;
  do {
    for (unsigned mask = 0; mask < masks; ++mask) {
      for (int rev = 0; rev < reversals; ++rev) {
        for (std::size_t j = 0; j < total; ++j) {
          const std::size_t src = rev ? (total - j) % total : j;
          mapped[j] = permute_bits(c.words[src], perm) ^ mask;
        }
        std::size_t start = 0;
        if (group.rotation) start = static_cast<std::size_t>(std::min_element(mapped.begin(), mapped.end()) - mapped.begin());
        for (std::size_t j = 0; j < total; ++j) cand[j] = mapped[(start + j) % total];
        if (best.empty() || cand < best) best = cand;
      }
    }
  } while (group.permutation && std::next_permutation(perm.begin(), perm.end()));
  return GrayCycle{n, best};
}

Classification classify_balanced(int n) {
  check_n(n);
  Classification cl;
  cl.n = n;
  std::vector<GrayCycle> balanced;
  for (const GrayCycle& c : enumerate_cycles(n).cycles)
    if (is_balanced(c).balanced) balanced.push_back(c);
  cl.raw_balanced = balanced.size();
  for (int bits = 0; bits < 16; ++bits) {
    SymmetryGroupSpec g{(bits & 1) != 0, (bits & 2) != 0, (bits & 4) != 0, (bits & 8) != 0};
    std::set<std::vector<unsigned>> forms;
    for (const GrayCycle& c : balanced) forms.insert(canonical_form(c, g).words);
    cl.subgroups.push_back({g, forms.size()});
    if (bits == 15)
      for (const auto& w : forms) cl.classes.push_back(GrayCycle{n, w});
  }
  return cl;
}

GrayCycle canonical_balanced_code() {
  static const GrayCycle code = [] {
    const Classification cl = classify_balanced(4);
    if (cl.classes.empty()) throw NumericalError("no balanced 4-bit Gray code found");
    return cl.classes.front();
  }();
  return code;
}

SwapCheck reversal_swap_check(const GrayCycle& c) {
  validate(c);
  if (c.n != 4 || !is_balanced(c).balanced) throw InputError("reversal check needs a balanced 4-bit Gray cycle");
  const std::size_t total = c.words.size();
  SwapCheck out;
  std::vector<unsigned> rev(total);
  for (std::size_t j = 0; j < total; ++j) rev[j] = c.words[(total - j) % total];
  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 4; ++b) {
      std::vector<int> perm{0, 1, 2, 3};
      std::swap(perm[static_cast<std::size_t>(a)], perm[static_cast<std::size_t>(b)]);
      bool found = false;
      for (unsigned mask = 0; mask < 16 && !found; ++mask) {
        for (std::size_t shift = 0; shift < total && !found; ++shift) {
          bool eq = true;
          for (std::size_t j = 0; j < total && eq; ++j)
            eq = (permute_bits(rev[(j + shift) % total], perm) ^ mask) == c.words[j];
          found = eq;
        }
      }
      if (found) out.pairs.emplace_back(a, b);
    }
  }
  out.holds = !out.pairs.empty();
  return out;
}

}  // namespace equipart::gray
