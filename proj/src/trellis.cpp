#include "irscep/trellis.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace irscep {

namespace {

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t limit,
                          const char* what) {
  std::uint64_t v = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    v *= base;
    if (v > limit) {
      std::ostringstream os;
      os << what << ": state space " << base << "^" << exp << " exceeds guard " << limit;
      throw std::invalid_argument(os.str());
    }
  }
  return v;
}

void validate_spec(const TrellisSpec& spec) {
  if (spec.n == 0) throw std::invalid_argument("trellis: n must be >= 1");
  if (spec.alphabet_size < 2) throw std::invalid_argument("trellis: alphabet_size must be >= 2");
  if (spec.alphabet.size() != spec.alphabet_size)
    throw std::invalid_argument("trellis: alphabet values length mismatch");
  if (spec.memory < 1 || spec.memory > spec.n)
    throw std::invalid_argument("trellis: memory must satisfy 1 <= m <= n");
  if (!spec.term) throw std::invalid_argument("trellis: term callback missing");
}

bool lex_less(std::span<const int> a_head, int a_tail, std::span<const int> b) {
  // Compares (a_head, a_tail) against b, both of length a_head.size() + 1.
  for (std::size_t i = 0; i < a_head.size(); ++i) {
    if (a_head[i] != b[i]) return a_head[i] < b[i];
  }
  return a_tail < b[a_head.size()];
}

}  // namespace

TrellisResult trellis_minimize(const TrellisSpec& spec) {
  validate_spec(spec);
  const std::uint64_t states =
      checked_pow(spec.alphabet_size, spec.memory, 1ull << 20, "trellis_minimize");
  const std::size_t a = spec.alphabet_size;
  const std::size_t m = spec.memory;

  struct Survivor {
    std::vector<int> path;
    double cum = std::numeric_limits<double>::infinity();
    bool alive = false;
  };

  // Seed: one state per permutation of the first m labels, benchmarked with
  // the first m terms (all pairwise interactions among them included).
  std::vector<Survivor> cur(states);
  std::vector<cplx> vals(spec.n);
  for (std::uint64_t sid = 0; sid < states; ++sid) {
    Survivor& s = cur[sid];
    s.path.resize(m);
    std::uint64_t rem = sid;
    for (std::size_t pos = m; pos-- > 0;) {
      s.path[pos] = static_cast<int>(rem % a);
      rem /= a;
    }
    for (std::size_t k = 0; k < m; ++k) vals[k] = spec.alphabet[s.path[k]];
    s.cum = 0.0;
    for (std::size_t k = 0; k < m; ++k)
      s.cum += spec.term(k, std::span<const cplx>(vals.data(), k + 1));
    s.alive = true;
  }

  const std::uint64_t shift = states / a;  // a^{m-1}
  std::uint64_t comparisons = 0;
  std::vector<Survivor> next(states);

  for (std::size_t k = m; k < spec.n; ++k) {
    for (auto& s : next) {
      s.alive = false;
      s.cum = std::numeric_limits<double>::infinity();
    }
    for (std::uint64_t sid = 0; sid < states; ++sid) {
      const Survivor& src = cur[sid];
      if (!src.alive) continue;
      for (std::size_t i = 0; i < k; ++i) vals[i] = spec.alphabet[src.path[i]];
      const std::uint64_t base = (sid % shift) * a;
      for (std::size_t lab = 0; lab < a; ++lab) {
        vals[k] = spec.alphabet[lab];
        const double cand = src.cum + spec.term(k, std::span<const cplx>(vals.data(), k + 1));
        ++comparisons;
        Survivor& dst = next[base + lab];
        const bool take =
            !dst.alive || cand < dst.cum ||
            (cand == dst.cum && lex_less(src.path, static_cast<int>(lab), dst.path));
        if (take) {
          dst.path.assign(src.path.begin(), src.path.end());
          dst.path.push_back(static_cast<int>(lab));
          dst.cum = cand;
          dst.alive = true;
        }
      }
    }
    cur.swap(next);
  }

  const Survivor* best = nullptr;
  for (const Survivor& s : cur) {
    if (!s.alive) continue;
    if (!best || s.cum < best->cum ||
        (s.cum == best->cum && s.path < best->path)) {
      best = &s;
    }
  }

  TrellisResult out;
  out.assignment = best->path;
  out.objective = best->cum;
  out.comparisons = comparisons;
  return out;
}

TrellisResult exhaustive_minimize(const TrellisSpec& spec) {
  validate_spec(spec);
  const std::uint64_t total =
      checked_pow(spec.alphabet_size, spec.n, 1ull << 24, "exhaustive_minimize");

  std::vector<int> labels(spec.n, 0);
  std::vector<cplx> vals(spec.n);
  std::vector<double> cum(spec.n + 1, 0.0);
  std::vector<int> best_labels;
  double best_obj = std::numeric_limits<double>::infinity();

  // Depth-first in label order: the first optimum found is lexicographically
  // smallest, so strict improvement implements the tie-break.
  const std::function<void(std::size_t)> walk = [&](std::size_t k) {
    if (k == spec.n) {
      if (cum[spec.n] < best_obj) {
        best_obj = cum[spec.n];
        best_labels = labels;
      }
      return;
    }
    for (std::size_t lab = 0; lab < spec.alphabet_size; ++lab) {
      labels[k] = static_cast<int>(lab);
      vals[k] = spec.alphabet[lab];
      cum[k + 1] = cum[k] + spec.term(k, std::span<const cplx>(vals.data(), k + 1));
      walk(k + 1);
    }
  };
  walk(0);

  TrellisResult out;
  out.assignment = std::move(best_labels);
  out.objective = best_obj;
  out.comparisons = total;
  return out;
}

std::uint64_t comparison_count(const SystemConfig& cfg) {
  cfg.validate();
  const auto ipow = [](std::uint64_t b, std::uint64_t e) {
    std::uint64_t v = 1;
    for (std::uint64_t i = 0; i < e; ++i) v *= b;
    return v;
  };
  std::uint64_t count = 0;
  count += static_cast<std::uint64_t>(cfg.bs_antennas - cfg.bs_memory) *
           ipow(cfg.bs_alphabet, cfg.bs_memory + 1);
  if (cfg.irs_elements > 0)
    count += static_cast<std::uint64_t>(cfg.irs_elements - cfg.irs_memory) *
             ipow(cfg.irs_alphabet, cfg.irs_memory + 1);
  return count;
}

}  // namespace irscep
