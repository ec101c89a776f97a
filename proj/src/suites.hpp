#pragma once

// Randomized verification suites over the measure identities, the concave
// bound lemmas, the additivity results and the main inequality scan, with
// deterministic seeded reports (JSON + CSV).

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "rational.hpp"

namespace kummer {

struct Enclosure {
  Rational low, high;
};

struct TrialRecord {
  std::uint64_t index = 0;
  std::string verdict;  // "pass" | "fail" | "inconclusive"
  std::string inputs;
  std::optional<Enclosure> lhs, rhs;
  std::string note;
};

struct SuiteReport {
  std::string suite;
  std::map<std::string, std::string> params;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::uint64_t conclusive = 0;
  std::uint64_t passes = 0;
  bool oracle_mode = true;  // conclusive failures fail the run (exit code 1)
  std::vector<TrialRecord> records;
  std::string note;

  std::uint64_t failures() const { return conclusive - passes; }
  std::uint64_t inconclusive() const { return trials - conclusive; }
  std::string to_json() const;  // byte-stable for fixed (suite, params, seed)
  std::string to_csv() const;   // header + one row per trial
};

// Known suites: measures, lemma2.1, lemma2.2, lemma3.1 .. lemma3.6,
// lemma4.1, lemma4.2, lemma4.3, thm4.4, lemma5.2, thm1.1.
std::vector<std::string> suite_ids();

SuiteReport run_suite(const std::string& suite_id,
                      const std::map<std::string, std::string>& params,
                      std::uint64_t trials, std::uint64_t seed);

// Deterministic, platform-independent generator (splitmix64).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : s_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
  long range(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::uint64_t s_;
};

}  // namespace kummer
