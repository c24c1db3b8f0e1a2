#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "kmroots/io.hpp"

namespace kmroots::campaign {

enum class Suite { Dictionary, Lemma12, Intersection, Nilpotency, ClosureFinite, Filtration, Levi };
std::string to_string(Suite s);
std::optional<Suite> parse_suite(std::string_view name);
const std::vector<Suite>& all_suites();

/// Seed derivation: splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index).
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

/// std::mt19937_64 (its output sequence is fixed by the C++ standard) with a
/// rejection-sampled range reduction, so draws are portable across
/// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t next() { return eng_(); }
  /// Uniform in [0, n); n >= 1.
  std::uint64_t below(std::uint64_t n);
  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);

 private:
  std::mt19937_64 eng_;
};

inline constexpr std::string_view kGeneratorName = "mt19937_64";

/// Rank uniform in [min_rank, max_rank]; for i < j, a_ij uniform in [-4, 0],
/// a_ji = 0 when a_ij = 0 and uniform in [-4, -1] otherwise.
GCM random_gcm(Rng& rng, std::size_t min_rank, std::size_t max_rank);

struct CampaignConfig {
  Suite suite = Suite::Dictionary;
  /// Explicit matrices; when empty a pool of random GCMs is drawn.
  std::vector<GCM> gcms;
  /// Names echoed into the report (file paths, say).
  std::vector<std::string> gcm_sources;
  std::uint64_t seed = 0;
  /// nullopt means exhaustive ("all"), supported by the lemma12 suite on
  /// finite Weyl groups only.
  std::optional<std::size_t> cases = 100;
  // Unset fields take the suite defaults listed in the README.
  std::optional<std::size_t> radius;
  std::optional<Coeff> cap;
  std::optional<Coeff> max_height;
  std::optional<std::size_t> min_rank;
  std::optional<std::size_t> max_rank;
  std::size_t pool_size = 24;
  /// Worker threads; does not affect the report.
  std::size_t threads = 1;
};

enum class Outcome { Pass, Fail, Inconclusive };
std::string to_string(Outcome o);

struct CaseRecord {
  Outcome outcome = Outcome::Pass;
  io::Json data = io::Json::object();
};

struct Counts {
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t inconclusive = 0;
};

struct Report {
  io::Json config;
  io::Json gcms;
  std::vector<CaseRecord> records;
  Counts counts;
};

/// Runs the suite. Throws Error(InvalidInput) for an unusable config.
Report run(const CampaignConfig& config);

/// {"schema": 1, "generator": ..., "config": ..., "gcms": [...],
///  "counts": {...}, "records": [...]}; wall-clock time is not included so
/// that identical configs give identical bytes.
io::Json to_json(const Report& r);

/// 0 all pass, 1 some fail, 3 no fail but some inconclusive.
int exit_code(const Report& r);

}  // namespace kmroots::campaign
