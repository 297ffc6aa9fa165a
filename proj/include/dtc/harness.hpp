/*!
  \file harness.hpp
  \brief Empirical checks of the composition law and its corollaries

  For boolean-valued, non-trivial inner relations fᵢ the harness checks
  D(g ∘ (f¹, ..., fⁿ)) = D(ḡ, [D(f¹), ..., D(fⁿ)]), where ḡ pins every
  coordinate fed by a constant fᵢ.  The left side is solved on the composed
  relation, the right side on the weighted outer relation, so the two sides
  share no intermediate results.  For larger intermediate alphabets only the
  upper bound D(h) ≤ D(ḡ, ...) is checked.

  Random instances are drawn from std::mt19937_64, whose output sequence is
  fixed by the C++ standard; real-valued draws use the top 53 bits of a
  single output so every seed reproduces bit-for-bit on any platform.
*/

#pragma once

#include "dtc/relation.hpp"
#include "dtc/solver.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace dtc
{

enum class Verdict
{
  equal,
  less,   ///< lhs < rhs
  greater ///< lhs > rhs
};

std::string_view to_string( Verdict v ) noexcept;

enum class FuzzMode
{
  theorem,
  upper_bound,
  iteration,
  direct_sum
};

std::string_view to_string( FuzzMode m ) noexcept;
FuzzMode parse_fuzz_mode( std::string_view text );

struct VerificationReport
{
  std::string check; ///< "theorem", "upper-bound", "iteration", "direct-sum", "uniform"
  std::string description;
  std::uint64_t lhs = 0;
  std::uint64_t rhs = 0;
  std::vector<std::uint64_t> inner;
  Verdict verdict = Verdict::equal;
  /// Equality is required (else only lhs ≤ rhs).
  bool equality_expected = true;
  SolveStats stats;

  bool ok() const noexcept { return equality_expected ? verdict == Verdict::equal : verdict != Verdict::greater; }
};

Verdict compare( std::uint64_t lhs, std::uint64_t rhs ) noexcept;

/* checks */

/// D(g ∘ fs) = D(ḡ, [D(fᵢ)]); fs must be boolean-valued and non-trivial.
VerificationReport verify_theorem( const Relation& g, std::span<const Relation> fs, const TableGuard& guard = {} );

/// D(g ∘ fs) ≤ D(ḡ, [D(fᵢ)]) for any intermediate alphabet; boolean fs defer to verify_theorem.
VerificationReport verify_upper_bound( const Relation& g, std::span<const Relation> fs, const TableGuard& guard = {} );

/// D(f⁽ᵏ⁾) = D(f)^k for a total boolean f.
VerificationReport verify_iteration( const Relation& f, unsigned k, const TableGuard& guard = {} );

/// D((f¹, ..., fⁿ)) = Σ D(fᵢ).
VerificationReport verify_direct_sum( std::span<const Relation> fs, const TableGuard& guard = {} );

/// D(g ∘ (f, ..., f)) = D(f)·D(g) for boolean f.
VerificationReport verify_uniform_composition( const Relation& f, const Relation& g, const TableGuard& guard = {} );

/* random instances */

/// Splits a base seed into a per-instance seed (SplitMix64 step).
std::uint64_t derive_seed( std::uint64_t base, std::uint64_t index ) noexcept;

/// Uniform double in [0, 1) from the top 53 bits of one draw.
double unit_draw( std::mt19937_64& rng ) noexcept;

/// Uniform integer in [lo, hi] by multiply-shift on one draw.
std::uint64_t range_draw( std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi ) noexcept;

inline constexpr unsigned generation_retries = 100;

enum class RelationKind
{
  relation,         ///< each (x, y) pair included independently with probability `density`
  partial_function, ///< each x in the domain with probability `density`, one uniform output
  total_function    ///< one uniform output per x
};

struct RelationSpec
{
  std::size_t arity = 2;
  Alphabet input{ 2 };
  Alphabet output{ 2 };
  /// Probability that each (x, y) pair is included.
  double density = 0.5;
  std::uint64_t seed = 0;
  bool require_nontrivial = false;
  RelationKind kind = RelationKind::relation;
};

/// Seeded relation; redrawn up to `generation_retries` times until the requirements hold.
Relation random_relation( const RelationSpec& spec );

struct InstanceSpec
{
  std::vector<std::size_t> inner_arities;
  Alphabet input{ 2 };
  Alphabet intermediate{ 2 };
  Alphabet output{ 2 };
  double density = 0.5;
  std::uint64_t seed = 0;
  bool require_nontrivial = true;
  bool require_boolean_inner = true;
  RelationKind inner_kind = RelationKind::relation;
};

struct Instance
{
  Relation g{ 0, Alphabet{ 1 }, Alphabet{ 1 } };
  std::vector<Relation> fs;
};

Instance random_instance( const InstanceSpec& spec );

/// Bounds the per-instance parameters drawn by `fuzz`.
struct FuzzRanges
{
  std::size_t outer_min = 1;
  std::size_t outer_max = 3;
  std::size_t inner_min = 1;
  std::size_t inner_max = 3;
  std::uint32_t input_size = 2;
  std::uint32_t intermediate_size = 2;
  std::uint32_t output_max = 4;
  double density_min = 0.3;
  double density_max = 0.9;
  unsigned iteration_k = 2;
  RelationKind inner_kind = RelationKind::relation;
  TableGuard guard{};
};

struct FuzzRecord
{
  std::uint64_t seed = 0;
  std::optional<VerificationReport> report;
  std::string error;
  Instance instance;

  bool ok() const noexcept { return report && report->ok(); }
};

struct FuzzSummary
{
  FuzzMode mode = FuzzMode::theorem;
  std::uint64_t count = 0;
  std::uint64_t passed = 0;
  std::uint64_t failed = 0;
  std::uint64_t equal = 0;
  std::uint64_t less = 0;
  std::uint64_t greater = 0;
  std::uint64_t errors = 0;
  /// Failing records in instance order.
  std::vector<FuzzRecord> failures;
  /// Where the repro bundle of the first failure was written.
  std::optional<std::filesystem::path> repro;

  bool success() const noexcept { return failed == 0 && errors == 0; }
};

struct FuzzOptions
{
  /// 0 uses the OpenMP default, 1 runs the serial reference loop.
  int threads = 0;
  /// Instances that take the first slots of `count` (reported with seed 0).
  std::vector<Instance> seeded;
  std::optional<std::filesystem::path> repro_dir;
};

/// The instance fuzz would check for `seed` in `mode`.
Instance fuzz_instance( const FuzzRanges& ranges, FuzzMode mode, std::uint64_t seed );

/// Runs one check on an instance; in iteration mode fs[0] is iterated and g is ignored.
VerificationReport run_check( FuzzMode mode, const Instance& instance, const FuzzRanges& ranges );

FuzzSummary fuzz( const FuzzRanges& ranges, std::uint64_t count, FuzzMode mode, std::uint64_t seed,
                  const FuzzOptions& options = {} );

/// Serial reference for `fuzz`; must produce an identical summary.
FuzzSummary fuzz_serial( const FuzzRanges& ranges, std::uint64_t count, FuzzMode mode, std::uint64_t seed,
                         const FuzzOptions& options = {} );

/// Writes g.rel, f1.rel, ... and manifest.txt (`SEED <u64> MODE <mode>`) into `dir`.
void write_repro_bundle( const std::filesystem::path& dir, const FuzzRecord& record, FuzzMode mode );

struct GapInstance
{
  Instance instance;
  VerificationReport report;
  std::uint64_t seed = 0;
};

/// First instance (seeded ones first, then random) with D(h) < D(ḡ, ...).
std::optional<GapInstance> find_gap_instance( const FuzzRanges& ranges, std::uint64_t count, std::uint64_t seed,
                                              std::span<const Instance> seeded = {} );

} // namespace dtc
