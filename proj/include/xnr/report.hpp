#pragma once

// Check suites behind the command-line front-end, and the report tree they
// produce. Reports contain no timings or addresses, so equal inputs give
// byte-identical output.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "xnr/bigint.hpp"

namespace xnr {

using Json = nlohmann::ordered_json;

enum class RunMode { fast, full, symbolic };

struct RunConfig {
  std::uint32_t p = 2;
  unsigned m = 1;
  unsigned n = 3;
  std::optional<unsigned> r;  // canonical_r(n) when unset
  RunMode mode = RunMode::fast;
  std::uint64_t seed = 0;
  BigInt max_points = BigInt(1) << 24;
  std::uint64_t max_group_order = std::uint64_t{1} << 16;
};

struct ReportResult {
  Json doc;
  bool pass = true;
};

/// Integers as JSON numbers when they fit in 64 bits, else decimal strings.
Json big_json(const BigInt& v);

/// True for the two smallest configurations with n >= 3 in characteristic p
/// (ordered by q^{2n-1}); identities there must be proved symbolically when
/// symbolic mode is requested.
bool symbolic_mandatory(std::uint32_t p, unsigned m, unsigned n, unsigned r);

/// Full report for one configuration. Throws InvalidArgument for invalid
/// configurations.
ReportResult run_report(const RunConfig& cfg);

/// Sieve, invariants, telescopic trace and closed forms of ⟨gens⟩.
ReportResult run_semigroup(const std::vector<BigInt>& gens);

/// Every (p, m, n, r) with q^{2n-1} <= limit, one fast-suite row each.
ReportResult run_sweep(const BigInt& limit, const RunConfig& base);

/// Indented key: value rendering of a report tree.
std::string render_text(const Json& doc);

}  // namespace xnr
