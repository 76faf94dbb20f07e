// sieve.hpp
// Prime generation and the Chebyshev-type point/interval/AP sums everything
// else is built from.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "vpl/common.hpp"

namespace vpl {

inline constexpr std::uint64_t kDefaultSieveCap = 100'000'000; // 1e8
inline constexpr std::size_t kDefaultSegmentSize = std::size_t{1} << 20;

// All primes up to `limit` together with their natural-log weights.
// Immutable after construction and safe to share across threads.
struct PrimeStore {
    std::uint64_t limit = 0;
    std::vector<std::uint64_t> primes; // strictly increasing
    std::vector<double> logw;          // logw[i] = ln(primes[i])
};

// Half-open integer interval (lo, hi]; size() is the number of integers in it.
struct IntInterval {
    std::uint64_t lo = 0; // exclusive
    std::uint64_t hi = 0; // inclusive

    std::uint64_t size() const { return hi - lo; }
    bool contains(std::uint64_t n) const { return n > lo && n <= hi; }
};

// Segmented sieve of Eratosthenes, merged in segment order.
// limit < 2 is a DomainError; limit > cap is a ResourceError.
PrimeStore sieve_primes(std::uint64_t limit,
                        std::uint64_t cap = kDefaultSieveCap,
                        std::size_t segment_size = kDefaultSegmentSize);

// theta(x) = sum of ln p over primes p <= x.
double theta(const PrimeStore& store, double x);

// psi(x) = sum of ln p over prime powers p^a <= x.
double psi(const PrimeStore& store, double x);

// Sum of ln p over primes p in I with p = a (mod q); q = 1 takes every prime.
double theta_ap(const PrimeStore& store, IntInterval I, std::uint64_t q,
                std::uint64_t a);

// Same over prime powers with von Mangoldt weights.
double psi_ap(const PrimeStore& store, IntInterval I, std::uint64_t q,
              std::uint64_t a);

// Sorted primes p <= limit with p = a (mod q); (a,q) must be 1.
std::vector<std::uint64_t> primes_in_class(const PrimeStore& store,
                                           std::uint64_t q, std::uint64_t a,
                                           std::uint64_t limit);

// (psi(x) - theta(x)) / sqrt(x); nonnegative for x >= 2.
double theta_psi_gap_ratio(const PrimeStore& store, double x);

// ------------------------------------------------------------------
// Prime cache file. Layout, little-endian throughout:
//   "VPL1" | version u32 | limit u64 | count u64 | count primes u64 | crc32 u32
// The CRC covers everything after the magic up to the checksum itself.
// ------------------------------------------------------------------
void write_prime_cache(const PrimeStore& store,
                       const std::filesystem::path& path);

// Returns nullopt if the file is missing, malformed, or fails the checksum.
std::optional<PrimeStore> read_prime_cache(const std::filesystem::path& path);

// Reads the cache if it matches `limit` exactly, else sieves and rewrites it.
PrimeStore load_or_sieve(std::uint64_t limit,
                         const std::filesystem::path& cache_path,
                         std::uint64_t cap = kDefaultSieveCap);

} // namespace vpl
