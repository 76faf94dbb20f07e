#include "vpl/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numeric>

#include <zlib.h>

namespace vpl {

namespace {

// Primes up to `n` by a plain odd-only sieve; used to seed the segments.
std::vector<std::uint64_t> small_primes(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    if (n < 2) return out;
    std::vector<char> composite(n + 1, 0);
    for (std::uint64_t i = 2; i * i <= n; ++i) {
        if (!composite[i]) {
            for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = 1;
        }
    }
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (!composite[i]) out.push_back(i);
    }
    return out;
}

} // namespace

PrimeStore sieve_primes(std::uint64_t limit, std::uint64_t cap,
                        std::size_t segment_size) {
    if (limit < 2) throw DomainError("sieve_primes: limit must be >= 2");
    if (limit > cap) {
        throw ResourceError("sieve_primes: limit " + std::to_string(limit) +
                            " exceeds cap " + std::to_string(cap));
    }

    PrimeStore store;
    store.limit = limit;

    const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit)));
    auto base = small_primes(root + 1);

    std::vector<char> segment(segment_size);
    for (std::uint64_t low = 2; low <= limit; low += segment_size) {
        const std::uint64_t high = std::min(low + segment_size - 1, limit);
        std::fill(segment.begin(), segment.begin() + (high - low + 1), 1);
        for (std::uint64_t p : base) {
            if (p * p > high) break;
            std::uint64_t start = std::max(p * p, ((low + p - 1) / p) * p);
            for (std::uint64_t j = start; j <= high; j += p) segment[j - low] = 0;
        }
        for (std::uint64_t n = low; n <= high; ++n) {
            if (segment[n - low]) store.primes.push_back(n);
        }
    }

    store.logw.reserve(store.primes.size());
    for (std::uint64_t p : store.primes) {
        store.logw.push_back(std::log(static_cast<double>(p)));
    }
    return store;
}

namespace {

void require_range(const PrimeStore& store, double x, const char* who) {
    if (!(x >= 0.0) || x > static_cast<double>(store.limit)) {
        throw std::out_of_range(std::string(who) +
                                ": x outside [0, store.limit]");
    }
}

// Number of primes <= bound, as an index into store.primes.
std::size_t count_upto(const PrimeStore& store, std::uint64_t bound) {
    return static_cast<std::size_t>(
        std::upper_bound(store.primes.begin(), store.primes.end(), bound) -
        store.primes.begin());
}

} // namespace

double theta(const PrimeStore& store, double x) {
    require_range(store, x, "theta");
    const auto bound = static_cast<std::uint64_t>(std::floor(x));
    const std::size_t end = count_upto(store, bound);
    KahanSum sum;
    for (std::size_t i = 0; i < end; ++i) sum.add(store.logw[i]);
    return sum.value();
}

double psi(const PrimeStore& store, double x) {
    require_range(store, x, "psi");
    const auto bound = static_cast<std::uint64_t>(std::floor(x));
    const std::size_t end = count_upto(store, bound);
    KahanSum sum;
    for (std::size_t i = 0; i < end; ++i) {
        const std::uint64_t p = store.primes[i];
        for (std::uint64_t pw = p; pw <= bound; ) {
            sum.add(store.logw[i]);
            if (pw > bound / p) break; // next power would overflow the bound
            pw *= p;
        }
    }
    return sum.value();
}

namespace {

void require_coprime(std::uint64_t q, std::uint64_t a, const char* who) {
    if (q == 0 || a == 0 || std::gcd(a, q) != 1) {
        throw DomainError(std::string(who) + ": need positive a, q with (a,q) = 1");
    }
}

} // namespace

double theta_ap(const PrimeStore& store, IntInterval I, std::uint64_t q,
                std::uint64_t a) {
    require_coprime(q, a, "theta_ap");
    if (I.lo > I.hi) throw DomainError("theta_ap: interval with lo > hi");
    if (I.hi > store.limit) {
        throw std::out_of_range("theta_ap: interval exceeds store.limit");
    }
    const std::size_t begin = count_upto(store, I.lo);
    const std::size_t end = count_upto(store, I.hi);
    const std::uint64_t residue = a % q;
    KahanSum sum;
    for (std::size_t i = begin; i < end; ++i) {
        if (store.primes[i] % q == residue) sum.add(store.logw[i]);
    }
    return sum.value();
}

double psi_ap(const PrimeStore& store, IntInterval I, std::uint64_t q,
              std::uint64_t a) {
    require_coprime(q, a, "psi_ap");
    if (I.lo > I.hi) throw DomainError("psi_ap: interval with lo > hi");
    if (I.hi > store.limit) {
        throw std::out_of_range("psi_ap: interval exceeds store.limit");
    }
    const std::size_t end = count_upto(store, I.hi);
    const std::uint64_t residue = a % q;
    KahanSum sum;
    for (std::size_t i = 0; i < end; ++i) {
        const std::uint64_t p = store.primes[i];
        for (std::uint64_t pw = p; pw <= I.hi; ) {
            if (pw > I.lo && pw % q == residue) sum.add(store.logw[i]);
            if (pw > I.hi / p) break;
            pw *= p;
        }
    }
    return sum.value();
}

std::vector<std::uint64_t> primes_in_class(const PrimeStore& store,
                                           std::uint64_t q, std::uint64_t a,
                                           std::uint64_t limit) {
    require_coprime(q, a, "primes_in_class");
    if (limit > store.limit) {
        throw std::out_of_range("primes_in_class: limit exceeds store.limit");
    }
    const std::size_t end = count_upto(store, limit);
    const std::uint64_t residue = a % q;
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < end; ++i) {
        if (store.primes[i] % q == residue) out.push_back(store.primes[i]);
    }
    return out;
}

double theta_psi_gap_ratio(const PrimeStore& store, double x) {
    if (x < 2.0) throw DomainError("theta_psi_gap_ratio: x must be >= 2");
    return (psi(store, x) - theta(store, x)) / std::sqrt(x);
}

// ------------------------------------------------------------------
// Prime cache
// ------------------------------------------------------------------
namespace {

constexpr char kMagic[4] = {'V', 'P', 'L', '1'};
constexpr std::uint32_t kCacheVersion = 1;

void put_u32(std::string& buf, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_u64(std::string& buf, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint32_t get_u32(const unsigned char* p) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
    return v;
}

std::uint64_t get_u64(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return v;
}

} // namespace

void write_prime_cache(const PrimeStore& store,
                       const std::filesystem::path& path) {
    std::string payload;
    payload.reserve(20 + store.primes.size() * 8);
    put_u32(payload, kCacheVersion);
    put_u64(payload, store.limit);
    put_u64(payload, store.primes.size());
    for (std::uint64_t p : store.primes) put_u64(payload, p);

    const auto crc = static_cast<std::uint32_t>(
        crc32(0, reinterpret_cast<const Bytef*>(payload.data()),
              static_cast<uInt>(payload.size())));

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("write_prime_cache: cannot open " + path.string());
    out.write(kMagic, 4);
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    std::string tail;
    put_u32(tail, crc);
    out.write(tail.data(), 4);
    if (!out) throw std::runtime_error("write_prime_cache: write failed");
}

std::optional<PrimeStore> read_prime_cache(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::string data((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    if (data.size() < 4 + 20 + 4) return std::nullopt;
    if (std::memcmp(data.data(), kMagic, 4) != 0) return std::nullopt;

    const auto* bytes = reinterpret_cast<const unsigned char*>(data.data());
    const std::size_t payload_len = data.size() - 8;
    const std::uint32_t stored_crc = get_u32(bytes + data.size() - 4);
    const auto crc = static_cast<std::uint32_t>(
        crc32(0, bytes + 4, static_cast<uInt>(payload_len)));
    if (crc != stored_crc) return std::nullopt;

    const std::uint32_t version = get_u32(bytes + 4);
    if (version != kCacheVersion) return std::nullopt;
    PrimeStore store;
    store.limit = get_u64(bytes + 8);
    const std::uint64_t count = get_u64(bytes + 16);
    if (payload_len != 20 + count * 8) return std::nullopt;
    store.primes.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        store.primes.push_back(get_u64(bytes + 24 + 8 * i));
    }
    store.logw.reserve(count);
    for (std::uint64_t p : store.primes) {
        store.logw.push_back(std::log(static_cast<double>(p)));
    }
    return store;
}

PrimeStore load_or_sieve(std::uint64_t limit,
                         const std::filesystem::path& cache_path,
                         std::uint64_t cap) {
    if (auto cached = read_prime_cache(cache_path)) {
        if (cached->limit == limit) return std::move(*cached);
    }
    PrimeStore store = sieve_primes(limit, cap);
    write_prime_cache(store, cache_path);
    return store;
}

} // namespace vpl
