#include "seqlab/partition.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace seqlab {

namespace {

void require_positive(Index v, const char* what) {
    if (v < 1) throw std::domain_error(std::string(what) + " must be >= 1");
}

Index dyadic_encode(Index i, Index j) {
    require_positive(i, "block");
    require_positive(j, "position");
    if (i > 62) throw std::overflow_error("dyadic encode: block too large");
    const auto ui = static_cast<unsigned long long>(i);
    const auto odd = static_cast<unsigned __int128>(2) * static_cast<unsigned __int128>(j) - 1;
    const unsigned __int128 n = odd << (ui - 1);
    if (n > static_cast<unsigned __int128>(std::numeric_limits<Index>::max()))
        throw std::overflow_error("dyadic encode: index overflow");
    return static_cast<Index>(n);
}

BlockPos dyadic_decode(Index n) {
    require_positive(n, "index");
    const auto u = static_cast<std::uint64_t>(n);
    const int v2 = std::countr_zero(u);
    const Index odd = n >> v2;
    return BlockPos{v2 + 1, (odd + 1) / 2};
}

Index triangular(Index k) { return k * (k + 1) / 2; }

Index cantor_encode(Index i, Index j) {
    require_positive(i, "block");
    require_positive(j, "position");
    const Index d = i + j - 2;  // diagonal index
    if (d > 3037000498LL) throw std::overflow_error("cantor encode: index overflow");
    return triangular(d) + j;
}

BlockPos cantor_decode(Index n) {
    require_positive(n, "index");
    const Index t = n - 1;
    // integer triangular root of t, corrected for floating error
    Index d = static_cast<Index>((std::sqrt(8.0L * static_cast<long double>(t) + 1.0L) - 1.0L) / 2.0L);
    while (triangular(d + 1) <= t) ++d;
    while (triangular(d) > t) --d;
    const Index j = t - triangular(d) + 1;
    const Index i = d - (j - 1) + 1;
    return BlockPos{i, j};
}

}  // namespace

PartitionScheme::PartitionScheme(std::string name, EncodeFn encode, DecodeFn decode, UpperBoundFn upper)
    : name_(std::move(name)), encode_(std::move(encode)), decode_(std::move(decode)), upper_(std::move(upper)) {}

Index PartitionScheme::encode(Index block, Index pos) const { return encode_(block, pos); }

BlockPos PartitionScheme::decode(Index n) const { return decode_(n); }

double PartitionScheme::coordinate_upper_bound(Index block, double pos) const {
    return upper_(block, pos);
}

PartitionScheme dyadic_partition() {
    return PartitionScheme(
        "dyadic", dyadic_encode, dyadic_decode,
        [](Index i, double j) {
            // encode(i, j) = 2^{i-1}(2j-1) < 2^i * j; exact when j is a power of two
            return std::ldexp(j, static_cast<int>(i));
        });
}

PartitionScheme cantor_partition() {
    return PartitionScheme(
        "cantor", cantor_encode, cantor_decode,
        [](Index i, double j) {
            // encode(i, j) <= (i + j)^2 for i, j >= 1; inflate to stay sound under rounding
            const double s = static_cast<double>(i) + j;
            return s * s * (1.0 + 1e-9);
        });
}

PartitionScheme partition_by_name(const std::string& name) {
    if (name == "dyadic") return dyadic_partition();
    if (name == "cantor") return cantor_partition();
    throw std::invalid_argument("unknown partition scheme: " + name);
}

std::vector<Index> block_prefix(const PartitionScheme& scheme, Index block, Index count) {
    if (count < 0) throw std::domain_error("count must be >= 0");
    std::vector<Index> out;
    out.reserve(static_cast<std::size_t>(count));
    for (Index j = 1; j <= count; ++j) out.push_back(scheme.encode(block, j));
    return out;
}

}  // namespace seqlab
