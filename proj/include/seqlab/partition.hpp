#pragma once
//
// Partitions of the positive integers into countably many infinite disjoint
// blocks, with O(1) encode/decode in both directions.
//
// A scheme maps a (block, position) pair to a coordinate index and back:
//   encode(i, j) = the j-th smallest element of block i (strictly increasing in j)
//   decode(n)    = the unique (i, j) with encode(i, j) = n
//

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace seqlab {

using Index = std::int64_t;

struct BlockPos {
    Index block = 0;
    Index pos = 0;
    bool operator==(const BlockPos&) const = default;
};

class PartitionScheme {
public:
    using EncodeFn = std::function<Index(Index, Index)>;
    using DecodeFn = std::function<BlockPos(Index)>;
    // Upper bound on encode(i, j) valid for real-valued j, used to state
    // decay certificates whose indices exceed the integer range. Must be
    // sound (>= encode(i, ceil(j))) and exact for power-of-two j.
    using UpperBoundFn = std::function<double(Index, double)>;

    PartitionScheme(std::string name, EncodeFn encode, DecodeFn decode, UpperBoundFn upper);

    Index encode(Index block, Index pos) const;
    BlockPos decode(Index n) const;
    double coordinate_upper_bound(Index block, double pos) const;
    const std::string& name() const { return name_; }

private:
    std::string name_;
    EncodeFn encode_;
    DecodeFn decode_;
    UpperBoundFn upper_;
};

// n = 2^{i-1} (2j - 1): block = 2-adic valuation + 1, position from the odd part.
PartitionScheme dyadic_partition();

// Diagonal enumeration of (block, position) pairs.
PartitionScheme cantor_partition();

PartitionScheme partition_by_name(const std::string& name);

// First `count` elements of block i, strictly increasing.
std::vector<Index> block_prefix(const PartitionScheme& scheme, Index block, Index count);

}  // namespace seqlab
