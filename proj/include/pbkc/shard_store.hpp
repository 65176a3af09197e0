#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pbkc/code.hpp"

namespace pbkc {

// Fixed-size binary header shared by shard and manifest files. All integers
// big-endian. node_index is 1-based; 0 marks the manifest.
struct ShardHeader {
    std::uint8_t version = 1;
    std::uint8_t variant = 0; // 1 or 2
    std::uint16_t n = 0, k = 0, m = 0, L = 0, s = 0; // s = 0 for variant 1
    std::uint8_t theta = 0;                          // 0 for variant 1
    std::uint16_t node_index = 0;
    std::uint32_t stripe_count = 0;
    std::uint64_t payload_length = 0; // stripe_count * m

    bool same_code(const ShardHeader& o) const {
        return version == o.version && variant == o.variant && n == o.n && k == o.k && m == o.m &&
               L == o.L && s == o.s && theta == o.theta && stripe_count == o.stripe_count &&
               payload_length == o.payload_length;
    }
};

inline constexpr std::size_t kShardHeaderSize = 31;
inline constexpr std::size_t kManifestSize = kShardHeaderSize + 12; // + length u64 + crc u32

// Manifest: the common header (node_index 0) plus whole-file metadata.
struct Manifest {
    ShardHeader header;
    std::uint64_t original_length = 0;
    std::uint32_t checksum = 0; // CRC-32 of the original bytes
};

ShardHeader make_shard_header(const CodeSpec& spec, int node_index, std::uint32_t stripe_count);
CodeSpec spec_from_header(const ShardHeader& h);

void append_header(std::vector<std::uint8_t>& out, const ShardHeader& h);
// Throws BadMagic / VersionMismatch / Truncated.
ShardHeader parse_header(const std::uint8_t* data, std::size_t len);

std::uint32_t crc32(const void* data, std::size_t len);

// Byte stream -> k x m data grids, column-major per stripe (column 0 rows
// 0..k-1, then column 1, ...), final stripe zero-padded.
std::vector<Grid> stripe_split(int k, int m, const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> stripe_join(int k, int m, const std::vector<Grid>& stripes,
                                      std::uint64_t original_length);

// Naming: <dir>/<stem>.pbk<node_index> for shards, <dir>/<stem>.pbkm for the
// manifest.
std::string shard_path(const std::string& dir, const std::string& stem, int node_index);
std::string manifest_path(const std::string& dir, const std::string& stem);

struct EncodeFileResult {
    std::uint32_t stripes = 0;
    std::vector<std::string> shard_files;
    std::string manifest_file;
};

// Splits, encodes, and persists a file as n shards plus a manifest.
EncodeFileResult encode_file(const CodeSpec& spec, const std::string& input_path,
                             const std::string& out_dir, const std::string& stem);

Manifest read_manifest(const std::string& path);

// One node's stored rows: header plus payload of stripe_count * m symbols.
struct ShardData {
    ShardHeader header;
    std::vector<std::uint8_t> payload;
};
ShardData read_shard(const std::string& path);
void write_shard(const std::string& path, const ShardData& shard);

// Reconstructs the original bytes from the given 1-based node indices (any k
// of them) and writes them to output_path. Throws InsufficientShards /
// HeaderMismatch / ChecksumMismatch as appropriate.
void decode_file(const std::string& manifest_file, const std::vector<int>& node_indices,
                 const std::string& output_path);

struct RepairFileResult {
    int symbols_read_per_stripe = 0; // plan bandwidth
    std::vector<int> nodes_read;     // 1-based indices of shard files opened
    std::string shard_file;
};

// Rebuilds one node's shard from the surviving ones, opening only shard
// files that hold planned cells.
RepairFileResult repair_shard_file(const std::string& manifest_file, int failed_node_index);

} // namespace pbkc
