#include "pbkc/shard_store.hpp"

#include <algorithm>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>

#include "pbkc/error.hpp"

namespace fs = std::filesystem;

namespace pbkc {

namespace {

constexpr char kMagic[4] = {'P', 'B', 'K', 'C'};

void put_u8(std::vector<std::uint8_t>& v, std::uint8_t x) { v.push_back(x); }
void put_u16(std::vector<std::uint8_t>& v, std::uint16_t x) {
    v.push_back(static_cast<std::uint8_t>(x >> 8));
    v.push_back(static_cast<std::uint8_t>(x));
}
void put_u32(std::vector<std::uint8_t>& v, std::uint32_t x) {
    for (int i = 3; i >= 0; --i) v.push_back(static_cast<std::uint8_t>(x >> (8 * i)));
}
void put_u64(std::vector<std::uint8_t>& v, std::uint64_t x) {
    for (int i = 7; i >= 0; --i) v.push_back(static_cast<std::uint8_t>(x >> (8 * i)));
}
std::uint16_t get_u16(const std::uint8_t* p) { return static_cast<std::uint16_t>((p[0] << 8) | p[1]); }
std::uint32_t get_u32(const std::uint8_t* p) {
    std::uint32_t x = 0;
    for (int i = 0; i < 4; ++i) x = (x << 8) | p[i];
    return x;
}
std::uint64_t get_u64(const std::uint8_t* p) {
    std::uint64_t x = 0;
    for (int i = 0; i < 8; ++i) x = (x << 8) | p[i];
    return x;
}

std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), Errc::Io, "cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    require(!in.bad(), Errc::Io, "read failed: " + path);
    return bytes;
}

// Append-only write to a temp file, then atomic rename into place.
void write_file_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        require(out.good(), Errc::Io, "cannot create " + tmp);
        out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
        require(out.good(), Errc::Io, "write failed: " + tmp);
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    require(!ec, Errc::Io, "rename failed: " + path);
}

} // namespace

std::uint32_t crc32(const void* data, std::size_t len) {
    static const auto table = [] {
        std::array<std::uint32_t, 256> t{};
        for (std::uint32_t i = 0; i < 256; ++i) {
            std::uint32_t c = i;
            for (int b = 0; b < 8; ++b) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
            t[i] = c;
        }
        return t;
    }();
    std::uint32_t crc = 0xFFFFFFFFu;
    const auto* p = static_cast<const std::uint8_t*>(data);
    for (std::size_t i = 0; i < len; ++i) crc = table[(crc ^ p[i]) & 0xFF] ^ (crc >> 8);
    return crc ^ 0xFFFFFFFFu;
}

ShardHeader make_shard_header(const CodeSpec& spec, int node_index, std::uint32_t stripe_count) {
    ShardHeader h;
    h.variant = static_cast<std::uint8_t>(code_variant(spec));
    h.n = static_cast<std::uint16_t>(code_n(spec));
    h.k = static_cast<std::uint16_t>(code_k(spec));
    h.m = static_cast<std::uint16_t>(code_m(spec));
    h.L = static_cast<std::uint16_t>(code_L(spec));
    if (const auto* c2 = std::get_if<C2Spec>(&spec)) {
        h.s = static_cast<std::uint16_t>(c2->s());
        h.theta = c2->theta();
    }
    h.node_index = static_cast<std::uint16_t>(node_index);
    h.stripe_count = stripe_count;
    h.payload_length = static_cast<std::uint64_t>(stripe_count) * h.m;
    return h;
}

CodeSpec spec_from_header(const ShardHeader& h) {
    if (h.variant == 1) return c1_spec(h.n, h.k, h.m, h.L);
    require(h.variant == 2, Errc::HeaderMismatch, "unknown code variant");
    require(h.s != 0 && h.m == h.s * (h.n - h.k), Errc::HeaderMismatch, "column count does not match group layout");
    return c2_spec(h.n, h.k, h.s, h.L, h.theta);
}

void append_header(std::vector<std::uint8_t>& out, const ShardHeader& h) {
    out.insert(out.end(), kMagic, kMagic + 4);
    put_u8(out, h.version);
    put_u8(out, h.variant);
    put_u16(out, h.n);
    put_u16(out, h.k);
    put_u16(out, h.m);
    put_u16(out, h.L);
    put_u16(out, h.s);
    put_u8(out, h.theta);
    put_u16(out, h.node_index);
    put_u32(out, h.stripe_count);
    put_u64(out, h.payload_length);
}

ShardHeader parse_header(const std::uint8_t* data, std::size_t len) {
    require(len >= kShardHeaderSize, Errc::Truncated, "header shorter than fixed size");
    require(std::memcmp(data, kMagic, 4) == 0, Errc::BadMagic, "bad magic");
    ShardHeader h;
    h.version = data[4];
    require(h.version == 1, Errc::VersionMismatch, "unsupported version");
    h.variant = data[5];
    h.n = get_u16(data + 6);
    h.k = get_u16(data + 8);
    h.m = get_u16(data + 10);
    h.L = get_u16(data + 12);
    h.s = get_u16(data + 14);
    h.theta = data[16];
    h.node_index = get_u16(data + 17);
    h.stripe_count = get_u32(data + 19);
    h.payload_length = get_u64(data + 23);
    return h;
}

std::vector<Grid> stripe_split(int k, int m, const std::vector<std::uint8_t>& bytes) {
    const std::size_t block = static_cast<std::size_t>(k) * m;
    const std::size_t count = (bytes.size() + block - 1) / block;
    std::vector<Grid> stripes;
    stripes.reserve(count);
    for (std::size_t t = 0; t < count; ++t) {
        Grid g(k, m);
        for (std::size_t b = 0; b < block; ++b) {
            std::size_t idx = t * block + b;
            if (idx >= bytes.size()) break; // zero padding
            g.at(static_cast<int>(b % k), static_cast<int>(b / k)) = bytes[idx];
        }
        stripes.push_back(std::move(g));
    }
    return stripes;
}

std::vector<std::uint8_t> stripe_join(int k, int m, const std::vector<Grid>& stripes,
                                      std::uint64_t original_length) {
    const std::size_t block = static_cast<std::size_t>(k) * m;
    require(original_length <= stripes.size() * block, Errc::Truncated, "declared length exceeds stripe data");
    std::vector<std::uint8_t> bytes;
    bytes.reserve(stripes.size() * block);
    for (const Grid& g : stripes)
        for (std::size_t b = 0; b < block; ++b)
            bytes.push_back(g.at(static_cast<int>(b % k), static_cast<int>(b / k)));
    bytes.resize(original_length);
    return bytes;
}

std::string shard_path(const std::string& dir, const std::string& stem, int node_index) {
    return (fs::path(dir) / (stem + ".pbk" + std::to_string(node_index))).string();
}
std::string manifest_path(const std::string& dir, const std::string& stem) {
    return (fs::path(dir) / (stem + ".pbkm")).string();
}

EncodeFileResult encode_file(const CodeSpec& spec, const std::string& input_path,
                             const std::string& out_dir, const std::string& stem) {
    const int n = code_n(spec), k = code_k(spec), m = code_m(spec);
    std::vector<std::uint8_t> bytes = read_file_bytes(input_path);
    std::vector<Grid> stripes = stripe_split(k, m, bytes);
    const auto stripe_count = static_cast<std::uint32_t>(stripes.size());

    std::vector<std::vector<std::uint8_t>> payloads(static_cast<size_t>(n));
    for (auto& p : payloads) p.reserve(static_cast<std::size_t>(stripe_count) * m);
    for (const Grid& data : stripes) {
        Grid stripe = code_encode(spec, data);
        for (int node = 0; node < n; ++node)
            for (int c = 0; c < m; ++c) payloads[static_cast<size_t>(node)].push_back(stripe.at(node, c));
    }

    std::error_code ec;
    fs::create_directories(out_dir, ec); // pre-existing dir is fine

    EncodeFileResult result;
    result.stripes = stripe_count;
    for (int node = 0; node < n; ++node) {
        ShardData shard{make_shard_header(spec, node + 1, stripe_count), std::move(payloads[static_cast<size_t>(node)])};
        std::string path = shard_path(out_dir, stem, node + 1);
        write_shard(path, shard);
        result.shard_files.push_back(std::move(path));
    }

    std::vector<std::uint8_t> mbytes;
    append_header(mbytes, make_shard_header(spec, 0, stripe_count));
    put_u64(mbytes, bytes.size());
    put_u32(mbytes, crc32(bytes.data(), bytes.size()));
    result.manifest_file = manifest_path(out_dir, stem);
    write_file_bytes(result.manifest_file, mbytes);
    return result;
}

Manifest read_manifest(const std::string& path) {
    std::vector<std::uint8_t> bytes = read_file_bytes(path);
    require(bytes.size() >= kManifestSize, Errc::Truncated, "manifest shorter than fixed size");
    Manifest man;
    man.header = parse_header(bytes.data(), bytes.size());
    require(man.header.node_index == 0, Errc::HeaderMismatch, "manifest must carry node index 0");
    man.original_length = get_u64(bytes.data() + kShardHeaderSize);
    man.checksum = get_u32(bytes.data() + kShardHeaderSize + 8);
    return man;
}

ShardData read_shard(const std::string& path) {
    std::vector<std::uint8_t> bytes = read_file_bytes(path);
    ShardData shard;
    shard.header = parse_header(bytes.data(), bytes.size());
    require(bytes.size() - kShardHeaderSize == shard.header.payload_length, Errc::Truncated,
            "payload length mismatch: " + path);
    require(shard.header.payload_length ==
                static_cast<std::uint64_t>(shard.header.stripe_count) * shard.header.m,
            Errc::HeaderMismatch, "payload length inconsistent with stripe count");
    shard.payload.assign(bytes.begin() + kShardHeaderSize, bytes.end());
    return shard;
}

void write_shard(const std::string& path, const ShardData& shard) {
    std::vector<std::uint8_t> bytes;
    bytes.reserve(kShardHeaderSize + shard.payload.size());
    append_header(bytes, shard.header);
    bytes.insert(bytes.end(), shard.payload.begin(), shard.payload.end());
    write_file_bytes(path, bytes);
}

namespace {

ShardData load_matching_shard(const std::string& dir, const std::string& stem, const Manifest& man,
                              int node_index) {
    std::string path = shard_path(dir, stem, node_index);
    ShardData shard;
    try {
        shard = read_shard(path);
    } catch (const Error& e) {
        if (e.code() == Errc::Io) fail(Errc::InsufficientShards, "missing shard: " + path);
        throw;
    }
    require(shard.header.same_code(man.header), Errc::HeaderMismatch, "shard disagrees with manifest: " + path);
    require(shard.header.node_index == node_index, Errc::HeaderMismatch, "node index mismatch: " + path);
    return shard;
}

std::pair<std::string, std::string> split_manifest_path(const std::string& manifest_file) {
    fs::path p(manifest_file);
    std::string name = p.filename().string();
    require(name.size() > 5 && name.substr(name.size() - 5) == ".pbkm", Errc::Param,
            "manifest path must end in .pbkm");
    return {p.parent_path().string().empty() ? "." : p.parent_path().string(),
            name.substr(0, name.size() - 5)};
}

} // namespace

void decode_file(const std::string& manifest_file, const std::vector<int>& node_indices,
                 const std::string& output_path) {
    Manifest man = read_manifest(manifest_file);
    CodeSpec spec = spec_from_header(man.header);
    const int k = code_k(spec), m = code_m(spec), n = code_n(spec);
    require(static_cast<int>(node_indices.size()) == k, Errc::InsufficientShards,
            "need exactly k shard indices");
    auto [dir, stem] = split_manifest_path(manifest_file);

    std::vector<int> nodes0;
    std::vector<ShardData> shards;
    for (int idx : node_indices) {
        require(idx >= 1 && idx <= n, Errc::Param, "node index out of range");
        shards.push_back(load_matching_shard(dir, stem, man, idx));
        nodes0.push_back(idx - 1);
    }

    DecodeSolver solver(spec, nodes0);
    const auto stripe_count = man.header.stripe_count;
    std::vector<Grid> stripes;
    stripes.reserve(stripe_count);
    std::vector<std::vector<Symbol>> rows(static_cast<size_t>(k), std::vector<Symbol>(static_cast<size_t>(m)));
    for (std::uint32_t t = 0; t < stripe_count; ++t) {
        for (int i = 0; i < k; ++i)
            for (int c = 0; c < m; ++c)
                rows[static_cast<size_t>(i)][static_cast<size_t>(c)] =
                    shards[static_cast<size_t>(i)].payload[static_cast<std::size_t>(t) * m + c];
        stripes.push_back(solver.decode(rows));
    }

    std::vector<std::uint8_t> bytes = stripe_join(k, m, stripes, man.original_length);
    require(crc32(bytes.data(), bytes.size()) == man.checksum, Errc::ChecksumMismatch,
            "restored bytes fail the manifest checksum");
    write_file_bytes(output_path, bytes);
}

RepairFileResult repair_shard_file(const std::string& manifest_file, int failed_node_index) {
    Manifest man = read_manifest(manifest_file);
    CodeSpec spec = spec_from_header(man.header);
    const int n = code_n(spec), m = code_m(spec);
    require(failed_node_index >= 1 && failed_node_index <= n, Errc::Param, "node index out of range");
    auto [dir, stem] = split_manifest_path(manifest_file);

    RepairPlan plan = code_plan_repair(spec, failed_node_index - 1, /*full=*/true);

    // Only shard files holding planned cells are opened.
    std::vector<int> rows_needed;
    for (Cell c : plan.reads) rows_needed.push_back(c.row);
    std::sort(rows_needed.begin(), rows_needed.end());
    rows_needed.erase(std::unique(rows_needed.begin(), rows_needed.end()), rows_needed.end());

    std::vector<std::optional<ShardData>> by_node(static_cast<size_t>(n));
    RepairFileResult result;
    result.symbols_read_per_stripe = plan.bandwidth();
    for (int row : rows_needed) {
        by_node[static_cast<size_t>(row)] = load_matching_shard(dir, stem, man, row + 1);
        result.nodes_read.push_back(row + 1);
    }

    const auto stripe_count = man.header.stripe_count;
    std::vector<std::uint8_t> payload;
    payload.reserve(static_cast<std::size_t>(stripe_count) * m);
    const BaseCode& base = code_base(spec);
    for (std::uint32_t t = 0; t < stripe_count; ++t) {
        auto fetch = [&](Cell c) -> std::optional<Symbol> {
            const auto& shard = by_node[static_cast<size_t>(c.row)];
            if (!shard) return std::nullopt;
            return shard->payload[static_cast<std::size_t>(t) * m + c.col];
        };
        std::vector<Symbol> row = execute(base, plan, fetch);
        payload.insert(payload.end(), row.begin(), row.end());
    }

    ShardData rebuilt{make_shard_header(spec, failed_node_index, stripe_count), std::move(payload)};
    result.shard_file = shard_path(dir, stem, failed_node_index);
    write_shard(result.shard_file, rebuilt);
    return result;
}

} // namespace pbkc
