#pragma once

#include <stdexcept>
#include <string>

namespace pbkc {

// Failure categories surfaced by the library. The CLI maps these onto
// process exit codes, so additions here need a mapping there as well.
enum class Errc {
    Param,            // invalid construction or call parameters
    Shape,            // container dimensions disagree with the code parameters
    LengthMismatch,   // input length does not match expected element count
    DuplicateRow,     // the same codeword row supplied twice to a decoder
    ZeroInverse,      // multiplicative inverse of zero requested
    NotDataNode,      // operation requires a data node index
    NotParityNode,    // operation requires a parity node index
    Singular,         // a linear system that should be invertible is not
    MissingCell,      // plan execution could not obtain a planned cell
    ProgramFault,     // recovery program is internally inconsistent
    BadMagic,         // shard/manifest file does not start with "PBKC"
    VersionMismatch,  // unsupported on-disk format version
    Truncated,        // payload shorter than the header declares
    HeaderMismatch,   // shard header disagrees with the expected code spec
    ChecksumMismatch, // manifest CRC does not match reassembled content
    Io,               // file could not be read or written
    MdsFailure,       // a k-subset of nodes failed to decode
    InsufficientShards // fewer than k usable shards available
};

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    Errc code() const noexcept { return code_; }

  private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool ok, Errc code, const std::string& msg) {
    if (!ok) fail(code, msg);
}

} // namespace pbkc
