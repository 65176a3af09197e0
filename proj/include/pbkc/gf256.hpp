#pragma once

#include <cstdint>

namespace pbkc {

// One code symbol: an element of GF(2^8).
using Symbol = std::uint8_t;

// Arithmetic in GF(2^8) with reduction polynomial x^8+x^4+x^3+x^2+1 (0x11D).
// x is primitive for this polynomial, so exp/log tables over base x cover the
// whole multiplicative group.
namespace gf {

inline Symbol add(Symbol a, Symbol b) { return static_cast<Symbol>(a ^ b); }
inline Symbol sub(Symbol a, Symbol b) { return static_cast<Symbol>(a ^ b); } // char 2: same as add

// Product via a full 64K table (fast path for matrix kernels).
Symbol mul(Symbol a, Symbol b);

// Multiplicative inverse; throws Errc::ZeroInverse for 0.
Symbol inv(Symbol a);

// a / b == mul(a, inv(b)); throws Errc::ZeroInverse for b == 0.
Symbol div(Symbol a, Symbol b);

// a^e with a^0 == 1.
Symbol pow(Symbol a, unsigned e);

} // namespace gf
} // namespace pbkc
