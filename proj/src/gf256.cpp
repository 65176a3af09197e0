#include "pbkc/gf256.hpp"

#include <array>

#include "pbkc/error.hpp"

namespace pbkc {
namespace gf {
namespace {

constexpr unsigned kPoly = 0x11D;

struct Tables {
    std::array<Symbol, 512> exp{};  // doubled so exp[log a + log b] needs no mod
    std::array<int, 256> log{};
    std::array<Symbol, 256> inverse{};
    std::array<Symbol, 65536> prod{}; // prod[a << 8 | b]

    Tables() {
        unsigned v = 1;
        for (int i = 0; i < 255; ++i) {
            exp[static_cast<size_t>(i)] = static_cast<Symbol>(v);
            exp[static_cast<size_t>(i) + 255] = static_cast<Symbol>(v);
            log[v] = i;
            v <<= 1;
            if (v & 0x100) v ^= kPoly;
        }
        log[0] = 0; // never read: mul/inv guard zero explicitly
        inverse[0] = 0;
        for (int a = 1; a < 256; ++a)
            inverse[static_cast<size_t>(a)] = exp[static_cast<size_t>(255 - log[a])];
        for (int a = 0; a < 256; ++a)
            for (int b = 0; b < 256; ++b) {
                Symbol p = (a == 0 || b == 0)
                               ? 0
                               : exp[static_cast<size_t>(log[a] + log[b])];
                prod[static_cast<size_t>(a << 8 | b)] = p;
            }
    }
};

const Tables& tables() {
    static const Tables t;
    return t;
}

} // namespace

Symbol mul(Symbol a, Symbol b) { return tables().prod[static_cast<size_t>(a) << 8 | b]; }

Symbol inv(Symbol a) {
    require(a != 0, Errc::ZeroInverse, "gf256: inverse of zero");
    return tables().inverse[a];
}

Symbol div(Symbol a, Symbol b) { return mul(a, inv(b)); }

Symbol pow(Symbol a, unsigned e) {
    Symbol acc = 1;
    while (e) {
        if (e & 1) acc = mul(acc, a);
        a = mul(a, a);
        e >>= 1;
    }
    return acc;
}

} // namespace gf
} // namespace pbkc
