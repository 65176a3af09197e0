#include "doctest.h"

#include "pbkc/error.hpp"
#include "pbkc/gf256.hpp"

using namespace pbkc;

namespace {

// Independent product: schoolbook carry-less multiply, then reduce modulo
// x^8+x^4+x^3+x^2+1 from the top bit down.
Symbol slow_mul(Symbol a, Symbol b) {
    unsigned acc = 0;
    for (int i = 0; i < 8; ++i)
        if (b & (1u << i)) acc ^= static_cast<unsigned>(a) << i;
    for (int bit = 15; bit >= 8; --bit)
        if (acc & (1u << bit)) acc ^= 0x11Du << (bit - 8);
    return static_cast<Symbol>(acc);
}

} // namespace

TEST_CASE("field addition is xor and self-inverse") {
    CHECK(gf::add(0x57, 0x83) == (0x57 ^ 0x83));
    for (int a = 0; a < 256; ++a) {
        CHECK(gf::add(Symbol(a), Symbol(a)) == 0);
        CHECK(gf::sub(Symbol(a), Symbol(a)) == 0);
        CHECK(gf::add(Symbol(a), 0) == Symbol(a));
    }
}

TEST_CASE("table product matches carry-less multiply for all 65536 pairs") {
    for (int a = 0; a < 256; ++a)
        for (int b = 0; b < 256; ++b)
            REQUIRE(gf::mul(Symbol(a), Symbol(b)) == slow_mul(Symbol(a), Symbol(b)));
}

TEST_CASE("every nonzero element has a working inverse") {
    for (int a = 1; a < 256; ++a) {
        Symbol inv = gf::inv(Symbol(a));
        CHECK(gf::mul(Symbol(a), inv) == 1);
        CHECK(gf::div(1, Symbol(a)) == inv);
    }
    CHECK_THROWS_AS(gf::inv(0), Error);
    CHECK_THROWS_AS(gf::div(5, 0), Error);
    try {
        gf::inv(0);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ZeroInverse);
    }
}

TEST_CASE("powers agree with repeated multiplication") {
    for (Symbol a : {Symbol(0), Symbol(1), Symbol(2), Symbol(0x53), Symbol(0xFF)}) {
        Symbol acc = 1;
        for (unsigned e = 0; e < 20; ++e) {
            CHECK(gf::pow(a, e) == acc);
            acc = gf::mul(acc, a);
        }
    }
    CHECK(gf::pow(0, 0) == 1);
    // x is primitive: order of 2 is exactly 255.
    CHECK(gf::pow(2, 255) == 1);
    for (unsigned e = 1; e < 255; ++e) CHECK(gf::pow(2, e) != 1);
}

TEST_CASE("multiplication distributes over addition") {
    for (int a = 0; a < 256; a += 7)
        for (int b = 0; b < 256; b += 5)
            for (int c = 0; c < 256; c += 11) {
                Symbol lhs = gf::mul(Symbol(a), gf::add(Symbol(b), Symbol(c)));
                Symbol rhs = gf::add(gf::mul(Symbol(a), Symbol(b)), gf::mul(Symbol(a), Symbol(c)));
                CHECK(lhs == rhs);
            }
}
