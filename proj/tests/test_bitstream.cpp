#include <doctest.h>

#include <cstdio>
#include <random>

#include "srng/bitstream.hpp"
#include "srng/errors.hpp"

using srng::BitStream;

TEST_CASE("append_word32 is MSB-first") {
    BitStream b;
    b.append_word32(0x80000001u);
    CHECK(b.bit_length() == 32);
    CHECK(b.bit(0) == 1);
    CHECK(b.bit(31) == 1);
    for (int i = 1; i < 31; ++i) CHECK(b.bit(static_cast<std::uint64_t>(i)) == 0);
    CHECK(b.bytes() == std::vector<std::uint8_t>{0x80, 0x00, 0x00, 0x01});
}

TEST_CASE("truncation to 33 bits stores 5 bytes with 7 zero pad bits") {
    BitStream b;
    b.append_word32(0xFFFFFFFFu);
    b.append_word32(0xFFFFFFFFu);
    b.truncate(33);
    CHECK(b.bit_length() == 33);
    CHECK(b.bytes().size() == 5);
    CHECK(b.bytes()[4] == 0x80);  // one data bit, then seven zeros
}

TEST_CASE("from_string round trip") {
    const BitStream b = BitStream::from_string("1011010101");
    CHECK(b.bit_length() == 10);
    CHECK(b.bit(0) == 1);
    CHECK(b.bit(1) == 0);
    CHECK(b.unpacked() == std::vector<std::uint8_t>{1, 0, 1, 1, 0, 1, 0, 1, 0, 1});
}

TEST_CASE("packed and ascii files round trip, auto loader dispatches") {
    std::mt19937_64 rng(5);
    BitStream b;
    for (int i = 0; i < 777; ++i) b.append_bit(static_cast<int>(rng() & 1));

    const std::string packed = "bits_roundtrip.bin";
    const std::string ascii = "bits_roundtrip.txt";
    srng::save_packed(b, packed, {{"c", "10"}});
    srng::save_ascii(b, ascii);
    CHECK(srng::load_packed(packed) == b);
    CHECK(srng::load_ascii(ascii) == b);
    CHECK(srng::load_bits_auto(packed) == b);
    CHECK(srng::load_bits_auto(ascii) == b);
    std::remove(packed.c_str());
    std::remove((packed + ".meta").c_str());
    std::remove(ascii.c_str());
}

TEST_CASE("missing file raises IoError") {
    CHECK_THROWS_AS(srng::load_packed("no_such_file.bin"), srng::IoError);
}
