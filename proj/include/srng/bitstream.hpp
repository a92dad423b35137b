#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace srng {

// Packed bit sequence, MSB-first within each byte; trailing pad bits are 0.
class BitStream {
public:
    BitStream() = default;

    static BitStream from_string(const std::string& zeros_and_ones);

    std::uint64_t bit_length() const { return bit_length_; }
    const std::vector<std::uint8_t>& bytes() const { return bytes_; }

    int bit(std::uint64_t i) const {
        return (bytes_[i >> 3] >> (7 - (i & 7))) & 1;
    }

    void append_bit(int b);
    // Appends the 32 bits of a word, most significant bit first.
    void append_word32(std::uint32_t w);
    // Drops bits beyond n and zeroes the pad bits of the last byte.
    void truncate(std::uint64_t n_bits);

    // One byte per bit, values 0/1; the layout every statistical test reads.
    std::vector<std::uint8_t> unpacked() const;

    bool operator==(const BitStream& other) const {
        return bit_length_ == other.bit_length_ && bytes_ == other.bytes_;
    }

private:
    std::vector<std::uint8_t> bytes_;
    std::uint64_t bit_length_ = 0;
};

// Packed-file format: raw bytes; a sidecar "<path>.meta" text file carries
// "bits=<n>" plus any extra "key=value" lines handed in.
void save_packed(const BitStream& bits, const std::string& path,
                 const std::vector<std::pair<std::string, std::string>>& extra_meta = {});
BitStream load_packed(const std::string& path);

// ASCII "0"/"1" export for external tooling.
void save_ascii(const BitStream& bits, const std::string& path);
BitStream load_ascii(const std::string& path);

// Loads either format: ASCII if the file holds only 0/1/whitespace bytes.
BitStream load_bits_auto(const std::string& path);

}  // namespace srng
