#include "srng/bitstream.hpp"

#include <fstream>
#include <sstream>

#include "srng/errors.hpp"

namespace srng {

BitStream BitStream::from_string(const std::string& zeros_and_ones) {
    BitStream out;
    for (char ch : zeros_and_ones) {
        if (ch == '0' || ch == '1') out.append_bit(ch - '0');
    }
    return out;
}

void BitStream::append_bit(int b) {
    if ((bit_length_ & 7) == 0) bytes_.push_back(0);
    if (b) bytes_.back() |= static_cast<std::uint8_t>(1u << (7 - (bit_length_ & 7)));
    ++bit_length_;
}

void BitStream::append_word32(std::uint32_t w) {
    if ((bit_length_ & 7) == 0) {
        bytes_.push_back(static_cast<std::uint8_t>(w >> 24));
        bytes_.push_back(static_cast<std::uint8_t>(w >> 16));
        bytes_.push_back(static_cast<std::uint8_t>(w >> 8));
        bytes_.push_back(static_cast<std::uint8_t>(w));
        bit_length_ += 32;
    } else {
        for (int i = 31; i >= 0; --i) append_bit((w >> i) & 1u);
    }
}

void BitStream::truncate(std::uint64_t n_bits) {
    if (n_bits >= bit_length_) return;
    bit_length_ = n_bits;
    bytes_.resize((n_bits + 7) / 8);
    const unsigned used = n_bits & 7;
    if (used != 0 && !bytes_.empty()) {
        bytes_.back() &= static_cast<std::uint8_t>(0xFFu << (8 - used));
    }
}

std::vector<std::uint8_t> BitStream::unpacked() const {
    std::vector<std::uint8_t> out(bit_length_);
    for (std::uint64_t i = 0; i < bit_length_; ++i) out[i] = static_cast<std::uint8_t>(bit(i));
    return out;
}

void save_packed(const BitStream& bits, const std::string& path,
                 const std::vector<std::pair<std::string, std::string>>& extra_meta) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for writing: " + path);
    f.write(reinterpret_cast<const char*>(bits.bytes().data()),
            static_cast<std::streamsize>(bits.bytes().size()));
    if (!f) throw IoError("write failed: " + path);
    std::ofstream meta(path + ".meta");
    if (!meta) throw IoError("cannot open for writing: " + path + ".meta");
    meta << "bits=" << bits.bit_length() << "\n";
    for (const auto& [key, value] : extra_meta) meta << key << "=" << value << "\n";
}

BitStream load_packed(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for reading: " + path);
    std::vector<std::uint8_t> raw((std::istreambuf_iterator<char>(f)),
                                  std::istreambuf_iterator<char>());
    std::uint64_t n_bits = static_cast<std::uint64_t>(raw.size()) * 8;
    std::ifstream meta(path + ".meta");
    if (meta) {
        std::string line;
        while (std::getline(meta, line)) {
            if (line.rfind("bits=", 0) == 0) {
                n_bits = std::stoull(line.substr(5));
                break;
            }
        }
    }
    if (n_bits > raw.size() * 8)
        throw DecodeError("sidecar bit count exceeds file size: " + path);
    BitStream out;
    for (std::uint64_t i = 0; i < n_bits; ++i) {
        out.append_bit((raw[i >> 3] >> (7 - (i & 7))) & 1);
    }
    return out;
}

void save_ascii(const BitStream& bits, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot open for writing: " + path);
    for (std::uint64_t i = 0; i < bits.bit_length(); ++i) f.put(bits.bit(i) ? '1' : '0');
    f.put('\n');
    if (!f) throw IoError("write failed: " + path);
}

BitStream load_ascii(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open for reading: " + path);
    BitStream out;
    char ch;
    while (f.get(ch)) {
        if (ch == '0' || ch == '1') out.append_bit(ch - '0');
        else if (!std::isspace(static_cast<unsigned char>(ch)))
            throw DecodeError("non-bit character in ASCII bitstream: " + path);
    }
    return out;
}

BitStream load_bits_auto(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for reading: " + path);
    bool ascii = true;
    char ch;
    while (f.get(ch)) {
        if (ch != '0' && ch != '1' && !std::isspace(static_cast<unsigned char>(ch))) {
            ascii = false;
            break;
        }
    }
    return ascii ? load_ascii(path) : load_packed(path);
}

}  // namespace srng
