// Copyright 2026 The ledgersim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <cstring>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "ledgersim/types.hpp"

namespace ledgersim {

// Canonical binary encoding shared by hashing, snapshots and the block log:
// integers are big-endian fixed-width, strings and lists are u32
// length-prefixed, maps are written in ascending key order.
//
// State hashing re-serializes the whole ledger every block, so the write
// path avoids per-byte container calls: one capacity check per field, raw
// stores after it.
class Encoder {
 public:
  void u8(std::uint8_t v) {
    char* p = ensure(1);
    *p = static_cast<char>(v);
    size_ += 1;
  }
  void u32(std::uint32_t v) {
    char* p = ensure(4);
    for (int i = 3; i >= 0; --i) {
      p[i] = static_cast<char>(v & 0xff);
      v >>= 8;
    }
    size_ += 4;
  }
  void u64(std::uint64_t v) {
    char* p = ensure(8);
    for (int i = 7; i >= 0; --i) {
      p[i] = static_cast<char>(v & 0xff);
      v >>= 8;
    }
    size_ += 8;
  }
  void bytes32(const std::array<std::uint8_t, 32>& v) {
    char* p = ensure(32);
    std::memcpy(p, v.data(), 32);
    size_ += 32;
  }
  void address(const Address& a) { bytes32(a.bytes); }
  void str(std::string_view s) {
    char* p = ensure(4 + s.size());
    std::uint32_t len = static_cast<std::uint32_t>(s.size());
    for (int i = 3; i >= 0; --i) {
      p[i] = static_cast<char>(len & 0xff);
      len >>= 8;
    }
    std::memcpy(p + 4, s.data(), s.size());
    size_ += 4 + s.size();
  }
  void opt_digest(const std::optional<Digest>& d) {
    if (d) {
      u8(1);
      bytes32(*d);
    } else {
      u8(0);
    }
  }
  void opt_address(const std::optional<Address>& a) {
    if (a) {
      u8(1);
      bytes32(a->bytes);
    } else {
      u8(0);
    }
  }

  std::string_view bytes() const { return {buf_.get(), size_}; }
  void reserve(std::size_t n) {
    if (n > cap_) grow(n);
  }

 private:
  char* ensure(std::size_t n) {
    if (size_ + n > cap_) grow(size_ + n);
    return buf_.get() + size_;
  }
  void grow(std::size_t need);

  std::unique_ptr<char[]> buf_;
  std::size_t size_ = 0;
  std::size_t cap_ = 0;
};

// Mirror of Encoder. Out-of-bounds reads latch a failure flag instead of
// throwing; callers check ok() once after decoding a record.
class Decoder {
 public:
  explicit Decoder(std::string_view in) : in_(in) {}

  std::uint8_t u8();
  std::uint32_t u32();
  std::uint64_t u64();
  std::array<std::uint8_t, 32> bytes32();
  Address address();
  std::string str();
  std::optional<Digest> opt_digest();
  std::optional<Address> opt_address();

  bool ok() const { return !failed_; }
  bool at_end() const { return pos_ == in_.size(); }
  std::size_t remaining() const { return in_.size() - pos_; }

 private:
  bool need(std::size_t n);

  std::string_view in_;
  std::size_t pos_ = 0;
  bool failed_ = false;
};

}  // namespace ledgersim
