// Copyright 2026 The ledgersim Authors
// SPDX-License-Identifier: Apache-2.0

#include "ledgersim/encode.hpp"

namespace ledgersim {

void Encoder::grow(std::size_t need) {
  std::size_t cap = cap_ == 0 ? 256 : cap_;
  while (cap < need) cap *= 2;
  std::unique_ptr<char[]> next(new char[cap]);
  if (size_ > 0) std::memcpy(next.get(), buf_.get(), size_);
  buf_ = std::move(next);
  cap_ = cap;
}

bool Decoder::need(std::size_t n) {
  if (failed_ || in_.size() - pos_ < n) {
    failed_ = true;
    return false;
  }
  return true;
}

std::uint8_t Decoder::u8() {
  if (!need(1)) return 0;
  return static_cast<std::uint8_t>(in_[pos_++]);
}

std::uint32_t Decoder::u32() {
  if (!need(4)) return 0;
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i)
    v = (v << 8) | static_cast<std::uint8_t>(in_[pos_++]);
  return v;
}

std::uint64_t Decoder::u64() {
  if (!need(8)) return 0;
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i)
    v = (v << 8) | static_cast<std::uint8_t>(in_[pos_++]);
  return v;
}

std::array<std::uint8_t, 32> Decoder::bytes32() {
  std::array<std::uint8_t, 32> out{};
  if (!need(32)) return out;
  std::memcpy(out.data(), in_.data() + pos_, 32);
  pos_ += 32;
  return out;
}

Address Decoder::address() {
  Address a;
  a.bytes = bytes32();
  return a;
}

std::string Decoder::str() {
  std::uint32_t len = u32();
  if (!need(len)) return {};
  std::string out(in_.substr(pos_, len));
  pos_ += len;
  return out;
}

std::optional<Digest> Decoder::opt_digest() {
  if (u8() == 0) return std::nullopt;
  return bytes32();
}

std::optional<Address> Decoder::opt_address() {
  if (u8() == 0) return std::nullopt;
  return address();
}

}  // namespace ledgersim
