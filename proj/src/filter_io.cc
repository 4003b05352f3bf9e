// Copyright 2026 The fxbloom Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fxbloom/filter_io.h"

#include <zlib.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

namespace fxbloom {
namespace {

constexpr uint8_t kFlagMask = 0x01;
constexpr uint8_t kFlagLeadingBlock = 0x02;

class Writer {
 public:
  void u8(uint8_t v) { out_.push_back(v); }
  void u16(uint16_t v) { le(v, 2); }
  void u32(uint32_t v) { le(v, 4); }
  void u64(uint64_t v) { le(v, 8); }
  void f64(double v) { u64(std::bit_cast<uint64_t>(v)); }
  void bytes(std::span<const uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
  std::vector<uint8_t>& data() { return out_; }

 private:
  void le(uint64_t v, int n) {
    for (int i = 0; i < n; ++i) out_.push_back(static_cast<uint8_t>(v >> (8 * i)));
  }
  std::vector<uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const uint8_t> in) : in_(in) {}
  uint8_t u8() { return static_cast<uint8_t>(le(1)); }
  uint16_t u16() { return static_cast<uint16_t>(le(2)); }
  uint32_t u32() { return static_cast<uint32_t>(le(4)); }
  uint64_t u64() { return le(8); }
  double f64() { return std::bit_cast<double>(u64()); }
  std::span<const uint8_t> bytes(uint64_t n) {
    need(n);
    auto s = in_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  size_t position() const { return pos_; }
  size_t remaining() const { return in_.size() - pos_; }

 private:
  void need(uint64_t n) const {
    if (n > in_.size() - pos_) throw FormatError("filter file is truncated");
  }
  uint64_t le(int n) {
    need(n);
    uint64_t v = 0;
    for (int i = 0; i < n; ++i) v |= static_cast<uint64_t>(in_[pos_ + i]) << (8 * i);
    pos_ += n;
    return v;
  }
  std::span<const uint8_t> in_;
  size_t pos_ = 0;
};

void require_murmur(BaseHash hash) {
  if (hash != BaseHash::kMurmur3) {
    throw std::invalid_argument("only Murmur3 filters can be serialized");
  }
}

void write_header(Writer& w, FilterKind kind, uint8_t flags, uint64_t m,
                  double k, uint64_t n, HashSeed seed) {
  for (char c : kFilterMagic) w.u8(static_cast<uint8_t>(c));
  w.u8(kFormatVersion);
  w.u8(static_cast<uint8_t>(kind));
  w.u8(flags);
  w.u8(0);
  w.u64(m);
  w.f64(k);
  w.u64(n);
  w.u64(seed.value);
}

// Filter constructors throw std::invalid_argument on bad parameters; inside a
// file those are format errors.
template <class Fn>
auto as_format_error(Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("invalid filter parameters: ") + e.what());
  }
}

}  // namespace

uint32_t crc32_ieee(std::span<const uint8_t> bytes) {
  uLong crc = ::crc32(0L, Z_NULL, 0);
  size_t pos = 0;
  while (pos < bytes.size()) {
    const size_t chunk =
        std::min<size_t>(bytes.size() - pos, std::numeric_limits<uInt>::max());
    crc = ::crc32(crc, bytes.data() + pos, static_cast<uInt>(chunk));
    pos += chunk;
  }
  return static_cast<uint32_t>(crc);
}

FilterKind kind_of(const AnyFilter& filter) {
  switch (filter.index()) {
    case 0:
      return FilterKind::kStandard;
    case 1:
      return FilterKind::kRational;
    default:
      return std::get<VsbBloomFilter>(filter).has_optimal_layout()
                 ? FilterKind::kBlock
                 : FilterKind::kBlockSubfilter;
  }
}

std::vector<uint8_t> serialize(const AnyFilter& filter) {
  Writer w;
  const FilterKind kind = kind_of(filter);
  if (const auto* f = std::get_if<StandardBloomFilter>(&filter)) {
    require_murmur(f->base_hash());
    write_header(w, kind, f->mode() == ModuloMode::kMask ? kFlagMask : 0,
                 f->size(), static_cast<double>(f->k()), f->inserted_count(),
                 f->seed());
    w.bytes(f->bits().to_bytes());
  } else if (const auto* f = std::get_if<RationalBloomFilter>(&filter)) {
    require_murmur(f->base_hash());
    write_header(w, kind, 0, f->size(), f->k(), f->inserted_count(), f->seed());
    w.bytes(f->bits().to_bytes());
  } else {
    const auto& v = std::get<VsbBloomFilter>(filter);
    require_murmur(v.base_hash());
    const BlockLayout& layout = v.layout();
    const uint8_t flags = (kind == FilterKind::kBlockSubfilter &&
                           v.leading_block_present())
                              ? kFlagLeadingBlock
                              : 0;
    write_header(w, kind, flags, v.size(), total_hash_count(layout),
                 v.planned_n(), v.seed());
    if (kind == FilterKind::kBlockSubfilter) {
      w.u16(static_cast<uint16_t>(layout.blocks.size()));
      for (const Block& b : layout.blocks) {
        w.u64(b.size_bits);
        w.f64(b.k);
      }
    }
    w.bytes(v.bits().to_bytes());
  }
  w.u32(crc32_ieee(w.data()));
  return std::move(w.data());
}

AnyFilter deserialize(std::span<const uint8_t> bytes) {
  if (bytes.size() < kFixedHeaderBytes + 4) {
    throw FormatError("filter file is truncated");
  }
  Reader r(bytes);
  auto magic = r.bytes(4);
  if (std::memcmp(magic.data(), kFilterMagic, 4) != 0) {
    throw FormatError("bad magic; not a filter file");
  }
  if (const uint8_t version = r.u8(); version != kFormatVersion) {
    throw FormatError("unsupported format version " + std::to_string(version));
  }
  const uint8_t kind_byte = r.u8();
  const uint8_t flags = r.u8();
  if (r.u8() != 0) throw FormatError("reserved header byte is not zero");
  const uint64_t m = r.u64();
  const double k = r.f64();
  const uint64_t n = r.u64();
  const HashSeed seed{r.u64()};

  if (kind_byte > static_cast<uint8_t>(FilterKind::kBlockSubfilter)) {
    throw FormatError("unknown filter kind " + std::to_string(kind_byte));
  }
  const auto kind = static_cast<FilterKind>(kind_byte);
  const uint8_t allowed_flags = kind == FilterKind::kStandard        ? kFlagMask
                                : kind == FilterKind::kBlockSubfilter ? kFlagLeadingBlock
                                                                      : 0;
  if (flags & ~allowed_flags) throw FormatError("unknown flag bits set");

  std::vector<Block> table;
  if (kind == FilterKind::kBlockSubfilter) {
    const uint16_t count = r.u16();
    for (uint16_t j = 0; j < count; ++j) {
      const uint64_t size = r.u64();
      const double bk = r.f64();
      table.push_back({size, 0, bk});
    }
  }

  const uint64_t payload_bytes = m / 8 + (m % 8 != 0);
  if (r.remaining() != payload_bytes + 4) {
    throw FormatError("file length does not match header length field");
  }
  const auto payload = r.bytes(payload_bytes);
  const size_t covered = r.position();
  const uint32_t stored_crc = r.u32();
  if (crc32_ieee(bytes.first(covered)) != stored_crc) {
    throw FormatError("checksum mismatch");
  }

  BitVector bits = as_format_error([&] { return BitVector::from_bytes(payload, m); });

  switch (kind) {
    case FilterKind::kStandard: {
      if (!(k >= 1.0 && k <= 4294967295.0 && k == std::floor(k))) {
        throw FormatError("standard filter k must be a positive integer");
      }
      const ModuloMode mode = flags & kFlagMask ? ModuloMode::kMask : ModuloMode::kGeneric;
      return as_format_error([&] {
        return AnyFilter(StandardBloomFilter::from_parts(
            std::move(bits), static_cast<uint32_t>(k), seed, mode, n));
      });
    }
    case FilterKind::kRational:
      return as_format_error([&] {
        return AnyFilter(RationalBloomFilter::from_parts(std::move(bits), k, seed, n));
      });
    case FilterKind::kBlock: {
      VsbBloomFilter f = as_format_error([&] { return VsbBloomFilter(m, n, seed); });
      if (total_hash_count(f.layout()) != k) {
        throw FormatError("header k does not match the layout derived from (m, n)");
      }
      f.mutable_bits() = std::move(bits);
      return f;
    }
    case FilterKind::kBlockSubfilter: {
      VsbBloomFilter f = as_format_error([&] {
        return VsbBloomFilter(layout_from_blocks(table), n, seed,
                              (flags & kFlagLeadingBlock) != 0);
      });
      if (f.size() != m) throw FormatError("block table does not sum to m");
      f.mutable_bits() = std::move(bits);
      return f;
    }
  }
  throw FormatError("unreachable filter kind");
}

void write_filter_file(const std::filesystem::path& path, const AnyFilter& filter) {
  const std::vector<uint8_t> data = serialize(filter);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
  if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

AnyFilter read_filter_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<uint8_t> data((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
  return deserialize(data);
}

bool filter_contains(const AnyFilter& filter, std::string_view element) {
  return std::visit([&](const auto& f) { return f.contains(element); }, filter);
}

void filter_insert(AnyFilter& filter, std::string_view element) {
  std::visit([&](auto& f) { f.insert(element); }, filter);
}

const BitVector& filter_bits(const AnyFilter& filter) {
  return std::visit([](const auto& f) -> const BitVector& { return f.bits(); },
                    filter);
}

}  // namespace fxbloom
