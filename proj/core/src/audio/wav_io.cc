// Copyright 2026  The snsd Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "snsd/audio/wav_io.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include <fmt/format.h>

#include "snsd/common/error.h"
#include "snsd/common/fs_util.h"

namespace snsd::audio {

namespace {

constexpr std::uint16_t kFormatPcm = 0x0001;
constexpr std::uint16_t kFormatFloat = 0x0003;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

// Reads little-endian integers regardless of host byte order.
class ByteReader {
 public:
  ByteReader(std::span<const std::uint8_t> bytes, std::string_view source)
      : bytes_(bytes), source_(source) {}

  std::size_t remaining() const { return bytes_.size() - pos_; }
  std::size_t pos() const { return pos_; }

  void Need(std::size_t n, std::string_view what) const {
    if (remaining() < n)
      throw MalformedWavError(
          fmt::format("{}: truncated while reading {}", source_, what));
  }
  std::uint16_t U16(std::string_view what) {
    Need(2, what);
    std::uint16_t v = static_cast<std::uint16_t>(bytes_[pos_] | (bytes_[pos_ + 1] << 8));
    pos_ += 2;
    return v;
  }
  std::uint32_t U32(std::string_view what) {
    Need(4, what);
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | bytes_[pos_ + static_cast<std::size_t>(i)];
    pos_ += 4;
    return v;
  }
  std::string_view Tag(std::string_view what) {
    Need(4, what);
    std::string_view tag(reinterpret_cast<const char *>(bytes_.data() + pos_), 4);
    pos_ += 4;
    return tag;
  }
  std::span<const std::uint8_t> Take(std::size_t n, std::string_view what) {
    Need(n, what);
    auto out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }
  void Skip(std::size_t n) { pos_ = std::min(bytes_.size(), pos_ + n); }

 private:
  std::span<const std::uint8_t> bytes_;
  std::string_view source_;
  std::size_t pos_ = 0;
};

void PutU16(std::vector<std::uint8_t> &out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void PutU32(std::vector<std::uint8_t> &out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void PutTag(std::vector<std::uint8_t> &out, const char *tag) {
  out.insert(out.end(), tag, tag + 4);
}

std::vector<std::uint8_t> WavHeader(std::uint16_t format, int channels, int rate,
                                    int bits, std::size_t data_bytes) {
  std::vector<std::uint8_t> out;
  out.reserve(44 + data_bytes);
  const int block_align = channels * bits / 8;
  PutTag(out, "RIFF");
  PutU32(out, static_cast<std::uint32_t>(36 + data_bytes));
  PutTag(out, "WAVE");
  PutTag(out, "fmt ");
  PutU32(out, 16);
  PutU16(out, format);
  PutU16(out, static_cast<std::uint16_t>(channels));
  PutU32(out, static_cast<std::uint32_t>(rate));
  PutU32(out, static_cast<std::uint32_t>(rate * block_align));
  PutU16(out, static_cast<std::uint16_t>(block_align));
  PutU16(out, static_cast<std::uint16_t>(bits));
  PutTag(out, "data");
  PutU32(out, static_cast<std::uint32_t>(data_bytes));
  return out;
}

}  // namespace

AudioClip DecodeWav(std::span<const std::uint8_t> bytes, std::string_view source,
                    WavFormat *format_out) {
  ByteReader r(bytes, source);
  if (r.Tag("RIFF tag") != "RIFF")
    throw MalformedWavError(fmt::format("{}: missing RIFF tag", source));
  r.U32("RIFF size");
  if (r.Tag("WAVE tag") != "WAVE")
    throw MalformedWavError(fmt::format("{}: missing WAVE tag", source));

  bool have_fmt = false;
  std::uint16_t tag = 0;
  int channels = 0, rate = 0, bits = 0, block_align = 0;
  std::span<const std::uint8_t> data;
  bool have_data = false;

  while (r.remaining() >= 8 && !have_data) {
    std::string_view id = r.Tag("chunk id");
    std::uint32_t size = r.U32("chunk size");
    if (id == "fmt ") {
      if (size < 16)
        throw MalformedWavError(fmt::format("{}: fmt chunk too small", source));
      auto body = r.Take(size, "fmt chunk");
      ByteReader f(body, source);
      tag = f.U16("format tag");
      channels = f.U16("channels");
      rate = static_cast<int>(f.U32("sample rate"));
      f.U32("byte rate");
      block_align = f.U16("block align");
      bits = f.U16("bits per sample");
      if (tag == kFormatExtensible) {
        if (size < 40)
          throw MalformedWavError(
              fmt::format("{}: extensible fmt chunk too small", source));
        f.U16("cbSize");
        f.U16("valid bits");
        f.U32("channel mask");
        tag = f.U16("sub-format");  // first two GUID bytes carry the format code
      }
      have_fmt = true;
    } else if (id == "data") {
      if (!have_fmt)
        throw MalformedWavError(fmt::format("{}: data chunk before fmt", source));
      // Streaming writers leave the size as 0xFFFFFFFF; take what is there.
      std::size_t n = size == 0xFFFFFFFFu ? r.remaining() : size;
      data = r.Take(n, "data chunk");
      have_data = true;
    } else {
      r.Skip(size);
    }
    if (size & 1u) r.Skip(1);
  }
  if (!have_fmt) throw MalformedWavError(fmt::format("{}: no fmt chunk", source));
  if (!have_data) throw MalformedWavError(fmt::format("{}: no data chunk", source));
  if (channels <= 0 || rate <= 0)
    throw MalformedWavError(
        fmt::format("{}: invalid channel count or sample rate", source));

  WavEncoding encoding;
  if (tag == kFormatPcm && bits == 16) {
    encoding = WavEncoding::kPcm16;
  } else if (tag == kFormatFloat && bits == 32) {
    encoding = WavEncoding::kFloat32;
  } else {
    throw UnsupportedCodecError(
        fmt::format("{}: format tag {:#06x} with {} bits per sample", source, tag,
                    bits));
  }
  const int bytes_per_sample = bits / 8;
  if (block_align != channels * bytes_per_sample)
    throw MalformedWavError(fmt::format("{}: inconsistent block align", source));

  const std::size_t frames = data.size() / static_cast<std::size_t>(block_align);
  AudioClip clip;
  clip.sample_rate_hz = rate;
  clip.samples.resize(frames);
  const std::uint8_t *p = data.data();
  for (std::size_t i = 0; i < frames; ++i) {
    double acc = 0.0;
    for (int c = 0; c < channels; ++c) {
      if (encoding == WavEncoding::kPcm16) {
        auto v = static_cast<std::int16_t>(p[0] | (p[1] << 8));
        acc += static_cast<double>(v) / 32768.0;
      } else {
        std::uint32_t u = static_cast<std::uint32_t>(p[0]) |
                          (static_cast<std::uint32_t>(p[1]) << 8) |
                          (static_cast<std::uint32_t>(p[2]) << 16) |
                          (static_cast<std::uint32_t>(p[3]) << 24);
        float f = std::bit_cast<float>(u);
        acc += static_cast<double>(f);
      }
      p += bytes_per_sample;
    }
    clip.samples[i] = channels == 1 ? acc : acc / channels;
  }
  if (!AllFinite(clip.samples))
    throw MalformedWavError(fmt::format("{}: non-finite float samples", source));
  if (format_out) *format_out = {encoding, channels, rate, frames};
  return clip;
}

AudioClip ReadWav(const std::filesystem::path &path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec))
    throw FileNotFoundError(path.string());
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileNotFoundError(path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return DecodeWav(bytes, path.string());
}

std::int16_t QuantizePcm16(double sample) {
  const double clamped = std::clamp(sample, -1.0, 1.0);
  const double code = std::nearbyint(clamped * 32768.0);
  return static_cast<std::int16_t>(std::clamp(code, -32768.0, 32767.0));
}

std::vector<std::uint8_t> EncodeWavPcm16(const AudioClip &clip) {
  if (clip.sample_rate_hz <= 0)
    throw InvalidArgumentError("write_wav: sample rate must be positive");
  if (!AllFinite(clip.samples)) throw NonFiniteSampleError("write_wav");
  auto out = WavHeader(kFormatPcm, 1, clip.sample_rate_hz, 16, clip.size() * 2);
  for (double x : clip.samples)
    PutU16(out, static_cast<std::uint16_t>(QuantizePcm16(x)));
  return out;
}

std::vector<std::uint8_t> EncodeWavFloat32(
    std::span<const std::vector<double>> channels, int sample_rate_hz) {
  if (channels.empty()) throw InvalidArgumentError("no channels");
  const std::size_t frames = channels.front().size();
  for (const auto &c : channels)
    if (c.size() != frames) throw InvalidArgumentError("channel length mismatch");
  const int n = static_cast<int>(channels.size());
  auto out = WavHeader(kFormatFloat, n, sample_rate_hz, 32, frames * 4 * channels.size());
  for (std::size_t i = 0; i < frames; ++i)
    for (const auto &c : channels)
      PutU32(out, std::bit_cast<std::uint32_t>(static_cast<float>(c[i])));
  return out;
}

void WriteWav(const AudioClip &clip, const std::filesystem::path &path) {
  auto bytes = EncodeWavPcm16(clip);
  WriteFileAtomic(path, std::string_view(reinterpret_cast<const char *>(bytes.data()),
                                         bytes.size()));
}

}  // namespace snsd::audio
