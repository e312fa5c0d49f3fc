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

#ifndef SNSD_AUDIO_WAV_IO_H_
#define SNSD_AUDIO_WAV_IO_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "snsd/audio/audio_clip.h"

namespace snsd::audio {

enum class WavEncoding { kPcm16, kFloat32 };

struct WavFormat {
  WavEncoding encoding = WavEncoding::kPcm16;
  int channels = 1;
  int sample_rate_hz = kCanonicalSampleRate;
  std::size_t frames = 0;
};

// Reads a RIFF/WAVE file holding 16-bit PCM or 32-bit IEEE float samples
// (plain or WAVE_FORMAT_EXTENSIBLE) with any channel count. Channels are
// averaged into mono; PCM16 values map to [-1, 1) by division by 32768.
// Throws FileNotFoundError, MalformedWavError or UnsupportedCodecError.
AudioClip ReadWav(const std::filesystem::path &path);
AudioClip DecodeWav(std::span<const std::uint8_t> bytes, std::string_view source,
                    WavFormat *format = nullptr);

// Writes canonical mono PCM16. Samples are clamped to [-1, 1] and rounded to
// the nearest code; 1.0 becomes 32767. Throws NonFiniteSampleError on
// NaN/Inf and IoError if the file cannot be written.
void WriteWav(const AudioClip &clip, const std::filesystem::path &path);
std::vector<std::uint8_t> EncodeWavPcm16(const AudioClip &clip);

// Also used by callers that need to predict the stored value.
std::int16_t QuantizePcm16(double sample);

// Writes interleaved float32 frames; used for fixtures and tests.
std::vector<std::uint8_t> EncodeWavFloat32(
    std::span<const std::vector<double>> channels, int sample_rate_hz);

}  // namespace snsd::audio

#endif  // SNSD_AUDIO_WAV_IO_H_
