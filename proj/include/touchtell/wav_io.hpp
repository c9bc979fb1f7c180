#pragma once

#include <string>

#include "touchtell/types.hpp"

namespace touchtell {

// RIFF/WAVE PCM, 16-bit little-endian, mono, 44100 Hz. The writer emits a
// canonical 44-byte header so write-then-read round-trips are byte
// identical; the reader walks chunks and rejects any format mismatch by
// name ("expected mono", ...).
AudioClip read_wav(const std::string& path);
void write_wav(const AudioClip& clip, const std::string& path);

std::string format_wav(const AudioClip& clip);
AudioClip parse_wav(const std::string& bytes);

}  // namespace touchtell
