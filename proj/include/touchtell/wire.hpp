#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "touchtell/types.hpp"

namespace touchtell {

// Framed binary stream standing in for the sensor's radio link.
// Layout (little-endian, 59 bytes total):
//   magic  0xA5 0x5A
//   seq    u16
//   timestamp_ms u32
//   counts 25 x u16
//   crc    CRC-8 (poly 0x07, init 0x00) over the preceding 58 bytes
inline constexpr std::size_t kWireFrameSize = 59;
inline constexpr std::uint8_t kWireMagic0 = 0xA5;
inline constexpr std::uint8_t kWireMagic1 = 0x5A;

std::uint8_t crc8(const std::uint8_t* data, std::size_t len);

std::vector<std::uint8_t> encode_frame(const SensorFrame& frame);
SensorFrame decode_frame(const std::uint8_t* data, std::size_t len);
SensorFrame decode_frame(const std::vector<std::uint8_t>& bytes);

// A full session rendered to bytes plus its emission schedule (one entry
// per frame, copied from the recording timestamps). Real-time pacing is
// the caller's concern.
struct SessionStream {
    std::vector<std::uint8_t> bytes;
    std::vector<std::uint32_t> emission_ms;
};

SessionStream stream_session(const TouchRecording& recording);

// Parses a concatenation of 59-byte frames back into a recording.
TouchRecording decode_stream(const std::vector<std::uint8_t>& bytes,
                             double nominal_rate_hz = kNominalFrameRateHz);

// .tws wire log files: the raw byte stream on disk.
void write_wire_log(const SessionStream& stream, const std::string& path);
std::vector<std::uint8_t> read_wire_log(const std::string& path);

}  // namespace touchtell
