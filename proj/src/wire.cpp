#include "touchtell/wire.hpp"

#include <fstream>

#include "touchtell/error.hpp"

namespace touchtell {

std::uint8_t crc8(const std::uint8_t* data, std::size_t len) {
    std::uint8_t crc = 0x00;
    for (std::size_t i = 0; i < len; ++i) {
        crc ^= data[i];
        for (int bit = 0; bit < 8; ++bit)
            crc = (crc & 0x80) ? static_cast<std::uint8_t>((crc << 1) ^ 0x07)
                               : static_cast<std::uint8_t>(crc << 1);
    }
    return crc;
}

namespace {

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
    out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xFF));
    out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xFF));
}

}  // namespace

std::vector<std::uint8_t> encode_frame(const SensorFrame& frame) {
    if (frame.seq > 0xFFFF)
        fail(ErrorKind::Range, "seq " + std::to_string(frame.seq) + " does not fit u16");
    for (std::uint16_t c : frame.counts)
        if (c > kAdcMax) fail(ErrorKind::Range, "count ∉ [0,4095]");

    std::vector<std::uint8_t> out;
    out.reserve(kWireFrameSize);
    out.push_back(kWireMagic0);
    out.push_back(kWireMagic1);
    put_u16(out, static_cast<std::uint16_t>(frame.seq));
    put_u32(out, frame.timestamp_ms);
    for (std::uint16_t c : frame.counts) put_u16(out, c);
    out.push_back(crc8(out.data(), out.size()));
    return out;
}

SensorFrame decode_frame(const std::uint8_t* d, std::size_t len) {
    if (len != kWireFrameSize)
        fail(ErrorKind::Length,
             "expected " + std::to_string(kWireFrameSize) + " bytes, got " + std::to_string(len));
    if (d[0] != kWireMagic0 || d[1] != kWireMagic1) fail(ErrorKind::Framing, "bad magic bytes");
    if (crc8(d, kWireFrameSize - 1) != d[kWireFrameSize - 1])
        fail(ErrorKind::Integrity, "crc mismatch");

    SensorFrame f;
    f.seq = static_cast<std::uint32_t>(d[2] | (d[3] << 8));
    f.timestamp_ms = static_cast<std::uint32_t>(d[4]) | (static_cast<std::uint32_t>(d[5]) << 8) |
                     (static_cast<std::uint32_t>(d[6]) << 16) |
                     (static_cast<std::uint32_t>(d[7]) << 24);
    for (int t = 0; t < kNumTaxels; ++t) {
        const std::uint16_t c = static_cast<std::uint16_t>(d[8 + 2 * t] | (d[9 + 2 * t] << 8));
        if (c > kAdcMax) fail(ErrorKind::Range, "count ∉ [0,4095] in frame body");
        f.counts[t] = c;
    }
    return f;
}

SensorFrame decode_frame(const std::vector<std::uint8_t>& bytes) {
    return decode_frame(bytes.data(), bytes.size());
}

SessionStream stream_session(const TouchRecording& recording) {
    SessionStream s;
    s.bytes.reserve(recording.frames.size() * kWireFrameSize);
    s.emission_ms.reserve(recording.frames.size());
    for (const auto& f : recording.frames) {
        const auto frame_bytes = encode_frame(f);
        s.bytes.insert(s.bytes.end(), frame_bytes.begin(), frame_bytes.end());
        s.emission_ms.push_back(f.timestamp_ms);
    }
    return s;
}

TouchRecording decode_stream(const std::vector<std::uint8_t>& bytes, double nominal_rate_hz) {
    if (bytes.size() % kWireFrameSize != 0)
        fail(ErrorKind::Length, "stream length " + std::to_string(bytes.size()) +
                                    " is not a multiple of " + std::to_string(kWireFrameSize));
    TouchRecording rec;
    rec.nominal_rate_hz = nominal_rate_hz;
    for (std::size_t off = 0; off < bytes.size(); off += kWireFrameSize)
        rec.frames.push_back(decode_frame(bytes.data() + off, kWireFrameSize));
    return rec;
}

void write_wire_log(const SessionStream& stream, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::Io, "cannot write " + path);
    out.write(reinterpret_cast<const char*>(stream.bytes.data()),
              static_cast<std::streamsize>(stream.bytes.size()));
    if (!out) fail(ErrorKind::Io, "write failed for " + path);
}

std::vector<std::uint8_t> read_wire_log(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Io, "cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return bytes;
}

}  // namespace touchtell
