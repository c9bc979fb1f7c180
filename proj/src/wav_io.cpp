#include "touchtell/wav_io.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

namespace touchtell {

namespace {

void put_u32(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>(v & 0xFF));
    out.push_back(static_cast<char>((v >> 8) & 0xFF));
    out.push_back(static_cast<char>((v >> 16) & 0xFF));
    out.push_back(static_cast<char>((v >> 24) & 0xFF));
}

void put_u16(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xFF));
    out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

std::uint32_t get_u32(const std::string& b, std::size_t at) {
    return static_cast<std::uint8_t>(b[at]) | (static_cast<std::uint8_t>(b[at + 1]) << 8) |
           (static_cast<std::uint8_t>(b[at + 2]) << 16) |
           (static_cast<std::uint32_t>(static_cast<std::uint8_t>(b[at + 3])) << 24);
}

std::uint16_t get_u16(const std::string& b, std::size_t at) {
    return static_cast<std::uint16_t>(static_cast<std::uint8_t>(b[at]) |
                                      (static_cast<std::uint8_t>(b[at + 1]) << 8));
}

}  // namespace

std::string format_wav(const AudioClip& clip) {
    const std::uint32_t data_bytes = static_cast<std::uint32_t>(clip.samples.size() * 2);
    const std::uint32_t rate = static_cast<std::uint32_t>(clip.sample_rate_hz);
    std::string out;
    out.reserve(44 + data_bytes);
    out += "RIFF";
    put_u32(out, 36 + data_bytes);
    out += "WAVE";
    out += "fmt ";
    put_u32(out, 16);        // PCM fmt chunk size
    put_u16(out, 1);         // PCM
    put_u16(out, 1);         // mono
    put_u32(out, rate);
    put_u32(out, rate * 2);  // byte rate
    put_u16(out, 2);         // block align
    put_u16(out, 16);        // bits per sample
    out += "data";
    put_u32(out, data_bytes);
    for (std::int16_t s : clip.samples) put_u16(out, static_cast<std::uint16_t>(s));
    return out;
}

AudioClip parse_wav(const std::string& b) {
    if (b.size() < 12 || b.compare(0, 4, "RIFF") != 0 || b.compare(8, 4, "WAVE") != 0)
        fail(ErrorKind::Format, "not a RIFF/WAVE file");

    bool have_fmt = false;
    AudioClip clip;
    std::size_t pos = 12;
    while (pos + 8 <= b.size()) {
        const std::string id = b.substr(pos, 4);
        const std::uint32_t size = get_u32(b, pos + 4);
        const std::size_t body = pos + 8;
        if (body + size > b.size()) fail(ErrorKind::Format, "truncated chunk '" + id + "'");
        if (id == "fmt ") {
            if (size < 16) fail(ErrorKind::Format, "fmt chunk too small");
            const std::uint16_t codec = get_u16(b, body);
            const std::uint16_t channels = get_u16(b, body + 2);
            const std::uint32_t rate = get_u32(b, body + 4);
            const std::uint16_t bits = get_u16(b, body + 14);
            if (codec != 1) fail(ErrorKind::Format, "expected PCM encoding, got codec " + std::to_string(codec));
            if (channels != 1)
                fail(ErrorKind::Format, "expected mono, got " + std::to_string(channels) + " channels");
            if (rate != static_cast<std::uint32_t>(kSampleRateHz))
                fail(ErrorKind::Format, "expected 44100 Hz, got " + std::to_string(rate));
            if (bits != 16) fail(ErrorKind::Format, "expected 16-bit samples, got " + std::to_string(bits));
            have_fmt = true;
        } else if (id == "data") {
            if (!have_fmt) fail(ErrorKind::Format, "data chunk before fmt chunk");
            if (size % 2 != 0) fail(ErrorKind::Format, "odd data chunk size");
            clip.samples.resize(size / 2);
            for (std::size_t i = 0; i < clip.samples.size(); ++i)
                clip.samples[i] = static_cast<std::int16_t>(get_u16(b, body + 2 * i));
            return clip;
        }
        pos = body + size + (size % 2);  // chunks are word aligned
    }
    fail(ErrorKind::Format, have_fmt ? "missing data chunk" : "missing fmt chunk");
}

AudioClip read_wav(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Io, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_wav(ss.str());
}

void write_wav(const AudioClip& clip, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::Io, "cannot write " + path);
    const std::string bytes = format_wav(clip);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) fail(ErrorKind::Io, "write failed for " + path);
}

}  // namespace touchtell
