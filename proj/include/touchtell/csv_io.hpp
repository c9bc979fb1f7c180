#pragma once

#include <string>
#include <vector>

#include "touchtell/types.hpp"

namespace touchtell {

// Recording CSV: header `seq,timestamp_ms,t00,t01,...,t44`, one frame per
// row, row-major taxels, LF line endings. This is the canonical on-disk
// interchange for tactile recordings.
TouchRecording read_recording_csv(const std::string& path);
void write_recording_csv(const TouchRecording& rec, const std::string& path);

// In-memory variants used by the file functions and by the wire CLI.
TouchRecording parse_recording_csv(const std::string& text);
std::string format_recording_csv(const TouchRecording& rec);

// Feature table: participant_id,round,task,label followed by the 30 frozen
// feature names. Doubles are written with shortest round-trip formatting.
void write_feature_csv(const std::vector<FeatureRow>& rows, const std::string& path);
std::vector<FeatureRow> read_feature_csv(const std::string& path);

std::string format_double(double v);

}  // namespace touchtell
