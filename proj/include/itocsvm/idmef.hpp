#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "itocsvm/types.hpp"

namespace itocsvm {

/// "Possible attack" / "Medium attack" / "Severe attack".
std::string_view classification_text(Severity s) noexcept;

/// ISO-8601 UTC timestamp with microseconds, e.g. 1970-01-01T00:00:12.500000Z.
std::string iso8601_utc(std::int64_t epoch_s, double offset_s);
/// Inverse of iso8601_utc: seconds since the Unix epoch.
double parse_iso8601_utc(std::string_view s);

/// Writes `alert_<analyzer_id>_<seq>.xml` into out_dir and returns its path.
/// CreateTime is capture_epoch_s + alarm.last_seen. Throws UnsetSeverity for
/// an unclassified alarm and IoError when the file cannot be written.
std::filesystem::path emit_idmef(const AggregatedAlarm& alarm, const std::string& analyzer_id,
                                 const std::filesystem::path& out_dir, std::uint64_t seq,
                                 std::int64_t capture_epoch_s = 0);

/// Single-writer sequence numbering over a batch.
class IdmefWriter {
 public:
  IdmefWriter(std::string analyzer_id, std::filesystem::path out_dir, std::int64_t capture_epoch_s = 0)
      : analyzer_id_(std::move(analyzer_id)), out_dir_(std::move(out_dir)), epoch_(capture_epoch_s) {}

  std::filesystem::path emit(const AggregatedAlarm& alarm) {
    return emit_idmef(alarm, analyzer_id_, out_dir_, next_seq_++, epoch_);
  }
  std::uint64_t emitted() const noexcept { return next_seq_ - 1; }

 private:
  std::string analyzer_id_;
  std::filesystem::path out_dir_;
  std::int64_t epoch_;
  std::uint64_t next_seq_ = 1;
};

/// Fields recovered from an emitted file.
struct IdmefAlert {
  std::string analyzer_id;
  SourceId source;
  double create_time_s = 0.0;  ///< seconds since the Unix epoch
  std::string classification;
  double qa = 0.0;
  std::uint64_t qb = 0;
};

/// Parses an emitted file with an XML parser; throws ParseError when a
/// field group is missing.
IdmefAlert read_idmef(const std::filesystem::path& path);

}  // namespace itocsvm
