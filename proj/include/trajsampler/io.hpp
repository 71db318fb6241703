#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "trajsampler/bench.hpp"
#include "trajsampler/samplers.hpp"
#include "trajsampler/trajectory.hpp"

namespace trajsampler {

/// One line of an ETH/UCY-style text file: "frame ped_id x y".
struct RawRecord {
  std::int64_t frame = 0;
  std::int64_t ped_id = 0;
  double x = 0.0;  // meters
  double y = 0.0;

  friend bool operator==(const RawRecord&, const RawRecord&) = default;
};

/// Whitespace-separated "frame ped_id x y" lines, fixed column order. Blank
/// lines are skipped. Frame and pedestrian ids may be written as integral
/// reals ("780.0"). Records come back in file order.
std::vector<RawRecord> parse_trajectories(std::istream& in);
std::vector<RawRecord> parse_trajectories_file(const std::filesystem::path& path);

/// Inverse of parse_trajectories (tab separated, shortest round-trip reals).
std::string serialize_records(const std::vector<RawRecord>& records);

struct WindowOptions {
  int obs_len = kObsLen;
  int pred_len = kPredLen;
  int stride = 1;
  /// Frame-number increment between consecutive samples; 0 detects it as the
  /// smallest positive per-pedestrian frame gap (10 in the usual ETH/UCY
  /// exports, 1 in frame-indexed files).
  std::int64_t frame_step = 0;
};

/// Cuts each pedestrian's maximal runs of consecutive frames into windows of
/// obs_len + pred_len frames at the given stride. Windows starting on the
/// same frame form one scene. Pedestrians without a long enough run are
/// skipped. Scene ids are assigned in start-frame order starting at
/// first_scene_id.
std::vector<Scene> window_scenes(std::vector<RawRecord> records, const std::string& dataset,
                                 const WindowOptions& options = {}, std::int64_t first_scene_id = 0);

// --- reports ------------------------------------------------------------------

/// CSV with header dataset,sampler,subset,minADE,minFDE,gain_ade_pct,gain_fde_pct,repeats.
/// Reals use 4 decimals; unset gains are empty fields.
std::string report_to_csv(const EvalReport& report);
nlohmann::json report_to_json(const EvalReport& report);
EvalReport report_from_json(const nlohmann::json& j);

void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

/// Writes the CSV and/or the JSON mirror; empty paths are skipped.
void emit_report(const EvalReport& report, const std::filesystem::path& csv_path,
                 const std::filesystem::path& json_path);

// --- histograms ---------------------------------------------------------------

struct HistogramBins {
  double lo = -4.0;
  double hi = 4.0;
  std::size_t count = 16;

  void validate() const;
  /// Bin index of v; values outside [lo, hi) are clamped into the edge bins.
  std::size_t index_of(double v) const;
};

struct HistogramRow {
  double bin_left = 0.0;
  double bin_right = 0.0;
  std::string sampler;
  std::size_t count = 0;
};

/// Frequency of the first latent coordinate per sampler label, samplers in
/// order of first appearance.
std::vector<HistogramRow> latent_histogram(const std::vector<SessionResult>& sessions, const HistogramBins& bins);

/// CSV with header bin_left,bin_right,sampler,count.
std::string histogram_to_csv(const std::vector<HistogramRow>& rows);
void emit_histogram(const std::vector<SessionResult>& sessions, const HistogramBins& bins,
                    const std::filesystem::path& path);

}  // namespace trajsampler
