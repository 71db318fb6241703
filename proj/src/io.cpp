#include "trajsampler/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <sstream>

#include "trajsampler/error.hpp"

namespace trajsampler {

namespace {

bool parse_real(std::string_view token, double& out) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

bool parse_id(std::string_view token, std::int64_t& out) {
  double v = 0.0;
  if (!parse_real(token, v)) return false;
  if (v != std::floor(v) || std::abs(v) > 9.0e15) return false;
  out = static_cast<std::int64_t>(v);
  return true;
}

std::string shortest(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

}  // namespace

std::vector<RawRecord> parse_trajectories(std::istream& in) {
  std::vector<RawRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (tokens.size() != 4) {
      throw validation_error(where + "expected 4 fields (frame ped_id x y), got " + std::to_string(tokens.size()));
    }
    RawRecord r;
    if (!parse_id(tokens[0], r.frame) || r.frame < 0) throw validation_error(where + "invalid frame");
    if (!parse_id(tokens[1], r.ped_id)) throw validation_error(where + "invalid pedestrian id");
    if (!parse_real(tokens[2], r.x) || !parse_real(tokens[3], r.y)) {
      throw validation_error(where + "invalid coordinate");
    }
    records.push_back(r);
  }
  return records;
}

std::vector<RawRecord> parse_trajectories_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open trajectory file '" + path.string() + "'");
  try {
    return parse_trajectories(in);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

std::string serialize_records(const std::vector<RawRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    out += std::to_string(r.frame) + '\t' + std::to_string(r.ped_id) + '\t' + shortest(r.x) + '\t' + shortest(r.y) +
           '\n';
  }
  return out;
}

std::vector<Scene> window_scenes(std::vector<RawRecord> records, const std::string& dataset,
                                 const WindowOptions& options, std::int64_t first_scene_id) {
  if (options.obs_len < 2 || options.pred_len < 1 || options.stride < 1 || options.frame_step < 0) {
    throw validation_error("invalid windowing options");
  }
  std::stable_sort(records.begin(), records.end(), [](const RawRecord& a, const RawRecord& b) {
    return a.ped_id != b.ped_id ? a.ped_id < b.ped_id : a.frame < b.frame;
  });

  std::int64_t step = options.frame_step;
  if (step == 0) {
    for (std::size_t i = 1; i < records.size(); ++i) {
      if (records[i].ped_id != records[i - 1].ped_id) continue;
      const std::int64_t gap = records[i].frame - records[i - 1].frame;
      if (gap > 0 && (step == 0 || gap < step)) step = gap;
    }
    if (step == 0) step = 1;
  }

  const std::size_t window = static_cast<std::size_t>(options.obs_len + options.pred_len);
  // start frame -> agents of that window, in pedestrian order
  std::map<std::int64_t, std::vector<Agent>> by_start;

  std::size_t i = 0;
  while (i < records.size()) {
    // One maximal run of consecutive frames for one pedestrian. Duplicate
    // frames end the run.
    std::size_t j = i + 1;
    while (j < records.size() && records[j].ped_id == records[i].ped_id &&
           records[j].frame - records[j - 1].frame == step) {
      ++j;
    }
    for (std::size_t s = i; s + window <= j; s += static_cast<std::size_t>(options.stride)) {
      Agent agent;
      agent.id = records[s].ped_id;
      for (std::size_t k = 0; k < window; ++k) {
        const Point2 p{records[s + k].x, records[s + k].y};
        if (k < static_cast<std::size_t>(options.obs_len)) {
          agent.observed.points.push_back(p);
        } else {
          agent.future.points.push_back(p);
        }
      }
      by_start[records[s].frame].push_back(std::move(agent));
    }
    i = j;
  }

  std::vector<Scene> scenes;
  std::int64_t id = first_scene_id;
  for (auto& [start, agents] : by_start) {
    Scene scene;
    scene.id = id++;
    scene.dataset = dataset;
    scene.agents = std::move(agents);
    scenes.push_back(std::move(scene));
  }
  return scenes;
}

// --- reports ------------------------------------------------------------------

std::string report_to_csv(const EvalReport& report) {
  std::string out = "dataset,sampler,subset,minADE,minFDE,gain_ade_pct,gain_fde_pct,repeats\n";
  for (const auto& r : report.rows) {
    out += r.dataset + ',' + r.sampler + ',' + r.subset + ',' + fixed4(r.min_ade) + ',' + fixed4(r.min_fde) + ',' +
           (r.gain_ade ? fixed4(*r.gain_ade) : "") + ',' + (r.gain_fde ? fixed4(*r.gain_fde) : "") + ',' +
           std::to_string(r.repeats) + '\n';
  }
  return out;
}

nlohmann::json report_to_json(const EvalReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    rows.push_back({
        {"dataset", r.dataset},
        {"sampler", r.sampler},
        {"subset", r.subset},
        {"minADE", r.min_ade},
        {"minFDE", r.min_fde},
        {"gain_ade_pct", r.gain_ade ? nlohmann::json(*r.gain_ade) : nlohmann::json(nullptr)},
        {"gain_fde_pct", r.gain_fde ? nlohmann::json(*r.gain_fde) : nlohmann::json(nullptr)},
        {"repeats", r.repeats},
        {"agents", r.agents},
    });
  }
  return {{"seed", report.seed}, {"repeats", report.repeats}, {"config", report.config}, {"rows", rows}};
}

EvalReport report_from_json(const nlohmann::json& j) {
  try {
    EvalReport report;
    report.seed = j.at("seed").get<std::uint64_t>();
    report.repeats = j.at("repeats").get<std::size_t>();
    report.config = j.value("config", nlohmann::json());
    for (const auto& jr : j.at("rows")) {
      ReportRow r;
      r.dataset = jr.at("dataset").get<std::string>();
      r.sampler = jr.at("sampler").get<std::string>();
      r.subset = jr.at("subset").get<std::string>();
      r.min_ade = jr.at("minADE").get<double>();
      r.min_fde = jr.at("minFDE").get<double>();
      if (!jr.at("gain_ade_pct").is_null()) r.gain_ade = jr.at("gain_ade_pct").get<double>();
      if (!jr.at("gain_fde_pct").is_null()) r.gain_fde = jr.at("gain_fde_pct").get<double>();
      r.repeats = jr.at("repeats").get<std::size_t>();
      r.agents = jr.value("agents", std::size_t{0});
      report.rows.push_back(std::move(r));
    }
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw validation_error(std::string("malformed report JSON: ") + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw io_error("failed writing '" + path.string() + "'");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit_report(const EvalReport& report, const std::filesystem::path& csv_path,
                 const std::filesystem::path& json_path) {
  if (!csv_path.empty()) write_text_file(csv_path, report_to_csv(report));
  if (!json_path.empty()) write_text_file(json_path, report_to_json(report).dump(2) + "\n");
}

// --- histograms ---------------------------------------------------------------

void HistogramBins::validate() const {
  if (count < 1) throw validation_error("histogram needs at least one bin");
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) throw validation_error("histogram range is invalid");
}

std::size_t HistogramBins::index_of(double v) const {
  const double width = (hi - lo) / static_cast<double>(count);
  const double pos = std::floor((v - lo) / width);
  if (!(pos >= 0.0)) return 0;
  return std::min(count - 1, static_cast<std::size_t>(pos));
}

std::vector<HistogramRow> latent_histogram(const std::vector<SessionResult>& sessions, const HistogramBins& bins) {
  bins.validate();
  std::vector<std::string> labels;
  std::map<std::string, std::vector<std::size_t>> counts;
  int dim = -1;
  for (const auto& s : sessions) {
    const std::string label = s.sampler.effective_label();
    if (!counts.contains(label)) {
      labels.push_back(label);
      counts[label].assign(bins.count, 0);
    }
    for (const auto& z : s.latents) {
      if (dim < 0) dim = z.dim();
      if (z.dim() != dim) throw validation_error("histogram sessions must share a latent dimension");
      ++counts[label][bins.index_of(z[0])];
    }
  }
  const double width = (bins.hi - bins.lo) / static_cast<double>(bins.count);
  std::vector<HistogramRow> rows;
  for (const auto& label : labels) {
    for (std::size_t b = 0; b < bins.count; ++b) {
      rows.push_back({bins.lo + width * static_cast<double>(b), bins.lo + width * static_cast<double>(b + 1), label,
                      counts[label][b]});
    }
  }
  return rows;
}

std::string histogram_to_csv(const std::vector<HistogramRow>& rows) {
  std::string out = "bin_left,bin_right,sampler,count\n";
  for (const auto& r : rows) {
    out += fixed4(r.bin_left) + ',' + fixed4(r.bin_right) + ',' + r.sampler + ',' + std::to_string(r.count) + '\n';
  }
  return out;
}

void emit_histogram(const std::vector<SessionResult>& sessions, const HistogramBins& bins,
                    const std::filesystem::path& path) {
  write_text_file(path, histogram_to_csv(latent_histogram(sessions, bins)));
}

}  // namespace trajsampler
