#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "trajsampler/error.hpp"
#include "trajsampler/io.hpp"

using namespace trajsampler;

namespace {

std::vector<RawRecord> parse(const std::string& text) {
  std::istringstream in(text);
  return parse_trajectories(in);
}

void add_run(std::vector<RawRecord>& out, std::int64_t ped, std::int64_t first_frame, int frames) {
  for (int k = 0; k < frames; ++k) {
    out.push_back({first_frame + 10 * k, ped, 0.1 * static_cast<double>(ped), 0.4 * k});
  }
}

// Five pedestrians. Windows of 20 frames at stride 1:
//   ped 1: 20 frames                 -> 1
//   ped 2: 26 frames                 -> 7
//   ped 3: 19 frames                 -> 0
//   ped 4: 11 frames, gap, 22 frames -> 0 + 3
//   ped 5: 40 frames from frame 50   -> 21
// Total 32. At stride 3: 1 + 3 + 0 + 1 + 7 = 12.
std::vector<RawRecord> five_pedestrians() {
  std::vector<RawRecord> r;
  add_run(r, 1, 0, 20);
  add_run(r, 2, 0, 26);
  add_run(r, 3, 100, 19);
  add_run(r, 4, 0, 11);
  add_run(r, 4, 200, 22);
  add_run(r, 5, 50, 40);
  return r;
}

std::size_t windows(const std::vector<Scene>& scenes) {
  std::size_t n = 0;
  for (const auto& s : scenes) n += s.agents.size();
  return n;
}

}  // namespace

TEST_CASE("parse trajectories") {
  const auto r = parse("780.0\t1.0\t8.46\t3.59\n\n  790 2   -1e-3 +4\n");
  REQUIRE(r.size() == 2);
  CHECK(r[0] == RawRecord{780, 1, 8.46, 3.59});
  CHECK(r[1] == RawRecord{790, 2, -0.001, 4.0});

  CHECK_THROWS_WITH_AS(parse("1 2 3\n"), "line 1: expected 4 fields (frame ped_id x y), got 3", Error);
  CHECK_THROWS_WITH_AS(parse("1 2 3 4\n1.5 2 3 4\n"), "line 2: invalid frame", Error);
  CHECK_THROWS_WITH_AS(parse("1 x 3 4\n"), "line 1: invalid pedestrian id", Error);
  CHECK_THROWS_WITH_AS(parse("1 2 nan 4\n"), "line 1: invalid coordinate", Error);
  CHECK_THROWS_AS(parse_trajectories_file("/nonexistent/file.txt"), Error);
  try {
    parse_trajectories_file("/nonexistent/file.txt");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kIo);
  }
}

TEST_CASE("serialize round trip") {
  const std::vector<RawRecord> r{{0, 1, 0.1, -2.5}, {10, 1, 1e-17, 123456.789}, {20, 7, -0.0, 3.0}};
  CHECK(parse(serialize_records(r)) == r);
  CHECK(serialize_records({{10, 3, 1.5, -2.0}}) == "10\t3\t1.5\t-2\n");
}

TEST_CASE("window scenes") {
  const auto records = five_pedestrians();
  const auto scenes = window_scenes(records, "fixture");
  CHECK(windows(scenes) == 32);
  WindowOptions stride3;
  stride3.stride = 3;
  CHECK(windows(window_scenes(records, "fixture", stride3)) == 12);

  // Windows starting at frame 0: ped 1 and ped 2.
  REQUIRE(!scenes.empty());
  CHECK(scenes[0].id == 0);
  CHECK(scenes[0].dataset == "fixture");
  REQUIRE(scenes[0].agents.size() == 2);
  CHECK(scenes[0].agents[0].id == 1);
  CHECK(scenes[0].agents[1].id == 2);
  const Agent& a = scenes[0].agents[0];
  CHECK(a.observed.size() == kObsLen);
  CHECK(a.future.size() == kPredLen);
  CHECK(a.future.points[0] == Point2{0.1, 0.4 * 8});

  const auto offset = window_scenes(records, "fixture", {}, 100);
  CHECK(offset[0].id == 100);

  // Frame-indexed files (step 1) are detected the same way.
  std::vector<RawRecord> dense;
  for (int k = 0; k < 25; ++k) dense.push_back({k, 9, 0.0, double(k)});
  CHECK(windows(window_scenes(dense, "d")) == 6);

  WindowOptions bad;
  bad.stride = 0;
  CHECK_THROWS_AS(window_scenes(records, "x", bad), Error);
}

TEST_CASE("report CSV and JSON") {
  EvalReport rep;
  rep.seed = 7;
  rep.repeats = 3;
  rep.config = {{"k", 1}};
  rep.rows.push_back({"AVG", "MC", "full", 0.123456, 0.5, 0.0, 0.0, 3, 10});
  rep.rows.push_back({"eth", "BO", "exception-4%", 1.0, 2.25, 12.5, std::nullopt, 3, 2});
  rep.rows.push_back({"eth", "QMC", "full", 1.0, 2.0, std::nullopt, std::nullopt, 3, 2});
  CHECK(report_to_csv(rep) ==
        "dataset,sampler,subset,minADE,minFDE,gain_ade_pct,gain_fde_pct,repeats\n"
        "AVG,MC,full,0.1235,0.5000,0.0000,0.0000,3\n"
        "eth,BO,exception-4%,1.0000,2.2500,12.5000,,3\n"
        "eth,QMC,full,1.0000,2.0000,,,3\n");
  CHECK(report_from_json(report_to_json(rep)) == rep);
  CHECK_THROWS_AS(report_from_json(nlohmann::json{{"rows", 1}}), Error);

  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "trajsampler_io_test";
  fs::create_directories(dir);
  emit_report(rep, dir / "r.csv", dir / "r.json");
  CHECK(read_text_file(dir / "r.csv") == report_to_csv(rep));
  CHECK(report_from_json(nlohmann::json::parse(read_text_file(dir / "r.json"))) == rep);
  fs::remove_all(dir);
  CHECK_THROWS_AS(write_text_file("/nonexistent/dir/x.csv", "x"), Error);
}

TEST_CASE("latent histogram") {
  HistogramBins bins{-1.0, 1.0, 4};
  CHECK(bins.index_of(-5.0) == 0);
  CHECK(bins.index_of(-0.5) == 1);
  CHECK(bins.index_of(0.0) == 2);
  CHECK(bins.index_of(0.99) == 3);
  CHECK(bins.index_of(7.0) == 3);

  SessionResult mc;
  mc.latents = {{-0.7, 9.0}, {0.2, 0.0}, {0.3, 0.0}};
  SessionResult bo;
  bo.sampler.kind = SamplerKind::kBO;
  bo.latents = {{0.9, 0.0}};
  const auto rows = latent_histogram({mc, bo, mc}, bins);
  REQUIRE(rows.size() == 8);
  CHECK(rows[0].sampler == "MC");
  CHECK(rows[0].count == 2);
  CHECK(rows[1].count == 0);
  CHECK(rows[2].count == 4);
  CHECK(rows[7].sampler == "BO");
  CHECK(rows[7].count == 1);
  CHECK(histogram_to_csv({rows[0]}) == "bin_left,bin_right,sampler,count\n-1.0000,-0.5000,MC,2\n");

  SessionResult odd;
  odd.latents = {{0.1}};
  CHECK_THROWS_AS(latent_histogram({mc, odd}, bins), Error);
  CHECK_THROWS_AS(latent_histogram({mc}, HistogramBins{1.0, 1.0, 4}), Error);
}
