#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "trajsampler/bench.hpp"
#include "trajsampler/generators.hpp"
#include "trajsampler/io.hpp"
#include "trajsampler/samplers.hpp"

namespace trajsampler {

struct CorpusFile {
  std::string dataset;
  std::filesystem::path path;
};

/// Either a synthetic corpus or a list of ETH/UCY-format files, one dataset
/// (leave-one-out split name) per file.
struct CorpusSource {
  std::optional<SyntheticCorpusSpec> synthetic;
  std::vector<CorpusFile> files;
  WindowOptions windows;
};

struct BenchConfig {
  GeneratorSpec generator;
  std::vector<SamplerConfig> samplers;
  CorpusSource corpus;
  EvalOptions eval;
  std::filesystem::path csv_path;
  std::filesystem::path json_path;
  nlohmann::json raw;  // the document as loaded, echoed into reports

  void validate() const;
};

GeneratorSpec generator_spec_from_json(const nlohmann::json& j);
nlohmann::json generator_spec_to_json(const GeneratorSpec& spec);
SamplerConfig sampler_config_from_json(const nlohmann::json& j);

/// Parses a BenchConfig document. Unknown keys are rejected.
BenchConfig bench_config_from_json(const nlohmann::json& j);
BenchConfig load_bench_config(const std::filesystem::path& path);

/// Materializes the corpus. File paths resolve relative to base_dir.
std::vector<Scene> load_corpus(const BenchConfig& cfg, const std::filesystem::path& base_dir = {});

}  // namespace trajsampler
