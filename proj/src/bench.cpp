#include "trajsampler/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <numbers>
#include <thread>

#include "trajsampler/error.hpp"
#include "trajsampler/metrics.hpp"

namespace trajsampler {

void SyntheticCorpusSpec::validate() const {
  if (datasets.empty()) throw validation_error("synthetic corpus needs at least one dataset");
  if (agents_per_scene < 1) throw validation_error("synthetic corpus needs agents_per_scene >= 1");
  if (!(min_speed >= 0.0) || !(max_speed >= min_speed)) throw validation_error("synthetic corpus speed range is invalid");
  if (!(area >= 0.0) || !(obs_noise >= 0.0)) throw validation_error("synthetic corpus area and noise must be >= 0");
}

std::vector<Scene> make_synthetic_corpus(const SyntheticCorpusSpec& spec, const Generator& generator,
                                         std::uint64_t seed) {
  spec.validate();
  Rng rng(seed);
  const LatentPrior prior(generator.latent_dim());
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, 1.0);

  std::vector<Scene> scenes;
  std::int64_t next_scene = 0;
  for (const auto& ds : spec.datasets) {
    for (std::size_t s = 0; s < ds.scenes; ++s) {
      Scene scene;
      scene.id = next_scene++;
      scene.dataset = ds.name;
      for (std::size_t a = 0; a < spec.agents_per_scene; ++a) {
        const Point2 start{spec.area * (2.0 * unit(rng) - 1.0), spec.area * (2.0 * unit(rng) - 1.0)};
        const double heading = 2.0 * std::numbers::pi * unit(rng);
        const double speed = spec.min_speed + (spec.max_speed - spec.min_speed) * unit(rng);
        const Point2 velocity{speed * std::cos(heading), speed * std::sin(heading)};

        Agent agent;
        agent.id = static_cast<std::int64_t>(a);
        agent.observed.points.reserve(kObsLen);
        for (int t = 0; t < kObsLen; ++t) {
          Point2 p = start + (t * kFrameDt) * velocity;
          if (spec.obs_noise > 0.0) p = p + spec.obs_noise * Point2{noise(rng), noise(rng)};
          agent.observed.points.push_back(p);
        }
        LatentPoint z = prior.draw(1, rng).front();
        agent.future = generator.generate(agent.observed, z);
        agent.truth_latent = std::move(z);
        scene.agents.push_back(std::move(agent));
      }
      scenes.push_back(std::move(scene));
    }
  }
  return scenes;
}

std::vector<AgentRef> agent_deviations(const std::vector<Scene>& scenes, const KalmanParams& p) {
  std::vector<AgentRef> out;
  for (const auto& scene : scenes) {
    for (const auto& agent : scene.agents) {
      const Trajectory reference = kalman_cv_predict(agent.observed, p);
      out.push_back({scene.dataset, scene.id, agent.id, fde(reference, agent.future)});
    }
  }
  return out;
}

std::vector<AgentRef> exception_select(const std::vector<Scene>& scenes, const KalmanParams& p, double q,
                                       bool global_pool) {
  if (!(q > 0.0 && q <= 1.0)) throw validation_error("exception fraction must lie in (0, 1]");
  std::vector<AgentRef> all = agent_deviations(scenes, p);

  std::vector<std::string> groups;
  std::map<std::string, std::vector<AgentRef>> by_group;
  for (auto& ref : all) {
    const std::string key = global_pool ? std::string() : ref.dataset;
    if (!by_group.contains(key)) groups.push_back(key);
    by_group[key].push_back(std::move(ref));
  }

  std::vector<AgentRef> selected;
  for (const auto& key : groups) {
    auto& pool = by_group[key];
    std::stable_sort(pool.begin(), pool.end(), [](const AgentRef& a, const AgentRef& b) {
      if (a.deviation != b.deviation) return a.deviation > b.deviation;
      if (a.scene_id != b.scene_id) return a.scene_id < b.scene_id;
      return a.agent_id < b.agent_id;
    });
    // The small slack keeps q * count from rounding up past an exact integer
    // (0.04 * 2000 is 80.000000000000014 in binary floating point).
    const auto take = static_cast<std::size_t>(std::ceil(q * static_cast<double>(pool.size()) - 1e-9));
    selected.insert(selected.end(), pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(std::min(take, pool.size())));
  }
  return selected;
}

void EvalOptions::validate() const {
  if (repeats < 1) throw validation_error("repeats must be >= 1");
  if (!(exception_fraction > 0.0 && exception_fraction <= 1.0)) {
    throw validation_error("exception fraction must lie in (0, 1]");
  }
  kalman.validate();
}

const ReportRow* EvalReport::find(std::string_view dataset, std::string_view sampler, std::string_view subset) const {
  for (const auto& r : rows) {
    if (r.dataset == dataset && r.sampler == sampler && r.subset == subset) return &r;
  }
  return nullptr;
}

std::string exception_subset_label(double q) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "exception-%g%%", q * 100.0);
  return buf;
}

namespace {

struct FlatAgent {
  std::size_t scene_index;
  std::size_t agent_index;
};

// Runs fn(i) for i in [0, count) on `threads` workers. The first exception
// thrown by any worker is rethrown on the caller's thread.
template <typename Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> workers;
  for (std::size_t t = 0; t < std::min(threads, count); ++t) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  workers.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

EvalReport evaluate(const std::vector<Scene>& corpus, const GeneratorSpec& generator_spec,
                    const std::vector<SamplerConfig>& samplers, const EvalOptions& options) {
  options.validate();
  if (samplers.empty()) throw validation_error("evaluate needs at least one sampler");
  for (const auto& s : samplers) s.validate();
  for (const auto& scene : corpus) check_scene(scene);

  const auto generator = make_generator(generator_spec);
  const LatentPrior prior(generator->latent_dim());

  std::vector<FlatAgent> agents;
  std::vector<std::size_t> scene_first_agent;
  for (std::size_t s = 0; s < corpus.size(); ++s) {
    scene_first_agent.push_back(agents.size());
    for (std::size_t a = 0; a < corpus[s].agents.size(); ++a) agents.push_back({s, a});
  }

  const std::size_t n_samplers = samplers.size();
  const std::size_t n_repeats = options.repeats;
  const bool shared = options.scoring == ScoringMode::kSceneShared;
  const std::size_t n_units = shared ? corpus.size() : agents.size();

  // best[(sampler * repeats + repeat) * agents + agent]
  std::vector<BestOfN> best(n_samplers * n_repeats * agents.size());
  const std::size_t threads =
      options.threads == 0 ? std::max<std::size_t>(1, std::thread::hardware_concurrency()) : options.threads;

  parallel_for(n_samplers * n_repeats * n_units, threads, [&](std::size_t cell) {
    const std::size_t unit = cell % n_units;
    const std::size_t repeat = (cell / n_units) % n_repeats;
    const std::size_t si = cell / (n_units * n_repeats);
    const std::size_t base = (si * n_repeats + repeat) * agents.size();
    SamplerConfig cfg = samplers[si];

    if (shared) {
      const Scene& scene = corpus[unit];
      cfg.seed = session_seed(options.seed, repeat, scene.id, -1);
      const auto results = run_scene_session(scene, *generator, prior, cfg);
      for (std::size_t a = 0; a < scene.agents.size(); ++a) {
        best[base + scene_first_agent[unit] + a] = min_of_n(results[a].trajectories, scene.agents[a].future);
      }
    } else {
      const FlatAgent fa = agents[unit];
      const Scene& scene = corpus[fa.scene_index];
      const Agent& agent = scene.agents[fa.agent_index];
      cfg.seed = session_seed(options.seed, repeat, scene.id, agent.id);
      const SessionResult result = run_session(scene, agent.id, *generator, prior, cfg);
      best[base + unit] = min_of_n(result.trajectories, agent.future);
    }
  });

  // Subset membership per flat agent.
  struct Subset {
    std::string label;
    std::vector<bool> member;
  };
  std::vector<Subset> subsets;
  subsets.push_back({"full", std::vector<bool>(agents.size(), true)});
  {
    const auto picked = exception_select(corpus, options.kalman, options.exception_fraction, options.global_pool);
    std::vector<bool> member(agents.size(), false);
    for (std::size_t i = 0; i < agents.size(); ++i) {
      const Scene& scene = corpus[agents[i].scene_index];
      const Agent& agent = scene.agents[agents[i].agent_index];
      member[i] = std::any_of(picked.begin(), picked.end(), [&](const AgentRef& r) {
        return r.scene_id == scene.id && r.agent_id == agent.id;
      });
    }
    subsets.push_back({exception_subset_label(options.exception_fraction), std::move(member)});
  }
  if (options.turn_subset) {
    std::vector<bool> member(agents.size(), false);
    for (std::size_t i = 0; i < agents.size(); ++i) {
      const Scene& scene = corpus[agents[i].scene_index];
      member[i] = true_mode_of(scene, scene.agents[agents[i].agent_index].id, generator_spec).mode != TurnMode::kStraight;
    }
    subsets.push_back({"turn", std::move(member)});
  }

  std::vector<std::string> datasets;
  for (const auto& scene : corpus) {
    if (std::find(datasets.begin(), datasets.end(), scene.dataset) == datasets.end()) datasets.push_back(scene.dataset);
  }

  std::size_t mc_index = n_samplers;
  for (std::size_t s = 0; s < n_samplers; ++s) {
    if (samplers[s].kind == SamplerKind::kMC) {
      mc_index = s;
      break;
    }
  }

  EvalReport report;
  report.seed = options.seed;
  report.repeats = n_repeats;

  for (const auto& subset : subsets) {
    // values[sampler][dataset] = (ade, fde, agent count), averaged over repeats.
    struct Cell {
      double ade = 0.0, fde = 0.0;
      std::size_t agents = 0;
    };
    std::vector<std::vector<Cell>> values(n_samplers, std::vector<Cell>(datasets.size()));
    for (std::size_t s = 0; s < n_samplers; ++s) {
      for (std::size_t d = 0; d < datasets.size(); ++d) {
        Cell cell;
        for (std::size_t r = 0; r < n_repeats; ++r) {
          double sum_ade = 0.0, sum_fde = 0.0;
          std::size_t count = 0;
          for (std::size_t i = 0; i < agents.size(); ++i) {
            if (!subset.member[i] || corpus[agents[i].scene_index].dataset != datasets[d]) continue;
            const BestOfN& b = best[(s * n_repeats + r) * agents.size() + i];
            sum_ade += b.min_ade;
            sum_fde += b.min_fde;
            ++count;
          }
          if (count == 0) break;
          cell.ade += sum_ade / static_cast<double>(count);
          cell.fde += sum_fde / static_cast<double>(count);
          cell.agents = count;
        }
        cell.ade /= static_cast<double>(n_repeats);
        cell.fde /= static_cast<double>(n_repeats);
        values[s][d] = cell;
      }
    }

    auto emit = [&](const std::string& dataset, const std::vector<Cell>& per_sampler) {
      for (std::size_t s = 0; s < n_samplers; ++s) {
        ReportRow row;
        row.dataset = dataset;
        row.sampler = samplers[s].effective_label();
        row.subset = subset.label;
        row.min_ade = per_sampler[s].ade;
        row.min_fde = per_sampler[s].fde;
        row.repeats = n_repeats;
        row.agents = per_sampler[s].agents;
        if (mc_index < n_samplers && per_sampler[mc_index].ade > 0.0 && per_sampler[mc_index].fde > 0.0) {
          row.gain_ade = gain(per_sampler[mc_index].ade, row.min_ade);
          row.gain_fde = gain(per_sampler[mc_index].fde, row.min_fde);
        }
        report.rows.push_back(std::move(row));
      }
    };

    std::vector<Cell> avg(n_samplers);
    std::size_t present = 0;
    for (std::size_t d = 0; d < datasets.size(); ++d) {
      if (values[0][d].agents == 0) continue;
      ++present;
      std::vector<Cell> per_sampler(n_samplers);
      for (std::size_t s = 0; s < n_samplers; ++s) {
        per_sampler[s] = values[s][d];
        avg[s].ade += values[s][d].ade;
        avg[s].fde += values[s][d].fde;
        avg[s].agents += values[s][d].agents;
      }
      emit(datasets[d], per_sampler);
    }
    if (present == 0) continue;
    for (auto& c : avg) {
      c.ade /= static_cast<double>(present);
      c.fde /= static_cast<double>(present);
    }
    emit("AVG", avg);
  }
  return report;
}

}  // namespace trajsampler
