#include "csv/batch.hpp"

#include <atomic>
#include <condition_variable>
#include <cstdio>
#include <deque>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "csv/errors.hpp"
#include "csv/image_io.hpp"

namespace csv {

namespace {

struct Completed {
  std::size_t index;
  PairResult result;
};

}  // namespace

std::vector<PairResult> run_batch(const Manifest& manifest,
                                  const CsvConfig& cfg,
                                  const CsvResources& res, ResultStore* store,
                                  int jobs) {
  cfg.validate();
  const std::uint64_t hash = config_hash(cfg);
  const std::size_t n = manifest.entries.size();
  std::vector<PairResult> results(n);
  if (n == 0) return results;

  if (jobs <= 0) {
    jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs <= 0) jobs = 1;
  }
  jobs = static_cast<int>(std::min<std::size_t>(jobs, n));

  std::atomic<std::size_t> next{0};
  std::mutex queue_mutex;
  std::condition_variable queue_cv;
  std::deque<Completed> completed;

  const auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      const auto& entry = manifest.entries[i];
      PairResult r;
      r.id = entry.id;
      if (const auto cached = store ? store->lookup(entry.id, hash)
                                    : std::nullopt) {
        r.score = *cached;
        r.cached = true;
      } else {
        try {
          const RgbImage ref = load_image(entry.reference);
          const RgbImage dist = load_image(entry.distorted);
          r.score = compute_csv(ref, dist, cfg, res).value;
        } catch (const std::exception& e) {
          r.error = e.what();
        }
      }
      {
        std::lock_guard lock(queue_mutex);
        completed.push_back({i, std::move(r)});
      }
      queue_cv.notify_one();
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);

  // This thread is the store's single writer.
  std::size_t received = 0;
  while (received < n) {
    std::unique_lock lock(queue_mutex);
    queue_cv.wait(lock, [&] { return !completed.empty(); });
    Completed c = std::move(completed.front());
    completed.pop_front();
    lock.unlock();
    if (store && c.result.score && !c.result.cached) {
      store->append(c.result.id, hash, *c.result.score);
    }
    results[c.index] = std::move(c.result);
    ++received;
  }
  for (auto& t : pool) t.join();
  return results;
}

void write_results(const std::vector<PairResult>& results,
                   const std::filesystem::path& out_path) {
  std::ofstream out(out_path);
  if (!out) throw IoError("cannot write results: " + out_path.string());
  out << "id\tscore\n";
  std::vector<const PairResult*> failures;
  for (const auto& r : results) {
    if (r.score) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", *r.score);
      out << r.id << '\t' << buf << '\n';
    } else {
      failures.push_back(&r);
    }
  }
  if (!failures.empty()) {
    const auto fail_path =
        out_path.string() + ".failures.tsv";
    std::ofstream fout(fail_path);
    fout << "id\treason\n";
    for (const auto* r : failures) fout << r->id << '\t' << r->error << '\n';
  }
}

std::vector<std::pair<std::string, double>> read_score_file(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open score file: " + path.string());
  std::vector<std::pair<std::string, double>> scores;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line_no == 1 && line.rfind("id\t", 0) == 0) continue;  // header
    std::istringstream ss(line);
    std::string id, value;
    if (!std::getline(ss, id, '\t') || !std::getline(ss, value)) {
      throw ConfigError("score file " + path.string() + " line " +
                        std::to_string(line_no) + ": expected id<TAB>score");
    }
    try {
      scores.emplace_back(id, std::stod(value));
    } catch (const std::exception&) {
      throw ConfigError("score file " + path.string() + " line " +
                        std::to_string(line_no) + ": bad score '" + value + "'");
    }
  }
  return scores;
}

}  // namespace csv
