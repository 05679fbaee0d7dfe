#include "csv/store.hpp"

#include <chrono>
#include <sstream>

#include "csv/errors.hpp"

namespace csv {

namespace {

constexpr const char* kJournalName = "scores.tsv";
constexpr const char* kTimesName = "times.tsv";

}  // namespace

std::string ResultStore::key(const std::string& id, std::uint64_t hash) {
  std::ostringstream ss;
  ss << id << '\t' << std::hex << hash;
  return ss.str();
}

ResultStore::ResultStore(const std::filesystem::path& dir) : dir_(dir) {
  std::filesystem::create_directories(dir_);
  const auto journal_path = dir_ / kJournalName;

  if (std::filesystem::exists(journal_path)) {
    std::ifstream in(journal_path);
    std::string line;
    while (std::getline(in, line)) {
      std::istringstream ss(line);
      std::string id, hash_hex, score_str;
      if (!std::getline(ss, id, '\t') || !std::getline(ss, hash_hex, '\t') ||
          !std::getline(ss, score_str, '\t')) {
        continue;  // incomplete record from an interrupted run
      }
      try {
        const std::uint64_t hash = std::stoull(hash_hex, nullptr, 16);
        const double score = std::stod(score_str);
        index_.emplace(key(id, hash), score);
      } catch (const std::exception&) {
        continue;
      }
    }
  }

  journal_.open(journal_path, std::ios::app);
  times_.open(dir_ / kTimesName, std::ios::app);
  if (!journal_ || !times_) {
    throw IoError("cannot open result store in " + dir_.string());
  }
}

std::optional<double> ResultStore::lookup(const std::string& id,
                                          std::uint64_t config_hash) const {
  std::lock_guard lock(mutex_);
  const auto it = index_.find(key(id, config_hash));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void ResultStore::append(const std::string& id, std::uint64_t config_hash,
                         double score) {
  std::lock_guard lock(mutex_);
  const std::string k = key(id, config_hash);
  if (index_.contains(k)) return;
  index_.emplace(k, score);

  char score_buf[64];
  std::snprintf(score_buf, sizeof score_buf, "%.17g", score);
  journal_ << id << '\t' << std::hex << config_hash << std::dec << '\t'
           << score_buf << '\n';
  journal_.flush();

  const auto now = std::chrono::system_clock::now();
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(
                        now.time_since_epoch())
                        .count();
  times_ << id << '\t' << std::hex << config_hash << std::dec << '\t' << secs
         << '\n';
  times_.flush();
}

}  // namespace csv
