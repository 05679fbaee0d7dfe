#include "csv/manifest.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include "csv/errors.hpp"

namespace csv {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  if (!fields.empty() && !fields.back().empty() && fields.back().back() == '\r') {
    fields.back().pop_back();
  }
  return fields;
}

}  // namespace

Manifest parse_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest: " + path.string());
  const auto base = path.has_parent_path() ? path.parent_path()
                                           : std::filesystem::path(".");

  Manifest m;
  std::unordered_set<std::string> seen;
  std::string line;
  int line_no = 0;
  bool header_skipped = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (!header_skipped) {
      header_skipped = true;
      continue;
    }
    const auto fields = split_tabs(line);
    if (fields.size() != 5) {
      throw ConfigError("manifest " + path.string() + " line " +
                        std::to_string(line_no) + ": expected 5 tab-separated columns, got " +
                        std::to_string(fields.size()));
    }
    ManifestEntry entry;
    entry.id = fields[0];
    if (entry.id.empty()) {
      throw ConfigError("manifest " + path.string() + " line " +
                        std::to_string(line_no) + ": empty id");
    }
    if (!seen.insert(entry.id).second) {
      throw ConfigError("manifest " + path.string() + " line " +
                        std::to_string(line_no) + ": duplicate id '" + entry.id + "'");
    }
    const auto resolve = [&](const std::string& p) {
      std::filesystem::path fp(p);
      return fp.is_absolute() ? fp : base / fp;
    };
    entry.reference = resolve(fields[1]);
    entry.distorted = resolve(fields[2]);
    try {
      std::size_t pos = 0;
      entry.subjective = std::stod(fields[3], &pos);
      if (pos != fields[3].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ConfigError("manifest " + path.string() + " line " +
                        std::to_string(line_no) + ": bad subjective score '" +
                        fields[3] + "'");
    }
    entry.category = fields[4];

    bool missing = false;
    for (const auto& fp : {entry.reference, entry.distorted}) {
      if (!std::filesystem::exists(fp)) {
        m.missing_file_warnings.push_back("entry '" + entry.id +
                                          "': missing file " + fp.string());
        missing = true;
      }
    }
    if (!missing) m.entries.push_back(std::move(entry));
  }
  return m;
}

void write_manifest(const Manifest& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write manifest: " + path.string());
  out << "id\treference\tdistorted\tmos\tcategory\n";
  out.precision(17);
  for (const auto& e : m.entries) {
    out << e.id << '\t' << e.reference.string() << '\t' << e.distorted.string()
        << '\t' << e.subjective << '\t' << e.category << '\n';
  }
}

}  // namespace csv
