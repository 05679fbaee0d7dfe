#include "csv/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "csv/color_convert.hpp"
#include "csv/errors.hpp"
#include "csv/structure.hpp"
#include "csv/version.hpp"

namespace csv {

std::string to_string(ColorDifferenceMode mode) {
  return mode == ColorDifferenceMode::Ciede2000 ? "ciede2000" : "euclidean";
}

ColorDifferenceMode color_mode_from_string(const std::string& name) {
  if (name == "ciede2000") return ColorDifferenceMode::Ciede2000;
  if (name == "euclidean") return ColorDifferenceMode::Euclidean;
  throw ConfigError("unknown color mode: " + name);
}

void CsvConfig::validate() const {
  if (window < 1) throw ConfigError("window must be >= 1");
  if (k_l <= 0.0 || k_c <= 0.0 || k_h <= 0.0) {
    throw ConfigError("CIEDE2000 environmental parameters must be positive");
  }
  if (ciede_cap <= 0.0) throw ConfigError("ciede cap T must be positive");
  if (sigma <= 0.0) throw ConfigError("sigma must be positive");
  if (cnd_weight < 0.0 || cnd_weight > 1.0) {
    throw ConfigError("cnd weight A must lie in [0,1]");
  }
  if (pooling_root < 1) throw ConfigError("pooling root P must be >= 1");
  if (epsilon <= 0.0) throw ConfigError("epsilon must be positive");
}

namespace {

std::string canonical_config(const CsvConfig& cfg) {
  std::ostringstream ss;
  ss.precision(17);
  ss << "schema=" << kConfigSchemaVersion << '\n'
     << "window=" << cfg.window << '\n'
     << "kl=" << cfg.k_l << '\n'
     << "kc=" << cfg.k_c << '\n'
     << "kh=" << cfg.k_h << '\n'
     << "t=" << cfg.ciede_cap << '\n'
     << "sigma=" << cfg.sigma << '\n'
     << "a=" << cfg.cnd_weight << '\n'
     << "p=" << cfg.pooling_root << '\n'
     << "interp=" << to_string(cfg.interp) << '\n'
     << "color_mode=" << to_string(cfg.color_mode) << '\n'
     << "table=" << cfg.table_path << '\n'
     << "ground_distance=" << cfg.ground_distance_path << '\n'
     << "epsilon=" << cfg.epsilon << '\n';
  return ss.str();
}

}  // namespace

std::uint64_t config_hash(const CsvConfig& cfg) {
  // FNV-1a, stable across platforms.
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : canonical_config(cfg)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

CsvConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path.string());
  CsvConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path.string() + " line " + std::to_string(line_no) +
                        ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "window") cfg.window = std::stoi(value);
      else if (key == "kl") cfg.k_l = std::stod(value);
      else if (key == "kc") cfg.k_c = std::stod(value);
      else if (key == "kh") cfg.k_h = std::stod(value);
      else if (key == "t") cfg.ciede_cap = std::stod(value);
      else if (key == "sigma") cfg.sigma = std::stod(value);
      else if (key == "a") cfg.cnd_weight = std::stod(value);
      else if (key == "p") cfg.pooling_root = std::stoi(value);
      else if (key == "interp") cfg.interp = interp_from_string(value);
      else if (key == "color_mode") cfg.color_mode = color_mode_from_string(value);
      else if (key == "table") cfg.table_path = value;
      else if (key == "ground_distance") cfg.ground_distance_path = value;
      else if (key == "epsilon") cfg.epsilon = std::stod(value);
      else {
        throw ConfigError(path.string() + " line " + std::to_string(line_no) +
                          ": unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      throw ConfigError(path.string() + " line " + std::to_string(line_no) +
                        ": bad value for '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

void apply_variant(CsvConfig& cfg, const std::string& variant) {
  if (variant == "b") cfg.interp = Interp::Bilinear;
  else if (variant == "n") cfg.interp = Interp::Nearest;
  else if (variant == "e") cfg.color_mode = ColorDifferenceMode::Euclidean;
  else throw ConfigError("unknown variant '" + variant + "' (expected b, n, or e)");
}

CsvResources load_resources(const CsvConfig& cfg) {
  if (cfg.table_path.empty()) {
    throw ConfigError("no color-name table configured (set 'table')");
  }
  CsvResources res{load_color_name_table(cfg.table_path),
                   cfg.ground_distance_path.empty()
                       ? GroundDistanceMatrix()
                       : load_ground_distance(cfg.ground_distance_path)};
  return res;
}

namespace {

LabImage pool_lab(const LabImage& lab, int w) {
  return LabImage{mean_pool(lab.l, w), mean_pool(lab.a, w), mean_pool(lab.b, w)};
}

Plane clamp_plane(Plane p, double lo, double hi) {
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::clamp(p[i], lo, hi);
  return p;
}

}  // namespace

FeatureMaps compute_feature_maps(const RgbImage& ref, const RgbImage& dist,
                                 const CsvConfig& cfg, const CsvResources& res) {
  if (!ref.same_dims(dist)) {
    throw std::invalid_argument("compute_feature_maps: dimension mismatch");
  }
  cfg.validate();
  const int w = ref.width();
  const int h = ref.height();

  const LabImage lab_ref = srgb_to_lab(ref);
  const LabImage lab_dist = srgb_to_lab(dist);
  const LabImage mu_ref = pool_lab(lab_ref, cfg.window);
  const LabImage mu_dist = pool_lab(lab_dist, cfg.window);

  Plane color_small = cfg.color_mode == ColorDifferenceMode::Ciede2000
                          ? ciede_map(mu_ref, mu_dist, cfg.ciede_params())
                          : euclidean_color_map(mu_ref, mu_dist);
  Plane cnd_small = cnd_map(mu_ref, mu_dist, res.table, res.ground);

  // Interpolation overshoot is clipped back to each map's valid range.
  FeatureMaps maps;
  maps.ciede = clamp_plane(resample(color_small, w, h, cfg.interp), 0.0,
                           cfg.color_mode == ColorDifferenceMode::Ciede2000
                               ? cfg.ciede_cap
                               : std::numeric_limits<double>::infinity());
  maps.cnd = clamp_plane(resample(cnd_small, w, h, cfg.interp), 0.0,
                         res.ground.max_distance());
  maps.sd = sd_map(ref, dist, cfg.window, cfg.epsilon);
  maps.rgcd = rgcd_map(ref, dist, log_kernel(cfg.sigma, cfg.kernel_side()));
  return maps;
}

CsvScore compute_csv(const RgbImage& ref, const RgbImage& dist,
                     const CsvConfig& cfg, const CsvResources& res,
                     bool keep_maps) {
  FeatureMaps maps = compute_feature_maps(ref, dist, cfg, res);
  const double a = cfg.cnd_weight;
  double sum = 0.0;
  // Fixed row-major accumulation keeps the score bit-reproducible.
  for (std::size_t i = 0; i < maps.sd.size(); ++i) {
    sum += maps.rgcd[i] * maps.sd[i] * (a * maps.cnd[i] + (1.0 - a) * maps.ciede[i]);
  }
  const double mean = sum / static_cast<double>(maps.sd.size());
  CsvScore score;
  score.value = 1.0 - std::pow(mean, 1.0 / cfg.pooling_root);
  if (keep_maps) score.maps = std::move(maps);
  return score;
}

}  // namespace csv
