#include <cstdlib>
#include <fstream>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include <nlohmann/json.hpp>

#include "tfp/enumerate.hpp"
#include "tfp/errors.hpp"

namespace tfp {

using nlohmann::json;

std::string atlas_to_json(const Atlas& a) {
  std::string s = "{\"p\":" + std::to_string(a.p) + ",\"n\":" + std::to_string(a.n) +
                  ",\"convention\":" + std::to_string(a.convention) + ",\"classes\":[";
  bool first = true;
  for (const auto& e : a.entries) {
    json cycles = json::array();
    for (const auto& c : e.map.cycles()) {
      json cj = json::array();
      for (int h : c) cj.push_back(h + 1);
      cycles.push_back(std::move(cj));
    }
    json pairs = json::array();
    for (const auto& ed : e.map.edges()) pairs.push_back({ed.a + 1, ed.b + 1});
    json rec;
    rec["p"] = a.p;
    rec["n"] = a.n;
    rec["cycles"] = std::move(cycles);
    rec["pairing"] = std::move(pairs);
    rec["gamma"] = e.map.gamma();
    rec["code"] = e.code.str();
    s += first ? "\n" : ",\n";
    first = false;
    s += rec.dump();
  }
  s += "\n]}\n";
  return s;
}

Atlas atlas_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(std::string("atlas: ") + e.what());
  }
  try {
    Atlas a;
    a.p = j.at("p").get<int>();
    a.n = j.at("n").get<int>();
    a.convention = j.at("convention").get<int>();
    for (const auto& rec : j.at("classes")) {
      std::vector<std::vector<int>> cycles;
      for (const auto& c : rec.at("cycles")) {
        std::vector<int> cyc;
        for (const auto& h : c) cyc.push_back(h.get<int>() - 1);
        cycles.push_back(std::move(cyc));
      }
      std::vector<std::pair<int, int>> pairs;
      for (const auto& pr : rec.at("pairing")) pairs.emplace_back(pr.at(0).get<int>() - 1, pr.at(1).get<int>() - 1);
      CombMap m = CombMap::build(std::move(cycles), pairs);
      CanonicalCode code = CanonicalCode::parse(rec.at("code").get<std::string>());
      a.entries.push_back({std::move(m), std::move(code)});
    }
    return a;
  } catch (const json::exception& e) {
    throw IoError(std::string("atlas: ") + e.what());
  }
}

std::filesystem::path default_cache_dir() {
  if (const char* d = std::getenv("TFP_CACHE_DIR"); d && *d) return d;
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return std::filesystem::path(x) / "tfp";
  if (const char* h = std::getenv("HOME"); h && *h) return std::filesystem::path(h) / ".cache" / "tfp";
  return std::filesystem::temp_directory_path() / "tfp-cache";
}

std::filesystem::path atlas_cache_path(const std::filesystem::path& dir, int p, int n) {
  return dir / ("atlas_p" + std::to_string(p) + "_n" + std::to_string(n) + "_v" +
                std::to_string(kConventionVersion) + ".json");
}

Atlas load_or_build_atlas(int p, int n, const std::filesystem::path& dir, int cap) {
  if (p * n > cap)
    throw ResourceError("enumerate_bn: p*n = " + std::to_string(p * n) + " exceeds cap " + std::to_string(cap));
  if (dir.empty()) return build_atlas(p, n, cap);
  const auto path = atlas_cache_path(dir, p, n);
  if (std::ifstream in{path, std::ios::binary}) {
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      Atlas a = atlas_from_json(ss.str());
      if (a.p == p && a.n == n && a.convention == kConventionVersion) return a;
    } catch (const std::exception&) {
      // stale or corrupt entry: rebuild below
    }
  }
  Atlas a = build_atlas(p, n, cap);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) return a;
  auto tmp = path;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out{tmp, std::ios::binary | std::ios::trunc};
    if (!out) return a;
    out << atlas_to_json(a);
    if (!out) return a;
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) std::filesystem::remove(tmp, ec);
  return a;
}

}  // namespace tfp
