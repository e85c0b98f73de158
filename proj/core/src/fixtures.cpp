#include "taulehmer/fixtures.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>

#include "fixture_io.hpp"
#include "taulehmer/errors.hpp"

namespace tl {

std::string fixture_dir() {
  if (const char* env = std::getenv("TAULEHMER_FIXTURES"); env && *env) return env;
  namespace fs = std::filesystem;
  if (fs::exists(fs::path(TAULEHMER_INSTALLED_FIXTURES) / "lucas_table1.json")) return TAULEHMER_INSTALLED_FIXTURES;
  return TAULEHMER_SOURCE_FIXTURES;
}

std::string fixture_path(const std::string& name) {
  return (std::filesystem::path(fixture_dir()) / name).string();
}

namespace detail {

const nlohmann::json& fixture(const std::string& name) {
  static std::mutex mu;
  static std::map<std::string, nlohmann::json> cache;
  std::lock_guard<std::mutex> lock(mu);
  const std::string path = fixture_path(name);
  auto it = cache.find(path);
  if (it != cache.end()) return it->second;
  std::ifstream in(path);
  if (!in) throw DomainError("missing fixture " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("malformed fixture " + path + ": " + e.what());
  }
  return cache.emplace(path, std::move(j)).first->second;
}

Int json_int(const nlohmann::json& v) {
  if (v.is_string()) return Int(v.get<std::string>());
  if (v.is_number_integer()) return Int(std::to_string(v.get<long long>()));
  throw DomainError("fixture: expected integer, got " + v.dump());
}

}  // namespace detail

}  // namespace tl
