#include "dormant/cli/cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace dormant::cli {

using Json = nlohmann::ordered_json;

namespace {

class Fd {
 public:
  Fd(const std::filesystem::path& path, int flags) : fd_(::open(path.c_str(), flags | O_CLOEXEC, 0644)) {
    if (fd_ < 0) throw std::system_error(errno, std::generic_category(), "cannot open " + path.string());
  }
  ~Fd() { ::close(fd_); }
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  int get() const { return fd_; }

 private:
  int fd_;
};

class Flock {
 public:
  Flock(int fd, int op) : fd_(fd) {
    while (::flock(fd_, op) != 0)
      if (errno != EINTR) throw std::system_error(errno, std::generic_category(), "flock");
  }
  ~Flock() { ::flock(fd_, LOCK_UN); }
  Flock(const Flock&) = delete;
  Flock& operator=(const Flock&) = delete;

 private:
  int fd_;
};

void write_all(int fd, const std::string& data) {
  std::size_t done = 0;
  while (done < data.size()) {
    const ssize_t n = ::write(fd, data.data() + done, data.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw std::system_error(errno, std::generic_category(), "write");
    }
    done += static_cast<std::size_t>(n);
  }
}

std::string read_all_text(int fd) {
  std::string text;
  char buf[1 << 15];
  for (;;) {
    const ssize_t n = ::read(fd, buf, sizeof buf);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw std::system_error(errno, std::generic_category(), "read");
    }
    if (n == 0) break;
    text.append(buf, static_cast<std::size_t>(n));
  }
  return text;
}

bool canonical_integer(const std::string& s, bool positive) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (s[0] == '-') {
    if (positive) return false;
    i = 1;
  }
  if (i == s.size()) return false;
  if (s[i] == '0' && s.size() > i + 1) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return !(positive && s == "0") && s != "-0";
}

std::optional<CacheEntry> parse_line(const std::string& line) {
  Json j = Json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  CacheEntry e;
  try {
    e.key = j.at("key").get<std::string>();
    e.numerator = j.at("num").get<std::string>();
    e.denominator = j.at("den").get<std::string>();
    e.backend = j.at("backend").get<std::string>();
    e.tool_version = j.at("tool_version").get<std::string>();
    e.created_at = j.at("created_at").get<std::string>();
    if (j.contains("reductions")) e.reductions = j["reductions"].get<std::vector<std::string>>();
  } catch (const Json::exception&) {
    return std::nullopt;
  }
  if (e.key.find(':') == std::string::npos) return std::nullopt;
  if (!canonical_integer(e.numerator, false) || !canonical_integer(e.denominator, true))
    return std::nullopt;
  // Reject non-reduced fractions so every stored value round-trips exactly.
  if (e.value().to_string() !=
      (e.denominator == "1" ? e.numerator : e.numerator + "/" + e.denominator))
    return std::nullopt;
  return e;
}

std::string serialize(const CacheEntry& e) {
  Json j;
  j["key"] = e.key;
  j["num"] = e.numerator;
  j["den"] = e.denominator;
  j["backend"] = e.backend;
  j["tool_version"] = e.tool_version;
  j["created_at"] = e.created_at;
  j["reductions"] = e.reductions;
  return j.dump() + "\n";
}

}  // namespace

BigRational CacheEntry::value() const {
  return BigRational(exact::BigInt(numerator), exact::BigInt(denominator));
}

std::string canonical_key(std::string_view formula, const std::map<std::string, std::string>& params) {
  std::string key(formula);
  key += ':';
  bool first = true;
  for (const auto& [name, value] : params) {
    if (!first) key += ',';
    first = false;
    key += name;
    key += '=';
    key += value;
  }
  return key;
}

std::filesystem::path default_cache_dir() {
  if (const char* env = std::getenv("DORMANT_DEGREE_CACHE"); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
    return std::filesystem::path(xdg) / "dormant-degree";
  if (const char* home = std::getenv("HOME"); home && *home)
    return std::filesystem::path(home) / ".cache" / "dormant-degree";
  return std::filesystem::temp_directory_path() / "dormant-degree";
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

CacheStore::CacheStore(std::filesystem::path dir, std::string tool_version)
    : dir_(std::move(dir)), file_(dir_ / "cache.jsonl"), version_(std::move(tool_version)) {}

std::vector<CacheEntry> CacheStore::read_all(std::size_t* lines, std::size_t* corrupt) {
  std::vector<CacheEntry> out;
  if (lines) *lines = 0;
  if (corrupt) *corrupt = 0;
  if (!std::filesystem::exists(file_)) return out;
  std::string text;
  {
    Fd fd(file_, O_RDONLY);
    Flock lock(fd.get(), LOCK_SH);
    text = read_all_text(fd.get());
  }
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    if (lines) ++*lines;
    if (auto e = parse_line(line)) {
      out.push_back(std::move(*e));
    } else {
      if (corrupt) ++*corrupt;
      warnings_.push_back("cache: ignoring corrupt line " + std::to_string(number) + " of " +
                          file_.string());
    }
  }
  return out;
}

std::optional<CacheEntry> CacheStore::lookup(const std::string& key) {
  std::optional<CacheEntry> found;
  for (auto& e : read_all(nullptr, nullptr))
    if (e.key == key && e.tool_version == version_) found = std::move(e);
  return found;
}

void CacheStore::store(CacheEntry entry) {
  entry.tool_version = version_;
  if (entry.created_at.empty()) entry.created_at = utc_timestamp();
  std::filesystem::create_directories(dir_);
  Fd fd(file_, O_WRONLY | O_APPEND | O_CREAT);
  Flock lock(fd.get(), LOCK_EX);
  write_all(fd.get(), serialize(entry));
}

CachedValue CacheStore::lookup_store(const std::string& key, const std::string& backend,
                                     const std::function<CachedValue()>& compute) {
  if (auto e = lookup(key)) return {e->value(), e->reductions, true};
  CachedValue v = compute();
  v.hit = false;
  CacheEntry e;
  e.key = key;
  e.numerator = v.value.numerator().get_str();
  e.denominator = v.value.denominator().get_str();
  e.backend = backend;
  e.reductions = v.reductions;
  store(std::move(e));
  return v;
}

CacheStats CacheStore::stats() {
  CacheStats s;
  s.file = file_;
  const auto entries = read_all(&s.lines, &s.corrupt);
  std::set<std::pair<std::string, std::string>> distinct;
  for (const auto& e : entries) distinct.emplace(e.key, e.tool_version);
  s.entries = distinct.size();
  if (std::filesystem::exists(file_)) s.bytes = std::filesystem::file_size(file_);
  return s;
}

void CacheStore::clear() {
  if (!std::filesystem::exists(file_)) return;
  Fd fd(file_, O_WRONLY);
  Flock lock(fd.get(), LOCK_EX);
  if (::ftruncate(fd.get(), 0) != 0) throw std::system_error(errno, std::generic_category(), "ftruncate");
}

}  // namespace dormant::cli
