#include "mzv/cache.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include "json.hpp"

namespace mzv {

namespace {

using nlohmann::json;

// flock on a descriptor for the lifetime of the guard
class FileLock {
public:
    FileLock(const std::filesystem::path &p, bool exclusive) {
        fd_ = ::open(p.c_str(), O_RDWR | O_CREAT, 0644);
        if (fd_ < 0)
            throw std::runtime_error("cache: cannot open " + p.string());
        if (::flock(fd_, exclusive ? LOCK_EX : LOCK_SH) != 0) {
            ::close(fd_);
            throw std::runtime_error("cache: cannot lock " + p.string());
        }
    }
    ~FileLock() {
        ::flock(fd_, LOCK_UN);
        ::close(fd_);
    }
    FileLock(const FileLock &) = delete;
    FileLock &operator=(const FileLock &) = delete;

private:
    int fd_ = -1;
};

} // namespace

std::string utc_timestamp() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string mzv_key(const std::string &backend, const std::string &index) { return "mzv:" + backend + ":" + index; }

std::string record_to_line(const CacheRecord &r) {
    json j;
    j["schema_version"] = r.schema_version;
    j["kind"] = r.kind;
    j["key"] = r.key;
    j["precision"] = r.precision;
    j["value"] = r.value;
    j["bound"] = r.bound;
    j["created_at"] = r.created_at;
    if (r.kind == "mzv") {
        j["index"] = r.index;
        j["weight"] = r.weight;
        j["backend"] = r.backend;
    }
    return j.dump();
}

CacheRecord record_from_line(const std::string &line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception &e) {
        throw std::runtime_error(std::string("not JSON: ") + e.what());
    }
    if (!j.is_object())
        throw std::runtime_error("not a JSON object");
    CacheRecord r;
    try {
        r.schema_version = j.at("schema_version").get<int>();
        r.kind = j.at("kind").get<std::string>();
        r.key = j.at("key").get<std::string>();
        r.precision = j.at("precision").get<int>();
        r.value = j.at("value").get<std::string>();
        r.bound = j.at("bound").get<std::string>();
        r.created_at = j.value("created_at", std::string());
        r.index = j.value("index", std::string());
        r.weight = j.value("weight", 0);
        r.backend = j.value("backend", std::string());
    } catch (const json::exception &e) {
        throw std::runtime_error(std::string("missing or mistyped field: ") + e.what());
    }
    return r;
}

ValueCache::ValueCache(std::filesystem::path dir) : dir_(std::move(dir)), file_(dir_ / "mzv-cache.jsonl") {}

std::filesystem::path ValueCache::resolve_dir(const std::string &flag) {
    if (!flag.empty())
        return flag;
    if (const char *env = std::getenv("MZV_CACHE_DIR"); env && *env)
        return env;
    if (const char *home = std::getenv("HOME"); home && *home)
        return std::filesystem::path(home) / ".cache" / "mzv";
    return std::filesystem::path(".mzv-cache");
}

void ValueCache::load() {
    if (loaded_)
        return;
    loaded_ = true;
    if (!std::filesystem::exists(file_))
        return;
    FileLock lock(file_, false);
    std::ifstream in(file_);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        try {
            CacheRecord r = record_from_line(line);
            ++stats_.records;
            ++stats_.kinds[r.kind];
            records_[{r.key, r.precision}] = std::move(r);
        } catch (const std::exception &e) {
            ++stats_.corrupt;
            warnings_.push_back(file_.string() + ":" + std::to_string(lineno) + ": skipped corrupt line (" + e.what() +
                                ")");
        }
    }
}

std::optional<CacheRecord> ValueCache::lookup(const std::string &key, int precision) {
    load();
    auto it = records_.find({key, precision});
    if (it == records_.end())
        return std::nullopt;
    return it->second;
}

void ValueCache::store(CacheRecord r) {
    load();
    if (r.created_at.empty())
        r.created_at = utc_timestamp();
    std::filesystem::create_directories(dir_);
    {
        FileLock lock(file_, true);
        std::ofstream out(file_, std::ios::app);
        out << record_to_line(r) << '\n';
        if (!out)
            throw std::runtime_error("cache: write failed on " + file_.string());
    }
    ++stats_.records;
    ++stats_.kinds[r.kind];
    records_[{r.key, r.precision}] = std::move(r);
}

void ValueCache::clear() {
    if (std::filesystem::exists(file_)) {
        FileLock lock(file_, true);
        std::ofstream out(file_, std::ios::trunc);
    }
    records_.clear();
    stats_ = Stats{};
    loaded_ = true;
}

ValueCache::Stats ValueCache::stats() {
    load();
    return stats_;
}

} // namespace mzv
