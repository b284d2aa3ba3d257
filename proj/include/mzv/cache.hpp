#ifndef MZV_CACHE_HPP
#define MZV_CACHE_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mzv {

// One line of the append-only cache file.
struct CacheRecord {
    int schema_version = 1;
    std::string kind; // "mzv", "li_half", "transport_coeff"; others are kept and ignored
    std::string key;  // canonical, e.g. "mzv:holder:1,3"
    int precision = 0;
    std::string value; // decimal
    std::string bound; // decimal
    std::string created_at;
    // mzv records also carry these
    std::string index;
    int weight = 0;
    std::string backend;
};

std::string record_to_line(const CacheRecord &r);
// Throws std::runtime_error on malformed input.
CacheRecord record_from_line(const std::string &line);

// Canonical key of an MZV value.
std::string mzv_key(const std::string &backend, const std::string &index);

// JSON Lines file mzv-cache.jsonl under a directory. Reads take a shared
// flock, appends an exclusive one. Corrupt lines are skipped and reported
// through warnings().
class ValueCache {
public:
    explicit ValueCache(std::filesystem::path dir);

    // Directory from the flag if non-empty, else MZV_CACHE_DIR, else
    // $HOME/.cache/mzv.
    static std::filesystem::path resolve_dir(const std::string &flag);

    const std::filesystem::path &file() const { return file_; }

    std::optional<CacheRecord> lookup(const std::string &key, int precision);
    void store(CacheRecord r);
    void clear();

    struct Stats {
        std::size_t records = 0;
        std::size_t corrupt = 0;
        std::map<std::string, std::size_t> kinds;
    };
    Stats stats();

    const std::vector<std::string> &warnings() const { return warnings_; }

private:
    void load();

    std::filesystem::path dir_;
    std::filesystem::path file_;
    bool loaded_ = false;
    std::map<std::pair<std::string, int>, CacheRecord> records_;
    Stats stats_;
    std::vector<std::string> warnings_;
};

std::string utc_timestamp();

} // namespace mzv

#endif
