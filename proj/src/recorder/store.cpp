#include "gqlharvest/recorder/store.hpp"

#include "gqlharvest/errors.hpp"
#include "gqlharvest/util/timeutil.hpp"

#include <algorithm>
#include <system_error>

namespace gqlharvest::recorder {
namespace {

constexpr const char* kSnapshotPrefix = "snapshot-";
constexpr const char* kJournalPrefix = "journal-";

std::string kind_label(query::OperationKind kind) {
    return kind == query::OperationKind::Mutation ? "MUTATION" : "QUERY";
}

query::OperationKind kind_from_label(const std::string& label) {
    if (label == "QUERY") return query::OperationKind::Query;
    if (label == "MUTATION") return query::OperationKind::Mutation;
    throw FormatError("unknown operation kind \"" + label + "\"");
}

std::int64_t parse_timestamp(const Json& doc, const char* member) {
    if (!doc.contains(member) || !doc.at(member).is_string()) {
        throw FormatError(std::string("record is missing timestamp member \"") + member + "\"");
    }
    auto parsed = util::parse_utc(doc.at(member).get<std::string>());
    if (!parsed) {
        throw FormatError(std::string("malformed timestamp in \"") + member + "\"");
    }
    return *parsed;
}

// Filename helpers: snapshot-<G>.jsonl / journal-<G>.jsonl.
std::filesystem::path generation_file(const std::filesystem::path& dir, const char* prefix,
                                      std::uint64_t generation) {
    return dir / (prefix + std::to_string(generation) + ".jsonl");
}

std::optional<std::uint64_t> generation_of(const std::filesystem::path& path, const char* prefix) {
    const std::string name = path.filename().string();
    const std::string prefix_text = prefix;
    if (name.rfind(prefix_text, 0) != 0) return std::nullopt;
    if (name.size() <= prefix_text.size() + 6 || name.substr(name.size() - 6) != ".jsonl") {
        return std::nullopt;
    }
    const std::string digits = name.substr(prefix_text.size(), name.size() - prefix_text.size() - 6);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
        return std::nullopt;
    }
    return std::stoull(digits);
}

}  // namespace

Json record_to_json(const QueryRecord& record) {
    Json out = Json::object();
    out["query"] = record.query_text;
    out["variables"] = record.variables;
    out["operation_name"] =
        record.operation_name ? Json(*record.operation_name) : Json(nullptr);
    out["created_at"] = util::format_utc(record.created_at);
    out["updated_at"] = util::format_utc(record.updated_at);
    out["times_called"] = record.times_called;
    out["key"] = record.key.hex();
    out["operation_kind"] = kind_label(record.operation_kind);
    return out;
}

QueryRecord record_from_json(const Json& doc) {
    if (!doc.is_object()) {
        throw FormatError("query record must be a JSON object");
    }
    for (const char* member : {"query", "variables", "times_called", "key", "operation_kind"}) {
        if (!doc.contains(member)) {
            throw FormatError(std::string("query record is missing \"") + member + "\"");
        }
    }
    QueryRecord record;
    if (!doc.at("query").is_string()) throw FormatError("record \"query\" must be a string");
    record.query_text = doc.at("query").get<std::string>();
    if (!doc.at("variables").is_object()) throw FormatError("record \"variables\" must be an object");
    record.variables = doc.at("variables");
    if (doc.contains("operation_name") && !doc.at("operation_name").is_null()) {
        if (!doc.at("operation_name").is_string()) {
            throw FormatError("record \"operation_name\" must be a string or null");
        }
        record.operation_name = doc.at("operation_name").get<std::string>();
    }
    record.created_at = parse_timestamp(doc, "created_at");
    record.updated_at = parse_timestamp(doc, "updated_at");
    if (!doc.at("times_called").is_number_unsigned() || doc.at("times_called").get<std::uint64_t>() == 0) {
        throw FormatError("record \"times_called\" must be a positive integer");
    }
    record.times_called = doc.at("times_called").get<std::uint64_t>();
    if (!doc.at("key").is_string()) throw FormatError("record \"key\" must be a hex digest");
    record.key = util::Digest::from_hex(doc.at("key").get<std::string>());
    if (!doc.at("operation_kind").is_string()) {
        throw FormatError("record \"operation_kind\" must be a string");
    }
    record.operation_kind = kind_from_label(doc.at("operation_kind").get<std::string>());
    return record;
}

QueryStore::QueryStore(std::filesystem::path directory) : directory_(std::move(directory)) {
    std::error_code ec;
    std::filesystem::create_directories(directory_, ec);
    if (ec) {
        throw StorageError("cannot create store directory " + directory_.string() + ": " +
                           ec.message());
    }
    load();
    open_journal();
}

void QueryStore::load() {
    // Newest complete snapshot wins; a *.tmp left by an interrupted
    // compaction is discarded.
    std::optional<std::uint64_t> snapshot_generation;
    std::uint64_t max_journal_generation = 0;
    for (const auto& entry : std::filesystem::directory_iterator(directory_)) {
        if (entry.path().extension() == ".tmp") {
            std::error_code ec;
            std::filesystem::remove(entry.path(), ec);
            continue;
        }
        if (auto g = generation_of(entry.path(), kSnapshotPrefix)) {
            if (!snapshot_generation || *g > *snapshot_generation) snapshot_generation = *g;
        } else if (auto j = generation_of(entry.path(), kJournalPrefix)) {
            max_journal_generation = std::max(max_journal_generation, *j);
        }
    }
    generation_ = snapshot_generation ? std::max(*snapshot_generation, max_journal_generation)
                                      : max_journal_generation;
    // Files of older generations are already folded into the newest
    // snapshot; an interrupted compaction can leave them behind.
    for (const auto& entry : std::filesystem::directory_iterator(directory_)) {
        for (const char* prefix : {kSnapshotPrefix, kJournalPrefix}) {
            if (auto g = generation_of(entry.path(), prefix); g && *g < generation_) {
                std::error_code ec;
                std::filesystem::remove(entry.path(), ec);
            }
        }
    }
    if (snapshot_generation) {
        std::ifstream in(generation_file(directory_, kSnapshotPrefix, *snapshot_generation));
        if (!in) {
            throw StorageError("cannot read snapshot in " + directory_.string());
        }
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            Json doc = Json::parse(line, nullptr, /*allow_exceptions=*/false);
            if (doc.is_discarded()) {
                throw StorageError("corrupt snapshot line in " + directory_.string());
            }
            QueryRecord record = record_from_json(doc);
            records_[record.key] = std::move(record);
        }
    }
    replay_journal(generation_file(directory_, kJournalPrefix, generation_));
}

void QueryStore::replay_journal(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) return;  // no journal yet for this generation
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        Json event = Json::parse(line, nullptr, /*allow_exceptions=*/false);
        if (event.is_discarded() || !event.is_object()) {
            // Torn trailing line from an interrupted write; everything before
            // it already reached the disk in full lines.
            continue;
        }
        apply_event(event);
    }
}

void QueryStore::apply_event(const Json& event) {
    for (const char* member : {"key", "query", "ts"}) {
        if (!event.contains(member)) return;  // not a record event
    }
    if (!event.at("key").is_string() || !event.at("query").is_string() ||
        !event.at("ts").is_string()) {
        return;
    }
    auto ts = util::parse_utc(event.at("ts").get<std::string>());
    if (!ts) return;
    query::CanonicalKey key;
    try {
        key = util::Digest::from_hex(event.at("key").get<std::string>());
    } catch (const Error&) {
        return;
    }

    auto it = records_.find(key);
    if (it != records_.end()) {
        it->second.times_called += 1;
        it->second.updated_at = *ts;
        return;
    }
    QueryRecord record;
    record.key = key;
    record.query_text = event.at("query").get<std::string>();
    record.variables = event.contains("variables") && event.at("variables").is_object()
                           ? event.at("variables")
                           : Json::object();
    if (event.contains("operation_name") && event.at("operation_name").is_string()) {
        record.operation_name = event.at("operation_name").get<std::string>();
    }
    if (event.contains("operation_kind") && event.at("operation_kind").is_string() &&
        event.at("operation_kind").get<std::string>() == "MUTATION") {
        record.operation_kind = query::OperationKind::Mutation;
    }
    record.created_at = *ts;
    record.updated_at = *ts;
    record.times_called = 1;
    records_.emplace(key, std::move(record));
}

void QueryStore::open_journal() {
    journal_.open(generation_file(directory_, kJournalPrefix, generation_),
                  std::ios::app | std::ios::out);
    if (!journal_) {
        throw StorageError("cannot open journal in " + directory_.string());
    }
}

QueryRecord QueryStore::record(const query::CanonicalKey& key, const std::string& query_text,
                               const Json& variables,
                               const std::optional<std::string>& operation_name,
                               query::OperationKind kind, std::int64_t now) {
    std::lock_guard<std::mutex> lock(mutex_);

    Json event = Json::object();
    event["key"] = key.hex();
    event["query"] = query_text;
    event["variables"] = variables.is_object() ? variables : Json::object();
    event["operation_name"] = operation_name ? Json(*operation_name) : Json(nullptr);
    event["operation_kind"] = kind_label(kind);
    event["ts"] = util::format_utc(now);
    journal_ << event.dump() << '\n';
    journal_.flush();
    if (!journal_) {
        throw StorageError("journal write failed in " + directory_.string());
    }

    auto it = records_.find(key);
    if (it != records_.end()) {
        it->second.times_called += 1;
        it->second.updated_at = now;
        return it->second;
    }
    QueryRecord record;
    record.key = key;
    record.query_text = query_text;
    record.variables = event.at("variables");
    record.operation_name = operation_name;
    record.operation_kind = kind;
    record.created_at = now;
    record.updated_at = now;
    record.times_called = 1;
    return records_.emplace(key, std::move(record)).first->second;
}

std::vector<QueryRecord> QueryStore::export_records(const FilterSpec& filter) const {
    std::lock_guard<std::mutex> lock(mutex_);
    std::vector<QueryRecord> out;
    for (const auto& [key, record] : records_) {
        if (filter.min_times_called && record.times_called < *filter.min_times_called) continue;
        if (filter.since && record.updated_at < *filter.since) continue;
        if (filter.until && record.updated_at > *filter.until) continue;
        if (filter.operation_kind && record.operation_kind != *filter.operation_kind) continue;
        out.push_back(record);
    }
    std::sort(out.begin(), out.end(), [](const QueryRecord& a, const QueryRecord& b) {
        if (a.times_called != b.times_called) return a.times_called > b.times_called;
        if (a.created_at != b.created_at) return a.created_at < b.created_at;
        return a.key < b.key;
    });
    return out;
}

std::optional<QueryRecord> QueryStore::find(const query::CanonicalKey& key) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = records_.find(key);
    if (it == records_.end()) return std::nullopt;
    return it->second;
}

std::size_t QueryStore::size() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return records_.size();
}

std::uint64_t QueryStore::generation() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return generation_;
}

void QueryStore::compact() {
    std::lock_guard<std::mutex> lock(mutex_);
    const std::uint64_t next = generation_ + 1;
    const auto snapshot_path = generation_file(directory_, kSnapshotPrefix, next);
    const auto tmp_path = snapshot_path.string() + ".tmp";
    {
        std::ofstream out(tmp_path, std::ios::trunc);
        for (const auto& [key, record] : records_) {
            out << record_to_json(record).dump() << '\n';
        }
        out.flush();
        if (!out) {
            throw StorageError("snapshot write failed in " + directory_.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp_path, snapshot_path, ec);
    if (ec) {
        throw StorageError("snapshot rename failed in " + directory_.string() + ": " +
                           ec.message());
    }

    journal_.close();
    const std::uint64_t previous = generation_;
    generation_ = next;
    open_journal();
    std::filesystem::remove(generation_file(directory_, kSnapshotPrefix, previous), ec);
    std::filesystem::remove(generation_file(directory_, kJournalPrefix, previous), ec);
}

}  // namespace gqlharvest::recorder
