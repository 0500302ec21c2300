#pragma once

#include "gqlharvest/json.hpp"
#include "gqlharvest/query/ast.hpp"
#include "gqlharvest/query/canonical.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace gqlharvest::recorder {

// One harvested (query, variables) combination with call metadata.
struct QueryRecord {
    query::CanonicalKey key;
    std::string query_text;  // first-seen form, verbatim
    Json variables = Json::object();
    std::optional<std::string> operation_name;
    query::OperationKind operation_kind = query::OperationKind::Query;
    std::int64_t created_at = 0;  // UTC unix seconds
    std::int64_t updated_at = 0;
    std::uint64_t times_called = 0;

    bool operator==(const QueryRecord&) const = default;
};

// Snapshot-line form: {query, variables, operation_name, created_at,
// updated_at, times_called, key, operation_kind} with formatted timestamps.
Json record_to_json(const QueryRecord& record);
QueryRecord record_from_json(const Json& doc);  // FormatError

// Export selection. All bounds are inclusive; since/until apply to
// updated_at.
struct FilterSpec {
    std::optional<std::uint64_t> min_times_called;
    std::optional<std::int64_t> since;
    std::optional<std::int64_t> until;
    std::optional<query::OperationKind> operation_kind;
};

// Keyed collection of QueryRecord persisted under one directory as an
// append-only JSON-Lines journal plus a compacted snapshot. Filenames carry
// a generation number (snapshot-<G>.jsonl / journal-<G>.jsonl); compaction
// folds the journal into the next snapshot generation, so the durable state
// is always snapshot-G plus the journal-G suffix. Opening replays exactly
// that pair; a torn trailing journal line (crash mid-write) is skipped.
//
// All member functions are safe to call from multiple threads, but the
// intended shape is one writer (calling record) plus concurrent readers.
class QueryStore {
public:
    // Creates the directory when missing; loads the newest snapshot and
    // replays its journal. Throws StorageError on unreadable files.
    explicit QueryStore(std::filesystem::path directory);

    // Inserts (times_called=1, created_at=updated_at=now) or bumps the
    // existing record (times_called+1, updated_at=now; created_at and stored
    // text untouched). Appends one durable journal line before returning.
    // Throws StorageError when the journal write fails.
    QueryRecord record(const query::CanonicalKey& key, const std::string& query_text,
                       const Json& variables, const std::optional<std::string>& operation_name,
                       query::OperationKind kind, std::int64_t now);

    // Matching records ordered by descending times_called, then ascending
    // created_at, then key.
    std::vector<QueryRecord> export_records(const FilterSpec& filter = {}) const;

    std::optional<QueryRecord> find(const query::CanonicalKey& key) const;
    std::size_t size() const;
    std::uint64_t generation() const;

    // Writes the current state as snapshot-<G+1>, starts journal-<G+1> and
    // removes the previous generation's files.
    void compact();

    const std::filesystem::path& directory() const { return directory_; }

private:
    void load();
    void replay_journal(const std::filesystem::path& path);
    void apply_event(const Json& event);
    void open_journal();

    std::filesystem::path directory_;
    mutable std::mutex mutex_;
    std::map<query::CanonicalKey, QueryRecord> records_;
    std::ofstream journal_;
    std::uint64_t generation_ = 0;
};

}  // namespace gqlharvest::recorder
