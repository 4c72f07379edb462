#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "intellichain/completion.hpp"
#include "intellichain/dialogue.hpp"

namespace intellichain {

/// Sessions keyed by id, with an optional append-only snapshot log.
///
/// Log format: one JSON object per line,
///   {"session": <DialogueSession>, "backend_cursor": <int or null>}
/// written after every mutation. Replaying keeps the last snapshot per id.
/// The map lock guards membership only; each entry carries its own mutex so
/// distinct sessions proceed in parallel while one session is single-writer.
class SessionStore {
 public:
  struct Entry {
    std::mutex mutex;
    DialogueSession session;
    std::shared_ptr<CompletionBackend> backend;  // null until first use
    std::optional<std::size_t> restored_cursor;  // scripted cursor from the log
  };

  // Replays log_path when it exists. Throws MalformedDocument on a corrupt
  // line (a torn final line is skipped).
  explicit SessionStore(std::string log_path = {});

  std::string next_id();

  std::shared_ptr<Entry> find(const std::string& id) const;

  std::shared_ptr<Entry> insert(DialogueSession session,
                                std::shared_ptr<CompletionBackend> backend);

  // Appends a snapshot; call while holding entry.mutex.
  void persist(const Entry& entry);

  std::size_t size() const;
  std::vector<std::string> ids() const;
  const std::string& log_path() const { return log_path_; }

 private:
  void replay();

  std::string log_path_;
  mutable std::shared_mutex map_mutex_;
  std::map<std::string, std::shared_ptr<Entry>> entries_;
  std::uint64_t next_id_ = 1;
  std::mutex log_mutex_;
};

}  // namespace intellichain
