#include "intellichain/session_store.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include "intellichain/error.hpp"
#include "intellichain/json_io.hpp"

namespace intellichain {

SessionStore::SessionStore(std::string log_path) : log_path_(std::move(log_path)) {
  if (!log_path_.empty()) replay();
}

void SessionStore::replay() {
  std::ifstream in(log_path_, std::ios::binary);
  if (!in) return;
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) lines.push_back(std::move(line));
  }
  for (std::size_t i = 0; i < lines.size(); ++i) {
    json record;
    try {
      record = json::parse(lines[i]);
    } catch (const json::parse_error& e) {
      if (i + 1 == lines.size()) break;  // torn final write
      throw Error(ErrorCode::MalformedDocument,
                  log_path_ + ":" + std::to_string(i + 1) + ": " + e.what());
    }
    auto entry = std::make_shared<Entry>();
    entry->session = decode<DialogueSession>(record.at("session"), log_path_);
    if (auto it = record.find("backend_cursor"); it != record.end() && !it->is_null()) {
      entry->restored_cursor = it->get<std::size_t>();
    }
    const auto& id = entry->session.id;
    if (id.size() > 1 && id[0] == 's') {
      std::uint64_t n = 0;
      auto [ptr, ec] = std::from_chars(id.data() + 1, id.data() + id.size(), n);
      if (ec == std::errc() && ptr == id.data() + id.size()) next_id_ = std::max(next_id_, n + 1);
    }
    entries_[id] = std::move(entry);
  }
}

std::string SessionStore::next_id() {
  std::unique_lock lock(map_mutex_);
  return "s" + std::to_string(next_id_++);
}

std::shared_ptr<SessionStore::Entry> SessionStore::find(const std::string& id) const {
  std::shared_lock lock(map_mutex_);
  auto it = entries_.find(id);
  return it == entries_.end() ? nullptr : it->second;
}

std::shared_ptr<SessionStore::Entry> SessionStore::insert(
    DialogueSession session, std::shared_ptr<CompletionBackend> backend) {
  auto entry = std::make_shared<Entry>();
  entry->session = std::move(session);
  entry->backend = std::move(backend);
  std::unique_lock lock(map_mutex_);
  auto [it, inserted] = entries_.emplace(entry->session.id, entry);
  if (!inserted) {
    throw Error(ErrorCode::InvalidArgument, "session id '" + entry->session.id + "' already in use");
  }
  return entry;
}

void SessionStore::persist(const Entry& entry) {
  if (log_path_.empty()) return;
  json record = {{"session", entry.session}, {"backend_cursor", nullptr}};
  if (const auto* scripted = dynamic_cast<const ScriptedBackend*>(entry.backend.get())) {
    record["backend_cursor"] = scripted->cursor();
  } else if (entry.restored_cursor) {
    record["backend_cursor"] = *entry.restored_cursor;
  }
  auto line = record.dump();
  line.push_back('\n');
  std::lock_guard lock(log_mutex_);
  std::ofstream out(log_path_, std::ios::binary | std::ios::app);
  if (!out) throw Error(ErrorCode::IoError, "cannot append to '" + log_path_ + "'");
  out << line;
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "write to '" + log_path_ + "' failed");
}

std::size_t SessionStore::size() const {
  std::shared_lock lock(map_mutex_);
  return entries_.size();
}

std::vector<std::string> SessionStore::ids() const {
  std::shared_lock lock(map_mutex_);
  std::vector<std::string> out;
  for (const auto& [id, _] : entries_) out.push_back(id);
  return out;
}

}  // namespace intellichain
