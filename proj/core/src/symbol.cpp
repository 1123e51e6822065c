#include "elrw/symbol.hpp"

#include <deque>
#include <map>
#include <mutex>

namespace elrw {

namespace {

struct Interner {
  std::mutex mu;
  std::deque<std::string> texts;  // stable storage
  std::map<std::string_view, uint32_t> index;

  Interner() { texts.emplace_back(""), index.emplace("", 0); }

  uint32_t intern(std::string_view text) {
    std::lock_guard<std::mutex> lock(mu);
    auto it = index.find(text);
    if (it != index.end()) return it->second;
    texts.emplace_back(text);
    uint32_t id = static_cast<uint32_t>(texts.size() - 1);
    index.emplace(texts.back(), id);
    return id;
  }

  std::string_view text(uint32_t id) {
    std::lock_guard<std::mutex> lock(mu);
    return texts[id];
  }
};

Interner& interner() {
  static Interner i;
  return i;
}

}  // namespace

Symbol Symbol::intern(std::string_view text) {
  return Symbol(interner().intern(text));
}

std::string_view Symbol::text() const { return interner().text(id_); }

bool Symbol::operator<(const Symbol& o) const {
  if (id_ == o.id_) return false;
  return text() < o.text();
}

bool is_reserved(std::string_view name) {
  return name.substr(0, kReservedPrefix.size()) == kReservedPrefix;
}

}  // namespace elrw
