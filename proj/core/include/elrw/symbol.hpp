#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace elrw {

// Interned identifier for concept names, role names, individuals and
// variables. Equality is O(1); ordering compares the text, so canonical
// encodings never depend on interning order.
class Symbol {
 public:
  Symbol() : id_(0) {}
  static Symbol intern(std::string_view text);

  std::string_view text() const;
  std::string str() const { return std::string(text()); }
  bool empty() const { return id_ == 0; }
  uint32_t id() const { return id_; }

  bool operator==(const Symbol& o) const { return id_ == o.id_; }
  bool operator!=(const Symbol& o) const { return id_ != o.id_; }
  bool operator<(const Symbol& o) const;
  bool operator<=(const Symbol& o) const { return *this == o || *this < o; }

 private:
  explicit Symbol(uint32_t id) : id_(id) {}
  uint32_t id_;
};

// Names starting with this prefix are reserved for generated symbols and are
// rejected by the parsers and excluded from full signatures.
inline constexpr std::string_view kReservedPrefix = "__";

bool is_reserved(std::string_view name);
inline bool is_reserved(Symbol s) { return is_reserved(s.text()); }

}  // namespace elrw

template <>
struct std::hash<elrw::Symbol> {
  size_t operator()(const elrw::Symbol& s) const noexcept {
    return std::hash<uint32_t>{}(s.id());
  }
};
