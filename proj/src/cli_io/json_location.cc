#include "json_location.h"

#include <iterator>
#include <set>
#include <vector>

#include <json.hpp>

namespace oneclock::detail {

using nlohmann::json;

std::pair<std::size_t, std::size_t> LineColumn(std::string_view text,
                                               std::size_t offset) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

std::pair<std::size_t, std::size_t> LocationMap::Find(std::string p) const {
  while (true) {
    auto it = at.find(p);
    if (it != at.end()) return it->second;
    if (p.empty()) return {0, 0};
    p.erase(p.rfind('/'));
  }
}

namespace {

// Forward iterator over chars that publishes how far the lexer has read.
struct Counting {
  using iterator_category = std::forward_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  const char* p = nullptr;
  const char* base = nullptr;
  std::size_t* read = nullptr;

  reference operator*() const {
    *read = static_cast<std::size_t>(p - base);
    return *p;
  }
  Counting& operator++() {
    ++p;
    return *this;
  }
  Counting operator++(int) {
    Counting old = *this;
    ++p;
    return old;
  }
  friend bool operator==(const Counting& a, const Counting& b) {
    return a.p == b.p;
  }
};

std::string Escape(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

class Locator : public nlohmann::json_sax<json> {
 public:
  Locator(std::string_view text, const std::size_t* read, LocationMap* out)
      : text_(text), read_(read), out_(out) {}

  bool null() override { return Value(); }
  bool boolean(bool) override { return Value(); }
  bool number_integer(number_integer_t) override { return Value(); }
  bool number_unsigned(number_unsigned_t) override { return Value(); }
  bool number_float(number_float_t, const string_t&) override { return Value(); }
  bool string(string_t&) override { return Value(); }
  bool binary(binary_t&) override { return Value(); }

  bool start_object(std::size_t) override {
    Record();
    frames_.push_back({false, 0, {}, {}});
    return true;
  }
  bool end_object() override {
    frames_.pop_back();
    Advance();
    return true;
  }
  bool start_array(std::size_t) override {
    Record();
    frames_.push_back({true, 0, {}, {}});
    return true;
  }
  bool end_array() override {
    frames_.pop_back();
    Advance();
    return true;
  }
  bool key(string_t& k) override {
    Frame& f = frames_.back();
    f.key = k;
    if (!f.seen.insert(k).second) {
      auto [line, column] = LineColumn(text_, *read_);
      throw DuplicateKey{Pointer(), line, column};
    }
    return true;
  }
  bool parse_error(std::size_t, const std::string&,
                   const nlohmann::detail::exception&) override {
    return false;  // the DOM parse reports it properly
  }

 private:
  struct Frame {
    bool array;
    std::size_t index;
    std::string key;
    std::set<std::string> seen;
  };

  std::string Pointer() const {
    std::string p;
    for (const auto& f : frames_) {
      p += "/" + (f.array ? std::to_string(f.index) : Escape(f.key));
    }
    return p;
  }
  void Record() {
    // The lexer has just finished the token; its end is close enough.
    out_->at.emplace(Pointer(), LineColumn(text_, *read_));
  }
  void Advance() {
    if (!frames_.empty() && frames_.back().array) ++frames_.back().index;
  }
  bool Value() {
    Record();
    Advance();
    return true;
  }

  std::string_view text_;
  const std::size_t* read_;
  LocationMap* out_;
  std::vector<Frame> frames_;
};

}  // namespace

LocationMap LocateValues(std::string_view text) {
  LocationMap map;
  std::size_t read = 0;
  Counting first{text.data(), text.data(), &read};
  Counting last{text.data() + text.size(), text.data(), &read};
  Locator sax(text, &read, &map);
  if (!json::sax_parse(first, last, &sax)) map.at.clear();
  return map;
}

}  // namespace oneclock::detail
