#include <cctype>

#include "thetakit/error.hpp"
#include "thetakit/theta.hpp"

namespace thetakit {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  bool done() const { return pos_ == text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }

  void expect(char c) {
    if (peek() != c)
      throw ParseError("expected '" + std::string(1, c) + "' at offset " + std::to_string(pos_) + " in \"" +
                       std::string(text_) + "\"");
    ++pos_;
  }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  int integer() {
    const std::size_t start = pos_;
    while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) throw ParseError("expected an integer at offset " + std::to_string(start) + " in \"" +
                                        std::string(text_) + "\"");
    return std::stoi(std::string(text_.substr(start, pos_ - start)));
  }

  void finish() {
    if (!done()) throw ParseError("trailing input at offset " + std::to_string(pos_) + " in \"" + std::string(text_) + "\"");
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

ThetaObject object_at(Cursor& c, int level) {
  if (level == 0) {
    c.expect('*');
    return ThetaObject::point();
  }
  c.expect('[');
  const int m = c.integer();
  c.expect(']');
  if (level == 1) return ThetaObject::make(1, std::vector<ThetaObject>(static_cast<std::size_t>(m), ThetaObject::point()));
  std::vector<ThetaObject> children;
  c.expect('(');
  for (int i = 0; i < m; ++i) {
    if (i > 0) c.expect(',');
    children.push_back(object_at(c, level - 1));
  }
  c.expect(')');
  return ThetaObject::make(level, std::move(children));
}

ThetaMorphism morphism_at(Cursor& c, const ThetaObject& src, const ThetaObject& tgt) {
  if (src.level() == 0) {
    c.expect('i');
    c.expect('d');
    c.expect('*');
    return ThetaMorphism::identity(src);
  }
  c.expect('{');
  c.expect('(');
  std::vector<int> outer;
  for (int i = 0; i <= src.length(); ++i) {
    if (i > 0) c.expect(',');
    outer.push_back(c.integer());
  }
  c.expect(')');
  ThetaMorphism::Rows rows(static_cast<std::size_t>(src.length()));
  if (src.level() >= 2) {
    c.expect(';');
    for (int i = 1; i <= src.length(); ++i) {
      if (i > 1) c.expect('|');
      const int lo = outer[static_cast<std::size_t>(i) - 1];
      const int hi = outer[static_cast<std::size_t>(i)];
      if (lo < 0 || hi > tgt.length() || hi < lo) throw ParseError("outer map out of range");
      for (int j = lo + 1; j <= hi; ++j) {
        if (j > lo + 1) c.expect(',');
        rows[static_cast<std::size_t>(i) - 1].push_back(morphism_at(c, src.children()[static_cast<std::size_t>(i) - 1],
                                                                     tgt.children()[static_cast<std::size_t>(j) - 1]));
      }
    }
  } else {
    for (int i = 1; i <= src.length(); ++i)
      for (int j = outer[static_cast<std::size_t>(i) - 1] + 1; j <= outer[static_cast<std::size_t>(i)]; ++j)
        rows[static_cast<std::size_t>(i) - 1].push_back(ThetaMorphism::identity(ThetaObject::point()));
  }
  c.expect('}');
  try {
    return ThetaMorphism(src, tgt, std::move(outer), std::move(rows));
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid morphism: ") + e.what());
  }
}

}  // namespace

ThetaObject parse_theta_object(int level, std::string_view text) {
  Cursor c(text);
  auto obj = object_at(c, level);
  c.finish();
  return obj;
}

ThetaMorphism parse_theta_morphism(const ThetaObject& src, const ThetaObject& tgt, std::string_view text) {
  Cursor c(text);
  auto f = morphism_at(c, src, tgt);
  c.finish();
  return f;
}

}  // namespace thetakit
