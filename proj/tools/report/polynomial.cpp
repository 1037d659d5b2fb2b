#include <cctype>
#include <charconv>
#include <string>

#include "report.hpp"

namespace cspi::report {

namespace {

class Scanner {
 public:
  Scanner(std::string_view text, std::string_view symbol) : text_(text), symbol_(symbol) {}

  std::vector<double> parse() {
    std::vector<double> coeffs;
    skip_space();
    if (done()) fail("empty expression");
    bool first = true;
    while (!done()) {
      double sign = 1.0;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1.0 : 1.0;
        ++pos_;
        skip_space();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      auto [coefficient, power] = term();
      if (coeffs.size() <= static_cast<std::size_t>(power)) coeffs.resize(power + 1, 0.0);
      coeffs[power] += sign * coefficient;
      skip_space();
    }
    return coeffs;
  }

 private:
  std::pair<double, int> term() {
    double coefficient = 1.0;
    int power = 0;
    bool any = false;
    if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') {
      coefficient = number();
      any = true;
      skip_space();
      if (peek() == '*') {
        ++pos_;
        skip_space();
        if (!at_symbol()) fail("expected '" + std::string(symbol_) + "' after '*'");
      }
    }
    if (at_symbol()) {
      pos_ += symbol_.size();
      power = 1;
      any = true;
      skip_space();
      if (peek() == '^') {
        ++pos_;
        skip_space();
        const std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (start == pos_) fail("expected a non-negative integer power");
        power = std::stoi(std::string(text_.substr(start, pos_ - start)));
        if (power > 64) fail("power too large");
      }
    }
    if (!any) fail("expected a number or '" + std::string(symbol_) + "'");
    skip_space();
    if (peek() == '/') {
      ++pos_;
      skip_space();
      const double divisor = number();
      if (divisor == 0.0) fail("division by zero");
      coefficient /= divisor;
    }
    return {coefficient, power};
  }

  double number() {
    const char* begin = text_.data() + pos_;
    double value = 0.0;
    const auto [end, ec] = std::from_chars(begin, text_.data() + text_.size(), value);
    if (ec != std::errc{} || end == begin) fail("malformed number");
    pos_ += static_cast<std::size_t>(end - begin);
    return value;
  }

  bool at_symbol() const {
    if (text_.substr(pos_, symbol_.size()) != symbol_) return false;
    const std::size_t next = pos_ + symbol_.size();
    return next >= text_.size() || !std::isalnum(static_cast<unsigned char>(text_[next]));
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw ConfigError("hamiltonian", why + " at position " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  void skip_space() {
    while (!done() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }

  std::string_view text_;
  std::string_view symbol_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<double> parse_polynomial(std::string_view text, std::string_view symbol) {
  return Scanner(text, symbol).parse();
}

}  // namespace cspi::report
