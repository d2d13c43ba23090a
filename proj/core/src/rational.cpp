#include "advsim/rational.hpp"

#include <algorithm>
#include <cctype>

namespace advsim {

std::string int128_str(__int128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  std::string out;
  while (u != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) out.push_back('-');
  std::reverse(out.begin(), out.end());
  return out;
}

Rational Rational::from_decimal(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty decimal literal");
  size_t pos = 0;
  bool neg = false;
  if (text[pos] == '+' || text[pos] == '-') {
    neg = text[pos] == '-';
    ++pos;
  }
  Int num = 0;
  Int den = 1;
  bool seen_digit = false;
  bool after_point = false;
  for (; pos < text.size(); ++pos) {
    char ch = text[pos];
    if (ch == '.') {
      if (after_point) throw std::invalid_argument("malformed decimal literal: " + std::string(text));
      after_point = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(ch)))
      throw std::invalid_argument("malformed decimal literal: " + std::string(text));
    seen_digit = true;
    num = checked_add(checked_mul(num, 10), ch - '0');
    if (after_point) den = checked_mul(den, 10);
  }
  if (!seen_digit) throw std::invalid_argument("malformed decimal literal: " + std::string(text));
  if (neg) num = -num;
  return from_int128(num, den);
}

std::string Rational::str() const {
  if (den_ == 1) return int128_str(num_);
  return int128_str(num_) + "/" + int128_str(den_);
}

}  // namespace advsim
