#include "cbc_chaos/digit_real.hpp"

#include <charconv>
#include <stdexcept>

#include "cbc_chaos/series.hpp"

namespace cbc_chaos {

namespace {

bool all_equal(const std::vector<std::uint64_t>& v, std::uint64_t s) {
  for (std::uint64_t x : v)
    if (x != s) return false;
  return !v.empty();
}

}  // namespace

DigitReal::DigitReal(int n_bits, int base, std::uint64_t int_part,
                     std::vector<std::uint64_t> pre_digits,
                     std::vector<std::uint64_t> per_digits)
    : n_(n_bits),
      base_(base),
      int_part_(int_part),
      digits_(StreamMode::strategy, 1, {}, {0}) {
  if (n_bits < 1 || n_bits > BlockState::kMaxBits)
    throw std::invalid_argument("block width out of range");
  if (base < 2 || base < n_bits)
    throw std::invalid_argument("digit base must be >= max(2, block width)");
  if (per_digits.empty()) per_digits = {0};
  const std::uint64_t top = std::uint64_t{1} << n_bits;
  const auto ubase = static_cast<std::uint64_t>(base);

  // Canonicalize an all-(B-1) tail by carrying: ...d(B-1)(B-1)... -> (d+1)0...
  if (all_equal(per_digits, ubase - 1)) {
    per_digits = {0};
    std::uint64_t carry = 1;
    for (auto it = pre_digits.rbegin(); it != pre_digits.rend() && carry;
         ++it) {
      if (*it + 1 == ubase) {
        *it = 0;
      } else {
        *it += 1;
        carry = 0;
      }
    }
    int_part_ += carry;
    while (!pre_digits.empty() && pre_digits.back() == 0) pre_digits.pop_back();
  }
  if (int_part_ >= top)
    throw std::domain_error("value lies outside [0, 2^N)");
  digits_ = MessageStream(StreamMode::strategy, ubase, std::move(pre_digits),
                          std::move(per_digits));
}

Rational DigitReal::value_exact() const {
  const auto term = [&](std::uint64_t k) { return digits_.at(k); };
  const std::uint64_t pre = digits_.preperiod().size();
  const std::uint64_t per = digits_.period().size();
  return Rational(static_cast<unsigned long>(int_part_)) +
         periodic_series_exact(static_cast<std::uint64_t>(base_), pre, per,
                               term);
}

double DigitReal::to_float(int digits_kept) const {
  const auto term = [&](std::uint64_t k) { return digits_.at(k); };
  return static_cast<double>(int_part_) +
         truncated_series(static_cast<std::uint64_t>(base_), digits_kept,
                          term);
}

DigitReal DigitReal::offset_ulp(int position, int sign) const {
  if (position < 1) throw std::invalid_argument("offset position must be >= 1");
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("offset sign must be +1 or -1");
  const auto p = static_cast<std::size_t>(position);
  std::vector<std::uint64_t> head(p);
  for (std::size_t k = 0; k < p; ++k) head[k] = digits_.at(k);

  // Tail beyond the touched digits: the stream shifted p times.
  MessageStream tail = digits_;
  for (std::size_t k = 0; k < p; ++k) tail = tail.shifted();

  const auto ubase = static_cast<std::uint64_t>(base_);
  std::uint64_t int_part = int_part_;
  if (sign > 0) {
    std::uint64_t carry = 1;
    for (std::size_t k = p; k-- > 0 && carry;) {
      if (head[k] + 1 == ubase) {
        head[k] = 0;
      } else {
        head[k] += 1;
        carry = 0;
      }
    }
    if (carry) {
      if (int_part + 1 >= (std::uint64_t{1} << n_))
        throw std::domain_error("offset leaves the interval");
      int_part += 1;
    }
  } else {
    std::uint64_t borrow = 1;
    for (std::size_t k = p; k-- > 0 && borrow;) {
      if (head[k] == 0) {
        head[k] = ubase - 1;
      } else {
        head[k] -= 1;
        borrow = 0;
      }
    }
    if (borrow) {
      if (int_part == 0) throw std::domain_error("offset leaves the interval");
      int_part -= 1;
    }
  }

  std::vector<std::uint64_t> pre = std::move(head);
  pre.insert(pre.end(), tail.preperiod().begin(), tail.preperiod().end());
  return DigitReal(n_, base_, int_part, std::move(pre), tail.period());
}

bool DigitReal::same_real(const DigitReal& other) const {
  return n_ == other.n_ && base_ == other.base_ &&
         int_part_ == other.int_part_ && digits_.same_sequence(other.digits_);
}

std::string DigitReal::to_text() const {
  std::string out = std::to_string(int_part_);
  out += '.';
  const auto& pre = digits_.preperiod();
  for (std::size_t i = 0; i < pre.size(); ++i) {
    if (base_ > 10 && i) out += ' ';
    out += std::to_string(pre[i]);
  }
  out += ";per:[";
  const auto& per = digits_.period();
  for (std::size_t i = 0; i < per.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(per[i]);
  }
  out += ']';
  return out;
}

DigitReal DigitReal::parse(const std::string& text, int n_bits, int base) {
  std::string body = text;
  std::vector<std::uint64_t> per = {0};
  const std::size_t marker = body.find(";per:[");
  if (marker != std::string::npos) {
    const std::string tail = body.substr(marker + 6);
    if (tail.empty() || tail.back() != ']')
      throw std::invalid_argument("malformed digit-real period");
    per.clear();
    std::size_t pos = 0;
    while (pos < tail.size() - 1) {
      std::uint64_t v = 0;
      auto [ptr, ec] =
          std::from_chars(tail.data() + pos, tail.data() + tail.size() - 1, v);
      if (ec != std::errc())
        throw std::invalid_argument("malformed digit-real period entry");
      per.push_back(v);
      pos = static_cast<std::size_t>(ptr - tail.data());
      if (pos < tail.size() - 1) {
        if (tail[pos] != ',')
          throw std::invalid_argument("malformed digit-real period separator");
        ++pos;
      }
    }
    if (per.empty()) per = {0};
    body = body.substr(0, marker);
  }

  const std::size_t dot = body.find('.');
  const std::string int_text = body.substr(0, dot);
  std::uint64_t int_part = 0;
  if (int_text.empty())
    throw std::invalid_argument("digit-real needs an integral part");
  {
    auto [ptr, ec] = std::from_chars(int_text.data(),
                                     int_text.data() + int_text.size(),
                                     int_part);
    if (ec != std::errc() || ptr != int_text.data() + int_text.size())
      throw std::invalid_argument("malformed digit-real integral part");
  }

  std::vector<std::uint64_t> pre;
  if (dot != std::string::npos) {
    const std::string frac = body.substr(dot + 1);
    if (base <= 10) {
      for (char c : frac) {
        if (c == ' ') continue;
        if (c < '0' || c > '9')
          throw std::invalid_argument("malformed digit-real digit");
        pre.push_back(static_cast<std::uint64_t>(c - '0'));
      }
    } else {
      std::size_t pos = 0;
      while (pos < frac.size()) {
        while (pos < frac.size() && frac[pos] == ' ') ++pos;
        if (pos >= frac.size()) break;
        std::uint64_t v = 0;
        auto [ptr, ec] =
            std::from_chars(frac.data() + pos, frac.data() + frac.size(), v);
        if (ec != std::errc())
          throw std::invalid_argument("malformed digit-real digit");
        pre.push_back(v);
        pos = static_cast<std::size_t>(ptr - frac.data());
      }
    }
  }
  return DigitReal(n_bits, base, int_part, std::move(pre), std::move(per));
}

}  // namespace cbc_chaos
