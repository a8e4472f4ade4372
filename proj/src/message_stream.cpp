#include "cbc_chaos/message_stream.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <numeric>
#include <stdexcept>

namespace cbc_chaos {

namespace {

// Sequence-equality needs max(preperiods) + lcm(periods) comparisons; cap it
// so coprime period lengths cannot go quadratic unnoticed.
constexpr std::uint64_t kMaxComparisonSpan = 1u << 22;

void check_symbols(const std::vector<std::uint64_t>& v, std::uint64_t alphabet,
                   const char* which) {
  for (std::uint64_t s : v)
    if (s >= alphabet)
      throw std::invalid_argument(std::string(which) +
                                  " symbol exceeds the alphabet");
}

}  // namespace

MessageStream::MessageStream(StreamMode mode, std::uint64_t alphabet_size,
                             std::vector<std::uint64_t> preperiod,
                             std::vector<std::uint64_t> period)
    : mode_(mode),
      alphabet_(alphabet_size),
      preperiod_(std::move(preperiod)),
      period_(std::move(period)) {
  if (alphabet_ < 1) throw std::invalid_argument("alphabet must be nonempty");
  if (period_.empty())
    throw std::invalid_argument("period must be nonempty (use per:[0])");
  check_symbols(preperiod_, alphabet_, "preperiod");
  check_symbols(period_, alphabet_, "period");
}

MessageStream MessageStream::full_block(int n_bits,
                                        std::vector<std::uint64_t> preperiod,
                                        std::vector<std::uint64_t> period) {
  if (n_bits < 1 || n_bits > 60)
    throw std::invalid_argument("full-block mode needs width in [1, 60]");
  return MessageStream(StreamMode::full_block, std::uint64_t{1} << n_bits,
                       std::move(preperiod), std::move(period));
}

MessageStream MessageStream::strategy(int n_bits,
                                      std::vector<std::uint64_t> preperiod,
                                      std::vector<std::uint64_t> period) {
  if (n_bits < 1)
    throw std::invalid_argument("strategy mode needs a positive width");
  return MessageStream(StreamMode::strategy,
                       static_cast<std::uint64_t>(n_bits),
                       std::move(preperiod), std::move(period));
}

int MessageStream::block_bits() const {
  if (mode_ == StreamMode::strategy) return static_cast<int>(alphabet_);
  if (!std::has_single_bit(alphabet_))
    throw std::logic_error("full-block alphabet is not a power of two");
  return std::countr_zero(alphabet_);
}

std::uint64_t MessageStream::at(std::uint64_t k) const {
  if (k < preperiod_.size()) return preperiod_[k];
  return period_[(k - preperiod_.size()) % period_.size()];
}

MessageStream MessageStream::shifted() const {
  if (!preperiod_.empty()) {
    std::vector<std::uint64_t> pre(preperiod_.begin() + 1, preperiod_.end());
    return MessageStream(mode_, alphabet_, std::move(pre), period_);
  }
  std::vector<std::uint64_t> per(period_.begin() + 1, period_.end());
  per.push_back(period_.front());
  return MessageStream(mode_, alphabet_, {}, std::move(per));
}

MessageStream MessageStream::with_symbol(std::uint64_t k,
                                         std::uint64_t value) const {
  if (value >= alphabet_)
    throw std::invalid_argument("replacement symbol exceeds the alphabet");
  std::vector<std::uint64_t> pre = preperiod_;
  while (pre.size() <= k) pre.push_back(at(pre.size()));
  std::vector<std::uint64_t> per = period_;
  // Keep the period aligned with the extended preperiod.
  const std::uint64_t rot = (pre.size() - preperiod_.size()) % period_.size();
  std::rotate(per.begin(), per.begin() + static_cast<std::ptrdiff_t>(rot),
              per.end());
  pre[k] = value;
  return MessageStream(mode_, alphabet_, std::move(pre), std::move(per));
}

bool MessageStream::same_sequence(const MessageStream& other) const {
  const std::uint64_t pre =
      std::max(preperiod_.size(), other.preperiod_.size());
  const std::uint64_t lcm =
      std::lcm<std::uint64_t>(period_.size(), other.period_.size());
  if (pre + lcm > kMaxComparisonSpan)
    throw std::length_error("stream comparison span too large");
  for (std::uint64_t k = 0; k < pre + lcm; ++k)
    if (at(k) != other.at(k)) return false;
  return true;
}

bool MessageStream::period_is_constant(std::uint64_t symbol) const {
  for (std::uint64_t s : period_)
    if (s != symbol) return false;
  return true;
}

std::int64_t MessageStream::last_nonzero_index() const {
  if (!period_is_constant(0)) return -2;
  for (std::int64_t k = static_cast<std::int64_t>(preperiod_.size()) - 1;
       k >= 0; --k)
    if (preperiod_[static_cast<std::size_t>(k)] != 0) return k;
  return -1;
}

namespace {

std::vector<std::uint64_t> parse_list(const std::string& body,
                                      const char* which) {
  if (body.size() < 2 || body.front() != '[' || body.back() != ']')
    throw std::invalid_argument(std::string("malformed ") + which + " list");
  std::vector<std::uint64_t> out;
  std::size_t pos = 1;
  const std::size_t end = body.size() - 1;
  while (pos < end) {
    while (pos < end && body[pos] == ' ') ++pos;
    std::uint64_t value = 0;
    auto [ptr, ec] =
        std::from_chars(body.data() + pos, body.data() + end, value);
    if (ec != std::errc())
      throw std::invalid_argument(std::string("malformed ") + which +
                                  " entry");
    out.push_back(value);
    pos = static_cast<std::size_t>(ptr - body.data());
    while (pos < end && body[pos] == ' ') ++pos;
    if (pos < end) {
      if (body[pos] != ',')
        throw std::invalid_argument(std::string("malformed ") + which +
                                    " separator");
      ++pos;
    }
  }
  return out;
}

std::string render_list(const std::vector<std::uint64_t>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  out += ']';
  return out;
}

}  // namespace

std::string MessageStream::to_text() const {
  std::string out = "pre:" + render_list(preperiod_);
  out += ";per:" + render_list(period_);
  out += ";mode:";
  out += (mode_ == StreamMode::strategy) ? "strategy" : "full";
  return out;
}

MessageStream MessageStream::parse(const std::string& text, int n_bits) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t semi = text.find(';', start);
    parts.push_back(text.substr(start, semi - start));
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  if (parts.size() != 3)
    throw std::invalid_argument(
        "stream text must be pre:[..];per:[..];mode:strategy|full");
  if (parts[0].rfind("pre:", 0) != 0 || parts[1].rfind("per:", 0) != 0 ||
      parts[2].rfind("mode:", 0) != 0)
    throw std::invalid_argument("stream text has misnamed fields");
  auto pre = parse_list(parts[0].substr(4), "preperiod");
  auto per = parse_list(parts[1].substr(4), "period");
  const std::string mode = parts[2].substr(5);
  if (mode == "strategy")
    return MessageStream::strategy(n_bits, std::move(pre), std::move(per));
  if (mode == "full")
    return MessageStream::full_block(n_bits, std::move(pre), std::move(per));
  throw std::invalid_argument("stream mode must be strategy or full");
}

MessageStream shift(const MessageStream& s) { return s.shifted(); }

std::uint64_t first_block(const MessageStream& s) { return s.first(); }

}  // namespace cbc_chaos
