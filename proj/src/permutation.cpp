#include "parhgs/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "parhgs/errors.hpp"

namespace parhgs {

namespace {

void check_bijection(const std::vector<Point>& images) {
  std::vector<char> seen(images.size(), 0);
  for (Point p : images) {
    if (p >= images.size() || seen[p]) {
      throw PreconditionError("image array is not a permutation");
    }
    seen[p] = 1;
  }
}

std::vector<long> parse_integers(std::string_view s) {
  std::vector<long> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      long v = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        v = v * 10 + (s[i] - '0');
        ++i;
      }
      out.push_back(v);
    } else if (s[i] == ',' || std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
    } else {
      throw ParseError("unexpected character '" + std::string(1, s[i]) +
                       "' in permutation");
    }
  }
  return out;
}

}  // namespace

Permutation::Permutation(std::size_t degree) : images_(degree) {
  std::iota(images_.begin(), images_.end(), Point{0});
}

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  check_bijection(images_);
}

Permutation::Permutation(std::initializer_list<Point> images)
    : Permutation(std::vector<Point>(images)) {}

Permutation Permutation::from_cycles(std::size_t degree,
                                     const std::vector<std::vector<Point>>& cycles) {
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), Point{0});
  std::vector<char> used(degree, 0);
  for (const auto& cyc : cycles) {
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      Point a = cyc[i];
      Point b = cyc[(i + 1) % cyc.size()];
      if (a >= degree || b >= degree) {
        throw PreconditionError("cycle point out of range");
      }
      if (used[a]) throw PreconditionError("point repeated across cycles");
      used[a] = 1;
      img[a] = b;
    }
  }
  return Permutation(std::move(img));
}

Permutation Permutation::parse(std::string_view text, std::size_t degree,
                               bool one_based) {
  auto first = text.find_first_not_of(" \t\n");
  if (first == std::string_view::npos) throw ParseError("empty permutation");
  text.remove_prefix(first);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  if (text.front() == '[') {
    if (text.back() != ']') throw ParseError("unterminated image array");
    auto vals = parse_integers(text.substr(1, text.size() - 2));
    std::vector<Point> img;
    img.reserve(vals.size());
    for (long v : vals) img.push_back(static_cast<Point>(v - (one_based ? 1 : 0)));
    if (degree != 0 && img.size() != degree) {
      throw ParseError("image array has wrong length");
    }
    try {
      return Permutation(std::move(img));
    } catch (const PreconditionError& e) {
      throw ParseError(e.what());
    }
  }
  if (text.front() != '(') throw ParseError("expected '[' or '('");
  std::vector<std::vector<Point>> cycles;
  std::size_t i = 0;
  std::size_t max_point = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] != '(') throw ParseError("expected '(' in cycle notation");
    auto close = text.find(')', i);
    if (close == std::string_view::npos) throw ParseError("unterminated cycle");
    auto vals = parse_integers(text.substr(i + 1, close - i - 1));
    std::vector<Point> cyc;
    for (long v : vals) {
      long p = v - (one_based ? 1 : 0);
      if (p < 0) throw ParseError("cycle point below range");
      cyc.push_back(static_cast<Point>(p));
      max_point = std::max<std::size_t>(max_point, static_cast<std::size_t>(p));
    }
    if (!cyc.empty()) cycles.push_back(std::move(cyc));
    i = close + 1;
  }
  if (degree == 0) degree = cycles.empty() ? 1 : max_point + 1;
  try {
    return from_cycles(degree, cycles);
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
}

Permutation Permutation::operator*(const Permutation& rhs) const {
  if (rhs.degree() != degree()) throw PreconditionError("degree mismatch in product");
  Permutation out;
  out.images_.resize(degree());
  for (std::size_t i = 0; i < degree(); ++i) out.images_[i] = images_[rhs.images_[i]];
  return out;
}

Permutation Permutation::inverse() const {
  Permutation out;
  out.images_.resize(degree());
  for (std::size_t i = 0; i < degree(); ++i) out.images_[images_[i]] = static_cast<Point>(i);
  return out;
}

Permutation Permutation::pow(long long e) const {
  Permutation base = e < 0 ? inverse() : *this;
  unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e)
                               : static_cast<unsigned long long>(e);
  Permutation acc(degree());
  while (k) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

std::uint64_t Permutation::order() const {
  std::uint64_t ord = 1;
  for (auto len : cycle_type()) ord = std::lcm(ord, static_cast<std::uint64_t>(len));
  return ord;
}

std::size_t Permutation::fixed_points() const noexcept {
  std::size_t n = 0;
  for (std::size_t i = 0; i < images_.size(); ++i) n += images_[i] == i;
  return n;
}

std::vector<std::size_t> Permutation::cycle_type() const {
  std::vector<std::size_t> lens;
  std::vector<char> seen(degree(), 0);
  for (std::size_t i = 0; i < degree(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = 1;
      ++len;
    }
    lens.push_back(len);
  }
  std::sort(lens.begin(), lens.end());
  return lens;
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i) os << ',';
    os << images_[i];
  }
  os << ']';
  return os.str();
}

std::string Permutation::to_cycles() const {
  std::ostringstream os;
  std::vector<char> seen(degree(), 0);
  for (std::size_t i = 0; i < degree(); ++i) {
    if (seen[i] || images_[i] == i) continue;
    os << '(';
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = 1;
      if (j != i) os << ' ';
      os << j;
    }
    os << ')';
  }
  auto s = os.str();
  return s.empty() ? "()" : s;
}

std::uint64_t hash_points(std::span<const Point> pts) noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ pts.size();
  for (Point p : pts) {
    h ^= p;
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 29;
  }
  h ^= h >> 32;
  return h;
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  return static_cast<std::size_t>(hash_points(p.images()));
}

}  // namespace parhgs
