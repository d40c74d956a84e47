#include "goc/lists.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string_view>

namespace goc {
namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double to_real(std::string_view s) {
  s = strip(s);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size() || !std::isfinite(value)) {
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  }
  return value;
}

// Appends lo, lo + step, ... up to hi inclusive; hi is written exactly.
void progression(std::vector<double>& out, double lo, double step, double hi, bool include_lo) {
  if (!(step > 0.0)) throw std::invalid_argument("range step must be > 0");
  if (hi < lo) throw std::invalid_argument("range end is below its start");
  const double ratio = (hi - lo) / step;
  const double steps = std::round(ratio);
  if (std::abs(ratio - steps) > 1e-9 * std::max(1.0, ratio)) {
    throw std::invalid_argument("range end is not a whole number of steps from its start");
  }
  if (steps > 1e7) throw std::invalid_argument("range has too many points");
  const auto count = static_cast<std::size_t>(steps);
  for (std::size_t i = include_lo ? 0 : 1; i < count; ++i) {
    out.push_back(lo + static_cast<double>(i) * step);
  }
  if (count > 0 || include_lo) out.push_back(hi);
}

}  // namespace

std::vector<double> parse_real_list(const std::string& text) {
  const std::vector<std::string_view> items = split(text, ',');
  std::vector<double> out;
  bool pending_ellipsis = false;
  for (std::string_view raw : items) {
    const std::string_view item = strip(raw);
    if (item == "...") {
      if (pending_ellipsis || out.size() < 2) {
        throw std::invalid_argument("'...' needs two values before it");
      }
      pending_ellipsis = true;
      continue;
    }
    if (item.find(':') != std::string_view::npos) {
      if (pending_ellipsis) throw std::invalid_argument("'...' must be followed by a value");
      const auto parts = split(item, ':');
      if (parts.size() != 3) throw std::invalid_argument("range must be lo:step:hi");
      progression(out, to_real(parts[0]), to_real(parts[1]), to_real(parts[2]), true);
      continue;
    }
    const double value = to_real(item);
    if (pending_ellipsis) {
      const double last = out.back();
      progression(out, last, last - out[out.size() - 2], value, false);
      pending_ellipsis = false;
    } else {
      out.push_back(value);
    }
  }
  if (pending_ellipsis) throw std::invalid_argument("'...' must be followed by a value");
  return out;
}

MixtureAdversary parse_mixture(const std::string& text) {
  std::vector<MixtureComponent> components;
  for (std::string_view raw : split(text, ',')) {
    std::string_view item = strip(raw);
    if (item.substr(0, 2) != "z=") {
      throw std::invalid_argument("adversary component must look like z=offset:weight");
    }
    item.remove_prefix(2);
    const std::size_t colon = item.find(':');
    const double offset = to_real(item.substr(0, colon));
    const double weight = colon == std::string_view::npos ? 1.0 : to_real(item.substr(colon + 1));
    components.push_back(MixtureComponent{offset, weight});
  }
  return MixtureAdversary(std::move(components));
}

}  // namespace goc
