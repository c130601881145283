#include "hgd/schedule.hpp"

#include <charconv>
#include <sstream>
#include <string>

#include "hgd/error.hpp"

namespace hgd {
namespace {

double parse_ir_value(std::string_view s, std::string_view context) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("bad IR value '" + std::string(s) + "' in schedule '" +
                      std::string(context) + "'");
  }
  return v;
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

}  // namespace

IrSchedule::IrSchedule(std::vector<IrSegment> segments)
    : segments_(std::move(segments)) {
  if (segments_.empty()) throw ConfigError("schedule has no segments");
  std::size_t prev = 0;
  for (const auto& seg : segments_) {
    if (seg.end_index <= prev) {
      throw ConfigError("schedule end indices must strictly increase");
    }
    prev = seg.end_index;
    const bool ok = std::visit(
        [](const auto& ir) {
          using T = std::decay_t<decltype(ir)>;
          if constexpr (std::is_same_v<T, ConstantIr>) {
            return ir.ir >= 1.0;
          } else {
            return ir.start >= 1.0 && ir.end >= 1.0;
          }
        },
        seg.ir);
    if (!ok) throw ConfigError("schedule IR values must be >= 1");
  }
}

IrSchedule IrSchedule::parse(std::string_view text) {
  std::vector<IrSegment> segments;
  std::string_view rest = strip(text);
  if (rest.empty()) throw ConfigError("empty schedule");
  while (true) {
    const auto comma = rest.find(',');
    const std::string_view item = strip(rest.substr(0, comma));
    const auto at = item.rfind('@');
    if (at == std::string_view::npos) {
      throw ConfigError("schedule segment '" + std::string(item) +
                        "' lacks '@end'");
    }
    IrSegment seg;
    const std::string_view end_text = item.substr(at + 1);
    const auto [ptr, ec] = std::from_chars(
        end_text.data(), end_text.data() + end_text.size(), seg.end_index);
    if (ec != std::errc() || ptr != end_text.data() + end_text.size() ||
        seg.end_index == 0) {
      throw ConfigError("bad end index in schedule segment '" +
                        std::string(item) + "'");
    }
    std::string_view ir_text = item.substr(0, at);
    if (ir_text.starts_with("ramp:")) {
      ir_text.remove_prefix(5);
      const auto dots = ir_text.find("..");
      if (dots == std::string_view::npos) {
        throw ConfigError("ramp segment '" + std::string(item) +
                          "' needs start..end");
      }
      seg.ir = RampIr{parse_ir_value(ir_text.substr(0, dots), text),
                      parse_ir_value(ir_text.substr(dots + 2), text)};
    } else {
      seg.ir = ConstantIr{parse_ir_value(ir_text, text)};
    }
    segments.push_back(seg);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return IrSchedule(std::move(segments));
}

std::size_t IrSchedule::segment_of(std::size_t t) const {
  for (std::size_t k = 0; k < segments_.size(); ++k) {
    if (t <= segments_[k].end_index) return k;
  }
  return segments_.size() - 1;
}

double IrSchedule::ir_at(std::size_t t) const {
  const std::size_t k = segment_of(t);
  const IrSegment& seg = segments_[k];
  if (const auto* c = std::get_if<ConstantIr>(&seg.ir)) return c->ir;
  const auto& ramp = std::get<RampIr>(seg.ir);
  const std::size_t first = k == 0 ? 1 : segments_[k - 1].end_index + 1;
  const std::size_t len = seg.end_index - first + 1;
  if (len <= 1) return ramp.start;
  const double frac =
      static_cast<double>(t - first) / static_cast<double>(len - 1);
  return ramp.start + (ramp.end - ramp.start) * frac;
}

std::string IrSchedule::to_string() const {
  std::ostringstream out;
  for (std::size_t k = 0; k < segments_.size(); ++k) {
    if (k) out << ',';
    const auto& seg = segments_[k];
    if (const auto* c = std::get_if<ConstantIr>(&seg.ir)) {
      out << c->ir;
    } else {
      const auto& r = std::get<RampIr>(seg.ir);
      out << "ramp:" << r.start << ".." << r.end;
    }
    out << '@' << seg.end_index;
  }
  return out.str();
}

}  // namespace hgd
