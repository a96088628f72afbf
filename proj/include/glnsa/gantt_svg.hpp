#pragma once

// SVG Gantt chart: one lane per machine, one labelled bar per operation.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "glnsa/instance.hpp"
#include "glnsa/schedule.hpp"

namespace glnsa {

namespace detail {

inline std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// Tick spacing of 1, 2 or 5 times a power of ten giving at most ~10 ticks.
inline Time tick_step(Time span) {
  Time step = 1;
  while (true) {
    for (Time f : {1, 2, 5})
      if (span / (step * f) <= 10) return step * f;
    step *= 10;
  }
}

}  // namespace detail

inline std::string gantt_svg(const Instance& inst, const Schedule& sched) {
  constexpr double kLeft = 60, kTop = 30, kLane = 28, kBar = 22, kPlotWidth = 1000;
  const Time span = sched.makespan > 0 ? sched.makespan : 1;
  const double scale = kPlotWidth / static_cast<double>(span);
  const auto lanes = static_cast<double>(sched.machine_sequence.size());
  const double height = kTop + lanes * kLane + 30;
  const double width = kLeft + kPlotWidth + 20;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << detail::fixed2(width) << "\" height=\""
      << detail::fixed2(height) << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg << "<title>" << inst.name() << " makespan " << sched.makespan << "</title>\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << detail::fixed2(width) << "\" height=\"" << detail::fixed2(height)
      << "\" fill=\"white\"/>\n";

  for (std::size_t k = 0; k < sched.machine_sequence.size(); ++k) {
    const double y = kTop + static_cast<double>(k) * kLane;
    svg << "<g class=\"lane\" id=\"M" << k + 1 << "\">\n";
    svg << "<text x=\"" << detail::fixed2(kLeft - 8) << "\" y=\"" << detail::fixed2(y + kLane / 2 + 4)
        << "\" text-anchor=\"end\">M" << k + 1 << "</text>\n";
    svg << "<line x1=\"" << detail::fixed2(kLeft) << "\" y1=\"" << detail::fixed2(y + kLane) << "\" x2=\""
        << detail::fixed2(kLeft + kPlotWidth) << "\" y2=\"" << detail::fixed2(y + kLane)
        << "\" stroke=\"#dddddd\"/>\n";
    for (OpId o : sched.machine_sequence[k]) {
      const auto& ref = inst.op(o);
      const double x = kLeft + static_cast<double>(sched.start[o]) * scale;
      const double w = static_cast<double>(sched.completion[o] - sched.start[o]) * scale;
      const int hue = static_cast<int>((ref.job * 137) % 360);
      svg << "<rect class=\"op\" x=\"" << detail::fixed2(x) << "\" y=\"" << detail::fixed2(y + (kLane - kBar) / 2)
          << "\" width=\"" << detail::fixed2(w) << "\" height=\"" << detail::fixed2(kBar) << "\" fill=\"hsl(" << hue
          << ",60%,70%)\" stroke=\"#333333\"><title>O" << ref.job + 1 << "," << ref.step + 1 << " ["
          << sched.start[o] << "," << sched.completion[o] << ")</title></rect>\n";
      svg << "<text x=\"" << detail::fixed2(x + w / 2) << "\" y=\"" << detail::fixed2(y + kLane / 2 + 4)
          << "\" text-anchor=\"middle\">O" << ref.job + 1 << "," << ref.step + 1 << "</text>\n";
    }
    svg << "</g>\n";
  }

  const double axis_y = kTop + lanes * kLane;
  svg << "<line x1=\"" << detail::fixed2(kLeft) << "\" y1=\"" << detail::fixed2(axis_y) << "\" x2=\""
      << detail::fixed2(kLeft + kPlotWidth) << "\" y2=\"" << detail::fixed2(axis_y) << "\" stroke=\"black\"/>\n";
  const Time step = detail::tick_step(span);
  for (Time t = 0; t <= span; t += step) {
    const double x = kLeft + static_cast<double>(t) * scale;
    svg << "<line x1=\"" << detail::fixed2(x) << "\" y1=\"" << detail::fixed2(axis_y) << "\" x2=\""
        << detail::fixed2(x) << "\" y2=\"" << detail::fixed2(axis_y + 5) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << detail::fixed2(x) << "\" y=\"" << detail::fixed2(axis_y + 18)
        << "\" text-anchor=\"middle\">" << t << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

inline void write_gantt_svg(const Instance& inst, const Schedule& sched, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write SVG to '" + path + "'");
  out << gantt_svg(inst, sched);
  if (!out) throw std::runtime_error("failed writing SVG to '" + path + "'");
}

}  // namespace glnsa
