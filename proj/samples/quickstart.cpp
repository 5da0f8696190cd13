// Lays out a small table, tries to lower row heights, and writes an SVG.
#include <streamtable/streamtable.hpp>

#include <fstream>
#include <iostream>

int main() {
  using namespace streamtable;
  Table table = validate_table({{3, 1}, {1, 1}}, {"top", "bottom"}, {"A", "B"});

  Layout greedy = greedy_layout(table, RowHeights::uniform(2, 1));
  std::cout << "greedy excess: " << to_string(excess_area(greedy)) << "\n";

  ImproveResult better = local_improve(table, greedy.heights);
  std::cout << "after improve: " << to_string(excess_area(better.layout)) << " with heights";
  for (const auto& h : better.heights.values()) std::cout << " " << to_string(h);
  std::cout << "\n";

  RenderOptions opts;
  opts.smoothing = Smoothing::Rounded;
  opts.labels = true;
  std::ofstream("quickstart.svg") << render_svg(better.layout, opts);
}
