#include "bft/render.hpp"

#include <algorithm>
#include <sstream>

namespace bft {

namespace {

constexpr double kGap = 40;      // between strands
constexpr double kLevel = 30;    // tree depth step
constexpr double kCross = 24;    // height of one sigma crossing
constexpr double kMargin = 30;

struct Canvas {
  std::ostringstream body;
  void line(double x1, double y1, double x2, double y2, const char* cls) {
    body << "<line class=\"" << cls << "\" x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2
         << "\"/>\n";
  }
};

int depth(const Tree& t) {
  std::size_t d = 0;
  for (const auto& a : t.leaves()) d = std::max(d, a.size());
  return static_cast<int>(d);
}

// Draws the tree with its leaves on the line y = leaf_y, growing towards -dir.
void draw_tree(Canvas& c, const Tree& t, double leaf_y, double dir, int levels) {
  const double root_y = leaf_y - dir * levels * kLevel;
  auto x_of_leaf = [](int k) { return kMargin + k * kGap; };
  // x of a node is the midpoint of its leftmost and rightmost leaf
  auto span = [&](const Address& a) {
    int lo = -1, hi = -1;
    for (int k = 0; k < t.leaf_count(); ++k)
      if (t.leaves()[k].compare(0, a.size(), a) == 0) {
        if (lo < 0) lo = k;
        hi = k;
      }
    return (x_of_leaf(lo) + x_of_leaf(hi)) / 2;
  };
  c.body << "<g class=\"tree\">\n";
  for (const auto& a : t.nodes()) {
    const double y = root_y + dir * static_cast<double>(a.size()) * kLevel;
    if (t.is_internal(a)) {
      c.body << "<circle class=\"caret\" cx=\"" << span(a) << "\" cy=\"" << y << "\" r=\"2.5\"/>\n";
      for (int d = 0; d < t.arity(); ++d) {
        const Address child = a + static_cast<char>('0' + d);
        c.line(span(a), y, span(child), y + dir * kLevel, "edge");
      }
    } else {
      c.line(span(a), y, span(a), leaf_y, "edge");
    }
  }
  c.body << "</g>\n";
}

std::vector<int> a_letter_sigma(const ALetter& a) { return a_to_sigma(AWord(a.j, {a})).letters(); }

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '<')
      out += "&lt;";
    else if (ch == '>')
      out += "&gt;";
    else if (ch == '&')
      out += "&amp;";
    else
      out += ch;
  }
  return out;
}

}  // namespace

std::string render_svg(const BFElement& x) {
  const int m = x.strands();
  const int d1 = depth(x.t1()), d2 = depth(x.t2());
  std::size_t crossings = 0;
  for (const auto& a : x.braid().letters()) crossings += a_letter_sigma(a).size();
  bool any_label = false;
  for (const auto& l : x.labels()) any_label = any_label || !l.empty();

  const double braid_top = kMargin + d1 * kLevel + kLevel / 2;
  const double braid_bottom = braid_top + std::max<double>(1, static_cast<double>(crossings)) * kCross;
  const double label_bottom = braid_bottom + (any_label ? kLevel : 0);
  const double t2_leaves = label_bottom + kLevel / 2;
  const double height = t2_leaves + d2 * kLevel + kMargin;
  const double width = 2 * kMargin + (m + 1) * kGap;
  auto xs = [](int pos) { return kMargin + pos * kGap; };  // pos is 0-based

  Canvas c;
  draw_tree(c, x.t1(), braid_top - kLevel / 2, 1, d1);

  c.body << "<g class=\"braid\">\n";
  for (int k = 0; k < m; ++k) c.line(xs(k), braid_top - kLevel / 2, xs(k), braid_top, "strand");
  double y = braid_top;
  for (const auto& a : x.braid().letters()) {
    c.body << "<g class=\"crossing-block\" data-letter=\"" << escape(AWord(m, {a}).str()) << "\">\n";
    for (int s : a_letter_sigma(a)) {
      const int k = std::abs(s) - 1;  // crossing of positions k and k+1
      for (int q = 0; q < m; ++q)
        if (q != k && q != k + 1) c.line(xs(q), y, xs(q), y + kCross, "strand");
      // positive sigma: the strand from the left passes over
      const bool left_over = s > 0;
      c.line(xs(left_over ? k : k + 1), y, xs(left_over ? k + 1 : k), y + kCross, "strand over");
      const double mx = (xs(k) + xs(k + 1)) / 2, my = y + kCross / 2, dx = kGap / 6, dy = kCross / 6;
      const double from_x = xs(left_over ? k + 1 : k), to_x = xs(left_over ? k : k + 1);
      const double sx = from_x < to_x ? -dx : dx;
      c.line(from_x, y, mx + sx, my - dy, "strand under");
      c.line(mx - sx, my + dy, to_x, y + kCross, "strand under");
      y += kCross;
    }
    c.body << "</g>\n";
  }
  if (x.braid().empty())
    for (int k = 0; k < m; ++k) c.line(xs(k), y, xs(k), braid_bottom, "strand");
  for (int k = 0; k < m; ++k) c.line(xs(k), braid_bottom, xs(k), t2_leaves, "strand");
  c.body << "</g>\n";

  const auto& gens = x.context()->generators();
  for (int k = 0; k < m; ++k) {
    const auto& l = x.labels()[k];
    if (l.empty()) continue;
    std::string text;
    for (Letter a : l.letters()) {
      if (!text.empty()) text += ' ';
      text += gens.at(std::abs(a) - 1).name + (a < 0 ? "^-1" : "");
    }
    c.body << "<text class=\"label\" x=\"" << xs(k) + 4 << "\" y=\"" << braid_bottom + kLevel * 0.7 << "\">"
           << escape(text) << "</text>\n";
  }

  draw_tree(c, x.t2(), t2_leaves, -1, d2);

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\" viewBox=\"0 0 "
      << width << " " << height << "\">\n"
      << "<style>line{stroke:#222;stroke-width:1.5}.strand{stroke:#1f4e9c}.caret{fill:#222}"
         ".label{font:11px monospace;fill:#a33}</style>\n"
      << c.body.str() << "</svg>\n";
  return out.str();
}

}  // namespace bft
