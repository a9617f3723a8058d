#include "rtcover/rho_path.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace rtcover {

namespace {

GraphPoint enter_point(const MetricGraph& g, const Step& s) { return g.point_on_edge(s.edge, s.enter); }
GraphPoint exit_point(const MetricGraph& g, const Step& s) { return g.point_on_edge(s.edge, s.exit); }

}  // namespace

EdgePath::EdgePath(const MetricGraph& g, GraphPoint start, std::vector<Step> steps)
    : start_(std::move(start)), steps_(std::move(steps)) {
  GraphPoint at = start_;
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    const Step& s = steps_[i];
    if (s.edge >= g.edge_count()) throw std::invalid_argument("step references unknown edge");
    const Rational& len = g.edge(s.edge).length;
    if (s.enter < 0 || s.enter > len || s.exit < 0 || s.exit > len)
      throw std::invalid_argument("step offsets outside edge " + g.edge(s.edge).id);
    if (s.enter == s.exit) throw std::invalid_argument("degenerate step on edge " + g.edge(s.edge).id);
    if (enter_point(g, s) != at)
      throw std::invalid_argument("step " + std::to_string(i) + " does not start where the path is");
    at = exit_point(g, s);
  }
}

Rational EdgePath::length() const {
  Rational total(0);
  for (const auto& s : steps_) total += s.length();
  return total;
}

GraphPoint EdgePath::end(const MetricGraph& g) const {
  if (steps_.empty()) return start_;
  return exit_point(g, steps_.back());
}

bool operator<(const RhoPath& a, const RhoPath& b) {
  if (a.start() != b.start()) return a.start() < b.start();
  return std::lexicographical_compare(a.steps().begin(), a.steps().end(), b.steps().begin(), b.steps().end());
}

EdgePath concat(const MetricGraph& g, const EdgePath& c, const EdgePath& d) {
  if (c.end(g) != d.start())
    throw std::invalid_argument("concatenation endpoint mismatch: " + g.format_point(c.end(g)) + " vs " +
                                g.format_point(d.start()));
  std::vector<Step> steps = c.steps();
  steps.insert(steps.end(), d.steps().begin(), d.steps().end());
  return EdgePath(g, c.start(), std::move(steps));
}

EdgePath restrict_to(const EdgePath& c, const Rational& t) {
  std::vector<Step> steps;
  Rational remaining = t;
  for (const auto& s : c.steps()) {
    if (remaining <= 0) break;
    Rational len = s.length();
    if (len <= remaining) {
      steps.push_back(s);
      remaining -= len;
    } else {
      Step part = s;
      part.exit = s.forward() ? Rational(s.enter + remaining) : Rational(s.enter - remaining);
      steps.push_back(part);
      remaining = 0;
    }
  }
  return EdgePath(c.start(), std::move(steps), true);
}

RhoPath reduce(const MetricGraph& g, const EdgePath& c) {
  (void)g;
  std::vector<Step> out;
  out.reserve(c.steps().size());
  for (const auto& s : c.steps()) {
    Step cur = s;
    bool empty = false;
    while (!out.empty() && out.back().edge == cur.edge && out.back().exit == cur.enter) {
      cur.enter = out.back().enter;
      out.pop_back();
      if (cur.enter == cur.exit) {
        empty = true;
        break;
      }
    }
    if (!empty) out.push_back(std::move(cur));
  }
  return RhoPath(c.start(), std::move(out));
}

RhoPath inverse(const MetricGraph& g, const RhoPath& c) {
  std::vector<Step> steps;
  steps.reserve(c.steps().size());
  for (auto it = c.steps().rbegin(); it != c.steps().rend(); ++it) steps.push_back(it->reversed());
  return RhoPath(c.end(g), std::move(steps));
}

RhoPath truncate(const RhoPath& c, const Rational& t) {
  EdgePath prefix = restrict_to(c.as_edge_path(), t);
  return RhoPath(prefix.start(), prefix.steps());
}

namespace {

// Walks the common prefix; returns the number of shared whole steps and the
// length of a shared partial step after them (zero when none).
struct CommonPrefix {
  std::size_t whole = 0;
  Rational partial;
};

CommonPrefix common_prefix(const RhoPath& c1, const RhoPath& c2) {
  if (c1.start() != c2.start()) throw std::invalid_argument("meet of paths with different start points");
  const auto& a = c1.steps();
  const auto& b = c2.steps();
  CommonPrefix out;
  std::size_t n = std::min(a.size(), b.size());
  while (out.whole < n && a[out.whole] == b[out.whole]) ++out.whole;
  if (out.whole < n) {
    const Step& x = a[out.whole];
    const Step& y = b[out.whole];
    if (x.edge == y.edge && x.enter == y.enter && x.forward() == y.forward())
      out.partial = std::min(x.length(), y.length());
  }
  return out;
}

}  // namespace

RhoPath meet(const MetricGraph& g, const RhoPath& c1, const RhoPath& c2) {
  (void)g;
  CommonPrefix common = common_prefix(c1, c2);
  std::vector<Step> steps(c1.steps().begin(), c1.steps().begin() + static_cast<std::ptrdiff_t>(common.whole));
  if (common.partial > 0) {
    Step part = c1.steps()[common.whole];
    part.exit = part.forward() ? Rational(part.enter + common.partial) : Rational(part.enter - common.partial);
    steps.push_back(part);
  }
  return RhoPath(c1.start(), std::move(steps));
}

Rational meet_length(const RhoPath& c1, const RhoPath& c2) {
  CommonPrefix common = common_prefix(c1, c2);
  Rational total = common.partial;
  for (std::size_t i = 0; i < common.whole; ++i) total += c1.steps()[i].length();
  return total;
}

Rational tree_distance(const RhoPath& c1, const RhoPath& c2) {
  return c1.length() + c2.length() - 2 * meet_length(c1, c2);
}

Rational gromov_product(const RhoPath& c1, const RhoPath& c2) { return meet_length(c1, c2); }

RhoPath concat_cancelled(const MetricGraph& g, const RhoPath& c, const RhoPath& d) {
  return reduce(g, concat(g, c.as_edge_path(), d.as_edge_path()));
}

EdgePath parse_path(const MetricGraph& g, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> tokens;
  for (std::string tok; in >> tok;) tokens.push_back(tok);
  if (tokens.empty()) throw std::invalid_argument("empty path");
  if (tokens[0].rfind(".@", 0) == 0) {
    if (tokens.size() != 1) throw std::invalid_argument("constant path takes a single token");
    return EdgePath(g.parse_point(std::string_view(tokens[0]).substr(2)));
  }
  std::vector<Step> steps;
  for (const auto& tok : tokens) {
    if (tok.size() < 2 || (tok[0] != '+' && tok[0] != '-'))
      throw std::invalid_argument("bad path token `" + tok + "`");
    bool forward = tok[0] == '+';
    std::string_view body = std::string_view(tok).substr(1);
    std::string_view edge_name = body;
    std::optional<std::pair<Rational, Rational>> clamp;
    if (auto at = body.find("@["); at != std::string_view::npos) {
      edge_name = body.substr(0, at);
      std::string_view range = body.substr(at + 2);
      auto comma = range.find(',');
      if (range.empty() || range.back() != ']' || comma == std::string_view::npos)
        throw std::invalid_argument("bad clamp in `" + tok + "`");
      Rational lo = parse_rational(range.substr(0, comma));
      Rational hi = parse_rational(range.substr(comma + 1, range.size() - comma - 2));
      if (!(lo < hi)) throw std::invalid_argument("empty clamp in `" + tok + "`");
      clamp.emplace(lo, hi);
    }
    auto e = g.find_edge(edge_name);
    if (!e) throw std::invalid_argument("unknown edge `" + std::string(edge_name) + "`");
    Rational lo(0), hi = g.edge(*e).length;
    if (clamp) std::tie(lo, hi) = *clamp;
    steps.push_back(forward ? Step{*e, lo, hi} : Step{*e, hi, lo});
  }
  GraphPoint start = g.point_on_edge(steps.front().edge, steps.front().enter);
  return EdgePath(g, start, std::move(steps));
}

std::string format_path(const MetricGraph& g, const EdgePath& c) {
  if (c.is_constant()) return ".@" + g.format_point(c.start());
  std::string out;
  for (const auto& s : c.steps()) {
    if (!out.empty()) out += ' ';
    const Edge& e = g.edge(s.edge);
    out += s.forward() ? '+' : '-';
    out += e.id;
    const Rational& lo = s.forward() ? s.enter : s.exit;
    const Rational& hi = s.forward() ? s.exit : s.enter;
    if (lo != 0 || hi != e.length) out += "@[" + to_string(lo) + "," + to_string(hi) + "]";
  }
  return out;
}

}  // namespace rtcover
