#pragma once

#include <string>

#include "rtcover/epsilon_cover.hpp"
#include "rtcover/metric_graph.hpp"

namespace fixtures {

inline std::string data(const std::string& name) { return std::string(DATA_DIR) + "/" + name; }

inline rtcover::MetricGraph theta() { return rtcover::load_graph(data("theta.graph")); }
inline rtcover::MetricGraph rose2() { return rtcover::load_graph(data("rose2.graph")); }
inline rtcover::MetricGraph lollipop() { return rtcover::load_graph(data("lollipop.graph")); }
inline rtcover::PointCloud square() { return rtcover::load_cloud(data("square.cloud")); }
inline rtcover::PointCloud c12() { return rtcover::load_cloud(data("c12.cloud")); }

inline rtcover::Rational q(const char* text) { return rtcover::parse_rational(text); }

}  // namespace fixtures
