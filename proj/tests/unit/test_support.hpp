#pragma once

#include "isoband/metric_field.hpp"
#include "isoband/trig_series.hpp"

namespace testsupport {

// Three smooth det-1 metrics used across the suites. The first is mirror
// symmetric in x2.
inline isoband::TrigSeries log_lambda(int which) {
  switch (which) {
    case 0: return {{1, 0, 0.3, 0, 0, 0}, {0, 1, 0.25, 0, 0, 0}, {1, 1, 0.1, 0, 0.1, 0}};
    case 1: return {{1, 1, 0.2, 0.15, 0, 0.1}, {2, 0, 0, 0, 0.2, 0}};
    default: return {{0, 1, 0.35, 0.1, 0, 0}, {1, 2, 0, 0, 0.15, 0.1}};
  }
}

inline isoband::TrigSeries theta(int which) {
  switch (which) {
    case 0: return {{0, 1, 0, 0.5, 0, 0}, {1, 1, 0, 0.4, 0, 0}, {2, 1, 0, 0, 0, 0.2}};
    case 1: return {{1, 0, 0.5, 0, 0.2, 0}, {0, 1, 0, 0.4, 0, 0}};
    default: return {{1, 1, 0.3, 0, 0, 0.3}, {0, 0, 0.8, 0, 0, 0}};
  }
}

inline isoband::MetricField smooth_metric(int which, const isoband::TorusGrid& g) {
  return isoband::rotated_anisotropic_metric(g, log_lambda(which), theta(which));
}

}  // namespace testsupport
