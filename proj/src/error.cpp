#include "isoband/error.hpp"

namespace isoband {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Structural: return "structural";
    case ErrorKind::InvalidMetric: return "invalid-metric";
    case ErrorKind::DegenerateEllipticity: return "degenerate-ellipticity";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Iteration: return "iteration";
    case ErrorKind::DegenerateLattice: return "degenerate-lattice";
    case ErrorKind::Orientation: return "orientation";
    case ErrorKind::Inversion: return "inversion";
    case ErrorKind::Pushforward: return "pushforward";
    case ErrorKind::Aliasing: return "aliasing";
    case ErrorKind::Numerical: return "numerical";
    case ErrorKind::Io: return "io";
    case ErrorKind::Config: return "config";
  }
  return "unknown";
}

}  // namespace isoband
