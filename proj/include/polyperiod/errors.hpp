#pragma once

#include <stdexcept>
#include <string>

namespace polyperiod {

// Domain violations (punctures, chart disks, cuts) use std::domain_error and
// malformed arguments use std::invalid_argument. Numerical failures get their
// own type so callers can map them to a distinct exit status.
class convergence_error : public std::runtime_error
{
  public:
	using std::runtime_error::runtime_error;
};

} // namespace polyperiod
