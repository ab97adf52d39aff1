#pragma once

#include <stdexcept>
#include <string>

namespace activemix {

/// Invalid SimParams, run configuration, or blend weight.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An action grid with the wrong shape or a cell type outside the
/// configured interaction set.
class InvalidAction : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A scripted policy that needs an interaction type the environment lacks.
class InvalidPolicy : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class EpisodeFinished : public std::logic_error {
 public:
  EpisodeFinished() : std::logic_error("episode finished; call reset") {}
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace activemix
