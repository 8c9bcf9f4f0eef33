// Error types shared across the library.
#pragma once

#include <stdexcept>
#include <string>

namespace dslit {

class SimulationError : public std::runtime_error {
public:
  explicit SimulationError(const std::string& what) : std::runtime_error(what) {}
};

// Intensity fell below the node floor; the caller must sub-step or cap.
class NodeSingularity : public SimulationError {
public:
  NodeSingularity(double t, double x)
      : SimulationError("intensity below node floor at t=" + std::to_string(t) +
                        ", x=" + std::to_string(x)),
        t(t), x(x) {}
  double t;
  double x;
};

class ZeroWavenumber : public SimulationError {
public:
  ZeroWavenumber() : SimulationError("k_x = 0 has no fringe nodes") {}
};

class DegenerateConfig : public SimulationError {
public:
  explicit DegenerateConfig(const std::string& what) : SimulationError(what) {}
};

class DegenerateSpan : public SimulationError {
public:
  explicit DegenerateSpan(const std::string& what) : SimulationError(what) {}
};

// Sub-step limit exhausted inside a dark fringe; carries the last good state.
class StuckAtNode : public SimulationError {
public:
  StuckAtNode(double t, double x)
      : SimulationError("sub-step limit exhausted near a dark fringe at t=" +
                        std::to_string(t) + ", x=" + std::to_string(x)),
        t(t), x(x) {}
  double t;
  double x;
};

class InvalidSeed : public SimulationError {
public:
  InvalidSeed(double t, double x)
      : SimulationError("seed below intensity floor at t=" + std::to_string(t) +
                        ", x=" + std::to_string(x)),
        t(t), x(x) {}
  double t;
  double x;
};

class MismatchedSampling : public SimulationError {
public:
  explicit MismatchedSampling(const std::string& what) : SimulationError(what) {}
};

class OutOfRange : public SimulationError {
public:
  explicit OutOfRange(const std::string& what) : SimulationError(what) {}
};

class ParseError : public SimulationError {
public:
  explicit ParseError(const std::string& what) : SimulationError(what) {}
};

// Invariant violation in a parsed configuration; `field` names the offender.
class ValidationError : public SimulationError {
public:
  ValidationError(std::string field_name, const std::string& what)
      : SimulationError(what), field(std::move(field_name)) {}
  std::string field;
};

class UnknownPreset : public SimulationError {
public:
  explicit UnknownPreset(const std::string& name)
      : SimulationError("unknown preset: " + name) {}
};

class IoError : public SimulationError {
public:
  explicit IoError(const std::string& what) : SimulationError(what) {}
};

}  // namespace dslit
