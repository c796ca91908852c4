#pragma once

#include <stdexcept>
#include <string>

namespace asev {

/// Malformed or inconsistent input (files, scenario keys, parameters).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A transition broke a hard constraint (delay threshold, depleted battery).
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(const std::string& what, int stage, std::string flight_id)
      : std::runtime_error(what), stage_(stage), flight_id_(std::move(flight_id)) {}

  int stage() const noexcept { return stage_; }
  const std::string& flight_id() const noexcept { return flight_id_; }

 private:
  int stage_;
  std::string flight_id_;
};

}  // namespace asev
