#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qploc {

// Error categories map one-to-one onto the C API status codes and the CLI
// exit codes.
enum class ErrorKind {
  parameter = 1,
  config = 2,
  solver = 3,
  truncation = 4,
  io = 5,
  domain = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParameterError : public Error {
 public:
  explicit ParameterError(const std::string& what) : Error(ErrorKind::parameter, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

// Carries the position (in ascending order) of the eigenvalue that failed to
// converge.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, std::size_t index)
      : Error(ErrorKind::solver, what + " (eigenvalue index " + std::to_string(index) + ")"),
        index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, double deficit)
      : Error(ErrorKind::truncation, what), deficit_(deficit) {}
  double deficit() const noexcept { return deficit_; }

 private:
  double deficit_;
};

class ConfigError : public Error {
 public:
  // line == 0 means the problem is not tied to a particular line
  ConfigError(const std::string& key, std::size_t line, const std::string& what)
      : Error(ErrorKind::config, format(key, line, what)), key_(key), line_(line) {}
  const std::string& key() const noexcept { return key_; }
  std::size_t line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& key, std::size_t line, const std::string& what) {
    std::string s = "config";
    if (!key.empty()) s += " key '" + key + "'";
    if (line > 0) s += " (line " + std::to_string(line) + ")";
    return s + ": " + what;
  }
  std::string key_;
  std::size_t line_;
};

class IoError : public Error {
 public:
  IoError(const std::string& path, const std::string& what)
      : Error(ErrorKind::io, path + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace qploc
