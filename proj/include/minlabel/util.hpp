#ifndef MINLABEL_UTIL_HPP
#define MINLABEL_UTIL_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace minlabel {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class MissingArtifactError : public Error {
public:
    using Error::Error;
};

class NetworkError : public Error {
public:
    using Error::Error;
};

/// Raised when any network operation is attempted while offline mode is on.
class OfflineViolationError : public Error {
public:
    using Error::Error;
};

std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::string to_hex(std::uint64_t value);

std::string lowercase(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);
bool file_exists(const std::string& path);

/// Deterministic low-error sum of a double series (recursive pairwise).
double pairwise_sum(const double* values, std::size_t n);
double pairwise_sum(const std::vector<double>& values);

/// Printf-style float formatting with round-trip precision (%.17g).
std::string format_double(double value);

void log_info(const std::string& msg);
void log_warn(const std::string& msg);
void log_error(const std::string& msg);

} // namespace minlabel

#endif
