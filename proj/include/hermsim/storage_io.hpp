#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "hermsim/storage.hpp"

namespace hermsim {

enum class IoErrorKind { bad_magic, bad_version, bad_header, truncated, length_mismatch, io_failure };

class IoError : public std::runtime_error {
  public:
    IoError(IoErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    IoErrorKind kind() const { return kind_; }

  private:
    IoErrorKind kind_;
};

/// Writes the handle in the OHRM container: magic "OHRM", version u32 = 1,
/// format tag u8, n u8, m u8, five reserved zero bytes, then the payload
/// as little-endian binary64 (re, im) pairs in native element order.
void save(const MatrixHandle& h, std::ostream& out);
void save(const MatrixHandle& h, const std::string& path);

MatrixHandle load(std::istream& in);
MatrixHandle load(const std::string& path);

} // namespace hermsim
