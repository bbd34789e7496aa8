// Copyright 2026 The randbasis Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace randbasis {

enum class ErrorKind { Validation, Resource, Io };

class Error : public std::runtime_error
{
  public:
    Error(ErrorKind kind, std::string const& message)
        : std::runtime_error(message), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

//! Parameter or precondition violation; field() names the offending input.
class ValidationError : public Error
{
  public:
    ValidationError(std::string field, std::string const& message)
        : Error(ErrorKind::Validation, message), field_(std::move(field))
    {
    }

    std::string const& field() const noexcept { return field_; }

  private:
    std::string field_;
};

class ResourceError : public Error
{
  public:
    explicit ResourceError(std::string const& message)
        : Error(ErrorKind::Resource, message)
    {
    }
};

class IoError : public Error
{
  public:
    explicit IoError(std::string const& message)
        : Error(ErrorKind::Io, message)
    {
    }
};

}  // namespace randbasis
