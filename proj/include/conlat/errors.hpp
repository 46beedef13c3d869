#pragma once

#include <stdexcept>

namespace conlat {

// Base class for every failure this library reports.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A requested computation exceeds a configured size bound.
struct CapacityError : Error {
  using Error::Error;
};

// A Cayley table or member set violates the group axioms.
struct InvalidGroupError : Error {
  using Error::Error;
};

// A poset handed to the lattice builder is empty or lacks a meet/join.
struct NotALatticeError : Error {
  using Error::Error;
};

// Two algebras do not share an operation signature.
struct SignatureMismatchError : Error {
  using Error::Error;
};

// The seed group is Dedekind and the construction was not forced.
struct DedekindGroupError : Error {
  using Error::Error;
};

// Malformed group spec string or Cayley table file.
struct ParseError : Error {
  using Error::Error;
};

}  // namespace conlat
