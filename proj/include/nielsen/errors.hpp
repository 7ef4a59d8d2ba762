#pragma once

#include <stdexcept>
#include <string>

namespace nielsen {

// All library errors derive from Error so callers can catch one base.
// InputError covers malformed or out-of-contract input (CLI exit code 2),
// VerifyError covers checks that ran but failed (CLI exit code 1).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputError : Error {
  using Error::Error;
};

struct VerifyError : Error {
  using Error::Error;
};

struct ParseError : InputError {
  using InputError::InputError;
};

struct RankMismatchError : InputError {
  using InputError::InputError;
};

// Word images do not define an automorphism (or cannot be reduced to one).
struct NotAnAutomorphism : InputError {
  using InputError::InputError;
};

// A Laurent polynomial expected to be a single signed monomial is not.
struct NotMonomialError : VerifyError {
  using VerifyError::VerifyError;
};

// A determinant expected to be +1 times a monomial came out with sign -1.
struct MonomialSignError : VerifyError {
  using VerifyError::VerifyError;
};

// tau1 was asked for an automorphism that is not in the IA subgroup.
struct NotIAError : InputError {
  using InputError::InputError;
};

// A vector that must lie in a lattice (spanned by cocycle or kernel basis)
// does not, so its coordinates cannot be computed.
struct CoordinateError : VerifyError {
  using VerifyError::VerifyError;
};

// A candidate cocycle failed the relator identities.
struct CertificationError : VerifyError {
  using VerifyError::VerifyError;
};

}  // namespace nielsen
