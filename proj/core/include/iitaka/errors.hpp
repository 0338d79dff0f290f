#pragma once

#include <stdexcept>
#include <string>

namespace iitaka {

// Base for all recoverable domain errors; the CLI maps subtypes to exit codes.
class error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

// Malformed config / divisor syntax (exit 2).
class parse_error : public error {
   public:
    using error::error;
};

// Model outside the supported family for the requested operation (exit 3).
class unsupported_model_error : public error {
   public:
    using error::error;
};

// Twist class fails the ampleness precondition.
class not_ample_error : public error {
   public:
    using error::error;
};

// Degree-0 class needed a torsion certificate and none was found.
class non_torsion_error : public error {
   public:
    using error::error;
};

// Power-series precision exhausted after the retry schedule.
class precision_error : public error {
   public:
    using error::error;
};

// Genericity sampling rejected too many candidates in a row.
class genericity_error : public error {
   public:
    using error::error;
};

// No global sections at any reachable power (exit 5).
class no_sections_error : public error {
   public:
    using error::error;
};

// Kodaira map evaluated inside its base locus.
class map_undefined_error : public error {
   public:
    using error::error;
};

}  // namespace iitaka
