#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "apspec/potential.hpp"

namespace aps {

/// Malformed model definition (CLI exit code 2).
struct ModelFileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Flat key-value model definition with one section per letter:
///
///   alphabet = ab
///   substitution.a = ab
///   substitution.b = a
///   letter_a = a
///   letter_b = b
///   param.lambda = 4
///
///   [letter a]
///   kind = constant            # constant | delta | sampled
///   value = 4                  # constant value, or strength for delta
///   length = 1
///   samples = 0 0.5 1 0.5 0    # sampled only; alternatively samples-file = path
///
/// '#' starts a comment, blank lines are ignored, keys are case-sensitive.
Model parse_model(std::istream& in, const std::string& source_dir = ".");

Model read_model(const std::string& path);

void write_model(const Model& model, std::ostream& out);
void write_model_file(const Model& model, const std::string& path);

}  // namespace aps
