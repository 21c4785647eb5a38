#include "partspec/errors.hpp"

#include <sstream>

namespace partspec {

namespace {
std::string describe_witness(const std::string& axiom, const std::vector<std::uint32_t>& w) {
  std::ostringstream os;
  os << "axiom '" << axiom << "' violated";
  if (!w.empty()) {
    os << " at (";
    for (std::size_t i = 0; i < w.size(); ++i) os << (i ? ", " : "") << w[i];
    os << ")";
  }
  return os.str();
}
}  // namespace

AxiomError::AxiomError(const std::string& axiom, std::vector<std::uint32_t> witness)
    : Error(describe_witness(axiom, witness)), axiom_(axiom), witness_(std::move(witness)) {}

CompatibilityError::CompatibilityError(std::size_t first, std::size_t second,
                                       std::uint32_t element)
    : Error("assignments for subrings " + std::to_string(first) + " and " +
            std::to_string(second) + " disagree on element " + std::to_string(element)),
      first_(first),
      second_(second),
      element_(element) {}

}  // namespace partspec
