#ifndef INVMOD_ERRORS_HPP
#define INVMOD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace invmod {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct AntisymmetryViolation : Error {
  int i, j, m;
  AntisymmetryViolation(int i_, int j_, int m_)
      : Error("antisymmetry violated at c[" + std::to_string(i_) + "][" +
              std::to_string(j_) + "][" + std::to_string(m_) + "]"),
        i(i_), j(j_), m(m_) {}
};

struct JacobiViolation : Error {
  int i, j, l;
  std::string cyclic_sum;
  JacobiViolation(int i_, int j_, int l_, std::string sum)
      : Error("Jacobi identity violated on basis triple (" + std::to_string(i_) +
              "," + std::to_string(j_) + "," + std::to_string(l_) +
              "); cyclic sum = " + sum),
        i(i_), j(j_), l(l_), cyclic_sum(std::move(sum)) {}
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct NotASubalgebra : Error {
  using Error::Error;
};

struct NotAHomomorphism : Error {
  int i, j;
  NotAHomomorphism(int i_, int j_)
      : Error("chi is not a Lie algebra homomorphism on basis pair (" +
              std::to_string(i_) + "," + std::to_string(j_) + ")"),
        i(i_), j(j_) {}
};

struct InvalidJ : Error {
  using Error::Error;
};

struct SplitMismatch : Error {
  using Error::Error;
};

struct DecompositionFailed : Error {
  using Error::Error;
};

struct NoInvariantInnerProduct : Error {
  using Error::Error;
};

struct UnsupportedTargetAlgebra : Error {
  using Error::Error;
};

struct UnknownPreset : Error {
  explicit UnknownPreset(const std::string& name)
      : Error("unknown preset \"" + name + "\"") {}
};

}  // namespace invmod

#endif
