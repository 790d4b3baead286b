#include "vstate/error.hpp"

namespace vstate {

void require(bool cond, const std::string& what) {
  if (!cond) throw PreconditionError(what);
}

}  // namespace vstate
