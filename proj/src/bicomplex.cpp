#include "psp/bicomplex.hpp"

#include <ostream>

namespace psp {

std::ostream& operator<<(std::ostream& os, const Bicomplex& w) {
    return os << "(" << w.re << " + " << w.im_i << "i + " << w.im_k << "k + " << w.im_ik << "ik)";
}

}  // namespace psp
