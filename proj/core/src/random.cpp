#include "mars/random.hpp"

namespace mars {

double PortableRandom::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

}  // namespace mars
