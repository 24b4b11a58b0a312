#ifndef RBSIM_VERSION_HPP
#define RBSIM_VERSION_HPP

namespace rbsim {

inline constexpr const char* kVersion = "0.1.0";

}

#endif
