#ifndef LOJEIG_VERSION_HPP
#define LOJEIG_VERSION_HPP

namespace lojeig {
inline constexpr const char* kVersion = "0.1.0";
}

#endif
