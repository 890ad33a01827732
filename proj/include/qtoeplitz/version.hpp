#ifndef QTOEPLITZ_VERSION_HPP
#define QTOEPLITZ_VERSION_HPP

namespace qtoeplitz {
inline constexpr const char* kVersion = "0.1.0";
}

#endif
