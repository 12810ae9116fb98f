#ifndef UQCAL_VERSION_HPP
#define UQCAL_VERSION_HPP

namespace uqcal {

inline constexpr const char* kVersion = "0.1.0";

} // namespace uqcal

#endif
